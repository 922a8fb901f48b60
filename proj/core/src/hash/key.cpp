#include "dloc/hash/key.hpp"

#include <stdexcept>
#include <string>

#include "dloc/net/rng.hpp"

namespace dloc::hash {

Keyspace::Keyspace(unsigned bits) : bits_(bits) {
  if (bits == 0 || bits > 62) throw std::invalid_argument("keyspace bits must be in [1, 62]");
}

Key Keyspace::hash(std::string_view name) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Key{net::mix64(h) & (size() - 1)};
}

Key Keyspace::hash(net::NodeId node) const { return hash("node#" + std::to_string(node.value)); }

bool Keyspace::in_arc(Key k, Key from, Key to) const {
  if (from == to) return true;
  const std::uint64_t d = distance(from, k);
  return d != 0 && d <= distance(from, to);
}

}  // namespace dloc::hash
