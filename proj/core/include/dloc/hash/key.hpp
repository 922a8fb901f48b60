#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

#include "dloc/net/ids.hpp"

namespace dloc::hash {

/// Position on the identifier circle, in [0, N).
struct Key {
  std::uint64_t value = 0;

  auto operator<=>(const Key&) const = default;
};

/// Identifier circle of N = 2^bits keys.
class Keyspace {
 public:
  explicit Keyspace(unsigned bits = 16);

  unsigned bits() const { return bits_; }
  std::uint64_t size() const { return std::uint64_t{1} << bits_; }

  /// FNV-1a followed by a 64-bit finalizer, truncated to `bits`. Stable across
  /// runs and platforms; not invertible except by search.
  Key hash(std::string_view name) const;
  Key hash(net::NodeId node) const;

  Key add(Key k, std::uint64_t delta) const { return Key{(k.value + delta) & (size() - 1)}; }
  /// Clockwise distance from `from` to `to`.
  std::uint64_t distance(Key from, Key to) const { return (to.value - from.value) & (size() - 1); }
  /// k in the half-open arc (from, to]; the whole circle when from == to.
  bool in_arc(Key k, Key from, Key to) const;

 private:
  unsigned bits_;
};

}  // namespace dloc::hash
