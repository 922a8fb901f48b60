#include "dloc/hash/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dloc::hash {

namespace {

bool key_less(const RingMember& m, Key k) { return m.key < k; }

}  // namespace

Key RingView::add(NodeId node) {
  if (members_.size() >= keyspace_.size()) throw std::length_error("keyspace full");
  Key k = keyspace_.hash(node);
  for (;;) {
    auto it = std::lower_bound(members_.begin(), members_.end(), k, key_less);
    if (it == members_.end() || it->key != k) break;
    k = keyspace_.add(k, 1);
  }
  add_at(node, k);
  return k;
}

void RingView::add_at(NodeId node, Key key) {
  if (key.value >= keyspace_.size()) throw std::out_of_range("key outside keyspace");
  auto it = std::lower_bound(members_.begin(), members_.end(), key, key_less);
  if (it != members_.end() && it->key == key) throw std::invalid_argument("ring key already taken");
  if (key_of(node)) throw std::invalid_argument("node already on the ring");
  members_.insert(it, RingMember{key, node});
}

bool RingView::remove(NodeId node) {
  auto it = std::find_if(members_.begin(), members_.end(), [&](const RingMember& m) { return m.node == node; });
  if (it == members_.end()) return false;
  members_.erase(it);
  return true;
}

std::optional<Key> RingView::key_of(NodeId node) const {
  for (const RingMember& m : members_) {
    if (m.node == node) return m.key;
  }
  return std::nullopt;
}

std::size_t RingView::index_of(NodeId node) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].node == node) return i;
  }
  throw std::invalid_argument("node not on the ring");
}

NodeId RingView::successor(Key k) const {
  if (members_.empty()) throw std::logic_error("successor on an empty ring");
  auto it = std::lower_bound(members_.begin(), members_.end(), k, key_less);
  return it == members_.end() ? members_.front().node : it->node;
}

NodeId RingView::predecessor(NodeId node) const {
  const std::size_t i = index_of(node);
  return members_[(i + members_.size() - 1) % members_.size()].node;
}

std::uint64_t RingView::range_size(NodeId node) const {
  const std::size_t i = index_of(node);
  if (members_.size() == 1) return keyspace_.size();
  const Key pred = members_[(i + members_.size() - 1) % members_.size()].key;
  return keyspace_.distance(pred, members_[i].key);
}

std::string RingView::dump() const {
  std::ostringstream out;
  for (const RingMember& m : members_) out << m.key.value << ' ' << m.node.value << '\n';
  return out.str();
}

NameSearch search_name(const RingView& ring, std::string_view local, NodeId target,
                       std::uint64_t max_trials) {
  NameSearch s;
  for (std::uint64_t i = 0; i < max_trials; ++i) {
    std::string candidate(local);
    if (i != 0) candidate += "~" + std::to_string(i);
    ++s.trials;
    if (ring.successor(ring.keyspace().hash(candidate)) == target) {
      s.name = std::move(candidate);
      return s;
    }
  }
  throw std::runtime_error("no name found for the target within the trial budget");
}

}  // namespace dloc::hash
