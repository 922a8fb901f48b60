#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dloc/hash/key.hpp"
#include "dloc/net/ids.hpp"

namespace dloc::hash {

using net::NodeId;

struct RingMember {
  Key key;
  NodeId node;

  auto operator<=>(const RingMember&) const = default;
};

/// Sorted membership of the identifier circle.
class RingView {
 public:
  explicit RingView(Keyspace keyspace = Keyspace{}) : keyspace_(keyspace) {}

  const Keyspace& keyspace() const { return keyspace_; }

  /// Places the node at hash(node), probing linearly past occupied keys.
  Key add(NodeId node);
  /// Places the node at an explicit key. Throws if the key is taken.
  void add_at(NodeId node, Key key);
  bool remove(NodeId node);

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const std::vector<RingMember>& members() const { return members_; }
  std::optional<Key> key_of(NodeId node) const;

  /// First member whose key is >= k, wrapping past N-1.
  NodeId successor(Key k) const;
  /// Member holding the largest key strictly before `node`'s key.
  NodeId predecessor(NodeId node) const;
  /// Number of keys the node owns: (predecessor key, own key].
  std::uint64_t range_size(NodeId node) const;

  /// "key node-id" lines in key order.
  std::string dump() const;

 private:
  std::size_t index_of(NodeId node) const;

  Keyspace keyspace_;
  std::vector<RingMember> members_;
};

/// Searches `local`, `local~1`, `local~2`... for a name that hashes into the
/// target's range. Returns the name and the number of names tried.
struct NameSearch {
  std::string name;
  std::uint64_t trials = 0;
};
NameSearch search_name(const RingView& ring, std::string_view local, NodeId target,
                       std::uint64_t max_trials);

}  // namespace dloc::hash
