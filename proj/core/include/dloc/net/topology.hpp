#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dloc/net/ids.hpp"

namespace dloc::net {

/// A scenario that cannot be simulated (unknown kind, n = 0, a change that
/// would disconnect the graph...). Distinct from a protocol failure.
class InvalidScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TopologyKind { chain, ring, complete, balanced_tree, random_connected };

std::string_view to_string(TopologyKind kind);
std::optional<TopologyKind> parse_topology_kind(std::string_view text);

struct TopologySpec {
  TopologyKind kind = TopologyKind::chain;
  std::size_t arity = 2;     // balanced_tree
  double edge_probability = 0.1;  // random_connected

  std::string label() const;
};

struct Neighbor {
  NodeId node;
  LinkId link;
};

struct Link {
  NodeId a;
  NodeId b;
  bool alive = true;
};

/// Undirected simulated network. Node and link ids are slots that are never
/// reused; removed nodes keep their slot as dead.
class Topology {
 public:
  explicit Topology(unsigned address_width = 32, std::string kind_label = "custom");

  NodeId add_node();
  NodeId add_node(Address address);
  LinkId add_link(NodeId a, NodeId b);
  void remove_node(NodeId node);
  void set_address(NodeId node, Address address);

  bool contains(NodeId node) const;
  std::vector<NodeId> nodes() const;
  std::size_t node_count() const { return live_nodes_; }
  std::size_t link_count() const { return live_links_; }
  /// One past the largest node id ever allocated.
  std::size_t node_capacity() const { return alive_.size(); }
  std::size_t link_capacity() const { return links_.size(); }

  std::span<const Neighbor> neighbors(NodeId node) const;
  std::size_t degree(NodeId node) const { return neighbors(node).size(); }
  std::optional<LinkId> link_between(NodeId a, NodeId b) const;
  const Link& link(LinkId id) const { return links_.at(id.value); }
  bool link_alive(LinkId id) const;

  Address address_of(NodeId node) const;
  std::optional<NodeId> node_with_address(Address address) const;
  /// Smallest address value not held by any live node.
  Address next_free_address() const;
  unsigned address_width() const { return address_width_; }

  const std::string& kind_label() const { return kind_label_; }
  std::uint64_t version() const { return version_; }

  /// Hop distance from `source` to every node slot; unreachable or dead slots
  /// hold kUnreachable.
  std::span<const std::uint32_t> distances_from(NodeId source) const;
  std::uint32_t hop_distance(NodeId a, NodeId b) const;
  /// Links of one shortest path from `a` to `b` (BFS over sorted adjacency, so
  /// the choice is deterministic). Empty when a == b.
  std::vector<LinkId> shortest_path(NodeId a, NodeId b) const;
  /// First node after `a` on the shortest path towards `b`.
  NodeId next_hop(NodeId a, NodeId b) const;

  std::uint32_t eccentricity(NodeId node) const;
  bool connected() const;
  /// True when removing `node` leaves the remaining live nodes connected.
  bool connected_without(NodeId node) const;

  static constexpr std::uint32_t kUnreachable = 0xffffffffu;

 private:
  struct BfsTree {
    std::vector<std::uint32_t> dist;
    std::vector<NodeId> parent;
    std::vector<LinkId> parent_link;
  };

  const BfsTree& bfs(NodeId source) const;
  void touch();

  unsigned address_width_;
  std::string kind_label_;
  std::vector<bool> alive_;
  std::vector<Address> addresses_;
  std::unordered_map<std::uint64_t, std::uint32_t> address_index_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Link> links_;
  std::size_t live_nodes_ = 0;
  std::size_t live_links_ = 0;
  std::uint64_t version_ = 0;

  mutable std::vector<std::optional<BfsTree>> bfs_cache_;
};

std::uint32_t diameter(const Topology& topology);

/// Builds a connected topology with exactly n nodes. Node i gets address
/// i + 1. Deterministic for fixed (spec, n, seed).
Topology build_topology(const TopologySpec& spec, std::size_t n, std::uint64_t seed,
                        unsigned address_width = 32);

struct JoinChange {
  std::vector<NodeId> links;
  std::optional<Address> address;
};

struct LeaveChange {
  NodeId node;
};

struct ReaddressChange {
  NodeId node;
  Address address;
};

using TopologyChange = std::variant<JoinChange, LeaveChange, ReaddressChange>;

std::string describe(const TopologyChange& change);

/// What apply_change did; handed to ProtocolInstance::on_topology_change.
struct ChangeNotice {
  TopologyChange change;
  NodeId subject;          // joined, departed or readdressed node
  Address old_address;
  Address new_address;
  std::uint64_t version = 0;  // topology version after the change
};

/// Applies a change in place. Throws InvalidScenario when the change would
/// disconnect the graph or references a dead node; the topology is left
/// untouched in that case.
ChangeNotice apply_change(Topology& topology, const TopologyChange& change);

}  // namespace dloc::net
