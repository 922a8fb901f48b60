#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dloc/net/ids.hpp"

namespace dloc::directory {

using net::Address;
using net::NodeId;

struct Prefix {
  Address base;  // bits past `length` are zero
  unsigned length = 0;

  Prefix() = default;
  Prefix(Address address, unsigned len);

  bool contains(Address address) const { return address.masked(length) == base; }
  bool contains(const Prefix& other) const {
    return other.length >= length && contains(other.base);
  }
  std::string to_string() const;  // "base/len"
  auto operator<=>(const Prefix&) const = default;
};

struct Route {
  Prefix prefix;
  NodeId next_hop;

  auto operator<=>(const Route&) const = default;
};

/// Forwarding table with longest-prefix match. At most one route per prefix.
class RouteTable {
 public:
  explicit RouteTable(unsigned width = 32) : width_(width) {}

  unsigned width() const { return width_; }

  /// Inserts or replaces the route for `prefix`.
  void set(Prefix prefix, NodeId next_hop);
  /// Replaces every route at once; later duplicates of a prefix win.
  void assign(std::vector<Route> routes);
  bool erase(const Prefix& prefix);
  void set_default(std::optional<NodeId> next_hop) { default_ = next_hop; }
  std::optional<NodeId> default_route() const { return default_; }

  /// Most specific matching route, else the default route, else nothing.
  std::optional<NodeId> lookup(Address destination) const;
  std::optional<Route> longest_match(Address destination) const;

  std::size_t size() const { return routes_.size(); }
  bool empty() const { return routes_.empty(); }
  /// Routes sorted by (base, length).
  const std::vector<Route>& routes() const { return routes_; }

  /// "prefix/len next-hop" lines, sorted; the default route last as "default next-hop".
  std::string dump() const;

  bool operator==(const RouteTable& other) const = default;

 private:
  unsigned width_;
  std::vector<Route> routes_;
  std::optional<NodeId> default_;
};

/// Greedy aggregation iterated to a fixpoint: two routes with the same next
/// hop collapse into their longest common prefix when no address changes its
/// forwarding decision. Siblings that differ only in their last bit always
/// qualify. Not minimal (minimal aggregation is NP-complete).
RouteTable aggregate(const RouteTable& table);

/// Same, but only the forwarding of `live` destinations has to be preserved,
/// so address space holding no live destination may be absorbed.
RouteTable aggregate(const RouteTable& table, std::span<const Address> live);

}  // namespace dloc::directory
