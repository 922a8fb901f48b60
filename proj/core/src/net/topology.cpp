#include "dloc/net/topology.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "dloc/net/rng.hpp"

namespace dloc::net {

// ---------------------------------------------------------------- Address

std::uint64_t width_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

Address::Address(std::uint64_t bits, unsigned width) : bits_(bits), width_(width) {
  if (width == 0 || width > kMaxWidth) throw std::invalid_argument("address width out of range");
  if ((bits & ~width_mask(width)) != 0) throw std::invalid_argument("address bits exceed width");
}

bool Address::bit(unsigned i) const { return ((bits_ >> (width_ - 1 - i)) & 1U) != 0; }

Address Address::masked(unsigned len) const {
  if (len >= width_) return *this;
  const std::uint64_t keep = len == 0 ? 0 : (width_mask(len) << (width_ - len));
  return Address(bits_ & keep, width_);
}

std::string Address::to_string() const {
  std::string out;
  if (width_ % 8 == 0) {
    for (unsigned byte = 0; byte < width_ / 8; ++byte) {
      if (byte != 0) out.push_back('.');
      const unsigned shift = width_ - 8 * (byte + 1);
      out += std::to_string((bits_ >> shift) & 0xffU);
    }
    return out;
  }
  for (unsigned i = 0; i < width_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

std::optional<Address> parse_address(std::string_view text, unsigned width) {
  if (width == 0 || width > Address::kMaxWidth || text.empty()) return std::nullopt;
  std::uint64_t bits = 0;
  if (width % 8 == 0) {
    unsigned bytes = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t dot = std::min(text.find('.', pos), text.size());
      unsigned value = 0;
      const auto* first = text.data() + pos;
      const auto* last = text.data() + dot;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last || first == last || value > 255) return std::nullopt;
      bits = (bits << 8) | value;
      ++bytes;
      pos = dot + 1;
      if (dot == text.size()) break;
    }
    if (bytes != width / 8) return std::nullopt;
    return Address(bits, width);
  }
  if (text.size() != width) return std::nullopt;
  for (char c : text) {
    if (c != '0' && c != '1') return std::nullopt;
    bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return Address(bits, width);
}

// ---------------------------------------------------------------- kinds

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::chain: return "chain";
    case TopologyKind::ring: return "ring";
    case TopologyKind::complete: return "complete";
    case TopologyKind::balanced_tree: return "balanced-tree";
    case TopologyKind::random_connected: return "random-connected";
  }
  return "unknown";
}

std::optional<TopologyKind> parse_topology_kind(std::string_view text) {
  for (auto kind : {TopologyKind::chain, TopologyKind::ring, TopologyKind::complete,
                    TopologyKind::balanced_tree, TopologyKind::random_connected}) {
    if (text == to_string(kind)) return kind;
  }
  if (text == "tree") return TopologyKind::balanced_tree;
  if (text == "random") return TopologyKind::random_connected;
  return std::nullopt;
}

std::string TopologySpec::label() const {
  std::ostringstream out;
  out << to_string(kind);
  if (kind == TopologyKind::balanced_tree) out << "(" << arity << ")";
  if (kind == TopologyKind::random_connected) out << "(" << edge_probability << ")";
  return out.str();
}

// ---------------------------------------------------------------- Topology

Topology::Topology(unsigned address_width, std::string kind_label)
    : address_width_(address_width), kind_label_(std::move(kind_label)) {
  if (address_width == 0 || address_width > Address::kMaxWidth) {
    throw InvalidScenario("address width must be in [1, 64]");
  }
}

void Topology::touch() {
  ++version_;
  bfs_cache_.clear();
}

NodeId Topology::add_node() { return add_node(next_free_address()); }

NodeId Topology::add_node(Address address) {
  if (address.width() != address_width_) throw InvalidScenario("address width mismatch");
  if (node_with_address(address)) throw InvalidScenario("duplicate address " + address.to_string());
  const NodeId id{static_cast<std::uint32_t>(alive_.size())};
  alive_.push_back(true);
  addresses_.push_back(address);
  address_index_[address.bits()] = id.value;
  adjacency_.emplace_back();
  ++live_nodes_;
  touch();
  return id;
}

LinkId Topology::add_link(NodeId a, NodeId b) {
  if (!contains(a) || !contains(b)) throw InvalidScenario("link endpoint is not a live node");
  if (a == b) throw InvalidScenario("self-loops are not allowed");
  if (link_between(a, b)) throw InvalidScenario("duplicate link");
  const LinkId id{static_cast<std::uint32_t>(links_.size())};
  links_.push_back(Link{std::min(a, b), std::max(a, b), true});
  auto insert_sorted = [](std::vector<Neighbor>& list, Neighbor n) {
    auto pos = std::lower_bound(list.begin(), list.end(), n,
                                [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    list.insert(pos, n);
  };
  insert_sorted(adjacency_[a.value], Neighbor{b, id});
  insert_sorted(adjacency_[b.value], Neighbor{a, id});
  ++live_links_;
  touch();
  return id;
}

void Topology::remove_node(NodeId node) {
  if (!contains(node)) throw InvalidScenario("remove of a dead node");
  for (const Neighbor& n : adjacency_[node.value]) {
    auto& other = adjacency_[n.node.value];
    other.erase(std::remove_if(other.begin(), other.end(),
                               [&](const Neighbor& x) { return x.node == node; }),
                other.end());
    links_[n.link.value].alive = false;
    --live_links_;
  }
  adjacency_[node.value].clear();
  address_index_.erase(addresses_[node.value].bits());
  alive_[node.value] = false;
  --live_nodes_;
  touch();
}

void Topology::set_address(NodeId node, Address address) {
  if (!contains(node)) throw InvalidScenario("readdress of a dead node");
  if (address.width() != address_width_) throw InvalidScenario("address width mismatch");
  if (auto holder = node_with_address(address); holder && *holder != node) {
    throw InvalidScenario("address already in use: " + address.to_string());
  }
  address_index_.erase(addresses_[node.value].bits());
  addresses_[node.value] = address;
  address_index_[address.bits()] = node.value;
  touch();
}

bool Topology::contains(NodeId node) const {
  return node.valid() && node.value < alive_.size() && alive_[node.value];
}

std::vector<NodeId> Topology::nodes() const {
  std::vector<NodeId> out;
  out.reserve(live_nodes_);
  for (std::uint32_t i = 0; i < alive_.size(); ++i) {
    if (alive_[i]) out.emplace_back(i);
  }
  return out;
}

std::span<const Neighbor> Topology::neighbors(NodeId node) const {
  if (!contains(node)) return {};
  return adjacency_[node.value];
}

std::optional<LinkId> Topology::link_between(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) return std::nullopt;
  const auto& list = adjacency_[a.value];
  auto pos = std::lower_bound(list.begin(), list.end(), b,
                              [](const Neighbor& x, NodeId y) { return x.node < y; });
  if (pos != list.end() && pos->node == b) return pos->link;
  return std::nullopt;
}

bool Topology::link_alive(LinkId id) const {
  return id.value < links_.size() && links_[id.value].alive;
}

Address Topology::address_of(NodeId node) const {
  if (!contains(node)) throw InvalidScenario("address of a dead node");
  return addresses_[node.value];
}

std::optional<NodeId> Topology::node_with_address(Address address) const {
  if (address.width() != address_width_) return std::nullopt;
  auto it = address_index_.find(address.bits());
  if (it == address_index_.end()) return std::nullopt;
  return NodeId{it->second};
}

Address Topology::next_free_address() const {
  std::uint64_t candidate = 1;
  while (address_index_.count(candidate) != 0) ++candidate;
  if ((candidate & ~width_mask(address_width_)) != 0) throw InvalidScenario("address space exhausted");
  return Address(candidate, address_width_);
}

const Topology::BfsTree& Topology::bfs(NodeId source) const {
  if (bfs_cache_.size() < alive_.size()) bfs_cache_.resize(alive_.size());
  auto& slot = bfs_cache_[source.value];
  if (slot) return *slot;
  BfsTree tree;
  tree.dist.assign(alive_.size(), kUnreachable);
  tree.parent.assign(alive_.size(), kNoNode);
  tree.parent_link.assign(alive_.size(), LinkId{});
  std::vector<std::uint32_t> queue;
  queue.reserve(live_nodes_);
  tree.dist[source.value] = 0;
  queue.push_back(source.value);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (const Neighbor& n : adjacency_[u]) {
      if (tree.dist[n.node.value] != kUnreachable) continue;
      tree.dist[n.node.value] = tree.dist[u] + 1;
      tree.parent[n.node.value] = NodeId{u};
      tree.parent_link[n.node.value] = n.link;
      queue.push_back(n.node.value);
    }
  }
  slot = std::move(tree);
  return *slot;
}

std::span<const std::uint32_t> Topology::distances_from(NodeId source) const {
  if (!contains(source)) throw InvalidScenario("distance query from a dead node");
  return bfs(source).dist;
}

std::uint32_t Topology::hop_distance(NodeId a, NodeId b) const {
  if (a == b) return 0;
  if (link_between(a, b)) return 1;
  return distances_from(a)[b.value];
}

std::vector<LinkId> Topology::shortest_path(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) throw InvalidScenario("path query on a dead node");
  if (a == b) return {};
  if (auto direct = link_between(a, b)) return {*direct};
  // Walk the BFS tree rooted at b backwards so the path reads a -> b.
  const BfsTree& tree = bfs(b);
  if (tree.dist[a.value] == kUnreachable) throw InvalidScenario("destination unreachable");
  std::vector<LinkId> path;
  path.reserve(tree.dist[a.value]);
  NodeId cur = a;
  while (cur != b) {
    path.push_back(tree.parent_link[cur.value]);
    cur = tree.parent[cur.value];
  }
  return path;
}

NodeId Topology::next_hop(NodeId a, NodeId b) const {
  if (a == b) return a;
  if (link_between(a, b)) return b;
  const BfsTree& tree = bfs(b);
  if (tree.dist[a.value] == kUnreachable) return kNoNode;
  return tree.parent[a.value];
}

std::uint32_t Topology::eccentricity(NodeId node) const {
  std::uint32_t best = 0;
  for (std::uint32_t d : distances_from(node)) {
    if (d != kUnreachable) best = std::max(best, d);
  }
  return best;
}

bool Topology::connected() const {
  if (live_nodes_ <= 1) return true;
  const NodeId first = nodes().front();
  const auto dist = distances_from(first);
  for (std::uint32_t i = 0; i < alive_.size(); ++i) {
    if (alive_[i] && dist[i] == kUnreachable) return false;
  }
  return true;
}

bool Topology::connected_without(NodeId node) const {
  if (live_nodes_ <= 2) return true;
  std::vector<bool> seen(alive_.size(), false);
  seen[node.value] = true;
  std::uint32_t start = 0;
  while (!alive_[start] || start == node.value) ++start;
  std::deque<std::uint32_t> queue{start};
  seen[start] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (const Neighbor& n : adjacency_[u]) {
      if (seen[n.node.value]) continue;
      seen[n.node.value] = true;
      ++reached;
      queue.push_back(n.node.value);
    }
  }
  return reached == live_nodes_ - 1;
}

std::uint32_t diameter(const Topology& topology) {
  std::uint32_t best = 0;
  for (NodeId node : topology.nodes()) best = std::max(best, topology.eccentricity(node));
  return best;
}

// ---------------------------------------------------------------- builders

Topology build_topology(const TopologySpec& spec, std::size_t n, std::uint64_t seed,
                        unsigned address_width) {
  if (n == 0) throw InvalidScenario("topology needs at least one node");
  Topology topo(address_width, spec.label());
  std::vector<NodeId> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(topo.add_node(Address(i + 1, address_width)));
  }
  switch (spec.kind) {
    case TopologyKind::chain:
      for (std::size_t i = 1; i < n; ++i) topo.add_link(ids[i - 1], ids[i]);
      break;
    case TopologyKind::ring:
      for (std::size_t i = 1; i < n; ++i) topo.add_link(ids[i - 1], ids[i]);
      if (n > 2) topo.add_link(ids[n - 1], ids[0]);
      break;
    case TopologyKind::complete:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) topo.add_link(ids[i], ids[j]);
      }
      break;
    case TopologyKind::balanced_tree: {
      if (spec.arity == 0) throw InvalidScenario("tree arity must be positive");
      for (std::size_t i = 1; i < n; ++i) topo.add_link(ids[(i - 1) / spec.arity], ids[i]);
      break;
    }
    case TopologyKind::random_connected: {
      if (!(spec.edge_probability > 0.0 && spec.edge_probability <= 1.0)) {
        throw InvalidScenario("edge probability must be in (0, 1]");
      }
      Rng rng(derive_seed(seed, "topology.random-connected"));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (rng.bernoulli(spec.edge_probability)) topo.add_link(ids[i], ids[j]);
        }
      }
      // Connectivity repair: attach every component that does not contain
      // node 0 to a random node already reachable from node 0.
      std::vector<int> component(n, -1);
      int next_component = 0;
      for (std::size_t s = 0; s < n; ++s) {
        if (component[s] != -1) continue;
        std::deque<std::size_t> queue{s};
        component[s] = next_component;
        while (!queue.empty()) {
          const std::size_t u = queue.front();
          queue.pop_front();
          for (const Neighbor& nb : topo.neighbors(ids[u])) {
            if (component[nb.node.value] == -1) {
              component[nb.node.value] = next_component;
              queue.push_back(nb.node.value);
            }
          }
        }
        ++next_component;
      }
      std::vector<std::size_t> reached;
      for (std::size_t i = 0; i < n; ++i) {
        if (component[i] == 0) reached.push_back(i);
      }
      for (int c = 1; c < next_component; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
          if (component[i] == c) members.push_back(i);
        }
        const std::size_t anchor = reached[rng.uniform(reached.size())];
        topo.add_link(ids[anchor], ids[members.front()]);
        reached.insert(reached.end(), members.begin(), members.end());
      }
      break;
    }
  }
  return topo;
}

// ---------------------------------------------------------------- changes

std::string describe(const TopologyChange& change) {
  std::ostringstream out;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, JoinChange>) {
          out << "join(";
          for (std::size_t i = 0; i < c.links.size(); ++i) out << (i ? "," : "") << c.links[i].value;
          out << ")";
        } else if constexpr (std::is_same_v<T, LeaveChange>) {
          out << "leave(" << c.node.value << ")";
        } else {
          out << "readdress(" << c.node.value << "," << c.address.to_string() << ")";
        }
      },
      change);
  return out.str();
}

ChangeNotice apply_change(Topology& topology, const TopologyChange& change) {
  ChangeNotice notice{change, kNoNode, {}, {}, 0};
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, JoinChange>) {
          if (c.links.empty() && topology.node_count() > 0) {
            throw InvalidScenario("join without links would disconnect the graph");
          }
          for (std::size_t i = 0; i < c.links.size(); ++i) {
            if (!topology.contains(c.links[i])) throw InvalidScenario("join links to a dead node");
            for (std::size_t j = 0; j < i; ++j) {
              if (c.links[i] == c.links[j]) throw InvalidScenario("join lists a peer twice");
            }
          }
          const Address address = c.address.value_or(topology.next_free_address());
          const NodeId id = topology.add_node(address);
          for (NodeId peer : c.links) topology.add_link(id, peer);
          notice.subject = id;
          notice.new_address = address;
        } else if constexpr (std::is_same_v<T, LeaveChange>) {
          if (!topology.contains(c.node)) throw InvalidScenario("leave of a dead node");
          if (!topology.connected_without(c.node)) {
            throw InvalidScenario("leave of node " + std::to_string(c.node.value) +
                                  " would disconnect the graph");
          }
          notice.subject = c.node;
          notice.old_address = topology.address_of(c.node);
          topology.remove_node(c.node);
        } else {
          if (!topology.contains(c.node)) throw InvalidScenario("readdress of a dead node");
          notice.subject = c.node;
          notice.old_address = topology.address_of(c.node);
          topology.set_address(c.node, c.address);
          notice.new_address = c.address;
        }
      },
      change);
  notice.version = topology.version();
  return notice;
}

}  // namespace dloc::net
