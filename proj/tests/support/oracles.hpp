#pragma once

// Brute-force reference implementations. They share no code with the library
// beyond the topology's adjacency lists.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dloc/net/topology.hpp"

namespace dloc::oracle {

constexpr std::uint32_t kInf = 0xffffffffu;

/// All-pairs hop distances by Floyd-Warshall, indexed by node slot.
inline std::vector<std::vector<std::uint32_t>> all_pairs(const net::Topology& t) {
  const std::size_t n = t.node_capacity();
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (net::NodeId a : t.nodes()) {
    d[a.value][a.value] = 0;
    for (const auto& nb : t.neighbors(a)) d[a.value][nb.node.value] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

inline std::uint32_t diameter(const net::Topology& t) {
  const auto d = all_pairs(t);
  std::uint32_t best = 0;
  for (net::NodeId a : t.nodes()) {
    for (net::NodeId b : t.nodes()) best = std::max(best, d[a.value][b.value]);
  }
  return best;
}

inline std::uint32_t eccentricity(const net::Topology& t, net::NodeId v) {
  const auto d = all_pairs(t);
  std::uint32_t best = 0;
  for (net::NodeId b : t.nodes()) best = std::max(best, d[v.value][b.value]);
  return best;
}

/// Longest-prefix match by scanning every route: (base bits, length, next hop).
struct PlainRoute {
  std::uint64_t base;
  unsigned length;
  std::uint32_t next;
};

inline std::optional<std::uint32_t> lpm(const std::vector<PlainRoute>& routes, std::optional<std::uint32_t> fallback,
                                        std::uint64_t address, unsigned width) {
  int best_len = -1;
  std::optional<std::uint32_t> out = fallback;
  const std::uint64_t all = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  for (const auto& r : routes) {
    const std::uint64_t mask = r.length == 0 ? 0 : (all << (width - r.length)) & all;
    if ((address & mask) == (r.base & mask) && static_cast<int>(r.length) > best_len) {
      best_len = static_cast<int>(r.length);
      out = r.next;
    }
  }
  return out;
}

/// Flooding replayed round by round: unit latency means every message sent at
/// tick t arrives at t+1, so a FIFO queue reproduces delivery order classes.
struct FloodReplay {
  std::uint64_t links = 0;
  std::uint64_t reached = 0;
  bool found = false;
};

inline FloodReplay flood(const net::Topology& t, net::NodeId origin, const std::set<std::uint32_t>& holders,
                         std::uint32_t ttl) {
  FloodReplay out;
  if (holders.count(origin.value)) {
    out.found = true;
    return out;
  }
  struct Msg {
    std::uint32_t to, from, remaining;
  };
  std::set<std::uint32_t> seen{origin.value};
  std::deque<Msg> queue;
  if (ttl > 0) {
    for (const auto& nb : t.neighbors(origin)) queue.push_back({nb.node.value, origin.value, ttl - 1});
  }
  while (!queue.empty()) {
    const Msg m = queue.front();
    queue.pop_front();
    ++out.links;
    if (!seen.insert(m.to).second) continue;
    ++out.reached;
    if (holders.count(m.to)) {
      out.found = true;
      continue;
    }
    if (m.remaining == 0) continue;
    for (const auto& nb : t.neighbors(net::NodeId(m.to))) {
      if (nb.node.value != m.from) queue.push_back({nb.node.value, m.to, m.remaining - 1});
    }
  }
  return out;
}

/// Probability that one non-backtracking walker started at `origin` reaches
/// `holder` within `ttl` steps, by exact propagation over (node, previous) states.
inline double walk_hit_probability(const net::Topology& t, net::NodeId origin, net::NodeId holder, std::uint32_t ttl) {
  if (origin == holder) return 1.0;
  using State = std::pair<std::uint32_t, std::uint32_t>;  // (at, came from; kInf at start)
  std::map<State, double> mass{{{origin.value, kInf}, 1.0}};
  double hit = 0;
  for (std::uint32_t step = 0; step < ttl; ++step) {
    std::map<State, double> next;
    for (const auto& [state, p] : mass) {
      const auto nbs = t.neighbors(net::NodeId(state.first));
      std::vector<std::uint32_t> options;
      for (const auto& nb : nbs) {
        if (nbs.size() == 1 || state.second == kInf || nb.node.value != state.second) options.push_back(nb.node.value);
      }
      for (std::uint32_t to : options) {
        const double q = p / static_cast<double>(options.size());
        if (to == holder.value) hit += q;
        else next[{to, state.first}] += q;
      }
    }
    mass = std::move(next);
  }
  return hit;
}

/// First key at or after k on a ring of `size` keys, among `keys`.
inline std::size_t successor_index(const std::vector<std::uint64_t>& keys, std::uint64_t k, std::uint64_t size) {
  std::size_t best = 0;
  std::uint64_t best_gap = ~std::uint64_t{0};
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::uint64_t gap = (keys[i] + size - k) % size;
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

}  // namespace dloc::oracle
