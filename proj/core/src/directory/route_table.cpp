#include "dloc/directory/route_table.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace dloc::directory {

Prefix::Prefix(Address address, unsigned len) : base(address.masked(len)), length(len) {}

std::string Prefix::to_string() const { return base.to_string() + "/" + std::to_string(length); }

namespace {

bool route_less(const Route& a, const Prefix& p) {
  return a.prefix.base != p.base ? a.prefix.base < p.base : a.prefix.length < p.length;
}

/// Index range of the routes whose prefix lies inside `p` (including `p`).
/// Such prefixes share p's leading bits, so they are contiguous in (base, len) order.
std::pair<std::size_t, std::size_t> inside_range(const std::vector<Route>& routes, const Prefix& p) {
  const auto first = std::lower_bound(routes.begin(), routes.end(), p, route_less);
  auto last = first;
  while (last != routes.end() && p.contains(last->prefix)) ++last;
  return {static_cast<std::size_t>(first - routes.begin()), static_cast<std::size_t>(last - routes.begin())};
}

unsigned common_length(const Prefix& a, const Prefix& b) {
  const unsigned width = a.base.width();
  const std::uint64_t diff = a.base.bits() ^ b.base.bits();
  unsigned len = std::min(a.length, b.length);
  if (diff != 0) {
    // Leading equal bits within the address width.
    const unsigned equal = static_cast<unsigned>(std::countl_zero(diff)) - (64 - width);
    len = std::min(len, equal);
  }
  return len;
}

/// Some address inside `q` not covered by any of `inner` (all strictly inside q).
std::optional<Address> uncovered(const Prefix& q, std::vector<Prefix> inner) {
  if (inner.empty()) return q.base;
  const unsigned width = q.base.width();
  if (q.length >= width) return std::nullopt;
  for (unsigned half = 0; half < 2; ++half) {
    const std::uint64_t bit = std::uint64_t{1} << (width - q.length - 1);
    const Prefix child(Address(q.base.bits() | (half ? bit : 0), width), q.length + 1);
    std::vector<Prefix> sub;
    bool full = false;
    for (const Prefix& p : inner) {
      if (p == child) full = true;
      else if (child.contains(p)) sub.push_back(p);
    }
    if (full) continue;
    if (auto a = uncovered(child, std::move(sub))) return a;
  }
  return std::nullopt;
}

/// One address from every region on which either table's decision inside
/// `p` can differ: each prefix inside p minus its more specific sub-prefixes.
std::vector<Address> representatives(const std::vector<Route>& routes, const Prefix& p) {
  const auto [lo, hi] = inside_range(routes, p);
  std::vector<Prefix> cells{p};
  for (std::size_t i = lo; i < hi; ++i) {
    if (routes[i].prefix != p) cells.push_back(routes[i].prefix);
  }
  std::vector<Address> out;
  for (const Prefix& q : cells) {
    std::vector<Prefix> inner;
    for (const Prefix& r : cells) {
      if (r != q && q.contains(r)) inner.push_back(r);
    }
    if (auto a = uncovered(q, std::move(inner))) out.push_back(*a);
  }
  return out;
}

RouteTable merged(const RouteTable& table, const Route& a, const Route& b, const Prefix& parent) {
  RouteTable out = table;
  out.erase(a.prefix);
  out.erase(b.prefix);
  out.set(parent, a.next_hop);
  return out;
}

RouteTable aggregate_impl(const RouteTable& table, const std::vector<Address>* live) {
  RouteTable current = table;
  bool progress = true;
  while (progress) {
    progress = false;
    // Candidate pairs: neighbours in prefix order among routes sharing a next hop.
    std::vector<Route> order = current.routes();
    std::stable_sort(order.begin(), order.end(),
                     [](const Route& x, const Route& y) { return x.next_hop < y.next_hop; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const Route& a = order[i];
      const Route& b = order[i + 1];
      if (a.next_hop != b.next_hop) continue;
      const Prefix parent(a.prefix.base, common_length(a.prefix, b.prefix));
      RouteTable candidate = merged(current, a, b, parent);
      bool same = true;
      if (live) {
        auto first = std::lower_bound(live->begin(), live->end(), parent.base);
        for (auto it = first; it != live->end() && parent.contains(*it); ++it) {
          if (current.lookup(*it) != candidate.lookup(*it)) {
            same = false;
            break;
          }
        }
      } else {
        for (const Address& probe : representatives(current.routes(), parent)) {
          if (current.lookup(probe) != candidate.lookup(probe)) {
            same = false;
            break;
          }
        }
      }
      if (!same) continue;
      current = std::move(candidate);
      progress = true;
      break;  // order is stale; rescan
    }
  }
  return current;
}

}  // namespace

void RouteTable::set(Prefix prefix, NodeId next_hop) {
  auto it = std::lower_bound(routes_.begin(), routes_.end(), prefix, route_less);
  if (it != routes_.end() && it->prefix == prefix) {
    it->next_hop = next_hop;
  } else {
    routes_.insert(it, Route{prefix, next_hop});
  }
}

void RouteTable::assign(std::vector<Route> routes) {
  std::stable_sort(routes.begin(), routes.end(),
                   [](const Route& a, const Route& b) { return route_less(a, b.prefix); });
  routes_.clear();
  for (Route& r : routes) {
    if (!routes_.empty() && routes_.back().prefix == r.prefix) routes_.back() = r;
    else routes_.push_back(r);
  }
}

bool RouteTable::erase(const Prefix& prefix) {
  auto it = std::lower_bound(routes_.begin(), routes_.end(), prefix, route_less);
  if (it == routes_.end() || it->prefix != prefix) return false;
  routes_.erase(it);
  return true;
}

std::optional<Route> RouteTable::longest_match(Address destination) const {
  for (unsigned len = width_ + 1; len-- > 0;) {
    const Prefix p(destination, len);
    auto it = std::lower_bound(routes_.begin(), routes_.end(), p, route_less);
    if (it != routes_.end() && it->prefix == p) return *it;
  }
  return std::nullopt;
}

std::optional<NodeId> RouteTable::lookup(Address destination) const {
  if (auto r = longest_match(destination)) return r->next_hop;
  return default_;
}

std::string RouteTable::dump() const {
  std::ostringstream out;
  for (const Route& r : routes_) out << r.prefix.to_string() << ' ' << r.next_hop.value << '\n';
  if (default_) out << "default " << default_->value << '\n';
  return out.str();
}

RouteTable aggregate(const RouteTable& table) { return aggregate_impl(table, nullptr); }

RouteTable aggregate(const RouteTable& table, std::span<const Address> live) {
  std::vector<Address> sorted(live.begin(), live.end());
  std::sort(sorted.begin(), sorted.end());
  return aggregate_impl(table, &sorted);
}

}  // namespace dloc::directory
