#include "dloc/suite/registry.hpp"

#include <algorithm>

#include "dloc/directory/central.hpp"
#include "dloc/directory/dns.hpp"
#include "dloc/directory/embedded.hpp"
#include "dloc/directory/gossip.hpp"
#include "dloc/explore/flooding.hpp"
#include "dloc/explore/random_walk.hpp"
#include "dloc/hash/chord.hpp"
#include "dloc/hash/consistent_hashing.hpp"
#include "dloc/suite/scenario.hpp"

namespace dloc::suite {

const std::vector<ProtocolInfo>& protocol_catalog() {
  static const std::vector<ProtocolInfo> catalog{
      {"central", "directory", "one directory server answers every lookup"},
      {"gossip", "directory", "every node holds the full directory, synced by push-pull rounds"},
      {"dns", "directory", "iterative resolution down a zone tree; names carry the zone suffix"},
      {"ip-routing", "directory", "the holder's address is part of the name; longest-prefix forwarding"},
      {"chord", "hash", "finger-table DHT with greedy routing over the physical network"},
      {"consistent-hashing", "hash", "full ring view on every node; one direct request per lookup"},
      {"flooding", "exploration", "TTL-bounded flooding with duplicate suppression"},
      {"random-walk", "exploration", "TTL-bounded random walkers without immediate backtracking"},
  };
  return catalog;
}

bool is_known_protocol(std::string_view label) {
  const auto& c = protocol_catalog();
  return std::any_of(c.begin(), c.end(), [&](const ProtocolInfo& p) { return p.label == label; });
}

proto::ProtocolFactory make_factory(std::string_view label, const ProtocolOptions& o) {
  using Ptr = std::unique_ptr<proto::Protocol>;
  using Ctx = proto::ProtocolContext;
  if (label == "central") {
    return [](const Ctx& c) -> Ptr { return std::make_unique<directory::CentralDirectory>(c.topology, c.sim); };
  }
  if (label == "gossip") {
    return [](const Ctx& c) -> Ptr { return std::make_unique<directory::GossipDirectory>(c.topology, c.sim); };
  }
  if (label == "dns") {
    const auto layout = directory::parse_zone_layout(o.zones);
    if (!layout) throw net::InvalidScenario("unknown zone layout " + o.zones);
    return [layout = *layout, arity = o.zone_arity](const Ctx& c) -> Ptr {
      return std::make_unique<directory::DnsDirectory>(c.topology, c.sim,
                                                       directory::generate_zones(c.topology, layout, arity));
    };
  }
  if (label == "ip-routing") {
    return [aggregate = o.aggregate](const Ctx& c) -> Ptr {
      return std::make_unique<directory::EmbeddedRouting>(c.topology, c.sim, directory::EmbeddedParams{aggregate});
    };
  }
  if (label == "chord") {
    return [bits = o.keyspace_bits](const Ctx& c) -> Ptr {
      return std::make_unique<hash::ChordDht>(c.topology, c.sim, hash::ChordParams{bits});
    };
  }
  if (label == "consistent-hashing") {
    return [bits = o.keyspace_bits, rules = o.rules](const Ctx& c) -> Ptr {
      return std::make_unique<hash::ConsistentHashing>(c.topology, c.sim, hash::ConsistentHashingParams{bits, rules});
    };
  }
  const explore::ExploreParams params{o.ttl, o.walkers, o.walkers_per_degree};
  if (label == "flooding") {
    return [params](const Ctx& c) -> Ptr { return std::make_unique<explore::Flooding>(c.topology, c.sim, params); };
  }
  if (label == "random-walk") {
    return [params](const Ctx& c) -> Ptr {
      return std::make_unique<explore::RandomWalk>(c.topology, c.sim, c.seed, params);
    };
  }
  throw net::InvalidScenario("unknown protocol " + std::string(label));
}

}  // namespace dloc::suite
