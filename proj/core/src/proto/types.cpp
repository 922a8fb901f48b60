#include <stdexcept>

#include "dloc/proto/protocol.hpp"
#include "dloc/proto/types.hpp"

namespace dloc::proto {

DataId::DataId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw std::invalid_argument("data identifier must be non-empty");
}

std::string_view to_string(NameStability s) { return s == NameStability::stable ? "no" : "yes"; }

std::string_view to_string(NamingForm f) {
  switch (f) {
    case NamingForm::free: return "\"obj\"";
    case NamingForm::suffixed: return "\"obj.suffix\"";
    case NamingForm::address_prefixed: return "\"destination/obj\"";
    case NamingForm::hash_inverse: return "hash^-1(obj)";
  }
  return "?";
}

ReconfigTrace& ReconfigTrace::operator+=(const ReconfigTrace& other) {
  messages += other.messages;
  tables_updated += other.tables_updated;
  records_moved += other.records_moved;
  manual_intervention = manual_intervention || other.manual_intervention;
  return *this;
}

std::uint64_t stable_name_hash(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

NodeId default_placement(const net::Topology& topology, const DataId& data) {
  const auto nodes = topology.nodes();
  if (nodes.empty()) throw net::InvalidScenario("no live node to store data on");
  return nodes[stable_name_hash(data.str()) % nodes.size()];
}

}  // namespace dloc::proto
