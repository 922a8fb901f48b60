#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "dloc/net/ids.hpp"

namespace dloc::proto {

using net::NodeId;
using net::OpId;

/// User-chosen data identifier. Any non-empty byte string.
class DataId {
 public:
  explicit DataId(std::string name);

  const std::string& str() const { return name_; }
  auto operator<=>(const DataId&) const = default;

 private:
  std::string name_;
};

struct PlacementRequest {
  DataId data;
  std::optional<NodeId> preferred_node;
};

enum class NameStability { stable, changes };

/// How a user must name data so that it lands on a chosen server.
enum class NamingForm {
  free,              // "obj"
  suffixed,          // "obj.suffix"
  address_prefixed,  // "destination/obj"
  hash_inverse,      // hash^-1(obj)
};

std::string_view to_string(NameStability s);
std::string_view to_string(NamingForm f);

struct PlacementOutcome {
  NodeId stored_at;
  bool name_accepted = true;
  bool placement_honored = true;
  NameStability name_after_move = NameStability::stable;
  /// Name under which the data is now locatable (differs from the request
  /// when the protocol rewrote it).
  std::optional<DataId> stored_as;
};

/// Per-lookup audit built from the simulator's accounting for the lookup's op.
struct LookupTrace {
  OpId op = 0;
  std::uint64_t requests = 0;
  std::uint64_t links_used = 0;
  std::uint64_t hops = 0;
  bool success = false;
  std::optional<NodeId> resolved_at;
};

struct ReconfigTrace {
  std::uint64_t messages = 0;
  std::uint64_t tables_updated = 0;
  std::uint64_t records_moved = 0;
  bool manual_intervention = false;

  ReconfigTrace& operator+=(const ReconfigTrace& other);
};

/// Location-state footprint at one quiescent point.
struct TableStats {
  std::uint64_t max_size = 0;
  std::uint64_t table_count = 0;
  double mean_size = 0.0;  // over table-holding nodes
};

}  // namespace dloc::proto

template <>
struct std::hash<dloc::proto::DataId> {
  std::size_t operator()(const dloc::proto::DataId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
