#pragma once

#include <cstdint>
#include <optional>

#include "dloc/proto/types.hpp"

namespace dloc::explore {

using proto::DataId;
using proto::NodeId;

struct ExploreQuery {
  std::uint64_t query_id = 0;
  DataId data;
  std::uint32_t ttl = 0;      // hop budget
  std::uint32_t walkers = 1;  // ignored by flooding
};

struct ExploreParams {
  /// Hop budget; unset means the number of live nodes at query time.
  std::optional<std::uint32_t> ttl;
  std::uint32_t walkers = 1;
  /// Random walk: start one walker per neighbor of the origin.
  bool walkers_per_degree = false;
};

}  // namespace dloc::explore
