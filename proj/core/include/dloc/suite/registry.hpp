#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dloc/proto/measure.hpp"

namespace dloc::suite {

struct ProtocolOptions;

struct ProtocolInfo {
  std::string label;
  std::string family;
  std::string summary;
};

/// Every shipped protocol, in Table 1 row order.
const std::vector<ProtocolInfo>& protocol_catalog();
bool is_known_protocol(std::string_view label);

/// Throws net::InvalidScenario for an unknown label.
proto::ProtocolFactory make_factory(std::string_view label, const ProtocolOptions& options);

}  // namespace dloc::suite
