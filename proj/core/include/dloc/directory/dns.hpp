#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dloc/proto/protocol.hpp"

namespace dloc::directory {

using proto::DataId;
using proto::NodeId;

/// A subtree of the name space served by one directory server.
struct Zone {
  std::vector<std::string> suffix;  // labels from the root down; empty for the root
  NodeId server;
  std::optional<std::size_t> parent;
  std::map<std::string, std::size_t> children;  // next label -> zone index
  std::map<DataId, net::Address> records;       // name -> address of the holder

  std::size_t depth() const { return suffix.size(); }
  /// "example.com" style; "." for the root.
  std::string name() const;
};

/// Zone file line: `suffix-path server-node`, e.g. `example.com 3`; `.` is the root.
struct ZoneAssignment {
  std::vector<std::string> suffix;
  NodeId server;
};

std::vector<ZoneAssignment> parse_zone_file(std::istream& in);
std::string format_zone_file(const std::vector<ZoneAssignment>& zones);

enum class ZoneLayout {
  balanced,  // zone i served by node i, parent (i-1)/arity
  flat,      // a single root zone
  chain,     // zone i is the only child of zone i-1
};

std::optional<ZoneLayout> parse_zone_layout(std::string_view text);

/// Zone tree over the first live nodes of `topology`, one zone per node for
/// the balanced and chain layouts.
std::vector<ZoneAssignment> generate_zones(const net::Topology& topology, ZoneLayout layout,
                                           std::size_t arity = 2);

/// Hierarchical directory resolved iteratively: the client asks the root,
/// follows referrals down the zone tree and gets the record from the server
/// of the deepest zone that is a suffix of the name. Referrals carry the
/// server address configured in the parent; nothing updates it automatically.
class DnsDirectory final : public proto::SimulatedProtocol<int> {
 public:
  DnsDirectory(net::Topology& topology, net::SimConfig sim, std::vector<ZoneAssignment> zones);

  std::string_view name() const override { return "dns"; }
  proto::PlacementOutcome store(const proto::PlacementRequest& request) override;
  proto::LookupTrace locate(const DataId& data, NodeId origin) override;
  proto::ReconfigTrace on_topology_change(const net::ChangeNotice& notice) override;
  proto::TableStats table_stats() const override;
  proto::NamingForm naming_form() const override { return proto::NamingForm::suffixed; }
  DataId name_for(std::string_view local_name, NodeId target) override;
  proto::PlacementOutcome relocate(const DataId& data, NodeId to) override;

  /// Administrator pass: rewrites every delegation and record to the current
  /// addresses. The only way this protocol recovers from a change.
  proto::ReconfigTrace manual_update();

  const std::vector<Zone>& zones() const { return zones_; }
  /// Index of the deepest zone whose suffix ends `name`.
  std::size_t zone_for(const DataId& name) const;
  std::vector<ZoneAssignment> assignments() const;

 private:
  static std::vector<std::string> reversed_labels(const std::string& name);

  std::vector<Zone> zones_;
  std::vector<net::Address> delegated_;  // address handed out for each zone's server
  std::size_t root_ = 0;
};

}  // namespace dloc::directory
