#include "dloc/audit/table1.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dloc::audit {

std::string_view column_title(Column c) {
  switch (c) {
    case Column::table_size: return "table size";
    case Column::table_count: return "tables";
    case Column::requests: return "requests";
    case Column::links: return "links";
    case Column::reconfig: return "reconfig traffic";
    case Column::naming: return "name for server x";
    case Column::name_changes: return "name changes on move";
  }
  return "?";
}

std::string_view column_key(Column c) {
  switch (c) {
    case Column::table_size: return "table_size";
    case Column::table_count: return "table_count";
    case Column::requests: return "requests";
    case Column::links: return "links";
    case Column::reconfig: return "reconfig";
    case Column::naming: return "naming";
    case Column::name_changes: return "name_changes";
  }
  return "?";
}

namespace {

ClassClaim zero() { return ClassClaim{true, Growth::constant}; }
ClassClaim grows(Growth g) { return ClassClaim{false, g}; }

std::vector<ProtocolClaims> make_claims() {
  using G = Growth;
  using proto::NamingForm;
  std::vector<ProtocolClaims> rows;

  ProtocolClaims central;
  central.protocol = "central";
  central.title = "Central server";
  central.size = SizeShape::d;
  central.count = grows(G::constant);
  central.requests = grows(G::constant);
  central.links = grows(G::linear);
  central.reconfig = ReconfigShape::messages;
  central.reconfig_growth = G::constant;
  central.cells = {"O(d)", "O(1)", "O(1)", "O(diameter(n))=O(n)", "O(1)", "\"obj\"", "no"};
  central.failing = "S";
  rows.push_back(central);

  ProtocolClaims gossip;
  gossip.protocol = "gossip";
  gossip.title = "Gossip";
  gossip.size = SizeShape::d;
  gossip.count = grows(G::linear);
  gossip.requests = grows(G::constant);
  gossip.links = zero();
  gossip.reconfig = ReconfigShape::zero;
  gossip.cells = {"O(d)", "O(n)", "O(1)", "O(0)", "O(0)", "\"obj\"", "no"};
  gossip.failing = "S";
  rows.push_back(gossip);

  ProtocolClaims dns;
  dns.protocol = "dns";
  dns.title = "Domain Name System";
  dns.size = SizeShape::d_over_n_to_d;
  dns.count = grows(G::linear);
  dns.requests = grows(G::linear);
  dns.links = grows(G::quadratic);
  dns.reconfig = ReconfigShape::manual;
  dns.naming = NamingForm::suffixed;
  dns.cells = {"[O(d/n); O(d)]", "O(n)", "O(diameter(n))", "O(2 x diameter(n)^2)", "does not support dynamicity",
               "\"obj.suffix\"", "no"};
  dns.failing = "To";
  rows.push_back(dns);

  ProtocolClaims ip;
  ip.protocol = "ip-routing";
  ip.title = "IP Routing";
  ip.size = SizeShape::n;
  ip.count = grows(G::linear);
  ip.requests = grows(G::constant);
  ip.links = grows(G::linear);
  ip.reconfig = ReconfigShape::manual;
  ip.naming = NamingForm::address_prefixed;
  ip.name_changes = true;
  ip.cells = {"O(n)", "O(n)", "O(1)", "O(diameter(n))", "an additional protocol is required",
              "\"destination/obj\"", "yes"};
  ip.failing = "To,N";
  rows.push_back(ip);

  ProtocolClaims chord;
  chord.protocol = "chord";
  chord.title = "Distributed Hash Tables";
  chord.size = SizeShape::d_over_n;
  chord.count = grows(G::linear);
  chord.requests = grows(G::logarithmic);
  chord.links_n_log_n = true;
  chord.reconfig = ReconfigShape::messages_and_moves;
  chord.reconfig_growth = G::logarithmic;
  chord.naming = NamingForm::hash_inverse;
  chord.name_changes = true;
  chord.cells = {"O(d/n)", "O(n)", "O(log(n))", "O(log(n) x diameter(n))=O(n x log(n))", "O(log(n)+d/n)",
                 "hash^-1(obj)", "yes"};
  chord.failing = "N";
  rows.push_back(chord);

  ProtocolClaims ch;
  ch.protocol = "consistent-hashing";
  ch.title = "Consistent hashing";
  ch.size = SizeShape::n;
  ch.count = grows(G::linear);
  ch.requests = grows(G::constant);
  ch.links = grows(G::linear);
  ch.reconfig = ReconfigShape::messages_and_moves;
  ch.reconfig_growth = G::linear;
  ch.naming = NamingForm::hash_inverse;
  ch.name_changes = true;
  ch.cells = {"O(n)", "O(n)", "O(1)", "O(diameter(n))=O(n)", "O(n+d/n)", "hash^-1(obj)", "yes"};
  ch.failing = "N";
  rows.push_back(ch);

  for (const char* label : {"flooding", "random-walk"}) {
    ProtocolClaims e;
    e.protocol = label;
    e.title = e.protocol == "flooding" ? "Flooding" : "Random walk";
    e.size = SizeShape::zero;
    e.count = zero();
    e.requests = grows(G::linear);
    e.links = grows(G::quadratic);
    e.reconfig = ReconfigShape::zero;
    e.cells = {"O(0)", "O(0)", "O(n)", "O(n x n)=O(n^2)", "O(0)", "\"obj\"", "no"};
    e.failing = "S";
    rows.push_back(e);
  }
  return rows;
}

bool class_matches(const ClassClaim& claim, const ScalingClass& fit) {
  if (claim.zero) return fit.all_zero;
  // An O(1) claim accepts an all-zero series.
  if (fit.all_zero) return claim.growth == Growth::constant;
  return fit.growth && *fit.growth == claim.growth;
}

Cell class_cell(Column column, const std::string& claimed, const ClassClaim& claim, const Sweep* sweep,
                MetricFn metric, std::string_view metric_name) {
  Cell cell;
  cell.column = column;
  cell.claimed = claimed;
  if (!sweep) return cell;
  const ScalingClass fit = fit_scaling(series_of(*sweep, metric, metric_name));
  cell.evidence.push_back(Evidence{std::string(metric_name) + "@" + std::string(to_string(sweep->axis)), fit});
  cell.measured = measured_label(fit);
  cell.status = class_matches(claim, fit) ? CellStatus::match : CellStatus::mismatch;
  return cell;
}

bool is_growth(const ScalingClass& c, Growth g) { return !c.all_zero && c.growth && *c.growth == g; }

/// Shape label -> size claim check.
bool size_matches(SizeShape shape, const ScalingClass& d_axis, const ScalingClass& load) {
  switch (shape) {
    case SizeShape::zero: return d_axis.all_zero && load.all_zero;
    case SizeShape::d: return is_growth(d_axis, Growth::linear) && is_growth(load, Growth::linear);
    case SizeShape::d_over_n: return is_growth(d_axis, Growth::linear) && is_growth(load, Growth::constant);
    case SizeShape::n: return is_growth(d_axis, Growth::constant) && is_growth(load, Growth::linear);
    case SizeShape::d_over_n_to_d: return false;  // handled by the caller
  }
  return false;
}

Cell size_cell(const ProtocolClaims& claims, const SweepSet& data) {
  Cell cell;
  cell.column = Column::table_size;
  cell.claimed = claims.cells[0];
  auto axes = [&](std::string_view variant, SizeShape shape, std::string& label) -> std::optional<bool> {
    const Sweep* d = data.find(claims.protocol, Axis::d, variant);
    const Sweep* load = data.find(claims.protocol, Axis::load, variant);
    if (!d || !load) return std::nullopt;
    const ScalingClass fd = fit_scaling(series_of(*d, metric_mean_table_size, "mean_table_size"));
    const ScalingClass fl = fit_scaling(series_of(*load, metric_mean_table_size, "mean_table_size"));
    const std::string suffix = variant.empty() ? "" : "/" + std::string(variant);
    cell.evidence.push_back(Evidence{"mean_table_size@d" + suffix, fd});
    cell.evidence.push_back(Evidence{"mean_table_size@load" + suffix, fl});
    label = size_label(fd, fl);
    return size_matches(shape, fd, fl);
  };
  if (claims.size == SizeShape::d_over_n_to_d) {
    std::string best, worst;
    const auto b = axes("best", SizeShape::d_over_n, best);
    const auto w = axes("worst", SizeShape::d, worst);
    if (!b || !w) return cell;
    cell.measured = "[" + best + "; " + worst + "]";
    cell.status = *b && *w ? CellStatus::match : CellStatus::mismatch;
    return cell;
  }
  std::string label;
  const auto ok = axes("", claims.size, label);
  if (!ok) return cell;
  cell.measured = label;
  cell.status = *ok ? CellStatus::match : CellStatus::mismatch;
  return cell;
}

Cell links_cell(const ProtocolClaims& claims, const SweepSet& data) {
  const Sweep* sweep = data.find(claims.protocol, Axis::n);
  if (!claims.links_n_log_n) {
    return class_cell(Column::links, claims.cells[3], claims.links, sweep, metric_links, "mean_links_used");
  }
  Cell cell;
  cell.column = Column::links;
  cell.claimed = claims.cells[3];
  if (!sweep) return cell;
  // n log n is checked as a product of independently fitted factors.
  const ScalingClass req = fit_scaling(series_of(*sweep, metric_requests, "mean_lookup_requests"));
  ScalingSeries per_request = series_of(*sweep, metric_links, "links_per_request");
  ScalingSeries requests = series_of(*sweep, metric_requests, "mean_lookup_requests");
  for (std::size_t i = 0; i < per_request.points.size(); ++i) {
    const double r = requests.points[i].y;
    per_request.points[i].y = r == 0 ? 0 : per_request.points[i].y / r;
  }
  const ScalingClass hop = fit_scaling(per_request);
  const ScalingClass total = fit_scaling(series_of(*sweep, metric_links, "mean_links_used"));
  cell.evidence.push_back(Evidence{"mean_lookup_requests@n", req});
  cell.evidence.push_back(Evidence{"links_per_request@n", hop});
  cell.evidence.push_back(Evidence{"mean_links_used@n", total});
  const bool ok = is_growth(req, Growth::logarithmic) && is_growth(hop, Growth::linear);
  cell.measured = ok ? "O(n log n)" : measured_label(req) + "x" + measured_label(hop);
  cell.status = ok ? CellStatus::match : CellStatus::mismatch;
  return cell;
}

Cell reconfig_cell(const ProtocolClaims& claims, const SweepSet& data) {
  Cell cell;
  cell.column = Column::reconfig;
  cell.claimed = claims.cells[4];
  const Sweep* sweep = data.find(claims.protocol, Axis::n);
  if (!sweep) return cell;
  const bool manual = std::any_of(sweep->records.begin(), sweep->records.end(),
                                  [](const proto::MetricsRecord& r) { return r.manual_intervention; });
  const ScalingClass msgs = fit_scaling(series_of(*sweep, metric_reconfig_per_change, "reconfig_messages_per_change"));
  cell.evidence.push_back(Evidence{"reconfig_messages_per_change@n", msgs});
  if (manual) {
    cell.measured = "manual";
    cell.status = claims.reconfig == ReconfigShape::manual ? CellStatus::match : CellStatus::mismatch;
    return cell;
  }
  cell.measured = measured_label(msgs);
  switch (claims.reconfig) {
    case ReconfigShape::manual:
      cell.status = CellStatus::mismatch;
      return cell;
    case ReconfigShape::zero:
      cell.status = msgs.all_zero ? CellStatus::match : CellStatus::mismatch;
      return cell;
    case ReconfigShape::messages:
      cell.status = class_matches(grows(claims.reconfig_growth), msgs) ? CellStatus::match : CellStatus::mismatch;
      return cell;
    case ReconfigShape::messages_and_moves: {
      const Sweep* load = data.find(claims.protocol, Axis::load);
      if (!load) {
        cell.status = CellStatus::missing;
        return cell;
      }
      const ScalingClass moves = fit_scaling(series_of(*load, metric_moves_per_change, "records_moved_per_change"));
      cell.evidence.push_back(Evidence{"records_moved_per_change@load", moves});
      const bool moves_ok = is_growth(moves, Growth::constant);
      cell.measured += moves_ok ? "+O(d/n)" : "+moves:" + measured_label(moves);
      cell.status = class_matches(grows(claims.reconfig_growth), msgs) && moves_ok ? CellStatus::match
                                                                                     : CellStatus::mismatch;
      return cell;
    }
  }
  return cell;
}

Cell naming_cell(const ProtocolClaims& claims, const SweepSet& data) {
  Cell cell;
  cell.column = Column::naming;
  cell.claimed = claims.cells[5];
  const NamingProbe* p = data.probe(claims.protocol);
  if (!p) return cell;
  cell.measured = p->convention_places_on_target ? std::string(proto::to_string(p->form)) : "none";
  cell.status = p->convention_places_on_target && p->form == claims.naming ? CellStatus::match : CellStatus::mismatch;
  return cell;
}

Cell name_changes_cell(const ProtocolClaims& claims, const SweepSet& data) {
  Cell cell;
  cell.column = Column::name_changes;
  cell.claimed = claims.cells[6];
  const NamingProbe* p = data.probe(claims.protocol);
  if (!p) return cell;
  const bool changes = !p->name_stable_on_move;
  cell.measured = changes ? "yes" : "no";
  cell.status = changes == claims.name_changes && p->locatable_after_move ? CellStatus::match : CellStatus::mismatch;
  if (!p->locatable_after_move) cell.measured += " (lost)";
  return cell;
}

std::string mark(CellStatus s) {
  switch (s) {
    case CellStatus::match: return "✓";
    case CellStatus::mismatch: return "✗";
    case CellStatus::missing: return "";
  }
  return "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

const std::vector<ProtocolClaims>& table1_claims() {
  static const std::vector<ProtocolClaims> claims = make_claims();
  return claims;
}

const ProtocolClaims* find_claims(std::string_view protocol) {
  for (const auto& c : table1_claims()) {
    if (c.protocol == protocol) return &c;
  }
  return nullptr;
}

std::string measured_label(const ScalingClass& c, std::string_view variable) {
  if (c.all_zero) return "O(0)";
  if (!c.growth) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "inconclusive(R2=%.3f)", c.fit_quality);
    return buf;
  }
  return big_o(*c.growth, variable);
}

std::string size_label(const ScalingClass& d, const ScalingClass& load) {
  if (d.all_zero && load.all_zero) return "O(0)";
  if (is_growth(d, Growth::linear) && is_growth(load, Growth::linear)) return "O(d)";
  if (is_growth(d, Growth::linear) && is_growth(load, Growth::constant)) return "O(d/n)";
  if (is_growth(d, Growth::constant) && is_growth(load, Growth::linear)) return "O(n)";
  if (is_growth(d, Growth::constant) && is_growth(load, Growth::constant)) return "O(1)";
  return "d:" + measured_label(d, "d") + "/load:" + measured_label(load);
}

std::string Cell::render() const {
  if (status == CellStatus::missing) return "n/a(" + claimed + ")";
  return measured + "(" + claimed + ")" + mark(status);
}

std::size_t Table1Report::mismatches() const {
  std::size_t k = 0;
  for (const auto& r : rows) {
    for (const auto& c : r.cells) k += c.status == CellStatus::mismatch;
  }
  return k;
}

std::size_t Table1Report::missing() const {
  std::size_t k = 0;
  for (const auto& r : rows) {
    for (const auto& c : r.cells) k += c.status == CellStatus::missing;
  }
  return k;
}

const Table1Row* Table1Report::row(std::string_view protocol) const {
  for (const auto& r : rows) {
    if (r.protocol == protocol) return &r;
  }
  return nullptr;
}

std::string Table1Report::render_text() const {
  std::ostringstream out;
  out << "Table 1 reproduction: measured(claimed) per cell\n\n";
  for (const auto& r : rows) {
    out << r.title << " [" << r.protocol << "]\n";
    for (const auto& c : r.cells) {
      out << "  " << column_title(c.column) << ": " << c.render() << '\n';
      for (const auto& e : c.evidence) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " R2=%.4f", e.fit.fit_quality);
        out << "      " << e.label << " -> " << (e.fit.all_zero ? "zero" : e.fit.label()) << buf << '\n';
      }
    }
    out << '\n';
  }
  out << "mismatched cells: " << mismatches() << ", missing cells: " << missing() << '\n';
  return out.str();
}

std::string Table1Report::render_csv() const {
  std::ostringstream out;
  out << "protocol";
  for (Column c : kColumns) out << ',' << column_key(c);
  out << '\n';
  for (const auto& r : rows) {
    out << r.protocol;
    for (const auto& c : r.cells) out << ',' << csv_field(c.render());
    out << '\n';
  }
  return out.str();
}

Table1Report reproduce_table(const SweepSet& data) {
  Table1Report report;
  const auto present = data.protocols();
  for (const ProtocolClaims& claims : table1_claims()) {
    if (std::find(present.begin(), present.end(), claims.protocol) == present.end()) continue;
    Table1Row row;
    row.protocol = claims.protocol;
    row.title = claims.title;
    const Sweep* n_axis = data.find(claims.protocol, Axis::n);
    // A sweep too short to fit leaves its cell unmeasured.
    auto guarded = [&](Column column, auto&& compute) {
      try {
        return compute();
      } catch (const std::invalid_argument&) {
        Cell cell;
        cell.column = column;
        cell.claimed = claims.cells[static_cast<std::size_t>(column)];
        return cell;
      }
    };
    row.cells[0] = guarded(Column::table_size, [&] { return size_cell(claims, data); });
    row.cells[1] = guarded(Column::table_count, [&] {
      return class_cell(Column::table_count, claims.cells[1], claims.count, n_axis, metric_table_count, "table_count");
    });
    row.cells[2] = guarded(Column::requests, [&] {
      return class_cell(Column::requests, claims.cells[2], claims.requests, n_axis, metric_requests,
                        "mean_lookup_requests");
    });
    row.cells[3] = guarded(Column::links, [&] { return links_cell(claims, data); });
    row.cells[4] = guarded(Column::reconfig, [&] { return reconfig_cell(claims, data); });
    row.cells[5] = guarded(Column::naming, [&] { return naming_cell(claims, data); });
    row.cells[6] = guarded(Column::name_changes, [&] { return name_changes_cell(claims, data); });
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dloc::audit
