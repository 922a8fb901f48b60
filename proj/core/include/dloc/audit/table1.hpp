#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "dloc/audit/scaling.hpp"
#include "dloc/audit/sweep.hpp"
#include "dloc/proto/types.hpp"

namespace dloc::audit {

enum class Column { table_size, table_count, requests, links, reconfig, naming, name_changes };

inline constexpr std::array<Column, 7> kColumns{Column::table_size, Column::table_count, Column::requests,
                                                Column::links,      Column::reconfig,    Column::naming,
                                                Column::name_changes};

std::string_view column_title(Column c);  // short header
std::string_view column_key(Column c);    // csv key

/// Table-size shapes, read jointly from the d axis and the load axis.
enum class SizeShape { zero, d, d_over_n, n, d_over_n_to_d };

/// A growth class on the n axis; `zero` demands an all-zero series.
struct ClassClaim {
  bool zero = false;
  Growth growth = Growth::constant;
};

enum class ReconfigShape {
  zero,              // no messages, no manual step
  messages,          // messages per change of the given class
  messages_and_moves,  // plus records moved per change constant at fixed d/n
  manual,            // manual intervention required
};

struct ProtocolClaims {
  std::string protocol;  // registry label
  std::string title;     // row title
  SizeShape size = SizeShape::zero;
  ClassClaim count;
  ClassClaim requests;
  ClassClaim links;
  bool links_n_log_n = false;  // checked as requests log x links-per-request linear
  ReconfigShape reconfig = ReconfigShape::zero;
  Growth reconfig_growth = Growth::constant;
  proto::NamingForm naming = proto::NamingForm::free;
  bool name_changes = false;
  std::array<std::string, 7> cells;  // claimed cell text
  std::string failing;  // properties the row fails, e.g. "To,N"
};

/// The eight rows of the complexity matrix.
const std::vector<ProtocolClaims>& table1_claims();
const ProtocolClaims* find_claims(std::string_view protocol);

enum class CellStatus { match, mismatch, missing };

struct Evidence {
  std::string label;
  ScalingClass fit;
};

struct Cell {
  Column column = Column::table_size;
  std::string claimed;
  std::string measured;
  CellStatus status = CellStatus::missing;
  std::vector<Evidence> evidence;

  /// "measured(claimed)✓", "measured(claimed)✗" or "n/a(claimed)".
  std::string render() const;
};

struct Table1Row {
  std::string protocol;
  std::string title;
  std::array<Cell, 7> cells;
};

struct Table1Report {
  std::vector<Table1Row> rows;

  std::size_t mismatches() const;
  std::size_t missing() const;
  const Table1Row* row(std::string_view protocol) const;

  std::string render_text() const;
  std::string render_csv() const;
};

/// Measured vs claimed for every protocol present in `data`. Cells whose
/// sweeps are absent are reported missing, not mismatched.
Table1Report reproduce_table(const SweepSet& data);

/// Class label used in cells: "O(0)" for an all-zero series, else big-O of the fit.
std::string measured_label(const ScalingClass& c, std::string_view variable = "n");
/// Shape of a table-size measurement from its two axes.
std::string size_label(const ScalingClass& d_axis, const ScalingClass& load_axis);

}  // namespace dloc::audit
