#pragma once

#include <string>
#include <vector>

namespace bslfa {

/// One table cell. A diverged cell holds the growth factor seen before the
/// defect guard tripped; inner_cycles records the nested Schur cycle count
/// used for that run (0 when the scheme has none).
struct CellValue {
  double value = 0.0;
  bool diverged = false;
  int inner_cycles = 0;
};

struct TableRow {
  std::string label;
  bool measured = false;  // solver run, comparable against the analysis row
  std::vector<CellValue> cells;
};

struct TableResult {
  std::string id;
  std::string title;
  std::string params;  // scheme parameters and cycle settings, one line
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
};

struct TableInfo {
  std::string id;
  std::string title;
};

/// All bundled study tables, in presentation order.
std::vector<TableInfo> list_tables();

/// Recomputes one table: analysis rows from the Fourier symbols, measured
/// rows from seeded solver runs. Throws std::invalid_argument on unknown ids.
TableResult run_table(const std::string& id, unsigned long seed = 1234);

}  // namespace bslfa
