#pragma once

#include <string>
#include <vector>

#include "facetab/table.hpp"

namespace facetab {

// One cell statistic in long form: the cell's raw and formatted value plus
// its location in the faceting structure. (row_path, col_path, stat_label)
// is unique per table.
struct ArdRecord {
    Path row_path;  // path of the containing block ("@content" for summaries)
    Path col_path;
    std::string row_label;
    RowKind kind = RowKind::analysis;
    std::string stat_label;
    CellValue raw_value;
    std::string formatted;
    std::string format;
};

// One record per (data row x leaf column), excluding label rows and —
// unless include_blanks — blank cells; row-major in row_paths order.
std::vector<ArdRecord> as_ard(const Table& table, bool include_blanks = false);

// CSV with columns row_path, col_path, row_label, kind, stat_label,
// raw_value (tuple elements joined "|"), formatted, format. The header
// line carries a trailing "#ard_schema=1" version marker column; data
// rows carry a matching empty field.
std::string ard_csv_string(const std::vector<ArdRecord>& records);
void write_ard_csv(const std::vector<ArdRecord>& records, const std::string& path);

// Records as read back from an ARD CSV, all fields still serialized.
struct RawArdRecord {
    std::string row_path;
    std::string col_path;
    std::string row_label;
    std::string kind;
    std::string stat_label;
    std::string raw_value;
    std::string formatted;
    std::string format;
};

std::vector<RawArdRecord> read_ard_csv(const std::string& path);

}  // namespace facetab
