#pragma once

#include <optional>
#include <string>
#include <vector>

#include "facetab/table.hpp"

namespace facetab {

struct RenderOptions {
    std::optional<char> hsep;  // defaults to the table's hsep
    int indent_width = 2;
    int min_gap = 3;
};

// One line of the rendered body, in order: a facet/analysis label row
// (row == nullptr) or a data row.
struct VisibleRow {
    int depth = 0;
    std::string label;
    const DataRow* row = nullptr;
    const TableNode* node = nullptr;
    std::vector<int> label_footnotes;
};

// Body rows in render order (shared by the renderer and the path
// round-trip checks).
std::vector<VisibleRow> visible_rows(const Table& table);

struct HeaderCell {
    std::string label;
    std::size_t line = 0;
    std::size_t first_leaf = 0;
    std::size_t span = 1;
};

// Column geometry: per-leaf widths (label column reported separately),
// character offsets, and the header grid with group spans.
struct ColumnLayout {
    std::size_t label_width = 0;
    std::vector<std::size_t> widths;
    std::vector<std::size_t> starts;
    std::size_t total_width = 0;
    std::size_t header_lines = 1;
    std::vector<HeaderCell> header_cells;
};

ColumnLayout compute_column_layout(const Table& table, const RenderOptions& options = {});

// Deterministic monospace rendering: nested headers with centered group
// labels, optional "(N=...)" line, separator, indented body, footnote
// block. Trailing spaces are stripped from every line.
std::string render_text(const Table& table, const RenderOptions& options = {});

}  // namespace facetab
