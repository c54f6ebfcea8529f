#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "facetab/dataset.hpp"
#include "facetab/value.hpp"

namespace facetab {

// Everything an analysis or summary function may look at besides the value
// slice itself. reference_data is present iff some ancestor column split
// declared a reference group; col_count is the column's "(N=...)" count.
struct FacetContext {
    std::vector<std::string> row_path;
    std::vector<std::string> col_path;
    const Dataset* parent_data = nullptr;  // the facet pane (all columns, pane rows)
    std::optional<Dataset> reference_data;
    bool in_reference_column = false;
    std::string analysis_var;
    std::string facet_label;  // label of the enclosing row facet ("" at the root)
    std::size_t col_count = 0;
};

// One row of a vertical cell group. A blank row renders as an empty cell
// but still occupies its position.
struct CellRow {
    std::string label;
    CellValue value;
    std::string format;
    bool blank = false;

    static CellRow blank_row(std::string label) {
        CellRow r;
        r.label = std::move(label);
        r.blank = true;
        return r;
    }
};

// The cells produced by one analysis in one facet pane; one table column's
// slice of an analysis block. Labels must be unique within the group.
struct VerticalCellGroup {
    std::vector<CellRow> rows;
};

// Pure functions from a facet's value slice (+context) to a vertical cell
// group. Purity is a contract: output depends only on the arguments.
using AnalysisFunction =
    std::function<VerticalCellGroup(const Column& values, const FacetContext& ctx)>;
using SummaryFunction = AnalysisFunction;

// ---------------------------------------------------------------------------
// Built-in registry (the only functions reachable from layout files).

// Pane row count as a single "count" row.
AnalysisFunction afun_counts();
// One plain count row per level of a categorical variable.
AnalysisFunction afun_level_counts();
// One "n (pct of column N)" row per level of a categorical variable.
AnalysisFunction afun_count_pct();
// "Mean" and "sd" rows for a numeric variable (sample sd; blank under 2 values).
AnalysisFunction afun_mean_sd();
// A single "Min - Max" row for a numeric variable.
AnalysisFunction afun_min_max();
// Distinct non-null values of the variable, as a single "count" row.
AnalysisFunction afun_distinct_count();
// "Patients with at least one event" (distinct ids, pct of column N) and
// "Total events" (pane row count); the analysis variable is the id.
AnalysisFunction afun_events_patients();
// Pane row count with percentage of column N, as a single "n" row.
AnalysisFunction afun_n_pct_of_column();
// One row per level of the variable counting distinct ids (id_var) among
// the rows at that level.
AnalysisFunction afun_count_once_per_id(std::string id_var);

// Looks up a registry function by name; named arguments come from layout
// files (e.g. {"afun": "count_once_per_id", "id_var": "USUBJID"}).
// Throws LayoutError for unknown names.
AnalysisFunction registry_function(const std::string& name,
                                   const std::map<std::string, std::string>& args = {});

std::vector<std::string> registry_function_names();

}  // namespace facetab
