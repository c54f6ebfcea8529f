#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "facetab/analysis.hpp"
#include "facetab/split.hpp"

namespace facetab {

enum class LabelVisibility { visible, hidden };

// Marginal group summary attached to a row split: its rows render at the
// facet's label position (alongside the label when child_labels is
// visible, replacing it otherwise).
struct ContentDirective {
    std::string var;
    SummaryFunction cfun;
};

// One faceting instruction in either dimension.
struct SplitDirective {
    enum class Dimension { row, column };
    Dimension dimension = Dimension::row;
    std::string var;
    std::string split_name;  // path token, defaults to var
    SplitFunction split_fun;
    LabelVisibility child_labels = LabelVisibility::visible;  // row only
    int indent_mod = 0;                                       // row only
    std::optional<std::string> ref_group;                     // column only
    std::optional<ContentDirective> content;                  // row only
};

// One analyze instruction; always lives in the row program at the nesting
// level current when it was declared.
struct AnalyzeDirective {
    std::string var;          // empty when use_colvars
    bool use_colvars = false;  // resolve the variable per column override
    AnalysisFunction afun;
    LabelVisibility show_labels = LabelVisibility::visible;
    std::string var_label;  // defaults to the column label, then to var
    int indent_mod = 0;
    std::string name;  // path token, defaults to var ("colvars" for colvars)
};

// A column facet containing all rows, appended after the column tree.
struct OverallColumn {
    std::string label;
};

using RowDirective = std::variant<SplitDirective, AnalyzeDirective>;

// The immutable, data-agnostic declaration of a table: column directives,
// a row program, and table options. Every builder operation returns a new
// layout, so layouts can be shared and reused across builds.
class Layout {
public:
    const std::vector<SplitDirective>& col_splits() const { return col_splits_; }
    const std::vector<OverallColumn>& overall_cols() const { return overall_cols_; }
    const std::vector<RowDirective>& row_program() const { return row_program_; }
    bool show_colcounts() const { return show_colcounts_; }

private:
    friend Layout basic_table(bool show_colcounts);
    friend Layout split_cols_by(Layout lyt, const std::string& var,
                                std::optional<SplitFunction> split_fun,
                                std::optional<std::string> ref_group);
    friend Layout split_rows_by(Layout lyt, const std::string& var,
                                std::optional<SplitFunction> split_fun,
                                LabelVisibility child_labels, int indent_mod);
    friend Layout split_cols_by_multivar(Layout lyt, const std::vector<std::string>& vars);
    friend Layout add_overall_col(Layout lyt, const std::string& label);
    friend Layout analyze(Layout lyt, const std::string& var, AnalysisFunction afun,
                          LabelVisibility show_labels, const std::string& var_label,
                          int indent_mod, const std::string& name);
    friend Layout analyze_colvars(Layout lyt, AnalysisFunction afun, LabelVisibility show_labels,
                                  const std::string& var_label, int indent_mod,
                                  const std::string& name);
    friend Layout summarize_row_groups(Layout lyt, const std::string& var, SummaryFunction cfun);

    std::vector<SplitDirective> col_splits_;
    std::vector<OverallColumn> overall_cols_;
    std::vector<RowDirective> row_program_;
    bool show_colcounts_ = false;
};

// Empty layout. If no column split is ever added, the built table gets one
// implicit "all" column holding the full data.
Layout basic_table(bool show_colcounts = false);

// Appends a column split nesting inside any prior column splits.
Layout split_cols_by(Layout lyt, const std::string& var,
                     std::optional<SplitFunction> split_fun = std::nullopt,
                     std::optional<std::string> ref_group = std::nullopt);

// Appends a row split one level deeper than the previous row split.
Layout split_rows_by(Layout lyt, const std::string& var,
                     std::optional<SplitFunction> split_fun = std::nullopt,
                     LabelVisibility child_labels = LabelVisibility::visible, int indent_mod = 0);

// Column split whose facets each carry the full incoming data with a
// per-facet analysis variable override.
Layout split_cols_by_multivar(Layout lyt, const std::vector<std::string>& vars);

// Top-level sibling column holding all rows, placed after the column tree.
Layout add_overall_col(Layout lyt, const std::string& label);

Layout analyze(Layout lyt, const std::string& var, AnalysisFunction afun,
               LabelVisibility show_labels = LabelVisibility::visible,
               const std::string& var_label = "", int indent_mod = 0, const std::string& name = "");

// Analyze whose variable resolves per column from the multivar overrides.
Layout analyze_colvars(Layout lyt, AnalysisFunction afun,
                       LabelVisibility show_labels = LabelVisibility::hidden,
                       const std::string& var_label = "", int indent_mod = 0,
                       const std::string& name = "");

// Attaches a marginal summary to the most recent row split. Throws
// LayoutError when no row split exists yet.
Layout summarize_row_groups(Layout lyt, const std::string& var, SummaryFunction cfun);

}  // namespace facetab
