#include "facetab/layout.hpp"

namespace facetab {

Layout basic_table(bool show_colcounts) {
    Layout lyt;
    lyt.show_colcounts_ = show_colcounts;
    return lyt;
}

Layout split_cols_by(Layout lyt, const std::string& var, std::optional<SplitFunction> split_fun,
                     std::optional<std::string> ref_group) {
    SplitDirective d;
    d.dimension = SplitDirective::Dimension::column;
    d.var = var;
    d.split_name = var;
    d.split_fun = split_fun ? std::move(*split_fun) : partition_by_levels(var);
    d.ref_group = std::move(ref_group);
    lyt.col_splits_.push_back(std::move(d));
    return lyt;
}

Layout split_rows_by(Layout lyt, const std::string& var, std::optional<SplitFunction> split_fun,
                     LabelVisibility child_labels, int indent_mod) {
    SplitDirective d;
    d.dimension = SplitDirective::Dimension::row;
    d.var = var;
    d.split_name = var;
    d.split_fun = split_fun ? std::move(*split_fun) : partition_by_levels(var);
    d.child_labels = child_labels;
    d.indent_mod = indent_mod;
    lyt.row_program_.emplace_back(std::move(d));
    return lyt;
}

Layout split_cols_by_multivar(Layout lyt, const std::vector<std::string>& vars) {
    if (vars.empty()) throw ArgumentError("split_cols_by_multivar needs at least one variable");
    SplitDirective d;
    d.dimension = SplitDirective::Dimension::column;
    d.split_name = "multivar";
    d.split_fun = multivar_split(vars);
    lyt.col_splits_.push_back(std::move(d));
    return lyt;
}

Layout add_overall_col(Layout lyt, const std::string& label) {
    lyt.overall_cols_.push_back(OverallColumn{label});
    return lyt;
}

Layout analyze(Layout lyt, const std::string& var, AnalysisFunction afun,
               LabelVisibility show_labels, const std::string& var_label, int indent_mod,
               const std::string& name) {
    AnalyzeDirective d;
    d.var = var;
    d.afun = std::move(afun);
    d.show_labels = show_labels;
    d.var_label = var_label;
    d.indent_mod = indent_mod;
    d.name = name.empty() ? var : name;
    lyt.row_program_.emplace_back(std::move(d));
    return lyt;
}

Layout analyze_colvars(Layout lyt, AnalysisFunction afun, LabelVisibility show_labels,
                       const std::string& var_label, int indent_mod, const std::string& name) {
    AnalyzeDirective d;
    d.use_colvars = true;
    d.afun = std::move(afun);
    d.show_labels = show_labels;
    d.var_label = var_label;
    d.indent_mod = indent_mod;
    d.name = name.empty() ? "colvars" : name;
    lyt.row_program_.emplace_back(std::move(d));
    return lyt;
}

Layout summarize_row_groups(Layout lyt, const std::string& var, SummaryFunction cfun) {
    for (auto it = lyt.row_program_.rbegin(); it != lyt.row_program_.rend(); ++it) {
        if (auto* split = std::get_if<SplitDirective>(&*it)) {
            if (split->content) {
                throw LayoutError("row split \"" + split->split_name +
                                  "\" already has a group summary");
            }
            split->content = ContentDirective{var, std::move(cfun)};
            return lyt;
        }
    }
    throw LayoutError("summarize_row_groups needs a preceding row split");
}

}  // namespace facetab
