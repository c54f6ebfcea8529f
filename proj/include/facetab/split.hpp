#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "facetab/dataset.hpp"

namespace facetab {

// A named subset of a dataset produced by a split function. Facets drive
// both row groups and columns; siblings must have unique names but need
// not be disjoint or exhaustive.
struct Facet {
    std::string name;   // path token
    std::string label;  // display string
    Dataset data;
    std::optional<std::string> analysis_var_override;
    bool is_reference = false;
};

// Mapping from an incoming dataset to an ordered list of facets. The split
// variable of the owning directive is passed through so generic functions
// (partition, trim) can be declared without repeating it.
struct SplitFunction {
    std::string name;
    std::function<std::vector<Facet>(const Dataset& parent, const std::string& split_var)> apply;
};

// One facet per level of the variable, in level order; disjoint and
// exhaustive over the non-null rows. Empty facets are kept.
SplitFunction partition_by_levels(const std::string& var = "");

// partition_by_levels, but empty facets of the split variable are dropped
// and within each facet the unobserved levels of inner_var are removed
// from that facet's column metadata.
SplitFunction trim_levels_in_group(const std::string& inner_var);

struct ComboLevel {
    std::string valname;                  // path token of the combo facet
    std::string label;                    // display string
    std::vector<std::string> levelcombo;  // constituent levels
};

// Partition facets plus one union facet per combo row. When keep_levels is
// given only those facet names survive, in keep_levels order.
SplitFunction add_combo_levels(std::vector<ComboLevel> combos,
                               std::optional<std::vector<std::string>> keep_levels = std::nullopt);

// One facet per probability p holding all rows with var <= the empirical
// p-quantile (nearest rank: the ceil(p*n)-th order statistic) of the
// incoming facet's non-null values. Facets are nested, not disjoint.
SplitFunction cumulative_quantile_split(const std::string& var, std::vector<double> probabilities);

// Internal: all rows as a single facet (implicit root / overall columns).
SplitFunction all_data_split(const std::string& name, const std::string& label);

// Internal: one facet per listed variable, each holding the full incoming
// data with analysis_var_override set.
SplitFunction multivar_split(std::vector<std::string> vars);

// Nearest-rank empirical quantile of the sorted values (exposed for tests).
double nearest_rank_quantile(std::vector<double> values, double p);

}  // namespace facetab
