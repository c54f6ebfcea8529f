#include "facetab/split.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace facetab {

namespace {

std::vector<bool> level_mask(const Column& col, const std::string& level) {
    std::vector<bool> mask(col.size(), false);
    const auto& vals = col.str_values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        mask[i] = vals[i].has_value() && *vals[i] == level;
    }
    return mask;
}

std::vector<Facet> partition(const Dataset& parent, const std::string& var) {
    if (var.empty()) throw ArgumentError("partition split needs a variable");
    const Column& col = parent.col(var);
    if (col.kind() != ColumnKind::categorical) {
        throw ArgumentError("split variable \"" + var + "\" is not categorical");
    }
    std::vector<Facet> facets;
    facets.reserve(col.levels().size());
    for (const auto& level : col.levels()) {
        Facet f;
        f.name = level;
        f.label = level;
        f.data = filter_rows(parent, level_mask(col, level));
        facets.push_back(std::move(f));
    }
    return facets;
}

}  // namespace

SplitFunction partition_by_levels(const std::string& var) {
    SplitFunction fn;
    fn.name = "partition_by_levels";
    fn.apply = [var](const Dataset& parent, const std::string& split_var) {
        return partition(parent, var.empty() ? split_var : var);
    };
    return fn;
}

SplitFunction trim_levels_in_group(const std::string& inner_var) {
    SplitFunction fn;
    fn.name = "trim_levels_in_group";
    fn.apply = [inner_var](const Dataset& parent, const std::string& split_var) {
        std::vector<Facet> facets = partition(parent, split_var);
        std::vector<Facet> kept;
        for (auto& facet : facets) {
            if (facet.data.n_rows() == 0) continue;  // drop empty facets of the split var
            const Column& inner = facet.data.col(inner_var);
            std::set<std::string> observed;
            for (std::size_t i = 0; i < inner.size(); ++i) {
                if (!inner.is_null(i)) observed.insert(inner.value_string(i));
            }
            std::vector<std::string> trimmed;
            for (const auto& lvl : inner.levels()) {
                if (observed.count(lvl)) trimmed.push_back(lvl);
            }
            std::vector<Column> cols;
            for (const auto& c : facet.data.columns()) {
                cols.push_back(c.name() == inner_var ? c.with_levels(trimmed) : c);
            }
            facet.data = Dataset(std::move(cols));
            kept.push_back(std::move(facet));
        }
        return kept;
    };
    return fn;
}

SplitFunction add_combo_levels(std::vector<ComboLevel> combos,
                               std::optional<std::vector<std::string>> keep_levels) {
    SplitFunction fn;
    fn.name = "add_combo_levels";
    fn.apply = [combos = std::move(combos), keep_levels = std::move(keep_levels)](
                   const Dataset& parent, const std::string& split_var) {
        std::vector<Facet> facets = partition(parent, split_var);
        const Column& col = parent.col(split_var);
        for (const auto& combo : combos) {
            std::set<std::string> members(combo.levelcombo.begin(), combo.levelcombo.end());
            std::vector<bool> mask(col.size(), false);
            const auto& vals = col.str_values();
            for (std::size_t i = 0; i < vals.size(); ++i) {
                mask[i] = vals[i].has_value() && members.count(*vals[i]) > 0;
            }
            Facet f;
            f.name = combo.valname;
            f.label = combo.label;
            f.data = filter_rows(parent, mask);
            facets.push_back(std::move(f));
        }
        if (keep_levels) {
            std::vector<Facet> kept;
            for (const auto& want : *keep_levels) {
                auto it = std::find_if(facets.begin(), facets.end(),
                                       [&want](const Facet& f) { return f.name == want; });
                if (it == facets.end()) {
                    throw ArgumentError("keep_levels names unknown facet \"" + want + "\"");
                }
                kept.push_back(std::move(*it));
            }
            facets = std::move(kept);
        }
        return facets;
    };
    return fn;
}

double nearest_rank_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw ArgumentError("quantile of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return values[rank - 1];
}

SplitFunction cumulative_quantile_split(const std::string& var, std::vector<double> probabilities) {
    SplitFunction fn;
    fn.name = "cumulative_quantile_split";
    fn.apply = [var, probabilities](const Dataset& parent, const std::string&) {
        const Column& col = parent.col(var);
        std::vector<double> non_null;
        for (const auto& v : col.num_values()) {
            if (v) non_null.push_back(*v);
        }
        std::vector<Facet> facets;
        for (double p : probabilities) {
            std::vector<bool> mask(col.size(), false);
            if (!non_null.empty()) {
                const double q = nearest_rank_quantile(non_null, p);
                const auto& vals = col.num_values();
                for (std::size_t i = 0; i < vals.size(); ++i) {
                    mask[i] = vals[i].has_value() && *vals[i] <= q;
                }
            }
            char name[32];
            std::snprintf(name, sizeof(name), "p%g", p * 100.0);
            Facet f;
            f.name = name;
            f.label = name;
            f.data = filter_rows(parent, mask);
            facets.push_back(std::move(f));
        }
        return facets;
    };
    return fn;
}

SplitFunction all_data_split(const std::string& name, const std::string& label) {
    SplitFunction fn;
    fn.name = "all_data";
    fn.apply = [name, label](const Dataset& parent, const std::string&) {
        Facet f;
        f.name = name;
        f.label = label;
        f.data = parent;
        return std::vector<Facet>{std::move(f)};
    };
    return fn;
}

SplitFunction multivar_split(std::vector<std::string> vars) {
    SplitFunction fn;
    fn.name = "multivar";
    fn.apply = [vars](const Dataset& parent, const std::string&) {
        std::vector<Facet> facets;
        facets.reserve(vars.size());
        for (const auto& var : vars) {
            const Column& col = parent.col(var);  // existence check
            Facet f;
            f.name = var;
            f.label = col.label().empty() ? var : col.label();
            f.data = parent;
            f.analysis_var_override = var;
            facets.push_back(std::move(f));
        }
        return facets;
    };
    return fn;
}

}  // namespace facetab
