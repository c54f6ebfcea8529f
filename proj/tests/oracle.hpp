#pragma once

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "facetab/dataset.hpp"

// Independent brute-force group-by oracle used to check engine cells. It
// never goes through split functions or the table machinery: just direct
// scans of the raw columns.
namespace facetab::testing {

struct Filter {
    std::string var;
    std::string level;
};

inline std::vector<std::size_t> oracle_rows(const Dataset& ds, const std::vector<Filter>& filters) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        bool match = true;
        for (const auto& f : filters) {
            const Column& col = ds.col(f.var);
            if (col.is_null(r) || col.value_string(r) != f.level) {
                match = false;
                break;
            }
        }
        if (match) rows.push_back(r);
    }
    return rows;
}

inline std::size_t oracle_count(const Dataset& ds, const std::vector<Filter>& filters) {
    return oracle_rows(ds, filters).size();
}

inline std::size_t oracle_distinct(const Dataset& ds, const std::vector<Filter>& filters,
                                   const std::string& key) {
    std::set<std::string> seen;
    const Column& col = ds.col(key);
    for (std::size_t r : oracle_rows(ds, filters)) {
        if (!col.is_null(r)) seen.insert(col.value_string(r));
    }
    return seen.size();
}

inline std::vector<double> oracle_values(const Dataset& ds, const std::vector<Filter>& filters,
                                         const std::string& var) {
    std::vector<double> out;
    const Column& col = ds.col(var);
    for (std::size_t r : oracle_rows(ds, filters)) {
        if (!col.is_null(r)) out.push_back(*col.num_values()[r]);
    }
    return out;
}

inline double oracle_mean(const Dataset& ds, const std::vector<Filter>& filters,
                          const std::string& var) {
    const auto xs = oracle_values(ds, filters, var);
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

inline double oracle_sd(const Dataset& ds, const std::vector<Filter>& filters,
                        const std::string& var) {
    const auto xs = oracle_values(ds, filters, var);
    const double mean = oracle_mean(ds, filters, var);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Random dataset with categorical columns g0..g{k-1} (2..6 levels each,
// some null values), a numeric column x and a unique id column.
inline Dataset random_dataset(std::mt19937& rng, int n_group_cols) {
    std::uniform_int_distribution<int> n_rows_dist(1, 500);
    const int n = n_rows_dist(rng);
    std::vector<Column> cols;
    for (int g = 0; g < n_group_cols; ++g) {
        std::uniform_int_distribution<int> n_levels_dist(2, 6);
        const int n_levels = n_levels_dist(rng);
        std::vector<std::string> levels;
        for (int l = 0; l < n_levels; ++l) levels.push_back("g" + std::to_string(g) + "_lvl" +
                                                            std::to_string(l));
        Column::StrValues vals;
        std::uniform_int_distribution<int> pick(0, n_levels);  // == n_levels -> null
        for (int r = 0; r < n; ++r) {
            const int v = pick(rng);
            if (v == n_levels) {
                vals.push_back(std::nullopt);
            } else {
                vals.push_back(levels[static_cast<std::size_t>(v)]);
            }
        }
        cols.push_back(Column::categorical("g" + std::to_string(g), std::move(vals), levels));
    }
    Column::NumValues xs;
    std::uniform_real_distribution<double> xdist(-100.0, 100.0);
    std::uniform_int_distribution<int> null_dist(0, 9);
    for (int r = 0; r < n; ++r) {
        if (null_dist(rng) == 0) {
            xs.push_back(std::nullopt);
        } else {
            xs.push_back(xdist(rng));
        }
    }
    cols.push_back(Column::numeric("x", std::move(xs)));
    Column::StrValues ids;
    for (int r = 0; r < n; ++r) ids.push_back("r" + std::to_string(r));
    cols.push_back(Column::text("id", std::move(ids)));
    return Dataset(std::move(cols));
}

}  // namespace facetab::testing
