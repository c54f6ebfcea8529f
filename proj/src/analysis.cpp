#include "facetab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "facetab/errors.hpp"

namespace facetab {

namespace {

std::vector<double> non_null_numeric(const Column& values) {
    std::vector<double> out;
    for (const auto& v : values.num_values()) {
        if (v) out.push_back(*v);
    }
    return out;
}

double proportion_of(std::size_t n, std::size_t total) {
    return total == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(total);
}

std::size_t count_level(const Column& values, const std::string& level) {
    std::size_t n = 0;
    for (const auto& v : values.str_values()) {
        if (v && *v == level) ++n;
    }
    return n;
}

}  // namespace

AnalysisFunction afun_counts() {
    return [](const Column& values, const FacetContext&) {
        VerticalCellGroup vcg;
        vcg.rows.push_back({"count", CellValue(static_cast<std::int64_t>(values.size())), "xx"});
        return vcg;
    };
}

AnalysisFunction afun_level_counts() {
    return [](const Column& values, const FacetContext&) {
        VerticalCellGroup vcg;
        for (const auto& level : values.levels()) {
            vcg.rows.push_back(
                {level, CellValue(static_cast<std::int64_t>(count_level(values, level))), "xx"});
        }
        return vcg;
    };
}

AnalysisFunction afun_count_pct() {
    return [](const Column& values, const FacetContext& ctx) {
        VerticalCellGroup vcg;
        for (const auto& level : values.levels()) {
            const std::size_t n = count_level(values, level);
            vcg.rows.push_back({level,
                                CellValue::tuple({Scalar(static_cast<std::int64_t>(n)),
                                                  Scalar(proportion_of(n, ctx.col_count))}),
                                "xx (xx.x%)"});
        }
        return vcg;
    };
}

AnalysisFunction afun_mean_sd() {
    return [](const Column& values, const FacetContext&) {
        const std::vector<double> xs = non_null_numeric(values);
        VerticalCellGroup vcg;
        if (xs.empty()) {
            vcg.rows.push_back(CellRow::blank_row("Mean"));
            vcg.rows.push_back(CellRow::blank_row("sd"));
            return vcg;
        }
        double sum = 0.0;
        for (double x : xs) sum += x;
        const double mean = sum / static_cast<double>(xs.size());
        vcg.rows.push_back({"Mean", CellValue(mean), "xx.x"});
        if (xs.size() < 2) {
            vcg.rows.push_back(CellRow::blank_row("sd"));
        } else {
            double ss = 0.0;
            for (double x : xs) ss += (x - mean) * (x - mean);
            vcg.rows.push_back(
                {"sd", CellValue(std::sqrt(ss / static_cast<double>(xs.size() - 1))), "xx.x"});
        }
        return vcg;
    };
}

AnalysisFunction afun_min_max() {
    return [](const Column& values, const FacetContext&) {
        const std::vector<double> xs = non_null_numeric(values);
        VerticalCellGroup vcg;
        if (xs.empty()) {
            vcg.rows.push_back(CellRow::blank_row("Min - Max"));
            return vcg;
        }
        const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
        vcg.rows.push_back(
            {"Min - Max", CellValue::tuple({Scalar(*lo), Scalar(*hi)}), "xx.x - xx.x"});
        return vcg;
    };
}

AnalysisFunction afun_distinct_count() {
    return [](const Column& values, const FacetContext&) {
        VerticalCellGroup vcg;
        vcg.rows.push_back(
            {"count", CellValue(static_cast<std::int64_t>(values.distinct_non_null())), "xx"});
        return vcg;
    };
}

AnalysisFunction afun_events_patients() {
    return [](const Column& values, const FacetContext& ctx) {
        const std::size_t patients = values.distinct_non_null();
        VerticalCellGroup vcg;
        vcg.rows.push_back({"Patients with at least one event",
                            CellValue::tuple({Scalar(static_cast<std::int64_t>(patients)),
                                              Scalar(proportion_of(patients, ctx.col_count))}),
                            "xx (xx.xx%)"});
        vcg.rows.push_back(
            {"Total events", CellValue(static_cast<std::int64_t>(values.size())), "xx"});
        return vcg;
    };
}

AnalysisFunction afun_n_pct_of_column() {
    return [](const Column& values, const FacetContext& ctx) {
        const std::size_t n = values.size();
        VerticalCellGroup vcg;
        vcg.rows.push_back({"n",
                            CellValue::tuple({Scalar(static_cast<std::int64_t>(n)),
                                              Scalar(proportion_of(n, ctx.col_count))}),
                            "xx (xx.x%)"});
        return vcg;
    };
}

AnalysisFunction afun_count_once_per_id(std::string id_var) {
    return [id_var = std::move(id_var)](const Column& values, const FacetContext& ctx) {
        if (!ctx.parent_data) throw ArgumentError("count_once_per_id needs facet data");
        const Column& ids = ctx.parent_data->col(id_var);
        VerticalCellGroup vcg;
        for (const auto& level : values.levels()) {
            std::set<std::string> seen;
            const auto& vals = values.str_values();
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (vals[i] && *vals[i] == level && !ids.is_null(i)) {
                    seen.insert(ids.value_string(i));
                }
            }
            vcg.rows.push_back(
                {level, CellValue(static_cast<std::int64_t>(seen.size())), "xx"});
        }
        return vcg;
    };
}

AnalysisFunction registry_function(const std::string& name,
                                   const std::map<std::string, std::string>& args) {
    if (name == "counts") return afun_counts();
    if (name == "level_counts") return afun_level_counts();
    if (name == "count_pct") return afun_count_pct();
    if (name == "mean_sd") return afun_mean_sd();
    if (name == "min_max") return afun_min_max();
    if (name == "distinct_count") return afun_distinct_count();
    if (name == "events_patients") return afun_events_patients();
    if (name == "n_pct_of_column") return afun_n_pct_of_column();
    if (name == "count_once_per_id") {
        auto it = args.find("id_var");
        return afun_count_once_per_id(it != args.end() ? it->second : "USUBJID");
    }
    throw LayoutError("unknown analysis function \"" + name + "\"");
}

std::vector<std::string> registry_function_names() {
    return {"counts",         "level_counts",  "count_pct",
            "mean_sd",        "min_max",       "distinct_count",
            "events_patients", "n_pct_of_column", "count_once_per_id"};
}

}  // namespace facetab
