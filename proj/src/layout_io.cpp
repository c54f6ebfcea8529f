#include "facetab/layout_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace facetab {

namespace {

using nlohmann::json;

[[noreturn]] void bad_record(std::size_t index, const std::string& msg) {
    throw LayoutError("layout record " + std::to_string(index + 1) + ": " + msg);
}

std::string require_string(const json& rec, const char* key, std::size_t index) {
    if (!rec.contains(key) || !rec[key].is_string()) {
        bad_record(index, std::string("missing string field \"") + key + "\"");
    }
    return rec[key].get<std::string>();
}

LabelVisibility visibility(const json& rec, const char* key, LabelVisibility fallback,
                           std::size_t index) {
    if (!rec.contains(key)) return fallback;
    const std::string v = rec[key].get<std::string>();
    if (v == "visible") return LabelVisibility::visible;
    if (v == "hidden") return LabelVisibility::hidden;
    bad_record(index, std::string(key) + " must be \"visible\" or \"hidden\", got \"" + v + "\"");
}

AnalysisFunction parse_afun(const json& rec, const char* key, std::size_t index) {
    if (!rec.contains(key)) bad_record(index, std::string("missing \"") + key + "\"");
    const json& spec = rec[key];
    if (spec.is_string()) return registry_function(spec.get<std::string>());
    if (spec.is_object()) {
        std::map<std::string, std::string> args;
        std::string name;
        for (const auto& [k, v] : spec.items()) {
            if (k == "name") {
                name = v.get<std::string>();
            } else if (v.is_string()) {
                args[k] = v.get<std::string>();
            }
        }
        if (name.empty()) bad_record(index, std::string(key) + " object needs a \"name\"");
        return registry_function(name, args);
    }
    bad_record(index, std::string(key) + " must be a string or an object");
}

std::optional<SplitFunction> parse_split_fun(const json& rec, const std::string& var,
                                             std::size_t index) {
    if (!rec.contains("split_fun")) return std::nullopt;
    const json& spec = rec["split_fun"];
    std::string fun;
    if (spec.is_string()) {
        fun = spec.get<std::string>();
    } else if (spec.is_object() && spec.contains("fun")) {
        fun = spec["fun"].get<std::string>();
    } else {
        bad_record(index, "split_fun must be a string or an object with \"fun\"");
    }

    if (fun == "partition_by_levels") return partition_by_levels(var);
    if (fun == "trim_levels_in_group") {
        if (!spec.is_object() || !spec.contains("inner_var")) {
            bad_record(index, "trim_levels_in_group needs \"inner_var\"");
        }
        return trim_levels_in_group(spec["inner_var"].get<std::string>());
    }
    if (fun == "add_combo_levels") {
        if (!spec.is_object() || !spec.contains("combos")) {
            bad_record(index, "add_combo_levels needs \"combos\"");
        }
        std::vector<ComboLevel> combos;
        for (const auto& c : spec["combos"]) {
            ComboLevel combo;
            combo.valname = c.at("valname").get<std::string>();
            combo.label = c.contains("label") ? c["label"].get<std::string>() : combo.valname;
            for (const auto& lvl : c.at("levelcombo")) {
                combo.levelcombo.push_back(lvl.get<std::string>());
            }
            combos.push_back(std::move(combo));
        }
        std::optional<std::vector<std::string>> keep;
        if (spec.contains("keep_levels")) {
            keep.emplace();
            for (const auto& lvl : spec["keep_levels"]) keep->push_back(lvl.get<std::string>());
        }
        return add_combo_levels(std::move(combos), std::move(keep));
    }
    if (fun == "cumulative_quantile") {
        if (!spec.is_object() || !spec.contains("probabilities")) {
            bad_record(index, "cumulative_quantile needs \"probabilities\"");
        }
        std::vector<double> probs;
        for (const auto& p : spec["probabilities"]) probs.push_back(p.get<double>());
        const std::string qvar =
            spec.contains("var") ? spec["var"].get<std::string>() : var;
        return cumulative_quantile_split(qvar, std::move(probs));
    }
    bad_record(index, "unknown split function \"" + fun + "\"");
}

}  // namespace

Layout layout_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw LayoutError(std::string("layout file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw LayoutError("layout file must be a JSON array of records");

    Layout lyt = basic_table(false);
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& rec = doc[i];
        if (!rec.is_object() || !rec.contains("op")) bad_record(i, "missing \"op\"");
        const std::string op = rec["op"].get<std::string>();

        if (op == "basic_table") {
            if (i != 0) bad_record(i, "basic_table must be the first record");
            lyt = basic_table(rec.value("show_colcounts", false));
        } else if (op == "split_cols_by") {
            const std::string var = require_string(rec, "var", i);
            std::optional<std::string> ref;
            if (rec.contains("ref_group")) ref = rec["ref_group"].get<std::string>();
            lyt = split_cols_by(std::move(lyt), var, parse_split_fun(rec, var, i), std::move(ref));
        } else if (op == "split_rows_by") {
            const std::string var = require_string(rec, "var", i);
            lyt = split_rows_by(std::move(lyt), var, parse_split_fun(rec, var, i),
                                visibility(rec, "child_labels", LabelVisibility::visible, i),
                                rec.value("indent_mod", 0));
        } else if (op == "split_cols_by_multivar") {
            if (!rec.contains("vars") || !rec["vars"].is_array()) {
                bad_record(i, "split_cols_by_multivar needs \"vars\"");
            }
            std::vector<std::string> vars;
            for (const auto& v : rec["vars"]) vars.push_back(v.get<std::string>());
            lyt = split_cols_by_multivar(std::move(lyt), vars);
        } else if (op == "add_overall_col") {
            lyt = add_overall_col(std::move(lyt), require_string(rec, "label", i));
        } else if (op == "analyze") {
            lyt = analyze(std::move(lyt), require_string(rec, "var", i), parse_afun(rec, "afun", i),
                          visibility(rec, "show_labels", LabelVisibility::visible, i),
                          rec.value("var_label", ""), rec.value("indent_mod", 0),
                          rec.value("name", ""));
        } else if (op == "analyze_colvars") {
            lyt = analyze_colvars(std::move(lyt), parse_afun(rec, "afun", i),
                                  visibility(rec, "show_labels", LabelVisibility::hidden, i),
                                  rec.value("var_label", ""), rec.value("indent_mod", 0),
                                  rec.value("name", ""));
        } else if (op == "summarize_row_groups") {
            lyt = summarize_row_groups(std::move(lyt), require_string(rec, "var", i),
                                       parse_afun(rec, "cfun", i));
        } else {
            bad_record(i, "unknown op \"" + op + "\"");
        }
    }
    return lyt;
}

Layout layout_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return layout_from_json(buf.str());
    } catch (const LayoutError& e) {
        throw LayoutError(path + ": " + e.what());
    }
}

}  // namespace facetab
