#include "facetab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "csv_reader.hpp"

namespace facetab {

std::string to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::categorical: return "categorical";
        case ColumnKind::numeric: return "numeric";
        case ColumnKind::string_: return "string";
        case ColumnKind::boolean: return "boolean";
    }
    return "?";
}

ColumnKind column_kind_from_string(const std::string& s) {
    if (s == "categorical") return ColumnKind::categorical;
    if (s == "numeric") return ColumnKind::numeric;
    if (s == "string") return ColumnKind::string_;
    if (s == "boolean") return ColumnKind::boolean;
    throw SchemaError("unknown column kind \"" + s + "\"");
}

// ---------------------------------------------------------------------------
// Column

Column Column::categorical(std::string name, StrValues values, std::vector<std::string> levels,
                           std::string label) {
    Column c;
    c.name_ = std::move(name);
    c.kind_ = ColumnKind::categorical;
    c.label_ = std::move(label);
    c.levels_ = std::move(levels);
    c.values_ = std::move(values);
    c.check_invariants();
    return c;
}

Column Column::numeric(std::string name, NumValues values, std::string label) {
    Column c;
    c.name_ = std::move(name);
    c.kind_ = ColumnKind::numeric;
    c.label_ = std::move(label);
    c.values_ = std::move(values);
    c.check_invariants();
    return c;
}

Column Column::text(std::string name, StrValues values, std::string label) {
    Column c;
    c.name_ = std::move(name);
    c.kind_ = ColumnKind::string_;
    c.label_ = std::move(label);
    c.values_ = std::move(values);
    return c;
}

Column Column::boolean(std::string name, BoolValues values, std::string label) {
    Column c;
    c.name_ = std::move(name);
    c.kind_ = ColumnKind::boolean;
    c.label_ = std::move(label);
    c.values_ = std::move(values);
    return c;
}

void Column::check_invariants() const {
    if (kind_ == ColumnKind::categorical) {
        std::set<std::string> seen;
        for (const auto& lvl : levels_) {
            if (!seen.insert(lvl).second) {
                throw SchemaError("column \"" + name_ + "\": duplicate level \"" + lvl + "\"");
            }
        }
        for (const auto& v : std::get<StrValues>(values_)) {
            if (v && !seen.count(*v)) {
                throw SchemaError("column \"" + name_ + "\": value \"" + *v +
                                  "\" not covered by declared levels");
            }
        }
    } else if (kind_ == ColumnKind::numeric) {
        for (const auto& v : std::get<NumValues>(values_)) {
            if (v && !std::isfinite(*v)) {
                throw SchemaError("column \"" + name_ + "\": non-finite numeric value");
            }
        }
    }
}

std::size_t Column::size() const {
    return std::visit([](const auto& v) { return v.size(); }, values_);
}

bool Column::is_null(std::size_t row) const {
    return std::visit([row](const auto& v) { return !v[row].has_value(); }, values_);
}

std::string Column::value_string(std::size_t row) const {
    switch (kind_) {
        case ColumnKind::categorical:
        case ColumnKind::string_:
            return *std::get<StrValues>(values_)[row];
        case ColumnKind::numeric:
            return scalar_to_string(Scalar(*std::get<NumValues>(values_)[row]));
        case ColumnKind::boolean:
            return *std::get<BoolValues>(values_)[row] ? "true" : "false";
    }
    return "";
}

std::optional<Scalar> Column::scalar(std::size_t row) const {
    if (is_null(row)) return std::nullopt;
    switch (kind_) {
        case ColumnKind::categorical:
        case ColumnKind::string_:
            return Scalar(*std::get<StrValues>(values_)[row]);
        case ColumnKind::numeric:
            return Scalar(*std::get<NumValues>(values_)[row]);
        case ColumnKind::boolean:
            return Scalar(*std::get<BoolValues>(values_)[row]);
    }
    return std::nullopt;
}

const Column::StrValues& Column::str_values() const {
    if (kind_ != ColumnKind::categorical && kind_ != ColumnKind::string_) {
        throw ArgumentError("column \"" + name_ + "\" is not categorical/string");
    }
    return std::get<StrValues>(values_);
}

const Column::NumValues& Column::num_values() const {
    if (kind_ != ColumnKind::numeric) {
        throw ArgumentError("column \"" + name_ + "\" is not numeric");
    }
    return std::get<NumValues>(values_);
}

const Column::BoolValues& Column::bool_values() const {
    if (kind_ != ColumnKind::boolean) {
        throw ArgumentError("column \"" + name_ + "\" is not boolean");
    }
    return std::get<BoolValues>(values_);
}

Column Column::filtered(const std::vector<bool>& keep) const {
    Column out = *this;
    std::visit(
        [&keep](auto& vals) {
            std::remove_reference_t<decltype(vals)> next;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (keep[i]) next.push_back(vals[i]);
            }
            vals = std::move(next);
        },
        out.values_);
    return out;
}

Column Column::with_levels(std::vector<std::string> levels) const {
    if (kind_ != ColumnKind::categorical) {
        throw ArgumentError("column \"" + name_ + "\" is not categorical");
    }
    Column out = *this;
    out.levels_ = std::move(levels);
    out.check_invariants();
    return out;
}

Column Column::with_label(std::string label) const {
    Column out = *this;
    out.label_ = std::move(label);
    return out;
}

std::size_t Column::distinct_non_null() const {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!is_null(i)) seen.insert(value_string(i));
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {
    std::set<std::string> names;
    for (const auto& c : columns_) {
        if (!names.insert(c.name()).second) {
            throw NameError("duplicate column name \"" + c.name() + "\"");
        }
    }
    n_rows_ = columns_.empty() ? 0 : columns_.front().size();
    for (const auto& c : columns_) {
        if (c.size() != n_rows_) {
            throw ArgumentError("column \"" + c.name() + "\" has length " +
                                std::to_string(c.size()) + ", expected " + std::to_string(n_rows_));
        }
    }
}

bool Dataset::has_column(const std::string& name) const {
    for (const auto& c : columns_) {
        if (c.name() == name) return true;
    }
    return false;
}

const Column& Dataset::col(const std::string& name) const {
    for (const auto& c : columns_) {
        if (c.name() == name) return c;
    }
    throw NameError("unknown column \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// CSV

namespace {

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    if (begin != end && *begin == '+') ++begin;
    if (begin == end) return false;
    auto [ptr, ec] = std::from_chars(begin, end, out, std::chars_format::general);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_bool_token(const std::string& s, bool& out) {
    if (s == "TRUE" || s == "true") {
        out = true;
        return true;
    }
    if (s == "FALSE" || s == "false") {
        out = false;
        return true;
    }
    return false;
}

Column build_column(const std::string& name, const std::vector<std::string>& raw,
                    const std::vector<bool>& present, const Schema::ColumnDecl* decl) {
    const std::size_t n = raw.size();
    std::optional<ColumnKind> kind = decl && decl->kind ? decl->kind : std::nullopt;
    const std::string label = decl ? decl->label : "";

    if (!kind) {
        bool any = false;
        bool all_numeric = true;
        bool all_bool = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (!present[i]) continue;
            any = true;
            double d;
            bool b;
            if (!parse_number(raw[i], d)) all_numeric = false;
            if (!parse_bool_token(raw[i], b)) all_bool = false;
            if (!all_numeric && !all_bool) break;
        }
        if (!any) {
            kind = ColumnKind::categorical;  // no data to infer from
        } else if (all_numeric) {
            kind = ColumnKind::numeric;
        } else if (all_bool) {
            kind = ColumnKind::boolean;
        } else {
            kind = ColumnKind::categorical;
        }
    }

    switch (*kind) {
        case ColumnKind::numeric: {
            Column::NumValues vals(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!present[i]) continue;
                double d;
                if (!parse_number(raw[i], d)) {
                    throw SchemaError("column \"" + name + "\": value \"" + raw[i] +
                                      "\" is not numeric");
                }
                vals[i] = d;
            }
            return Column::numeric(name, std::move(vals), label);
        }
        case ColumnKind::boolean: {
            Column::BoolValues vals(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!present[i]) continue;
                bool b;
                if (!parse_bool_token(raw[i], b)) {
                    throw SchemaError("column \"" + name + "\": value \"" + raw[i] +
                                      "\" is not boolean");
                }
                vals[i] = b;
            }
            return Column::boolean(name, std::move(vals), label);
        }
        case ColumnKind::string_: {
            Column::StrValues vals(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (present[i]) vals[i] = raw[i];
            }
            return Column::text(name, std::move(vals), label);
        }
        case ColumnKind::categorical: {
            Column::StrValues vals(n);
            std::vector<std::string> levels;
            std::set<std::string> level_set;
            if (decl && !decl->levels.empty()) {
                levels = decl->levels;
                level_set.insert(levels.begin(), levels.end());
            }
            const bool declared = !levels.empty();
            for (std::size_t i = 0; i < n; ++i) {
                if (!present[i]) continue;
                vals[i] = raw[i];
                if (!level_set.count(raw[i])) {
                    if (declared) {
                        throw SchemaError("column \"" + name + "\": value \"" + raw[i] +
                                          "\" not covered by declared levels");
                    }
                    level_set.insert(raw[i]);
                    levels.push_back(raw[i]);
                }
            }
            return Column::categorical(name, std::move(vals), std::move(levels), label);
        }
    }
    throw IngestError("unreachable");
}

}  // namespace

Dataset read_csv_string(const std::string& text, const std::optional<Schema>& schema,
                        const std::string& origin) {
    detail::CsvReader reader(text);
    std::vector<std::string> header;
    std::size_t record_no = 0;
    if (!reader.next(header, record_no) || (header.size() == 1 && header[0].empty())) {
        throw IngestError(origin + ": missing header row");
    }
    {
        std::set<std::string> names;
        for (const auto& h : header) {
            if (!names.insert(h).second) {
                throw NameError(origin + ": duplicate column \"" + h + "\" in header");
            }
        }
    }

    const std::size_t ncols = header.size();
    std::vector<std::vector<std::string>> raw(ncols);
    std::vector<std::vector<bool>> present(ncols);
    std::vector<std::string> fields;
    while (reader.next(fields, record_no)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != ncols) {
            throw IngestError(origin + ": record " + std::to_string(record_no) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(ncols));
        }
        for (std::size_t c = 0; c < ncols; ++c) {
            raw[c].push_back(fields[c]);
            present[c].push_back(!fields[c].empty());
        }
    }

    if (schema) {
        for (const auto& [name, decl] : schema->columns) {
            if (std::find(header.begin(), header.end(), name) == header.end()) {
                throw SchemaError(origin + ": schema declares column \"" + name +
                                  "\" which is not present");
            }
            if (!decl.levels.empty() && decl.kind && *decl.kind != ColumnKind::categorical) {
                throw SchemaError("column \"" + name + "\": levels declared for " +
                                  to_string(*decl.kind) + " column");
            }
        }
    }

    std::vector<Column> columns;
    columns.reserve(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
        std::optional<Schema::ColumnDecl> decl;
        if (schema) {
            auto it = schema->columns.find(header[c]);
            if (it != schema->columns.end()) {
                decl = it->second;
                if (!decl->kind && !decl->levels.empty()) decl->kind = ColumnKind::categorical;
            }
        }
        columns.push_back(build_column(header[c], raw[c], present[c], decl ? &*decl : nullptr));
    }
    return Dataset(std::move(columns));
}

Dataset read_csv(const std::string& path, const std::optional<Schema>& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_csv_string(buf.str(), schema, path);
}


std::string write_csv_string(const Dataset& ds) {
    std::string out;
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
        if (c) out += ',';
        out += detail::csv_quote(ds.columns()[c].name());
    }
    out += '\n';
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        for (std::size_t c = 0; c < ds.n_cols(); ++c) {
            if (c) out += ',';
            const Column& col = ds.columns()[c];
            if (!col.is_null(r)) out += detail::csv_quote(col.value_string(r));
        }
        out += '\n';
    }
    return out;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    out << write_csv_string(ds);
    if (!out) throw IoError("failed writing \"" + path + "\"");
}

// ---------------------------------------------------------------------------
// Schema I/O

Schema Schema::from_dataset(const Dataset& ds) {
    Schema schema;
    for (const auto& c : ds.columns()) {
        ColumnDecl decl;
        decl.kind = c.kind();
        decl.label = c.label();
        if (c.kind() == ColumnKind::categorical) decl.levels = c.levels();
        schema.columns[c.name()] = std::move(decl);
    }
    return schema;
}

Schema read_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    if (!j.is_object()) throw SchemaError(path + ": expected a JSON object");
    Schema schema;
    for (auto& [name, decl_json] : j.items()) {
        Schema::ColumnDecl decl;
        if (decl_json.contains("kind")) {
            decl.kind = column_kind_from_string(decl_json["kind"].get<std::string>());
        }
        if (decl_json.contains("levels")) {
            for (const auto& lvl : decl_json["levels"]) {
                decl.levels.push_back(lvl.is_string() ? lvl.get<std::string>()
                                                      : lvl.dump());
            }
        }
        if (decl_json.contains("label")) decl.label = decl_json["label"].get<std::string>();
        schema.columns[name] = std::move(decl);
    }
    return schema;
}

void write_schema(const Schema& schema, const std::string& path) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, decl] : schema.columns) {
        nlohmann::json d = nlohmann::json::object();
        if (decl.kind) d["kind"] = to_string(*decl.kind);
        if (!decl.levels.empty()) d["levels"] = decl.levels;
        if (!decl.label.empty()) d["label"] = decl.label;
        j[name] = std::move(d);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Row operations

Dataset filter_rows(const Dataset& ds, const std::vector<bool>& mask) {
    if (mask.size() != ds.n_rows()) {
        throw ArgumentError("mask length " + std::to_string(mask.size()) +
                            " does not match row count " + std::to_string(ds.n_rows()));
    }
    std::vector<Column> cols;
    cols.reserve(ds.n_cols());
    for (const auto& c : ds.columns()) cols.push_back(c.filtered(mask));
    return Dataset(std::move(cols));
}

std::size_t distinct_count(const Dataset& ds, const std::optional<std::string>& key) {
    if (!key) return ds.n_rows();
    return ds.col(*key).distinct_non_null();
}

}  // namespace facetab
