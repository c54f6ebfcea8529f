#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "facetab/errors.hpp"
#include "facetab/value.hpp"

namespace facetab {

enum class ColumnKind { categorical, numeric, string_, boolean };

std::string to_string(ColumnKind kind);
ColumnKind column_kind_from_string(const std::string& s);

// One typed, nullable column. Categorical and string columns share the
// string storage; categorical additionally carries an ordered level list
// covering every non-null value.
class Column {
public:
    using StrValues = std::vector<std::optional<std::string>>;
    using NumValues = std::vector<std::optional<double>>;
    using BoolValues = std::vector<std::optional<bool>>;

    static Column categorical(std::string name, StrValues values,
                              std::vector<std::string> levels, std::string label = "");
    static Column numeric(std::string name, NumValues values, std::string label = "");
    static Column text(std::string name, StrValues values, std::string label = "");
    static Column boolean(std::string name, BoolValues values, std::string label = "");

    const std::string& name() const { return name_; }
    ColumnKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::vector<std::string>& levels() const { return levels_; }
    std::size_t size() const;

    bool is_null(std::size_t row) const;
    // String form of a non-null value (numeric values use the raw scalar form).
    std::string value_string(std::size_t row) const;
    std::optional<Scalar> scalar(std::size_t row) const;

    const StrValues& str_values() const;
    const NumValues& num_values() const;
    const BoolValues& bool_values() const;

    // Same column restricted to the rows where keep is true. Levels are
    // preserved; dropping unobserved levels is a split-function concern.
    Column filtered(const std::vector<bool>& keep) const;

    // Copy with the level list replaced (categorical only).
    Column with_levels(std::vector<std::string> levels) const;
    Column with_label(std::string label) const;

    // Distinct non-null values, as strings for set identity.
    std::size_t distinct_non_null() const;

private:
    Column() = default;
    void check_invariants() const;

    std::string name_;
    ColumnKind kind_ = ColumnKind::string_;
    std::string label_;
    std::vector<std::string> levels_;
    std::variant<StrValues, NumValues, BoolValues> values_;
};

// Per-column declarations used to pin ingestion: kind, explicit level
// order, display label.
struct Schema {
    struct ColumnDecl {
        std::optional<ColumnKind> kind;
        std::vector<std::string> levels;
        std::string label;
    };
    // Declaration order matters only for error reporting; lookups by name.
    std::map<std::string, ColumnDecl> columns;

    static Schema from_dataset(const class Dataset& ds);
};

// Immutable in-memory columnar dataset. All columns have equal length and
// unique names; safe for concurrent reads.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Column> columns);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return columns_.size(); }
    const std::vector<Column>& columns() const { return columns_; }

    bool has_column(const std::string& name) const;
    // Throws NameError for unknown columns.
    const Column& col(const std::string& name) const;

private:
    std::vector<Column> columns_;
    std::size_t n_rows_ = 0;
};

// Reads an RFC-4180 CSV with a mandatory header row. Column kinds come
// from the schema when given, otherwise they are inferred: numeric if
// every non-empty cell parses as a finite number, boolean if every
// non-empty cell is one of TRUE/FALSE/true/false, else categorical with
// levels in order of first appearance. Empty cells become null.
Dataset read_csv(const std::string& path, const std::optional<Schema>& schema = std::nullopt);
Dataset read_csv_string(const std::string& text, const std::optional<Schema>& schema = std::nullopt,
                        const std::string& origin = "<string>");

void write_csv(const Dataset& ds, const std::string& path);
std::string write_csv_string(const Dataset& ds);

// JSON schema sidecar: {"col": {"kind": "...", "levels": [...], "label": "..."}, ...}
Schema read_schema(const std::string& path);
void write_schema(const Schema& schema, const std::string& path);

// Rows where mask is true; mask length must equal ds.n_rows().
Dataset filter_rows(const Dataset& ds, const std::vector<bool>& mask);

// Number of distinct non-null values of key, or n_rows when key is absent.
std::size_t distinct_count(const Dataset& ds, const std::optional<std::string>& key = std::nullopt);

}  // namespace facetab
