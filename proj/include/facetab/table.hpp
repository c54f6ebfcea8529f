#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "facetab/format.hpp"
#include "facetab/value.hpp"

namespace facetab {

enum class RowKind { analysis, content };

struct Cell {
    CellValue value;
    std::string format;                // format-spec string, "" for plain
    std::vector<int> footnote_refs;    // 1-based, in first-reference order

    std::string formatted() const {
        if (format.empty()) return value.to_string();
        return apply_format(format, value);
    }
};

struct DataRow {
    std::string label;
    RowKind kind = RowKind::analysis;
    std::vector<Cell> cells;           // exactly one per leaf column
    std::vector<int> label_footnotes;
};

class TableNode;
using NodePtr = std::shared_ptr<const TableNode>;

// One node of the instantiated table. Subtables mirror the row faceting of
// the generating layout; elementary nodes hold the analysis rows produced
// by one analyze directive. Nodes are immutable; manipulations build new
// trees sharing untouched branches.
class TableNode {
public:
    enum class Kind { subtable, elementary };

    Kind kind = Kind::subtable;
    std::string name;    // path token
    std::string label;   // display string
    bool label_visible = false;
    int indent_mod = 0;
    std::vector<DataRow> rows;       // elementary only (analysis rows)
    std::vector<DataRow> content;    // subtable only (marginal summary rows)
    std::vector<NodePtr> children;   // subtable only
    std::vector<int> label_footnotes;

    bool is_elementary() const { return kind == Kind::elementary; }
};

// Path grammar: tokens alternate split-name / facet-name and optionally
// terminate in an analysis name and/or row label. "@content" addresses a
// facet's group-summary rows, "@analysis" the unique analysis subtable
// among siblings, "*" every sibling (sort only).
using Path = std::vector<std::string>;

inline constexpr const char* kContentToken = "@content";
inline constexpr const char* kAnalysisToken = "@analysis";
inline constexpr const char* kWildcardToken = "*";

Path parse_path(const std::string& text);        // "/"-separated tokens
std::string path_to_string(const Path& path);

// One leaf column: the chain of (split name, facet name, facet label)
// steps that produced it, plus its "(N=...)" count.
struct ColumnStep {
    std::string split_name;  // "" for top-level facets without a split
    std::string facet_name;
    std::string label;
};

struct LeafColumn {
    std::vector<ColumnStep> steps;
    std::size_t count = 0;
    bool in_reference = false;

    Path path() const;
};

struct ColumnInfo {
    std::vector<LeafColumn> leaves;
    bool show_colcounts = false;

    std::size_t depth() const;  // max number of steps over leaves
};

struct ScoreTarget {
    const TableNode* node = nullptr;  // set when the child is a subtree
    const DataRow* row = nullptr;     // set when the child is a row
};
using ScoreFunction = std::function<double(const ScoreTarget&)>;
using PrunePredicate = std::function<bool(const TableNode&)>;

// An instantiated table: the row tree, the leaf columns with their header
// chains, and referential footnote texts. Immutable; every manipulation
// returns a new table and leaves this one untouched.
class Table {
public:
    Table() = default;
    Table(NodePtr root, ColumnInfo columns, char hsep = '-');

    const TableNode& root() const { return *root_; }
    NodePtr root_ptr() const { return root_; }
    const ColumnInfo& columns() const { return columns_; }
    const std::vector<std::string>& footnotes() const { return footnotes_; }
    char hsep() const { return hsep_; }

    // Depth-first, declaration-ordered paths of every data row / leaf column.
    std::vector<Path> row_paths() const;
    std::vector<Path> col_paths() const;

    // Both paths must resolve uniquely (no wildcards).
    const Cell& cell_at(const Path& row_path, const Path& col_path) const;

    // Subtree under row_path restricted to the columns under col_path;
    // empty paths keep the corresponding dimension whole.
    Table subset(const Path& row_path = {}, const Path& col_path = {}) const;

    // Reorders the children of every subtable matched by path (wildcards
    // allowed); stable, so ties keep their original order.
    Table sort_at_path(const Path& path, const ScoreFunction& score, bool decreasing = true) const;

    // Depth-first removal of subtrees where predicate holds; emptied
    // parents are removed recursively, the root never.
    Table prune(const PrunePredicate& predicate = default_prune_predicate()) const;

    // Inserts after the row the path resolves to; a path naming an
    // elementary table appends at its end.
    Table insert_row_at_path(const Path& path, DataRow row) const;

    // Footnote on a label row (node path), a data row, or — with a column
    // path — a single cell. Indices are assigned in first-reference order.
    Table add_footnote_at_path(const Path& row_path, const std::optional<Path>& col_path,
                               const std::string& text) const;

    // Score children by the numeric value of their cell in the given
    // column; subtree children use the row named stat_label (default:
    // their first data row).
    ScoreFunction score_by_column(const Path& col_path,
                                  const std::optional<std::string>& stat_label = std::nullopt) const;

    // Prunes subtrees whose content rows (or, lacking content, analysis
    // rows) contain only zero-valued numeric atoms.
    static PrunePredicate default_prune_predicate();

    // Resolves a column path (exact or unique prefix) to a leaf index.
    std::size_t resolve_leaf(const Path& col_path) const;

private:
    NodePtr root_;
    ColumnInfo columns_;
    std::vector<std::string> footnotes_;
    char hsep_ = '-';
};

}  // namespace facetab
