#include "facetab/table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "facetab/errors.hpp"

namespace facetab {

Path parse_path(const std::string& text) {
    Path out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t sep = text.find('/', start);
        if (sep == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, sep - start));
        start = sep + 1;
    }
    return out;
}

std::string path_to_string(const Path& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '/';
        out += path[i];
    }
    return out;
}

Path LeafColumn::path() const {
    Path out;
    for (const auto& step : steps) {
        if (!step.split_name.empty()) out.push_back(step.split_name);
        out.push_back(step.facet_name);
    }
    return out;
}

std::size_t ColumnInfo::depth() const {
    std::size_t d = 0;
    for (const auto& leaf : leaves) d = std::max(d, leaf.steps.size());
    return d;
}

// ---------------------------------------------------------------------------
// Path resolution

namespace {

std::string quoted_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += '"' + items[i] + '"';
    }
    return out.empty() ? "(none)" : out;
}

std::vector<std::string> node_candidates(const TableNode& node) {
    std::vector<std::string> out;
    if (node.is_elementary()) {
        for (const auto& r : node.rows) out.push_back(r.label);
        return out;
    }
    for (const auto& c : node.children) out.push_back(c->name);
    if (!node.content.empty()) out.push_back(kContentToken);
    return out;
}

[[noreturn]] void path_error(const Path& full, std::size_t failed_at,
                             const std::vector<std::string>& candidates) {
    Path prefix(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(failed_at));
    throw PathError("path \"" + path_to_string(full) + "\": cannot resolve \"" +
                    (failed_at < full.size() ? full[failed_at] : "") + "\" after \"" +
                    path_to_string(prefix) + "\"; candidates: " + quoted_list(candidates));
}

const TableNode* unique_elementary_child(const TableNode& node, const Path& full, std::size_t at) {
    const TableNode* found = nullptr;
    for (const auto& c : node.children) {
        if (c->is_elementary()) {
            if (found) path_error(full, at, node_candidates(node));
            found = c.get();
        }
    }
    if (!found) path_error(full, at, node_candidates(node));
    return found;
}

struct Resolution {
    const TableNode* node = nullptr;           // terminal node
    const TableNode* row_owner = nullptr;      // terminal data row
    bool row_in_content = false;
    std::size_t row_index = 0;
    const TableNode* content_owner = nullptr;  // terminal "@content" group

    bool is_row() const { return row_owner != nullptr; }
    bool is_content_group() const { return content_owner != nullptr; }

    const DataRow& row() const {
        return row_in_content ? row_owner->content[row_index] : row_owner->rows[row_index];
    }
};

int find_row(const std::vector<DataRow>& rows, const std::string& label) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].label == label) return static_cast<int>(i);
    }
    return -1;
}

Resolution resolve_path(const TableNode& root, const Path& path) {
    const TableNode* cur = &root;
    std::size_t i = 0;
    while (i < path.size()) {
        const std::string& tok = path[i];
        if (tok == kWildcardToken) {
            throw PathError("path \"" + path_to_string(path) + "\": wildcard not allowed here");
        }
        if (cur->is_elementary()) {
            const int idx = find_row(cur->rows, tok);
            if (idx < 0) path_error(path, i, node_candidates(*cur));
            if (i + 1 != path.size()) path_error(path, i + 1, {});
            Resolution r;
            r.row_owner = cur;
            r.row_index = static_cast<std::size_t>(idx);
            return r;
        }
        if (tok == kContentToken) {
            if (cur->content.empty()) path_error(path, i, node_candidates(*cur));
            if (i + 1 == path.size()) {
                Resolution r;
                r.content_owner = cur;
                return r;
            }
            const int idx = find_row(cur->content, path[i + 1]);
            if (idx < 0) {
                std::vector<std::string> cands;
                for (const auto& r : cur->content) cands.push_back(r.label);
                path_error(path, i + 1, cands);
            }
            if (i + 2 != path.size()) path_error(path, i + 2, {});
            Resolution r;
            r.row_owner = cur;
            r.row_in_content = true;
            r.row_index = static_cast<std::size_t>(idx);
            return r;
        }
        if (tok == kAnalysisToken) {
            cur = unique_elementary_child(*cur, path, i);
            ++i;
            continue;
        }
        const TableNode* next = nullptr;
        for (const auto& c : cur->children) {
            if (c->name == tok) {
                next = c.get();
                break;
            }
        }
        if (!next) path_error(path, i, node_candidates(*cur));
        cur = next;
        ++i;
    }
    Resolution r;
    r.node = cur;
    return r;
}

// Walks a pre-validated node path, returning the shared pointer.
NodePtr node_ptr_at(NodePtr root, const Path& path) {
    NodePtr cur = std::move(root);
    for (const auto& tok : path) {
        NodePtr next;
        if (tok == kAnalysisToken) {
            for (const auto& c : cur->children) {
                if (c->is_elementary()) {
                    next = c;
                    break;
                }
            }
        } else {
            for (const auto& c : cur->children) {
                if (c->name == tok) {
                    next = c;
                    break;
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

// ---------------------------------------------------------------------------
// Table

Table::Table(NodePtr root, ColumnInfo columns, char hsep)
    : root_(std::move(root)), columns_(std::move(columns)), hsep_(hsep) {}

namespace {

void collect_row_paths(const TableNode& node, Path& prefix, std::vector<Path>& out) {
    if (node.is_elementary()) {
        for (const auto& row : node.rows) {
            Path p = prefix;
            p.push_back(row.label);
            out.push_back(std::move(p));
        }
        return;
    }
    for (const auto& row : node.content) {
        Path p = prefix;
        p.push_back(kContentToken);
        p.push_back(row.label);
        out.push_back(std::move(p));
    }
    for (const auto& child : node.children) {
        prefix.push_back(child->name);
        collect_row_paths(*child, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Path> Table::row_paths() const {
    std::vector<Path> out;
    Path prefix;
    collect_row_paths(*root_, prefix, out);
    return out;
}

std::vector<Path> Table::col_paths() const {
    std::vector<Path> out;
    out.reserve(columns_.leaves.size());
    for (const auto& leaf : columns_.leaves) out.push_back(leaf.path());
    return out;
}

std::size_t Table::resolve_leaf(const Path& col_path) const {
    std::vector<std::size_t> prefix_matches;
    for (std::size_t i = 0; i < columns_.leaves.size(); ++i) {
        const Path p = columns_.leaves[i].path();
        if (p == col_path) return i;
        if (p.size() >= col_path.size() && std::equal(col_path.begin(), col_path.end(), p.begin())) {
            prefix_matches.push_back(i);
        }
    }
    if (prefix_matches.size() == 1) return prefix_matches.front();
    std::vector<std::string> cands;
    for (const auto& leaf : columns_.leaves) cands.push_back(path_to_string(leaf.path()));
    if (prefix_matches.empty()) {
        throw PathError("column path \"" + path_to_string(col_path) +
                        "\" matches no column; columns: " + quoted_list(cands));
    }
    throw PathError("column path \"" + path_to_string(col_path) +
                    "\" is ambiguous; columns: " + quoted_list(cands));
}

const Cell& Table::cell_at(const Path& row_path, const Path& col_path) const {
    const Resolution r = resolve_path(*root_, row_path);
    if (!r.is_row()) {
        throw PathError("path \"" + path_to_string(row_path) +
                        "\" names a subtable, not a row; append a row label");
    }
    const std::size_t leaf = resolve_leaf(col_path);
    return r.row().cells[leaf];
}

// ---------------------------------------------------------------------------
// subset

namespace {

NodePtr filter_cells(const NodePtr& node, const std::vector<std::size_t>& keep) {
    auto out = std::make_shared<TableNode>(*node);
    auto remap = [&keep](std::vector<DataRow>& rows) {
        for (auto& row : rows) {
            std::vector<Cell> cells;
            cells.reserve(keep.size());
            for (std::size_t idx : keep) cells.push_back(row.cells[idx]);
            row.cells = std::move(cells);
        }
    };
    remap(out->rows);
    remap(out->content);
    for (auto& child : out->children) child = filter_cells(child, keep);
    return out;
}

}  // namespace

Table Table::subset(const Path& row_path, const Path& col_path) const {
    NodePtr new_root = root_;
    if (!row_path.empty()) {
        const Resolution r = resolve_path(*root_, row_path);
        if (!r.node) {
            throw PathError("subset path \"" + path_to_string(row_path) +
                            "\" must name a subtable, not a row");
        }
        new_root = node_ptr_at(root_, row_path);
    }

    ColumnInfo new_cols = columns_;
    if (!col_path.empty()) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < columns_.leaves.size(); ++i) {
            const Path p = columns_.leaves[i].path();
            if (p.size() >= col_path.size() &&
                std::equal(col_path.begin(), col_path.end(), p.begin())) {
                keep.push_back(i);
            }
        }
        if (keep.empty()) {
            std::vector<std::string> cands;
            for (const auto& leaf : columns_.leaves) cands.push_back(path_to_string(leaf.path()));
            throw PathError("column path \"" + path_to_string(col_path) +
                            "\" matches no column; columns: " + quoted_list(cands));
        }
        new_cols.leaves.clear();
        for (std::size_t idx : keep) new_cols.leaves.push_back(columns_.leaves[idx]);
        new_root = filter_cells(new_root, keep);
    }

    Table out(new_root, std::move(new_cols), hsep_);
    out.footnotes_ = footnotes_;
    return out;
}

// ---------------------------------------------------------------------------
// sort_at_path

namespace {

double checked_score(const ScoreFunction& score, const ScoreTarget& target, const Path& at,
                     const std::string& child_name) {
    double s;
    try {
        s = score(target);
    } catch (const std::exception& e) {
        Path p = at;
        p.push_back(child_name);
        throw SortError("scoring failed at \"" + path_to_string(p) + "\": " + e.what());
    }
    if (std::isnan(s)) {
        Path p = at;
        p.push_back(child_name);
        throw SortError("score is NaN at \"" + path_to_string(p) + "\"");
    }
    return s;
}

template <typename T, typename GetTarget, typename GetName>
void stable_reorder(std::vector<T>& items, const ScoreFunction& score, bool decreasing,
                    const Path& at, GetTarget get_target, GetName get_name) {
    std::vector<double> scores(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        scores[i] = checked_score(score, get_target(items[i]), at, get_name(items[i]));
    }
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return decreasing ? scores[a] > scores[b] : scores[a] < scores[b];
    });
    std::vector<T> next;
    next.reserve(items.size());
    for (std::size_t idx : order) next.push_back(std::move(items[idx]));
    items = std::move(next);
}

NodePtr sorted_node(const NodePtr& node, const ScoreFunction& score, bool decreasing,
                    const Path& at) {
    auto out = std::make_shared<TableNode>(*node);
    if (out->is_elementary()) {
        stable_reorder(
            out->rows, score, decreasing, at,
            [](const DataRow& r) { return ScoreTarget{nullptr, &r}; },
            [](const DataRow& r) { return r.label; });
    } else {
        stable_reorder(
            out->children, score, decreasing, at,
            [](const NodePtr& c) { return ScoreTarget{c.get(), nullptr}; },
            [](const NodePtr& c) { return c->name; });
    }
    return out;
}

NodePtr sort_transform(const NodePtr& node, std::span<const std::string> tokens,
                       const ScoreFunction& score, bool decreasing, Path& at,
                       std::size_t& matched, const Path& full) {
    if (tokens.empty()) {
        ++matched;
        return sorted_node(node, score, decreasing, at);
    }
    const std::string& tok = tokens.front();
    if (node->is_elementary() || tok == kContentToken) {
        path_error(full, at.size(), node_candidates(*node));
    }
    auto out = std::make_shared<TableNode>(*node);
    bool found = false;
    for (auto& child : out->children) {
        const bool matches = tok == kWildcardToken || child->name == tok ||
                             (tok == kAnalysisToken && child->is_elementary());
        if (!matches) continue;
        found = true;
        at.push_back(child->name);
        child = sort_transform(child, tokens.subspan(1), score, decreasing, at, matched, full);
        at.pop_back();
        if (tok != kWildcardToken) break;
    }
    if (!found) path_error(full, at.size(), node_candidates(*node));
    return out;
}

}  // namespace

Table Table::sort_at_path(const Path& path, const ScoreFunction& score, bool decreasing) const {
    Path at;
    std::size_t matched = 0;
    NodePtr new_root =
        sort_transform(root_, std::span<const std::string>(path), score, decreasing, at, matched,
                       path);
    if (matched == 0) {
        throw PathError("path \"" + path_to_string(path) + "\" matched no subtable");
    }
    Table out(new_root, columns_, hsep_);
    out.footnotes_ = footnotes_;
    return out;
}

// ---------------------------------------------------------------------------
// prune

namespace {

bool node_is_empty(const TableNode& node) {
    if (node.is_elementary()) return node.rows.empty();
    return node.children.empty() && node.content.empty();
}

void gather_analysis_rows(const TableNode& node, std::vector<const DataRow*>& out) {
    if (node.is_elementary()) {
        for (const auto& r : node.rows) out.push_back(&r);
        return;
    }
    for (const auto& c : node.children) gather_analysis_rows(*c, out);
}

bool all_numeric_atoms_zero(const std::vector<const DataRow*>& rows) {
    for (const auto* row : rows) {
        for (const auto& cell : row->cells) {
            if (cell.value.is_blank()) continue;
            for (const auto& part : cell.value.parts()) {
                if (scalar_is_numeric(part) && scalar_as_double(part) != 0.0) return false;
            }
        }
    }
    return true;
}

NodePtr prune_rec(const NodePtr& node, const PrunePredicate& predicate) {
    if (node->is_elementary()) return node;
    auto out = std::make_shared<TableNode>(*node);
    std::vector<NodePtr> kept;
    for (const auto& child : out->children) {
        NodePtr processed = prune_rec(child, predicate);
        if (predicate(*processed)) continue;
        if (node_is_empty(*processed)) continue;
        kept.push_back(std::move(processed));
    }
    out->children = std::move(kept);
    return out;
}

}  // namespace

PrunePredicate Table::default_prune_predicate() {
    return [](const TableNode& node) {
        std::vector<const DataRow*> rows;
        if (!node.is_elementary() && !node.content.empty()) {
            for (const auto& r : node.content) rows.push_back(&r);
        } else {
            gather_analysis_rows(node, rows);
        }
        return all_numeric_atoms_zero(rows);
    };
}

Table Table::prune(const PrunePredicate& predicate) const {
    Table out(prune_rec(root_, predicate), columns_, hsep_);
    out.footnotes_ = footnotes_;
    return out;
}

// ---------------------------------------------------------------------------
// insert_row_at_path

namespace {

NodePtr rebuild_insert(const NodePtr& node, std::span<const std::string> tokens,
                       const DataRow& row) {
    auto out = std::make_shared<TableNode>(*node);
    if (out->is_elementary()) {
        if (tokens.empty()) {
            out->rows.push_back(row);
        } else {
            const int idx = find_row(out->rows, tokens.front());
            out->rows.insert(out->rows.begin() + idx + 1, row);
        }
        return out;
    }
    const std::string& tok = tokens.front();
    for (auto& child : out->children) {
        if (child->name == tok || (tok == kAnalysisToken && child->is_elementary())) {
            child = rebuild_insert(child, tokens.subspan(1), row);
            break;
        }
    }
    return out;
}

}  // namespace

Table Table::insert_row_at_path(const Path& path, DataRow row) const {
    const Resolution r = resolve_path(*root_, path);
    if (r.is_content_group() || (r.is_row() && r.row_in_content)) {
        throw StructureError("path \"" + path_to_string(path) +
                             "\" names group-summary rows; rows can only be inserted into an "
                             "analysis table");
    }
    if (r.node && !r.node->is_elementary()) {
        throw StructureError("path \"" + path_to_string(path) +
                             "\" names a non-elementary node; rows can only be inserted into an "
                             "analysis table");
    }
    if (row.cells.size() != columns_.leaves.size()) {
        throw StructureError("row has " + std::to_string(row.cells.size()) + " cells, table has " +
                             std::to_string(columns_.leaves.size()) + " columns");
    }
    Table out(rebuild_insert(root_, std::span<const std::string>(path), row), columns_, hsep_);
    out.footnotes_ = footnotes_;
    return out;
}

// ---------------------------------------------------------------------------
// add_footnote_at_path

namespace {

NodePtr rebuild_footnote(const NodePtr& node, std::span<const std::string> tokens, int index,
                         const std::optional<std::size_t>& leaf) {
    auto out = std::make_shared<TableNode>(*node);
    if (tokens.empty()) {
        out->label_footnotes.push_back(index);
        return out;
    }
    const std::string& tok = tokens.front();
    if (out->is_elementary() || tok == kContentToken) {
        std::vector<DataRow>& rows = out->is_elementary() ? out->rows : out->content;
        const std::string& label = out->is_elementary() ? tok : tokens[1];
        const int idx = find_row(rows, label);
        if (leaf) {
            rows[idx].cells[*leaf].footnote_refs.push_back(index);
        } else {
            rows[idx].label_footnotes.push_back(index);
        }
        return out;
    }
    for (auto& child : out->children) {
        if (child->name == tok || (tok == kAnalysisToken && child->is_elementary())) {
            child = rebuild_footnote(child, tokens.subspan(1), index, leaf);
            break;
        }
    }
    return out;
}

}  // namespace

Table Table::add_footnote_at_path(const Path& row_path, const std::optional<Path>& col_path,
                                  const std::string& text) const {
    const Resolution r = resolve_path(*root_, row_path);
    if (r.is_content_group()) {
        throw PathError("path \"" + path_to_string(row_path) +
                        "\" names a group-summary block; append a row label");
    }
    std::optional<std::size_t> leaf;
    if (col_path && !col_path->empty()) {
        if (!r.is_row()) {
            throw PathError("cell footnotes need a row path resolving to a row");
        }
        leaf = resolve_leaf(*col_path);
    }
    const int index = static_cast<int>(footnotes_.size()) + 1;
    Table out(rebuild_footnote(root_, std::span<const std::string>(row_path), index, leaf),
              columns_, hsep_);
    out.footnotes_ = footnotes_;
    out.footnotes_.push_back(text);
    return out;
}

// ---------------------------------------------------------------------------
// scoring helper

namespace {

double first_numeric_atom(const Cell& cell) {
    if (cell.value.is_blank()) throw SortError("cell is blank");
    for (const auto& part : cell.value.parts()) {
        if (scalar_is_numeric(part)) return scalar_as_double(part);
    }
    throw SortError("cell has no numeric atom");
}

const DataRow* stat_row_of_node(const TableNode& node, const std::optional<std::string>& stat) {
    std::vector<const DataRow*> rows;
    if (!node.is_elementary()) {
        for (const auto& r : node.content) rows.push_back(&r);
    }
    gather_analysis_rows(node, rows);
    if (rows.empty()) return nullptr;
    if (!stat) return rows.front();
    for (const auto* r : rows) {
        if (r->label == *stat) return r;
    }
    return nullptr;
}

}  // namespace

ScoreFunction Table::score_by_column(const Path& col_path,
                                     const std::optional<std::string>& stat_label) const {
    const std::size_t leaf = resolve_leaf(col_path);
    return [leaf, stat_label](const ScoreTarget& target) {
        if (target.row) return first_numeric_atom(target.row->cells[leaf]);
        const DataRow* row = stat_row_of_node(*target.node, stat_label);
        if (!row) {
            throw SortError(stat_label ? "no row labeled \"" + *stat_label + "\""
                                       : "subtree has no data rows");
        }
        return first_numeric_atom(row->cells[leaf]);
    };
}

}  // namespace facetab
