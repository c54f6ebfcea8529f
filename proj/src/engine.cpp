#include "facetab/engine.hpp"

#include <algorithm>
#include <set>
#include <span>

namespace facetab {

namespace {

struct RestrictStep {
    SplitFunction fn;
    std::string var;
    std::string facet_name;
};

struct BuildLeaf {
    LeafColumn info;
    std::vector<RestrictStep> chain;
    std::optional<std::string> var_override;
    int ref_leaf = -1;
    bool from_splits = false;
};

void check_unique_facets(const std::vector<Facet>& facets, const std::string& split_name) {
    std::set<std::string> names;
    for (const auto& f : facets) {
        if (f.name.empty()) {
            throw BuildError("column/row split \"" + split_name + "\" produced an unnamed facet");
        }
        if (!names.insert(f.name).second) {
            throw BuildError("split \"" + split_name + "\" produced duplicate facet \"" + f.name +
                             "\"");
        }
    }
}

std::vector<Facet> apply_split(const SplitDirective& d, const Dataset& data) {
    std::vector<Facet> facets;
    try {
        facets = d.split_fun.apply(data, d.var);
    } catch (const Error& e) {
        throw BuildError("split \"" + d.split_name + "\": " + e.what());
    }
    check_unique_facets(facets, d.split_name);
    return facets;
}

void expand_columns(const Layout& layout, std::size_t level, const Dataset& data,
                    std::vector<ColumnStep> steps, std::vector<RestrictStep> chain,
                    std::optional<std::string> override_var, std::vector<BuildLeaf>& out) {
    const auto& splits = layout.col_splits();
    if (level == splits.size()) {
        BuildLeaf leaf;
        leaf.info.steps = std::move(steps);
        leaf.chain = std::move(chain);
        leaf.var_override = std::move(override_var);
        leaf.from_splits = true;
        out.push_back(std::move(leaf));
        return;
    }
    const SplitDirective& d = splits[level];
    std::vector<Facet> facets = apply_split(d, data);
    if (d.ref_group) {
        const bool present = std::any_of(facets.begin(), facets.end(), [&](const Facet& f) {
            return f.name == *d.ref_group;
        });
        if (!present) {
            throw BuildError("split \"" + d.split_name + "\": ref_group level \"" + *d.ref_group +
                             "\" not among facets");
        }
    }
    for (auto& facet : facets) {
        auto next_steps = steps;
        next_steps.push_back({d.split_name, facet.name, facet.label});
        auto next_chain = chain;
        next_chain.push_back({d.split_fun, d.var, facet.name});
        auto next_override = facet.analysis_var_override ? facet.analysis_var_override
                                                         : override_var;
        expand_columns(layout, level + 1, facet.data, std::move(next_steps), std::move(next_chain),
                       std::move(next_override), out);
    }
}

Dataset empty_like(const Dataset& ds) {
    return filter_rows(ds, std::vector<bool>(ds.n_rows(), false));
}

Dataset restrict_chain(const Dataset& ds, const std::vector<RestrictStep>& chain, bool strict,
                       const std::string& what) {
    Dataset cur = ds;
    for (const auto& step : chain) {
        std::vector<Facet> facets;
        try {
            facets = step.fn.apply(cur, step.var);
        } catch (const Error& e) {
            throw BuildError(what + ": " + e.what());
        }
        bool found = false;
        for (auto& f : facets) {
            if (f.name == step.facet_name) {
                cur = std::move(f.data);
                found = true;
                break;
            }
        }
        if (!found) {
            if (strict) {
                throw BuildError(what + ": facet \"" + step.facet_name + "\" not present");
            }
            cur = empty_like(cur);
        }
    }
    return cur;
}

std::vector<BuildLeaf> build_column_leaves(const Layout& layout, const Dataset& data,
                                           const std::optional<Dataset>& alt_counts) {
    std::vector<BuildLeaf> leaves;
    if (!layout.col_splits().empty()) {
        expand_columns(layout, 0, data, {}, {}, std::nullopt, leaves);
    }
    for (const auto& overall : layout.overall_cols()) {
        BuildLeaf leaf;
        leaf.info.steps = {{"", overall.label, overall.label}};
        leaf.chain = {{all_data_split(overall.label, overall.label), "", overall.label}};
        leaves.push_back(std::move(leaf));
    }
    if (leaves.empty()) {
        BuildLeaf leaf;
        leaf.info.steps = {{"", "all", ""}};
        leaf.chain = {{all_data_split("all", ""), "", "all"}};
        leaves.push_back(std::move(leaf));
    }

    // Top-level facet names (first-split facets and overall columns) must
    // not collide.
    {
        std::set<std::string> top;
        for (const auto& leaf : leaves) {
            const std::string& name = leaf.info.steps.front().facet_name;
            if (leaf.from_splits) {
                top.insert(name);  // sibling uniqueness already checked per split
            } else if (!top.insert(name).second) {
                throw NameError("duplicate top-level column facet \"" + name + "\"");
            }
        }
    }

    // Reference columns: swap the facet at every ref_group level and point
    // at the resulting sibling leaf.
    const auto& splits = layout.col_splits();
    const bool any_ref = std::any_of(splits.begin(), splits.end(), [](const SplitDirective& d) {
        return d.ref_group.has_value();
    });
    if (any_ref) {
        for (auto& leaf : leaves) {
            if (!leaf.from_splits) continue;
            std::vector<std::string> target;
            bool is_ref = true;
            for (std::size_t i = 0; i < splits.size(); ++i) {
                std::string name = leaf.info.steps[i].facet_name;
                if (splits[i].ref_group) {
                    if (name != *splits[i].ref_group) is_ref = false;
                    name = *splits[i].ref_group;
                }
                target.push_back(std::move(name));
            }
            int found = -1;
            for (std::size_t j = 0; j < leaves.size(); ++j) {
                if (!leaves[j].from_splits) continue;
                bool match = true;
                for (std::size_t i = 0; i < splits.size(); ++i) {
                    if (leaves[j].info.steps[i].facet_name != target[i]) {
                        match = false;
                        break;
                    }
                }
                if (match) {
                    found = static_cast<int>(j);
                    break;
                }
            }
            if (found < 0) {
                throw BuildError("no reference column for \"" +
                                 path_to_string(leaf.info.path()) + "\"");
            }
            leaf.ref_leaf = found;
            leaf.info.in_reference = is_ref;
        }
    }

    const Dataset& count_ds = alt_counts ? *alt_counts : data;
    for (auto& leaf : leaves) {
        leaf.info.count =
            restrict_chain(count_ds, leaf.chain, /*strict=*/true,
                           alt_counts ? "column counts from alt_counts_df" : "column counts")
                .n_rows();
    }
    return leaves;
}

// ---------------------------------------------------------------------------
// Row program

struct BuildState {
    const std::vector<BuildLeaf>& leaves;
    const Dataset& data;
};

std::vector<Dataset> make_panes(const Dataset& row_data, const BuildState& state) {
    std::vector<Dataset> panes;
    panes.reserve(state.leaves.size());
    for (const auto& leaf : state.leaves) {
        panes.push_back(restrict_chain(row_data, leaf.chain, /*strict=*/false,
                                       "column \"" + path_to_string(leaf.info.path()) + "\""));
    }
    return panes;
}

std::string display_label(const Dataset& data, const std::string& var,
                          const std::string& explicit_label, const std::string& fallback) {
    if (!explicit_label.empty()) return explicit_label;
    if (!var.empty() && data.has_column(var) && !data.col(var).label().empty()) {
        return data.col(var).label();
    }
    return fallback;
}

std::vector<DataRow> eval_block(const AnalysisFunction& afun, const std::string& var,
                                bool use_colvars, RowKind kind, const Dataset& row_data,
                                const Path& block_path, const std::string& facet_label,
                                const BuildState& state) {
    const std::vector<Dataset> panes = make_panes(row_data, state);
    std::vector<VerticalCellGroup> groups(state.leaves.size());
    std::vector<std::string> first_labels;

    for (std::size_t i = 0; i < state.leaves.size(); ++i) {
        const BuildLeaf& leaf = state.leaves[i];
        std::string the_var = var;
        if (use_colvars) {
            if (!leaf.var_override) {
                throw BuildError("analyze_colvars: column \"" + path_to_string(leaf.info.path()) +
                                 "\" carries no variable override");
            }
            the_var = *leaf.var_override;
        }
        FacetContext ctx;
        ctx.row_path = block_path;
        ctx.col_path = leaf.info.path();
        ctx.parent_data = &panes[i];
        if (leaf.ref_leaf >= 0) ctx.reference_data = panes[static_cast<std::size_t>(leaf.ref_leaf)];
        ctx.in_reference_column = leaf.info.in_reference;
        ctx.analysis_var = the_var;
        ctx.facet_label = facet_label;
        ctx.col_count = leaf.info.count;

        if (!panes[i].has_column(the_var)) {
            throw BuildError("analysis \"" + path_to_string(block_path) + "\": variable \"" +
                             the_var + "\" not found");
        }
        try {
            groups[i] = afun(panes[i].col(the_var), ctx);
        } catch (const std::exception& e) {
            throw BuildError("analysis \"" + path_to_string(block_path) + "\" failed at column \"" +
                             path_to_string(leaf.info.path()) + "\": " + e.what());
        }

        std::vector<std::string> labels;
        std::set<std::string> seen;
        for (const auto& row : groups[i].rows) {
            if (!seen.insert(row.label).second) {
                throw BuildError("analysis \"" + path_to_string(block_path) +
                                 "\": duplicate cell label \"" + row.label + "\" in column \"" +
                                 path_to_string(leaf.info.path()) + "\"");
            }
            labels.push_back(row.label);
        }
        if (i == 0) {
            first_labels = std::move(labels);
        } else if (labels != first_labels) {
            throw BuildError("analysis \"" + path_to_string(block_path) +
                             "\": cell labels differ between columns \"" +
                             path_to_string(state.leaves[0].info.path()) + "\" and \"" +
                             path_to_string(leaf.info.path()) + "\"");
        }
    }

    std::vector<DataRow> rows;
    rows.reserve(first_labels.size());
    for (std::size_t r = 0; r < first_labels.size(); ++r) {
        DataRow row;
        row.label = first_labels[r];
        row.kind = kind;
        for (std::size_t i = 0; i < state.leaves.size(); ++i) {
            const CellRow& src = groups[i].rows[r];
            Cell cell;
            cell.format = src.format;
            if (!src.blank) cell.value = src.value;
            row.cells.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void check_sibling_names(const std::vector<NodePtr>& children) {
    std::set<std::string> names;
    for (const auto& c : children) {
        if (!names.insert(c->name).second) {
            throw BuildError("duplicate sibling table \"" + c->name +
                             "\"; give the analyze directive an explicit name");
        }
    }
}

std::vector<NodePtr> exec_program(std::span<const RowDirective> program, const Dataset& data,
                                  Path& row_path, const std::string& facet_label,
                                  const BuildState& state) {
    std::vector<NodePtr> children;
    for (std::size_t i = 0; i < program.size(); ++i) {
        if (const auto* an = std::get_if<AnalyzeDirective>(&program[i])) {
            auto node = std::make_shared<TableNode>();
            node->kind = TableNode::Kind::elementary;
            node->name = an->name;
            node->label = display_label(data, an->var, an->var_label,
                                        an->use_colvars ? an->name : an->var);
            node->label_visible = an->show_labels == LabelVisibility::visible;
            node->indent_mod = an->indent_mod;
            row_path.push_back(an->name);
            node->rows = eval_block(an->afun, an->var, an->use_colvars, RowKind::analysis, data,
                                    row_path, facet_label, state);
            row_path.pop_back();
            children.push_back(std::move(node));
            continue;
        }

        const auto& split = std::get<SplitDirective>(program[i]);
        auto split_node = std::make_shared<TableNode>();
        split_node->kind = TableNode::Kind::subtable;
        split_node->name = split.split_name;
        split_node->indent_mod = split.indent_mod;

        row_path.push_back(split.split_name);
        std::vector<Facet> facets = apply_split(split, data);
        for (auto& facet : facets) {
            auto fnode = std::make_shared<TableNode>();
            fnode->kind = TableNode::Kind::subtable;
            fnode->name = facet.name;
            fnode->label = facet.label;
            fnode->label_visible = split.child_labels == LabelVisibility::visible;
            row_path.push_back(facet.name);
            if (split.content) {
                row_path.push_back(kContentToken);
                fnode->content = eval_block(split.content->cfun, split.content->var, false,
                                            RowKind::content, facet.data, row_path, facet.label,
                                            state);
                row_path.pop_back();
            }
            fnode->children = exec_program(program.subspan(i + 1), facet.data, row_path,
                                           facet.label, state);
            row_path.pop_back();
            split_node->children.push_back(std::move(fnode));
        }
        row_path.pop_back();
        children.push_back(std::move(split_node));
        break;  // everything after a row split nests inside its facets
    }
    check_sibling_names(children);
    return children;
}

void validate_layout(const Layout& layout, const Dataset& data,
                     const std::optional<Dataset>& alt_counts) {
    bool has_cells = false;
    for (const auto& dir : layout.row_program()) {
        if (std::holds_alternative<AnalyzeDirective>(dir)) {
            has_cells = true;
        } else if (std::get<SplitDirective>(dir).content) {
            has_cells = true;
        }
    }
    if (!has_cells) {
        throw LayoutError("layout declares no analyses or group summaries");
    }

    auto require_var = [&](const std::string& var, const std::string& where) {
        if (!var.empty() && !data.has_column(var)) {
            throw BuildError(where + ": variable \"" + var + "\" not found in data");
        }
    };
    for (const auto& d : layout.col_splits()) {
        require_var(d.var, "column split \"" + d.split_name + "\"");
        if (!d.var.empty() && alt_counts && !alt_counts->has_column(d.var)) {
            throw BuildError("column split \"" + d.split_name + "\": variable \"" + d.var +
                             "\" not found in alt_counts_df");
        }
    }
    for (const auto& dir : layout.row_program()) {
        if (const auto* an = std::get_if<AnalyzeDirective>(&dir)) {
            if (!an->use_colvars) require_var(an->var, "analyze \"" + an->name + "\"");
        } else {
            const auto& split = std::get<SplitDirective>(dir);
            require_var(split.var, "row split \"" + split.split_name + "\"");
            if (split.content) {
                require_var(split.content->var, "summarize_row_groups on \"" + split.split_name +
                                                    "\"");
            }
        }
    }
}

ColumnInfo leaves_to_info(const std::vector<BuildLeaf>& leaves, bool show_colcounts) {
    ColumnInfo info;
    info.show_colcounts = show_colcounts;
    info.leaves.reserve(leaves.size());
    for (const auto& leaf : leaves) info.leaves.push_back(leaf.info);
    return info;
}

}  // namespace

ColumnInfo apply_column_splits(const Layout& layout, const Dataset& data,
                               const std::optional<Dataset>& alt_counts) {
    return leaves_to_info(build_column_leaves(layout, data, alt_counts),
                          layout.show_colcounts());
}

Table build_table(const Layout& layout, const Dataset& data,
                  const std::optional<Dataset>& alt_counts_df, char hsep) {
    validate_layout(layout, data, alt_counts_df);

    std::vector<BuildLeaf> leaves = build_column_leaves(layout, data, alt_counts_df);

    const bool uses_colvars = std::any_of(
        layout.row_program().begin(), layout.row_program().end(), [](const RowDirective& dir) {
            const auto* an = std::get_if<AnalyzeDirective>(&dir);
            return an && an->use_colvars;
        });
    if (uses_colvars) {
        const bool any_override = std::any_of(leaves.begin(), leaves.end(), [](const BuildLeaf& l) {
            return l.var_override.has_value();
        });
        if (!any_override) {
            throw LayoutError("analyze_colvars requires a multivar column split");
        }
    }

    BuildState state{leaves, data};
    auto root = std::make_shared<TableNode>();
    root->kind = TableNode::Kind::subtable;
    root->name = "root";
    Path row_path;
    root->children = exec_program(std::span<const RowDirective>(layout.row_program()), data,
                                  row_path, "", state);

    return Table(std::move(root), leaves_to_info(leaves, layout.show_colcounts()), hsep);
}

}  // namespace facetab
