#include "facetab/render.hpp"

#include <algorithm>

namespace facetab {

namespace {

void walk_rows(const TableNode& node, int base_depth, std::vector<VisibleRow>& out) {
    const int d = base_depth + node.indent_mod;
    int inner = d;
    if (node.label_visible) {
        VisibleRow label_row;
        label_row.depth = d;
        label_row.label = node.label;
        label_row.node = &node;
        label_row.label_footnotes = node.label_footnotes;
        out.push_back(std::move(label_row));
        inner += 1;
    }
    if (node.is_elementary()) {
        for (const auto& row : node.rows) {
            VisibleRow vr;
            vr.depth = inner;
            vr.label = row.label;
            vr.row = &row;
            vr.node = &node;
            out.push_back(std::move(vr));
        }
        return;
    }
    for (const auto& row : node.content) {
        VisibleRow vr;
        vr.depth = inner;
        vr.label = row.label;
        vr.row = &row;
        vr.node = &node;
        out.push_back(std::move(vr));
    }
    if (!node.content.empty()) inner += 1;
    for (const auto& child : node.children) walk_rows(*child, inner, out);
}

std::string markers(const std::vector<int>& refs) {
    std::string out;
    for (int r : refs) {
        out += " {" + std::to_string(r) + "}";
    }
    return out;
}

std::string centered(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s;
    const std::size_t pad = width - s.size();
    const std::size_t left = pad / 2;
    return std::string(left, ' ') + s + std::string(pad - left, ' ');
}

void overlay(std::string& line, std::size_t at, const std::string& text) {
    for (std::size_t i = 0; i < text.size(); ++i) line[at + i] = text[i];
}

std::string rstrip(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

bool prefix_steps_equal(const LeafColumn& a, const LeafColumn& b, std::size_t upto) {
    if (a.steps.size() < upto || b.steps.size() < upto) return false;
    for (std::size_t i = 0; i < upto; ++i) {
        if (a.steps[i].facet_name != b.steps[i].facet_name ||
            a.steps[i].split_name != b.steps[i].split_name) {
            return false;
        }
    }
    return true;
}

std::string cell_text(const DataRow& row, std::size_t leaf) {
    const Cell& cell = row.cells[leaf];
    return cell.formatted() + markers(cell.footnote_refs);
}

}  // namespace

std::vector<VisibleRow> visible_rows(const Table& table) {
    std::vector<VisibleRow> out;
    walk_rows(table.root(), 0, out);
    for (auto& vr : out) vr.depth = std::max(vr.depth, 0);
    return out;
}

ColumnLayout compute_column_layout(const Table& table, const RenderOptions& options) {
    const auto& leaves = table.columns().leaves;
    const std::size_t n = leaves.size();
    const std::size_t gap = static_cast<std::size_t>(options.min_gap);
    ColumnLayout layout;
    layout.header_lines = std::max<std::size_t>(table.columns().depth(), 1);

    const std::vector<VisibleRow> rows = visible_rows(table);

    layout.label_width = 0;
    for (const auto& vr : rows) {
        const std::size_t indent =
            static_cast<std::size_t>(vr.depth) * static_cast<std::size_t>(options.indent_width);
        const std::vector<int>& refs = vr.row ? vr.row->label_footnotes : vr.label_footnotes;
        layout.label_width = std::max(layout.label_width, indent + vr.label.size() +
                                                              markers(refs).size());
    }

    layout.widths.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        layout.widths[i] = leaves[i].steps.back().label.size();
        if (table.columns().show_colcounts) {
            layout.widths[i] = std::max(
                layout.widths[i], std::string("(N=" + std::to_string(leaves[i].count) + ")").size());
        }
        for (const auto& vr : rows) {
            if (vr.row) layout.widths[i] = std::max(layout.widths[i], cell_text(*vr.row, i).size());
        }
    }

    // Header grid with group spans.
    for (std::size_t ln = 0; ln < layout.header_lines; ++ln) {
        std::size_t i = 0;
        while (i < n) {
            const std::size_t k = leaves[i].steps.size();
            if (ln == layout.header_lines - 1) {
                layout.header_cells.push_back({leaves[i].steps.back().label, ln, i, 1});
                ++i;
            } else if (ln + 1 < k) {
                std::size_t j = i + 1;
                while (j < n && leaves[j].steps.size() > ln + 1 &&
                       prefix_steps_equal(leaves[j], leaves[i], ln + 1)) {
                    ++j;
                }
                layout.header_cells.push_back({leaves[i].steps[ln].label, ln, i, j - i});
                i = j;
            } else {
                ++i;  // this leaf's label lives on the bottom line
            }
        }
    }

    // Widen columns when a spanning group label does not fit.
    for (const auto& cell : layout.header_cells) {
        std::size_t span_width = (cell.span - 1) * gap;
        for (std::size_t i = 0; i < cell.span; ++i) span_width += layout.widths[cell.first_leaf + i];
        if (cell.label.size() > span_width) {
            std::size_t deficit = cell.label.size() - span_width;
            for (std::size_t d = 0; d < deficit; ++d) {
                layout.widths[cell.first_leaf + d % cell.span] += 1;
            }
        }
    }

    layout.starts.assign(n, 0);
    std::size_t pos = layout.label_width;
    for (std::size_t i = 0; i < n; ++i) {
        pos += gap;
        layout.starts[i] = pos;
        pos += layout.widths[i];
    }
    layout.total_width = pos;
    return layout;
}

std::string render_text(const Table& table, const RenderOptions& options) {
    const ColumnLayout layout = compute_column_layout(table, options);
    const char hsep = options.hsep.value_or(table.hsep());
    const auto& leaves = table.columns().leaves;
    std::vector<std::string> lines;

    // Header.
    for (std::size_t ln = 0; ln < layout.header_lines; ++ln) {
        std::string line(layout.total_width, ' ');
        for (const auto& cell : layout.header_cells) {
            if (cell.line != ln) continue;
            const std::size_t start = layout.starts[cell.first_leaf];
            const std::size_t last = cell.first_leaf + cell.span - 1;
            const std::size_t width = layout.starts[last] + layout.widths[last] - start;
            overlay(line, start, centered(cell.label, width));
        }
        lines.push_back(rstrip(std::move(line)));
    }
    if (table.columns().show_colcounts) {
        std::string line(layout.total_width, ' ');
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            overlay(line, layout.starts[i],
                    centered("(N=" + std::to_string(leaves[i].count) + ")", layout.widths[i]));
        }
        lines.push_back(rstrip(std::move(line)));
    }
    lines.push_back(std::string(layout.total_width, hsep));

    // Body.
    for (const auto& vr : visible_rows(table)) {
        std::string line(layout.total_width, ' ');
        const std::vector<int>& refs = vr.row ? vr.row->label_footnotes : vr.label_footnotes;
        const std::string label_text =
            std::string(static_cast<std::size_t>(vr.depth * options.indent_width), ' ') + vr.label +
            markers(refs);
        overlay(line, 0, label_text);
        if (vr.row) {
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                overlay(line, layout.starts[i], centered(cell_text(*vr.row, i), layout.widths[i]));
            }
        }
        lines.push_back(rstrip(std::move(line)));
    }

    // Footnotes.
    if (!table.footnotes().empty()) {
        lines.push_back(std::string(layout.total_width, hsep));
        for (std::size_t i = 0; i < table.footnotes().size(); ++i) {
            lines.push_back("{" + std::to_string(i + 1) + "} " + table.footnotes()[i]);
        }
    }

    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace facetab
