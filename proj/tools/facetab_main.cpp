#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "facetab/ard.hpp"
#include "facetab/engine.hpp"
#include "facetab/layout_io.hpp"
#include "facetab/render.hpp"

namespace {

struct InputArgs {
    std::string data_path;
    std::string schema_path;
    std::string alt_counts_path;
    std::string layout_path;
    std::string hsep = "-";
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
    cmd->add_option("--data", in.data_path, "input CSV")->required();
    cmd->add_option("--schema", in.schema_path, "JSON schema sidecar for --data");
    cmd->add_option("--alt-counts", in.alt_counts_path,
                    "CSV used only for the column (N=...) counts");
    cmd->add_option("--layout", in.layout_path, "layout file (JSON array of directives)")
        ->required();
    cmd->add_option("--hsep", in.hsep, "header separator character")
        ->check(CLI::Validator(
            [](std::string& s) { return s.size() == 1 ? "" : "expected a single character"; },
            "CHAR"));
}

facetab::Table build_from_args(const InputArgs& in) {
    std::optional<facetab::Schema> schema;
    if (!in.schema_path.empty()) schema = facetab::read_schema(in.schema_path);
    const facetab::Dataset data = facetab::read_csv(in.data_path, schema);
    std::optional<facetab::Dataset> alt;
    if (!in.alt_counts_path.empty()) alt = facetab::read_csv(in.alt_counts_path);
    const facetab::Layout layout = facetab::layout_from_file(in.layout_path);
    return facetab::build_table(layout, data, alt, in.hsep[0]);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw facetab::IoError("cannot open \"" + out_path + "\" for writing");
    out << text;
    if (!out) throw facetab::IoError("failed writing \"" + out_path + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"declarative tabulation: build, inspect, manipulate, render, export"};
    app.require_subcommand(1);

    InputArgs build_in;
    std::string build_out;
    std::string build_format = "text";
    bool include_blanks = false;
    CLI::App* cmd_build = app.add_subcommand("build", "build a table and render or export it");
    add_input_options(cmd_build, build_in);
    cmd_build->add_option("--out", build_out, "output file (default: stdout)");
    cmd_build->add_option("--format", build_format, "output format")
        ->check(CLI::IsMember({"text", "ard"}));
    cmd_build->add_flag("--include-blanks", include_blanks,
                        "keep blank cells in the ARD export");

    InputArgs paths_in;
    std::string dimension;
    CLI::App* cmd_paths = app.add_subcommand("paths", "list row or column paths");
    add_input_options(cmd_paths, paths_in);
    cmd_paths->add_option("--dimension", dimension, "rows or cols")
        ->required()
        ->check(CLI::IsMember({"rows", "cols"}));

    InputArgs query_in;
    std::string query_row;
    std::string query_col;
    CLI::App* cmd_query = app.add_subcommand("query", "print one cell (raw TAB formatted)");
    add_input_options(cmd_query, query_in);
    cmd_query->add_option("--row", query_row, "row path, \"/\"-separated")->required();
    cmd_query->add_option("--col", query_col, "column path, \"/\"-separated")->required();

    InputArgs sort_in;
    std::string sort_at;
    std::string sort_by;
    std::string sort_stat;
    bool sort_desc = false;
    CLI::App* cmd_sort = app.add_subcommand("sort", "sort children at a path and re-render");
    add_input_options(cmd_sort, sort_in);
    cmd_sort->add_option("--at", sort_at, "row path of the subtable(s); \"*\" matches all siblings")
        ->required();
    cmd_sort->add_option("--by", sort_by, "column path supplying the score")->required();
    cmd_sort->add_option("--stat", sort_stat, "row label scored for subtree children");
    cmd_sort->add_flag("--desc", sort_desc, "sort decreasing");

    InputArgs prune_in;
    CLI::App* cmd_prune = app.add_subcommand("prune", "drop all-zero subtrees and re-render");
    add_input_options(cmd_prune, prune_in);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 64;
    }

    try {
        if (cmd_build->parsed()) {
            const facetab::Table table = build_from_args(build_in);
            if (build_format == "ard") {
                emit(facetab::ard_csv_string(facetab::as_ard(table, include_blanks)), build_out);
            } else {
                emit(facetab::render_text(table), build_out);
            }
        } else if (cmd_paths->parsed()) {
            const facetab::Table table = build_from_args(paths_in);
            const auto paths = dimension == "rows" ? table.row_paths() : table.col_paths();
            std::string out;
            for (const auto& p : paths) {
                out += facetab::path_to_string(p);
                out += '\n';
            }
            std::cout << out;
        } else if (cmd_query->parsed()) {
            const facetab::Table table = build_from_args(query_in);
            const facetab::Cell& cell = table.cell_at(facetab::parse_path(query_row),
                                                      facetab::parse_path(query_col));
            std::cout << cell.value.to_string() << '\t' << cell.formatted() << '\n';
        } else if (cmd_sort->parsed()) {
            const facetab::Table table = build_from_args(sort_in);
            std::optional<std::string> stat;
            if (!sort_stat.empty()) stat = sort_stat;
            const facetab::Table sorted = table.sort_at_path(
                facetab::parse_path(sort_at),
                table.score_by_column(facetab::parse_path(sort_by), stat), sort_desc);
            std::cout << facetab::render_text(sorted);
        } else if (cmd_prune->parsed()) {
            const facetab::Table table = build_from_args(prune_in);
            std::cout << facetab::render_text(table.prune());
        }
    } catch (const facetab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const facetab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
