#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

#include "facetab/ard.hpp"
#include "facetab/engine.hpp"
#include "facetab/layout_io.hpp"
#include "fixtures.hpp"

using namespace facetab;
namespace ft = facetab::testing;

namespace {

std::string data_file(const std::string& name) {
    return std::string(FACETAB_TEST_DATA_DIR) + "/" + name;
}

Table mtcars_freq_table() {
    return build_table(layout_from_file(data_file("mtcars_freq.layout.json")),
                       read_csv(data_file("mtcars.csv"),
                                read_schema(data_file("mtcars.schema.json"))));
}

}  // namespace

TEST_CASE("as_ard emits one record per data cell") {
    const Table t = mtcars_freq_table();
    const auto records = as_ard(t);
    REQUIRE(records.size() == 6);  // 2 data rows x 3 leaf columns, no blanks

    const ArdRecord& first = records[0];
    CHECK(first.row_path == Path{"am", "Man", "@analysis"});
    CHECK(first.col_path == Path{"gear", "3"});
    CHECK(first.row_label == "count");
    CHECK(first.stat_label == "count");
    CHECK(first.kind == RowKind::analysis);
    CHECK(first.raw_value.to_string() == "15");
    CHECK(first.formatted == "15");
    CHECK(first.format == "xx");

    // records are row-major in row_paths order, columns minor
    CHECK(records[1].col_path == Path{"gear", "4"});
    CHECK(records[3].row_path == Path{"am", "Auto", "@analysis"});

    // injective on cells
    std::set<std::string> keys;
    for (const auto& rec : records) {
        keys.insert(path_to_string(rec.row_path) + "\x1f" + path_to_string(rec.col_path) + "\x1f" +
                    rec.stat_label);
    }
    CHECK(keys.size() == records.size());
}

TEST_CASE("tuple serialization uses pipe separators") {
    const CellValue v = CellValue::tuple({Scalar(std::int64_t{114}), Scalar(0.780822)});
    CHECK(v.to_string() == "114|0.780822");
}

TEST_CASE("a table pruned to nothing yields no records") {
    const Table t = mtcars_freq_table();
    const Table empty = t.prune([](const TableNode&) { return true; });
    CHECK(as_ard(empty).empty());
}

TEST_CASE("content rows export with kind content; blanks are excluded by default") {
    const auto [adsl, adae] = ft::make_ae_fixture();
    const Table t = build_table(layout_from_file(data_file("ae.layout.json")), adae, adsl, '-');
    const auto records = as_ard(t);

    bool found_content = false;
    for (const auto& rec : records) {
        if (rec.kind == RowKind::content) {
            found_content = true;
            CHECK(rec.row_path.back() == "@content");
        }
    }
    CHECK(found_content);

    // no blanks in this table: the count matches rows x columns exactly
    CHECK(records.size() == t.row_paths().size() * t.col_paths().size());

    // a table with reference-column blanks drops them unless asked
    const Dataset ref = ft::make_refgroup_fixture();
    const AnalysisFunction blank_in_ref = [](const Column&, const FacetContext& ctx) {
        VerticalCellGroup vcg;
        if (ctx.in_reference_column) {
            vcg.rows.push_back(CellRow::blank_row("stat"));
        } else {
            vcg.rows.push_back({"stat", CellValue(std::int64_t{1}), "xx"});
        }
        return vcg;
    };
    const Table rt = build_table(
        analyze(split_cols_by(basic_table(), "ARMCD", std::nullopt, "ARM A"), "rsp",
                blank_in_ref),
        ref);
    CHECK(as_ard(rt).size() == 2);                 // ARM B and ARM C only
    CHECK(as_ard(rt, true).size() == 3);           // --include-blanks keeps the blank cell
    CHECK(as_ard(rt, true)[0].raw_value.is_blank());
    CHECK(as_ard(rt, true)[0].formatted.empty());
}

TEST_CASE("ard csv round trip") {
    const Table t = mtcars_freq_table();
    const auto records = as_ard(t);
    const std::string csv = ard_csv_string(records);

    const auto lines = [&] {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start < csv.size()) {
            const std::size_t nl = csv.find('\n', start);
            out.push_back(csv.substr(start, nl - start));
            start = nl + 1;
        }
        return out;
    }();
    REQUIRE(lines.size() == 7);  // header + 6 records
    CHECK(lines[0] ==
          "row_path,col_path,row_label,kind,stat_label,raw_value,formatted,format,#ard_schema=1");

    const auto tmp = std::filesystem::temp_directory_path() / "facetab_ard.csv";
    write_ard_csv(records, tmp.string());
    const auto back = read_ard_csv(tmp.string());
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].row_path == path_to_string(records[i].row_path));
        CHECK(back[i].col_path == path_to_string(records[i].col_path));
        CHECK(back[i].row_label == records[i].row_label);
        CHECK(back[i].kind == (records[i].kind == RowKind::content ? "content" : "analysis"));
        CHECK(back[i].stat_label == records[i].stat_label);
        CHECK(back[i].raw_value == records[i].raw_value.to_string());
        CHECK(back[i].formatted == records[i].formatted);
        CHECK(back[i].format == records[i].format);
    }
    std::filesystem::remove(tmp);
}

TEST_CASE("pivot reconstruction rebuilds every cell") {
    const auto [adsl, adae] = ft::make_ae_fixture();
    const Table t = build_table(layout_from_file(data_file("ae.layout.json")), adae, adsl, '-');
    const auto records = as_ard(t);

    std::map<std::pair<std::string, std::string>, std::string> pivot;
    for (const auto& rec : records) {
        Path row = rec.row_path;
        row.push_back(rec.stat_label);
        pivot[{path_to_string(row), path_to_string(rec.col_path)}] = rec.raw_value.to_string();
    }
    for (const auto& row_path : t.row_paths()) {
        for (const auto& col_path : t.col_paths()) {
            const Cell& cell = t.cell_at(row_path, col_path);
            if (cell.value.is_blank()) continue;
            const auto key = std::make_pair(path_to_string(row_path), path_to_string(col_path));
            REQUIRE(pivot.count(key) == 1);
            CHECK(pivot.at(key) == cell.value.to_string());
        }
    }
}
