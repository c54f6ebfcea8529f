#include <doctest.h>

#include <fstream>
#include <sstream>

#include "facetab/engine.hpp"
#include "facetab/layout_io.hpp"
#include "facetab/render.hpp"
#include "fixtures.hpp"

using namespace facetab;
namespace ft = facetab::testing;

namespace {

std::string data_file(const std::string& name) {
    return std::string(FACETAB_TEST_DATA_DIR) + "/" + name;
}

Dataset load_mtcars() {
    return read_csv(data_file("mtcars.csv"), read_schema(data_file("mtcars.schema.json")));
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("mtcars frequency snapshot") {
    const Table t = build_table(layout_from_file(data_file("mtcars_freq.layout.json")),
                                load_mtcars());
    const std::string expected =
        "          3    4   5\n"
        "--------------------\n"
        "Man\n"
        "  count   15   4   0\n"
        "Auto\n"
        "  count   0    8   5\n";
    CHECK(render_text(t) == expected);
    CHECK(render_text(t) == render_text(t));  // pure
}

TEST_CASE("one by one table renders three lines") {
    const Dataset ds = read_csv_string("x\na\n");
    const Table t = build_table(analyze(basic_table(), "x", afun_counts(),
                                        LabelVisibility::hidden),
                                ds);
    const auto lines = lines_of(render_text(t));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].empty());                                 // blank header
    CHECK(lines[1].find_first_not_of('-') == std::string::npos);  // separator
    CHECK(lines[2].find("count") != std::string::npos);
    CHECK(lines[2].find("1") != std::string::npos);

    ColumnLayout layout = compute_column_layout(t);
    CHECK(layout.widths.size() == 1);
}

TEST_CASE("separator spans the widest line") {
    const auto [adsl, adae] = ft::make_ae_fixture();
    const Table t = build_table(layout_from_file(data_file("ae.layout.json")), adae, adsl, '-');
    const auto lines = lines_of(render_text(t));
    std::size_t widest = 0;
    std::size_t sep_width = 0;
    for (const auto& line : lines) {
        widest = std::max(widest, line.size());
        if (!line.empty() && line.find_first_not_of('-') == std::string::npos) {
            sep_width = line.size();
        }
    }
    CHECK(sep_width == widest);
    for (const auto& line : lines) {
        CHECK(line.size() <= sep_width);         // no line exceeds the table width
        CHECK((line.empty() || line.back() != ' '));  // trailing spaces stripped
    }
}

TEST_CASE("ae snapshot structure") {
    const auto [adsl, adae] = ft::make_ae_fixture();
    const Table t = build_table(layout_from_file(data_file("ae.layout.json")), adae, adsl, '-');
    const std::string text = render_text(t);
    const auto lines = lines_of(text);

    std::ifstream golden(data_file("ae.golden.txt"), std::ios::binary);
    REQUIRE(golden.good());
    const std::string expected((std::istreambuf_iterator<char>(golden)),
                               std::istreambuf_iterator<char>());
    CHECK(text == expected);

    // header: arm labels then the (N=...) line then the separator
    CHECK(lines[0].find("ARM A") != std::string::npos);
    CHECK(lines[0].find("ARM B") != std::string::npos);
    CHECK(lines[1].find("(N=146)") != std::string::npos);
    CHECK(lines[1].find("(N=154)") != std::string::npos);
    CHECK(lines[2].find_first_not_of('-') == std::string::npos);

    // top-level analysis rows sit at indent zero, above the body systems
    CHECK(lines[3].rfind("Patients with at least one event", 0) == 0);
    CHECK(lines[4].rfind("Total events", 0) == 0);
    CHECK(lines[5].rfind("GASTROINTESTINAL", 0) == 0);
    // content rows indent one level under the visible facet label
    CHECK(lines[6].rfind("  Patients with at least one event", 0) == 0);
    CHECK(lines[7].rfind("  Total events", 0) == 0);
    // analysis rows out-dented by indent_mod = -1 to the same level
    CHECK(lines[8].rfind("  ABDOMINAL DISCOMFORT", 0) == 0);
    CHECK(lines[11].rfind("  NAUSEA (INTERMITTENT)", 0) == 0);
    CHECK(lines[12].rfind("MUSCULOSKELETAL AND CONNECTIVE TISSUE", 0) == 0);

    CHECK(text.find("2060") != std::string::npos);
    CHECK(text.find("1344") != std::string::npos);
    CHECK(text.find("78.08%") != std::string::npos);
}

TEST_CASE("nested headers center group labels over their spans") {
    const Dataset bep = ft::make_bep_fixture();
    const Table t = build_table(layout_from_file(data_file("bep.layout.json")), bep,
                                std::nullopt, '-');
    const auto lines = lines_of(render_text(t));
    const ColumnLayout layout = compute_column_layout(t);

    // "ARM A" spans the first two leaves
    const std::size_t span_start = layout.starts[0];
    const std::size_t span_end = layout.starts[1] + layout.widths[1];
    const std::size_t pos = lines[0].find("ARM A");
    REQUIRE(pos != std::string::npos);
    CHECK(pos >= span_start);
    CHECK(pos + 5 <= span_end);

    // leaf labels and the overall column sit on the bottom header line
    CHECK(lines[1].find("BEP") != std::string::npos);
    CHECK(lines[1].find("All") != std::string::npos);
    CHECK(lines[1].find("Overall") != std::string::npos);
    CHECK(lines[0].find("Overall") == std::string::npos);
    CHECK(lines[2].find("(N=41)") != std::string::npos);
    CHECK(lines[2].find("(N=190)") != std::string::npos);

    // row labels: SEX and AGE blocks with indented statistic rows
    const std::string text = render_text(t);
    CHECK(text.find("\nSEX") != std::string::npos);
    CHECK(text.find("\n  F ") != std::string::npos);
    CHECK(text.find("\nAGE") != std::string::npos);
    CHECK(text.find("\n  Mean") != std::string::npos);
}

TEST_CASE("widths grow monotonically with cell content") {
    const Table t = build_table(layout_from_file(data_file("mtcars_freq.layout.json")),
                                load_mtcars());
    const ColumnLayout before = compute_column_layout(t);
    const Table noted = t.add_footnote_at_path({"am", "Man", "@analysis", "count"},
                                               Path{"gear", "4"}, "note");
    const ColumnLayout after = compute_column_layout(noted);
    for (std::size_t i = 0; i < before.widths.size(); ++i) {
        CHECK(after.widths[i] >= before.widths[i]);
    }
    CHECK(after.widths[1] > before.widths[1]);
}

TEST_CASE("hsep flows from build_table into rendering") {
    const Dataset ds = read_csv_string("x\na\n");
    const Table t = build_table(analyze(basic_table(), "x", afun_counts()), ds, std::nullopt,
                                '=');
    CHECK(render_text(t).find('=') != std::string::npos);
    RenderOptions opts;
    opts.hsep = '~';
    CHECK(render_text(t, opts).find('~') != std::string::npos);
}
