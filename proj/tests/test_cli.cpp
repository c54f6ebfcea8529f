#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "facetab/dataset.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace facetab;
namespace ft = facetab::testing;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    out += "'";
    return out;
}

CliResult run_cli(const std::vector<std::string>& args) {
    std::string cmd = shell_quote(FACETAB_CLI_PATH);
    for (const auto& a : args) {
        cmd += ' ';
        cmd += shell_quote(a);
    }
    cmd += " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string data_file(const std::string& name) {
    return std::string(FACETAB_TEST_DATA_DIR) + "/" + name;
}

// AE fixture written out as CSV once per test run
struct AeFiles {
    std::string adae;
    std::string adsl;
    AeFiles() {
        const fs::path dir = fs::temp_directory_path() / "facetab_cli_fixtures";
        fs::create_directories(dir);
        const auto fixture = ft::make_ae_fixture();
        adae = (dir / "adae.csv").string();
        adsl = (dir / "adsl.csv").string();
        write_csv(fixture.adae, adae);
        write_csv(fixture.adsl, adsl);
        write_schema(Schema::from_dataset(fixture.adae), (dir / "adae.schema.json").string());
    }
    std::string adae_schema() const {
        return (fs::path(adae).parent_path() / "adae.schema.json").string();
    }
};

const AeFiles& ae_files() {
    static AeFiles files;
    return files;
}

}  // namespace

TEST_CASE("cli build renders the frequency table") {
    const CliResult r = run_cli({"build", "--data", data_file("mtcars.csv"), "--schema",
                                 data_file("mtcars.schema.json"), "--layout",
                                 data_file("mtcars_freq.layout.json")});
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "          3    4   5\n"
          "--------------------\n"
          "Man\n"
          "  count   15   4   0\n"
          "Auto\n"
          "  count   0    8   5\n");
}

TEST_CASE("cli paths") {
    const CliResult rows = run_cli({"paths", "--data", data_file("mtcars.csv"), "--schema",
                                    data_file("mtcars.schema.json"), "--layout",
                                    data_file("mtcars_freq.layout.json"), "--dimension", "rows"});
    CHECK(rows.exit_code == 0);
    CHECK(rows.out == "am/Man/@analysis/count\nam/Auto/@analysis/count\n");

    const CliResult cols = run_cli({"paths", "--data", data_file("mtcars.csv"), "--schema",
                                    data_file("mtcars.schema.json"), "--layout",
                                    data_file("mtcars_freq.layout.json"), "--dimension", "cols"});
    CHECK(cols.exit_code == 0);
    CHECK(cols.out == "gear/3\ngear/4\ngear/5\n");

    const CliResult bad = run_cli({"paths", "--data", data_file("mtcars.csv"), "--layout",
                                   data_file("mtcars_freq.layout.json"), "--dimension", "diag"});
    CHECK(bad.exit_code == 64);
}

TEST_CASE("cli query prints raw and formatted") {
    const CliResult r = run_cli({"query", "--data", data_file("mtcars.csv"), "--schema",
                                 data_file("mtcars.schema.json"), "--layout",
                                 data_file("mtcars_freq.layout.json"), "--row",
                                 "am/Man/@analysis/count", "--col", "gear/3"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "15\t15\n");

    const CliResult bad = run_cli({"query", "--data", data_file("mtcars.csv"), "--schema",
                                   data_file("mtcars.schema.json"), "--layout",
                                   data_file("mtcars_freq.layout.json"), "--row",
                                   "am/Mab/@analysis/count", "--col", "gear/3"});
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("Man") != std::string::npos);  // sibling candidates in the message
    CHECK(bad.out.find("Auto") != std::string::npos);
}

TEST_CASE("cli usage errors exit 64") {
    const CliResult r = run_cli({"build", "--data", data_file("mtcars.csv")});
    CHECK(r.exit_code == 64);
    const CliResult none = run_cli({});
    CHECK(none.exit_code == 64);
}

TEST_CASE("cli io errors exit 1") {
    const CliResult r = run_cli({"build", "--data", "/nonexistent/x.csv", "--layout",
                                 data_file("mtcars_freq.layout.json")});
    CHECK(r.exit_code == 1);
}

TEST_CASE("cli ard export") {
    const CliResult r = run_cli({"build", "--data", data_file("mtcars.csv"), "--schema",
                                 data_file("mtcars.schema.json"), "--layout",
                                 data_file("mtcars_freq.layout.json"), "--format", "ard"});
    CHECK(r.exit_code == 0);
    std::size_t lines = 0;
    for (char c : r.out) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == 7);  // header + 6 records
    CHECK(r.out.find("am/Man/@analysis,gear/3,count,analysis,count,15,15,xx,") !=
          std::string::npos);

    // --out writes the same bytes to a file
    const auto tmp = fs::temp_directory_path() / "facetab_cli_ard.csv";
    const CliResult to_file = run_cli({"build", "--data", data_file("mtcars.csv"), "--schema",
                                       data_file("mtcars.schema.json"), "--layout",
                                       data_file("mtcars_freq.layout.json"), "--format", "ard",
                                       "--out", tmp.string()});
    CHECK(to_file.exit_code == 0);
    std::ifstream in(tmp);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == r.out);
    fs::remove(tmp);
}

TEST_CASE("cli sort on the ae fixture") {
    const auto& files = ae_files();
    const CliResult r = run_cli({"sort", "--data", files.adae, "--schema", files.adae_schema(),
                                 "--alt-counts", files.adsl, "--layout",
                                 data_file("ae.layout.json"), "--at", "AEBODSYS/*/AEDECOD",
                                 "--by", "ARM/ARM A", "--desc"});
    CHECK(r.exit_code == 0);
    // NAUSEA (110) must now precede ABDOMINAL FULLNESS DUE TO GAS (107)
    const std::size_t nausea = r.out.find("NAUSEA (INTERMITTENT)");
    const std::size_t fullness = r.out.find("ABDOMINAL FULLNESS DUE TO GAS");
    REQUIRE(nausea != std::string::npos);
    REQUIRE(fullness != std::string::npos);
    CHECK(nausea < fullness);
    CHECK(r.out.find("(N=146)") != std::string::npos);
}

TEST_CASE("cli prune is the identity on a table without zero groups") {
    const CliResult pruned = run_cli({"prune", "--data", data_file("mtcars.csv"), "--schema",
                                      data_file("mtcars.schema.json"), "--layout",
                                      data_file("mtcars_freq.layout.json")});
    const CliResult built = run_cli({"build", "--data", data_file("mtcars.csv"), "--schema",
                                     data_file("mtcars.schema.json"), "--layout",
                                     data_file("mtcars_freq.layout.json")});
    CHECK(pruned.exit_code == 0);
    CHECK(pruned.out == built.out);
}

TEST_CASE("cli hsep option") {
    const CliResult r = run_cli({"build", "--data", data_file("mtcars.csv"), "--schema",
                                 data_file("mtcars.schema.json"), "--layout",
                                 data_file("mtcars_freq.layout.json"), "--hsep", "="});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("====") != std::string::npos);
    CHECK(r.out.find("----") == std::string::npos);

    const CliResult bad = run_cli({"build", "--data", data_file("mtcars.csv"), "--layout",
                                   data_file("mtcars_freq.layout.json"), "--hsep", "=="});
    CHECK(bad.exit_code == 64);
}

TEST_CASE("cli on a dataset with no rows") {
    const fs::path dir = fs::temp_directory_path() / "facetab_cli_fixtures";
    fs::create_directories(dir);
    const fs::path empty = dir / "empty.csv";
    {
        std::ofstream out(empty);
        out << "model,mpg,cyl,am,gear\n";
    }
    const CliResult paths = run_cli({"paths", "--data", empty.string(), "--schema",
                                     data_file("mtcars.schema.json"), "--layout",
                                     data_file("mtcars_freq.layout.json"), "--dimension",
                                     "rows"});
    CHECK(paths.exit_code == 0);
    CHECK(paths.out == "am/Man/@analysis/count\nam/Auto/@analysis/count\n");

    const CliResult built = run_cli({"build", "--data", empty.string(), "--schema",
                                     data_file("mtcars.schema.json"), "--layout",
                                     data_file("mtcars_freq.layout.json")});
    CHECK(built.exit_code == 0);
    CHECK(built.out.find("count   0   0   0") != std::string::npos);
}

TEST_CASE("cli ard export keeps blanks on request") {
    const fs::path dir = fs::temp_directory_path() / "facetab_cli_fixtures";
    fs::create_directories(dir);
    const fs::path layout = dir / "mean.layout.json";
    {
        std::ofstream out(layout);
        out << R"([{"op": "split_cols_by", "var": "gear"},)"
            << R"( {"op": "split_rows_by", "var": "am"},)"
            << R"( {"op": "analyze", "var": "mpg", "afun": "mean_sd"}])";
    }
    // Man x gear-5 and Auto x gear-3 are empty, so Mean and sd are blank there
    const CliResult without = run_cli({"build", "--data", data_file("mtcars.csv"), "--schema",
                                       data_file("mtcars.schema.json"), "--layout",
                                       layout.string(), "--format", "ard"});
    const CliResult with_blanks = run_cli({"build", "--data", data_file("mtcars.csv"),
                                           "--schema", data_file("mtcars.schema.json"),
                                           "--layout", layout.string(), "--format", "ard",
                                           "--include-blanks"});
    CHECK(without.exit_code == 0);
    CHECK(with_blanks.exit_code == 0);
    auto count_lines = [](const std::string& s) {
        std::size_t n = 0;
        for (char c : s) {
            if (c == '\n') ++n;
        }
        return n;
    };
    CHECK(count_lines(with_blanks.out) == 13);  // header + 2 facets x 2 stats x 3 columns
    CHECK(count_lines(without.out) == 9);       // four blank cells dropped
    CHECK(with_blanks.out.find("am/Man/mpg,gear/5,Mean,analysis,Mean,,,,") !=
          std::string::npos);
}
