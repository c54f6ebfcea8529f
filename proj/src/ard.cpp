#include "facetab/ard.hpp"

#include <fstream>
#include <sstream>

#include "csv_reader.hpp"

namespace facetab {

namespace {

void collect(const TableNode& node, Path& prefix, const Table& table, bool include_blanks,
             std::vector<ArdRecord>& out) {
    const auto emit = [&](const std::vector<DataRow>& rows, bool in_content) {
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.cells.size(); ++i) {
                const Cell& cell = row.cells[i];
                if (cell.value.is_blank() && !include_blanks) continue;
                ArdRecord rec;
                rec.row_path = prefix;
                if (in_content) rec.row_path.push_back(kContentToken);
                rec.col_path = table.columns().leaves[i].path();
                rec.row_label = row.label;
                rec.kind = row.kind;
                rec.stat_label = row.label;
                rec.raw_value = cell.value;
                rec.formatted = cell.formatted();
                rec.format = cell.format;
                out.push_back(std::move(rec));
            }
        }
    };
    if (node.is_elementary()) {
        emit(node.rows, false);
        return;
    }
    emit(node.content, true);
    for (const auto& child : node.children) {
        prefix.push_back(child->name);
        collect(*child, prefix, table, include_blanks, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<ArdRecord> as_ard(const Table& table, bool include_blanks) {
    std::vector<ArdRecord> out;
    Path prefix;
    collect(table.root(), prefix, table, include_blanks, out);
    return out;
}

std::string ard_csv_string(const std::vector<ArdRecord>& records) {
    std::string out =
        "row_path,col_path,row_label,kind,stat_label,raw_value,formatted,format,#ard_schema=1\n";
    for (const auto& rec : records) {
        out += detail::csv_quote(path_to_string(rec.row_path));
        out += ',';
        out += detail::csv_quote(path_to_string(rec.col_path));
        out += ',';
        out += detail::csv_quote(rec.row_label);
        out += ',';
        out += rec.kind == RowKind::content ? "content" : "analysis";
        out += ',';
        out += detail::csv_quote(rec.stat_label);
        out += ',';
        out += detail::csv_quote(rec.raw_value.to_string());
        out += ',';
        out += detail::csv_quote(rec.formatted);
        out += ',';
        out += detail::csv_quote(rec.format);
        out += ",\n";
    }
    return out;
}

void write_ard_csv(const std::vector<ArdRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    out << ard_csv_string(records);
    if (!out) throw IoError("failed writing \"" + path + "\"");
}

std::vector<RawArdRecord> read_ard_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();

    detail::CsvReader reader(buf.str());
    std::vector<std::string> fields;
    std::size_t record_no = 0;
    if (!reader.next(fields, record_no) || fields.size() < 8) {
        throw IngestError(path + ": missing ARD header");
    }
    std::vector<RawArdRecord> out;
    while (reader.next(fields, record_no)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() < 8) {
            throw IngestError(path + ": record " + std::to_string(record_no) + " has " +
                              std::to_string(fields.size()) + " fields, expected 8");
        }
        RawArdRecord rec;
        rec.row_path = fields[0];
        rec.col_path = fields[1];
        rec.row_label = fields[2];
        rec.kind = fields[3];
        rec.stat_label = fields[4];
        rec.raw_value = fields[5];
        rec.formatted = fields[6];
        rec.format = fields[7];
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace facetab
