#pragma once

#include <string>
#include <vector>

#include "facetab/errors.hpp"

namespace facetab::detail {

// RFC-4180 record reader over an in-memory buffer. `record_no` counts
// physical records, header = 1.
class CsvReader {
public:
    explicit CsvReader(std::string text) : text_(std::move(text)) {}

    bool next(std::vector<std::string>& fields, std::size_t& record_no) {
        if (pos_ >= text_.size()) return false;
        ++record_;
        record_no = record_;
        fields.clear();
        std::string field;
        bool quoted = false;
        while (true) {
            if (pos_ >= text_.size()) {
                if (quoted) {
                    throw IngestError("record " + std::to_string(record_) +
                                      ": unterminated quoted field");
                }
                fields.push_back(std::move(field));
                return true;
            }
            const char c = text_[pos_++];
            if (quoted) {
                if (c == '"') {
                    if (pos_ < text_.size() && text_[pos_] == '"') {
                        field += '"';
                        ++pos_;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"') {
                if (!field.empty()) {
                    throw IngestError("record " + std::to_string(record_) +
                                      ": stray quote inside unquoted field");
                }
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n') {
                fields.push_back(std::move(field));
                return true;
            } else if (c == '\r') {
                if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
                fields.push_back(std::move(field));
                return true;
            } else {
                field += c;
            }
        }
    }

private:
    std::string text_;
    std::size_t pos_ = 0;
    std::size_t record_ = 0;
};

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace facetab::detail
