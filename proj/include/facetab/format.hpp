#pragma once

#include <string>
#include <vector>

#include "facetab/errors.hpp"
#include "facetab/value.hpp"

namespace facetab {

// A parsed cell format string, e.g. "xx (xx.xx%)" or "xx.x - xx.x".
//
// Slots are written "xx" (value printed as-is, integers without a decimal
// point), "xx." (rounded to 0 decimals), "xx.x", "xx.xx" or "xx.xxx".
// Everything else in the grammar is a literal: "(", ")", "%", "-", ",",
// "/" and space. A "%" immediately after a slot marks that slot as a
// percentage: the value is treated as a proportion and scaled by 100
// before rounding.
class FormatSpec {
public:
    struct Slot {
        int decimals = -1;  // -1: free form ("xx")
        bool percent = false;
    };

    const std::string& source() const { return source_; }
    std::size_t slot_count() const { return slots_.size(); }
    const std::vector<Slot>& slots() const { return slots_; }

    // parse(source()).source() == source()
    std::string unparse() const { return source_; }

private:
    friend FormatSpec parse_format(const std::string& spec);

    struct Token {
        bool is_slot = false;
        char literal = '\0';
        std::size_t slot_index = 0;
    };

    std::string source_;
    std::vector<Token> tokens_;
    std::vector<Slot> slots_;

    friend std::string apply_format(const FormatSpec& fmt, const CellValue& value);
};

// Throws FormatParseError (with byte offset) on any token outside the grammar.
FormatSpec parse_format(const std::string& spec);

// Format a raw cell value. Blank values give "". Rounding is
// half-away-from-zero. Throws FormatError when the value arity does not
// match the slot count.
std::string apply_format(const FormatSpec& fmt, const CellValue& value);
std::string apply_format(const std::string& spec, const CellValue& value);

}  // namespace facetab
