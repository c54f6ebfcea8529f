#include "facetab/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "facetab/errors.hpp"

namespace facetab {

namespace {

constexpr const char* kLiterals = "()%-,/ ";

bool is_literal_char(char c) {
    for (const char* p = kLiterals; *p; ++p) {
        if (*p == c) return true;
    }
    return false;
}

// d in [0,3]
long long pow10_int(int d) {
    static const long long table[] = {1, 10, 100, 1000};
    return table[d];
}

std::string format_free(double v) {
    if (!std::isfinite(v)) throw FormatError("cannot format non-finite value");
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw FormatError("cannot format value");
    return std::string(buf, ptr);
}

// Half-away-from-zero fixed-point rendering.
std::string format_fixed(double v, int decimals) {
    if (!std::isfinite(v)) throw FormatError("cannot format non-finite value");
    const bool negative = v < 0.0;
    const double mag = std::abs(v);
    const double scaled = mag * static_cast<double>(pow10_int(decimals));
    if (scaled >= 9.0e17) {  // out of exact integer range; defer to libc
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
        return buf;
    }
    const long long rounded = static_cast<long long>(std::floor(scaled + 0.5));
    const long long ip = rounded / pow10_int(decimals);
    const long long fp = rounded % pow10_int(decimals);

    std::string out;
    if (negative && rounded != 0) out += '-';
    out += std::to_string(ip);
    if (decimals > 0) {
        std::string frac = std::to_string(fp);
        out += '.';
        out.append(static_cast<std::size_t>(decimals) - frac.size(), '0');
        out += frac;
    }
    return out;
}

std::string format_slot(const FormatSpec::Slot& slot, const Scalar& part) {
    if (std::holds_alternative<std::string>(part)) {
        if (slot.decimals >= 0 || slot.percent) {
            throw FormatError("text value in a numeric format slot");
        }
        return std::get<std::string>(part);
    }
    if (std::holds_alternative<bool>(part)) {
        if (slot.decimals >= 0 || slot.percent) {
            throw FormatError("boolean value in a numeric format slot");
        }
        return std::get<bool>(part) ? "true" : "false";
    }
    double v = scalar_as_double(part);
    if (slot.percent) v *= 100.0;
    if (slot.decimals < 0) {
        if (std::holds_alternative<std::int64_t>(part) && !slot.percent) {
            return std::to_string(std::get<std::int64_t>(part));
        }
        return format_free(v);
    }
    return format_fixed(v, slot.decimals);
}

}  // namespace

FormatSpec parse_format(const std::string& spec) {
    FormatSpec out;
    out.source_ = spec;
    std::size_t i = 0;
    while (i < spec.size()) {
        const char c = spec[i];
        if (c == 'x') {
            if (i + 1 >= spec.size() || spec[i + 1] != 'x') {
                throw FormatParseError("format \"" + spec + "\": incomplete slot at byte " +
                                       std::to_string(i));
            }
            std::size_t j = i + 2;
            int decimals = -1;
            if (j < spec.size() && spec[j] == '.') {
                ++j;
                decimals = 0;
                while (j < spec.size() && spec[j] == 'x' && decimals < 3) {
                    ++j;
                    ++decimals;
                }
            }
            if (j < spec.size() && spec[j] == 'x') {
                throw FormatParseError("format \"" + spec + "\": unknown token at byte " +
                                       std::to_string(j));
            }
            FormatSpec::Slot slot;
            slot.decimals = decimals;
            slot.percent = j < spec.size() && spec[j] == '%';
            FormatSpec::Token tok;
            tok.is_slot = true;
            tok.slot_index = out.slots_.size();
            out.slots_.push_back(slot);
            out.tokens_.push_back(tok);
            i = j;
        } else if (is_literal_char(c)) {
            FormatSpec::Token tok;
            tok.literal = c;
            out.tokens_.push_back(tok);
            ++i;
        } else {
            throw FormatParseError("format \"" + spec + "\": unknown token at byte " +
                                   std::to_string(i));
        }
    }
    return out;
}

std::string apply_format(const FormatSpec& fmt, const CellValue& value) {
    if (value.is_blank()) return "";
    if (value.arity() != fmt.slot_count()) {
        throw FormatError("format \"" + fmt.source() + "\" expects " +
                          std::to_string(fmt.slot_count()) + " value(s), got " +
                          std::to_string(value.arity()));
    }
    std::string out;
    for (const auto& tok : fmt.tokens_) {
        if (tok.is_slot) {
            out += format_slot(fmt.slots_[tok.slot_index], value.parts()[tok.slot_index]);
        } else {
            out += tok.literal;
        }
    }
    return out;
}

std::string apply_format(const std::string& spec, const CellValue& value) {
    return apply_format(parse_format(spec), value);
}

}  // namespace facetab
