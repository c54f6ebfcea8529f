#include "facetab/value.hpp"

#include <charconv>
#include <cmath>

namespace facetab {

std::string scalar_to_string(const Scalar& s) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const {
            if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
                return std::to_string(static_cast<long long>(v));
            }
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            if (ec != std::errc{}) return "nan";
            return std::string(buf, ptr);
        }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, s);
}

bool scalar_is_numeric(const Scalar& s) {
    return std::holds_alternative<std::int64_t>(s) || std::holds_alternative<double>(s);
}

double scalar_as_double(const Scalar& s) {
    if (std::holds_alternative<std::int64_t>(s)) return static_cast<double>(std::get<std::int64_t>(s));
    return std::get<double>(s);
}

std::string CellValue::to_string() const {
    if (blank_) return "";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += '|';
        out += scalar_to_string(parts_[i]);
    }
    return out;
}

bool CellValue::operator==(const CellValue& other) const {
    if (blank_ != other.blank_) return false;
    if (blank_) return true;
    return parts_ == other.parts_;
}

}  // namespace facetab
