#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace facetab {

// One scalar atom as it appears inside a cell or a dataset column.
using Scalar = std::variant<std::int64_t, double, std::string, bool>;

// Render a scalar in its raw (unformatted) form. Doubles use the shortest
// representation that round-trips.
std::string scalar_to_string(const Scalar& s);

bool scalar_is_numeric(const Scalar& s);
double scalar_as_double(const Scalar& s);

// A raw cell value: blank, a single scalar, or a tuple of scalars.
class CellValue {
public:
    CellValue() : blank_(true) {}
    explicit CellValue(std::vector<Scalar> parts) : parts_(std::move(parts)), blank_(false) {}
    CellValue(std::int64_t v) : parts_{Scalar(v)}, blank_(false) {}
    CellValue(double v) : parts_{Scalar(v)}, blank_(false) {}
    CellValue(std::string v) : parts_{Scalar(std::move(v))}, blank_(false) {}
    CellValue(const char* v) : parts_{Scalar(std::string(v))}, blank_(false) {}
    CellValue(bool v) : parts_{Scalar(v)}, blank_(false) {}

    static CellValue blank() { return CellValue(); }
    static CellValue tuple(std::vector<Scalar> parts) { return CellValue(std::move(parts)); }

    bool is_blank() const { return blank_; }
    const std::vector<Scalar>& parts() const { return parts_; }
    std::size_t arity() const { return parts_.size(); }

    // Raw serialization: tuple elements joined with "|", blank -> "".
    std::string to_string() const;

    bool operator==(const CellValue& other) const;
    bool operator!=(const CellValue& other) const { return !(*this == other); }

private:
    std::vector<Scalar> parts_;
    bool blank_;
};

}  // namespace facetab
