#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "facetab/ard.hpp"
#include "facetab/engine.hpp"
#include "facetab/layout_io.hpp"
#include "facetab/render.hpp"

namespace py = pybind11;
using namespace facetab;

namespace {

py::object scalar_to_py(const Scalar& s) {
    return std::visit(
        [](const auto& v) -> py::object { return py::cast(v); }, s);
}

py::object cell_value_to_py(const CellValue& value) {
    if (value.is_blank()) return py::none();
    if (value.arity() == 1) return scalar_to_py(value.parts()[0]);
    py::tuple out(value.arity());
    for (std::size_t i = 0; i < value.arity(); ++i) out[i] = scalar_to_py(value.parts()[i]);
    return out;
}

py::dict cell_to_py(const Cell& cell) {
    py::dict out;
    out["raw"] = cell_value_to_py(cell.value);
    out["formatted"] = cell.formatted();
    out["format"] = cell.format;
    return out;
}

CellValue py_to_cell_value(const py::handle& obj) {
    if (obj.is_none()) return CellValue::blank();
    auto scalar_of = [](const py::handle& v) -> Scalar {
        if (py::isinstance<py::bool_>(v)) return Scalar(v.cast<bool>());
        if (py::isinstance<py::int_>(v)) return Scalar(v.cast<std::int64_t>());
        if (py::isinstance<py::float_>(v)) return Scalar(v.cast<double>());
        if (py::isinstance<py::str>(v)) return Scalar(v.cast<std::string>());
        throw ArgumentError("cell values must be int, float, str, bool or a tuple of them");
    };
    if (py::isinstance<py::tuple>(obj) || py::isinstance<py::list>(obj)) {
        std::vector<Scalar> parts;
        for (const auto& item : obj.cast<py::sequence>()) parts.push_back(scalar_of(item));
        return CellValue::tuple(std::move(parts));
    }
    return CellValue({scalar_of(obj)});
}

Table py_build_table(const Layout& layout, const Dataset& data,
                     const std::optional<Dataset>& alt_counts, const std::string& hsep) {
    if (hsep.size() != 1) throw ArgumentError("hsep must be a single character");
    return build_table(layout, data, alt_counts, hsep[0]);
}

std::string py_render(const Table& table, const std::optional<std::string>& hsep,
                      int indent_width, int min_gap) {
    RenderOptions opts;
    if (hsep) {
        if (hsep->size() != 1) throw ArgumentError("hsep must be a single character");
        opts.hsep = (*hsep)[0];
    }
    opts.indent_width = indent_width;
    opts.min_gap = min_gap;
    return render_text(table, opts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Declarative faceted tabulation: layouts, table trees, text rendering, ARD export";

    py::register_exception<Error>(m, "FacetabError");

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n_rows", &Dataset::n_rows)
        .def_property_readonly("n_cols", &Dataset::n_cols)
        .def_property_readonly("column_names",
                               [](const Dataset& ds) {
                                   std::vector<std::string> names;
                                   for (const auto& c : ds.columns()) names.push_back(c.name());
                                   return names;
                               })
        .def("__repr__", [](const Dataset& ds) {
            return "<facetab.Dataset " + std::to_string(ds.n_rows()) + " rows x " +
                   std::to_string(ds.n_cols()) + " columns>";
        });

    py::class_<Layout>(m, "Layout");

    py::class_<Table>(m, "Table")
        .def("render", &py_render, py::arg("hsep") = py::none(), py::arg("indent_width") = 2,
             py::arg("min_gap") = 3)
        .def("row_paths", &Table::row_paths)
        .def("col_paths", &Table::col_paths)
        .def("column_counts",
             [](const Table& t) {
                 std::vector<std::size_t> counts;
                 for (const auto& leaf : t.columns().leaves) counts.push_back(leaf.count);
                 return counts;
             })
        .def(
            "cell_at",
            [](const Table& t, const Path& row, const Path& col) {
                return cell_to_py(t.cell_at(row, col));
            },
            py::arg("row_path"), py::arg("col_path"))
        .def("subset", &Table::subset, py::arg("row_path") = Path{}, py::arg("col_path") = Path{})
        .def(
            "sort_at",
            [](const Table& t, const Path& at, const Path& by,
               const std::optional<std::string>& stat, bool decreasing) {
                return t.sort_at_path(at, t.score_by_column(by, stat), decreasing);
            },
            py::arg("path"), py::arg("by"), py::arg("stat") = py::none(),
            py::arg("decreasing") = true)
        .def("prune", [](const Table& t) { return t.prune(); })
        .def(
            "insert_row_at",
            [](const Table& t, const Path& path, const std::string& label,
               const py::sequence& values, const std::string& format) {
                DataRow row;
                row.label = label;
                for (const auto& v : values) {
                    Cell cell;
                    cell.value = py_to_cell_value(v);
                    cell.format = format;
                    row.cells.push_back(std::move(cell));
                }
                return t.insert_row_at_path(path, std::move(row));
            },
            py::arg("path"), py::arg("label"), py::arg("values"), py::arg("format") = "xx",
            "Insert an analysis row after the row the path names (one value per column).")
        .def(
            "add_footnote_at",
            [](const Table& t, const Path& row, const std::optional<Path>& col,
               const std::string& text) { return t.add_footnote_at_path(row, col, text); },
            py::arg("row_path"), py::arg("col_path"), py::arg("text"))
        .def("as_ard",
             [](const Table& t, bool include_blanks) {
                 py::list out;
                 for (const auto& rec : as_ard(t, include_blanks)) {
                     py::dict d;
                     d["row_path"] = rec.row_path;
                     d["col_path"] = rec.col_path;
                     d["row_label"] = rec.row_label;
                     d["kind"] = rec.kind == RowKind::content ? "content" : "analysis";
                     d["stat_label"] = rec.stat_label;
                     d["raw"] = cell_value_to_py(rec.raw_value);
                     d["formatted"] = rec.formatted;
                     d["format"] = rec.format;
                     out.append(std::move(d));
                 }
                 return out;
             },
             py::arg("include_blanks") = false)
        .def(
            "write_ard_csv",
            [](const Table& t, const std::string& path, bool include_blanks) {
                write_ard_csv(as_ard(t, include_blanks), path);
            },
            py::arg("path"), py::arg("include_blanks") = false);

    m.def(
        "read_csv",
        [](const std::string& path, const std::optional<std::string>& schema_path) {
            std::optional<Schema> schema;
            if (schema_path) schema = read_schema(*schema_path);
            return read_csv(path, schema);
        },
        py::arg("path"), py::arg("schema") = py::none(),
        "Read an RFC-4180 CSV, optionally typed by a JSON schema sidecar.");
    m.def("layout_from_file", &layout_from_file, py::arg("path"),
          "Load a layout from a JSON directive file.");
    m.def("layout_from_json", &layout_from_json, py::arg("text"),
          "Parse a layout from a JSON string.");
    m.def("build_table", &py_build_table, py::arg("layout"), py::arg("data"),
          py::arg("alt_counts") = py::none(), py::arg("hsep") = "-",
          "Apply a layout to a dataset and build the table.");
    m.def("parse_path", &parse_path, py::arg("text"),
          "Split a \"/\"-separated path string into tokens.");
}
