from ._core import (
    Dataset,
    FacetabError,
    Layout,
    Table,
    build_table,
    layout_from_file,
    layout_from_json,
    parse_path,
    read_csv,
)

__all__ = [
    "Dataset",
    "FacetabError",
    "Layout",
    "Table",
    "build_table",
    "layout_from_file",
    "layout_from_json",
    "parse_path",
    "read_csv",
]
