#pragma once

#include <string>

#include "facetab/layout.hpp"

namespace facetab {

// Declarative layout files: an ordered JSON array of directive records
// mirroring the builder operations one-to-one, e.g.
//
//   [{"op": "basic_table", "show_colcounts": true},
//    {"op": "split_cols_by", "var": "ARM"},
//    {"op": "analyze", "var": "AGE", "afun": "mean_sd"}]
//
// Analysis functions are referenced by registry name, either as a string
// or as {"name": "count_once_per_id", "id_var": "USUBJID"}. Split
// functions likewise: "partition_by_levels" (the default) or e.g.
// {"fun": "trim_levels_in_group", "inner_var": "AEDECOD"}.
Layout layout_from_json(const std::string& json_text);
Layout layout_from_file(const std::string& path);

}  // namespace facetab
