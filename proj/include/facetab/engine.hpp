#pragma once

#include <optional>

#include "facetab/dataset.hpp"
#include "facetab/layout.hpp"
#include "facetab/table.hpp"

namespace facetab {

// Applies the layout's column directives to a dataset: leaf facets in
// declaration order with their nested header labels and "(N=...)" counts
// (taken from alt_counts when supplied).
ColumnInfo apply_column_splits(const Layout& layout, const Dataset& data,
                               const std::optional<Dataset>& alt_counts = std::nullopt);

// Builds the table: the column tree from the column directives, counts
// from alt_counts_df (else data), then the row program with one vertical
// cell group per (facet, leaf column). Fails on the first error with full
// row/column path context; the result is immutable.
Table build_table(const Layout& layout, const Dataset& data,
                  const std::optional<Dataset>& alt_counts_df = std::nullopt, char hsep = '-');

}  // namespace facetab
