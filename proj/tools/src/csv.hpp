#pragma once

#include <string>
#include <vector>

#include "qcs/grids.hpp"

namespace qcs::cli {

// Reads a header-first CSV of finite doubles. Selectors are column names;
// an all-digit selector that matches no name is a 1-based column index.
// Empty selector list keeps every column. Non-numeric, empty, or non-finite
// cells raise InvalidDataError naming the row and column.
TimeSeriesMatrix load_csv(const std::string& path,
                          const std::vector<std::string>& selected_columns = {});

// Writes a series matrix with its header; %.17g, LF line endings.
void write_series_csv(const std::string& path, const TimeSeriesMatrix& X);

}  // namespace qcs::cli
