#pragma once

#include <string>

#include "snapbm/grid.hpp"

namespace snapbm {

/// cell-rectangle heat map of mass/cell_area (linear color map)
void write_heatmap_svg(const std::string& path, const GridHistogram& hist);

}  // namespace snapbm
