#pragma once

#include <string>

#include "dscofs/types.hpp"

namespace dscofs {

// Standalone SVG scatter of two features, one circle per sample, colored by
// class. Axis labels name the (0-based) feature indices.
void write_scatter_svg(const std::string& path, const DataMatrix& data,
                       int feature_x, int feature_y, const LabelVector& labels);

}  // namespace dscofs
