#pragma once

#include <string>

#include "wigner.hpp"

namespace wigmd {

// Binary PPM heatmap of the real part with a signed-symmetric blue-white-red
// scale (Wigner fields take negative values). Byte output is deterministic.
std::string field_to_ppm(const Field2D& f);
void save_ppm(const std::string& path, const Field2D& f);

// Contour sketch (marching squares at symmetric levels) as a standalone SVG.
std::string field_to_svg(const Field2D& f);
void save_svg(const std::string& path, const Field2D& f);

}  // namespace wigmd
