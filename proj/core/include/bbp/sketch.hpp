#pragma once

#include <string>

#include "bbp/catalog.hpp"

namespace bbp {

/// Geometric proof sketch of a cataloged relation: the circle of radius r
/// centered at 1, vertices A = 0 and B = 1, and one point C per term on the
/// inscribed regular b-gon, with one shaded triangle (A, C, B) per term and
/// a legend mapping colors to coefficients. 1000x700 viewport; the circle is
/// drawn at 300 px in user units with the view box fitted to the content.
std::string render_sketch_svg(const CatalogEntry& entry);

}  // namespace bbp
