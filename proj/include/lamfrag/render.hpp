#pragma once

#include <string>

#include "lamfrag/lamination.hpp"
#include "lamfrag/levy.hpp"
#include "lamfrag/plane_tree.hpp"

namespace lamfrag {

// Deterministic SVG emission: no timestamps, fixed-precision coordinates,
// chords emitted in a canonical sort order so identical chords produce
// byte-identical elements across frames.
struct RenderSpec {
  int64_t width = 512;  // square canvas, >= 64
  double stroke = 1.0;
  double delta = 0.0;   // chords with arc extent < delta are skipped
  bool labels = false;
};

// chords as straight segments between the circle points e^{-2 i pi a}
std::string render_svg(const Lamination& l, const RenderSpec& spec);

// tree layered by height, leaves evenly spaced in contour order
std::string render_svg(const PlaneTree& t, const RenderSpec& spec);

// polyline of (time, value) in a box scaled to the data range
std::string render_svg(const LatticePath& p, const RenderSpec& spec);

}  // namespace lamfrag
