#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lamfrag/plane_tree.hpp"

namespace lamfrag {

// A chord of the closed unit disk with endpoints e^{-2 pi i a}, e^{-2 pi i b},
// angles as fractions of a turn with 0 <= a <= b <= 1. Discrete objects carry
// exact endpoints a_num/den, b_num/den (den held by the Lamination); continuum
// approximations use the double fields only.
struct Chord {
  double a = 0.0;
  double b = 0.0;
  int64_t a_num = 0;  // meaningful when the lamination has a denominator
  int64_t b_num = 0;
  int64_t label = -1;
};

struct Lamination {
  std::vector<Chord> chords;
  int64_t denominator = 0;  // 0 = float mode
};

// validates range and pairwise noncrossing (shared endpoints allowed)
Lamination make_lamination(std::vector<Chord> chords, int64_t denominator);

enum class PathMode { lukasiewicz, cadlag_excursion };

// lukasiewicz mode: path (W_0=0, .., W_n=-1); chord (a/n, d(a)/n) for each
// a < n with d(a) the first later time the path goes strictly below W_a.
// cadlag mode: path (f_0, .., f_m) with f_m = 0; each upward jump at s is
// paired with the first later time the path drops to the pre-jump level.
Lamination lamination_from_path(const std::vector<int64_t>& p, PathMode mode);

// one chord per vertex at (g_v/2n, d_v/2n), the first/last contour visits;
// leaves give degenerate (zero-length) chords
Lamination lamination_from_tree_contour(const PlaneTree& t);

struct MassSequence {
  std::vector<double> masses;      // nonincreasing, summing to 1
  std::vector<int64_t> numerators; // parallel exact values when denominator > 0
  int64_t denominator = 0;
};

// masses of the faces (complement components), nonincreasing; exact in
// rational mode. Throws on crossing chords.
MassSequence face_masses(const Lamination& l);

// discrete Hausdorff distance between the two chord systems union the circle,
// sampled at spacing <= resolution (certified error <= resolution)
double hausdorff_distance(const Lamination& l1, const Lamination& l2, double resolution);

// keeps one representative chord per ordered pair of the r = floor(2*pi/eps)+1
// equal arcs, so at most r^2 chords with d_H to the original <= eps
Lamination epsilon_sublamination(const Lamination& l, double eps);

std::string lamination_to_json(const Lamination& l);
Lamination lamination_from_json(const std::string& text);

// planar endpoints {x1, y1, x2, y2} of every chord (angle t -> e^{-2 pi i t})
std::vector<std::array<double, 4>> chord_segments(const Lamination& l);

}  // namespace lamfrag
