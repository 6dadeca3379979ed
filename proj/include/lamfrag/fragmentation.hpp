#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lamfrag/lamination.hpp"
#include "lamfrag/plane_tree.hpp"
#include "lamfrag/rng.hpp"

namespace lamfrag {

// One Poisson cut. On a tree, the cut sits on the edge above `edge_vertex` at
// a uniform position; its chord is (g_v - 1, d_v)/2n, the contour interval of
// the subtree widened by the half-edge step, which makes the mass identity
// exact (leaf cuts stay nondegenerate). Epigraph cuts store the slab chord.
struct Cut {
  int64_t edge_vertex = -1;
  double position = 0.0;
  double arrival_time = 0.0;
  Chord chord;
};

struct CutProcess {
  std::vector<Cut> cuts;  // ascending arrival times; filter by time <= c for P_c
  double horizon = 0.0;
  double rate = 0.0;
  std::optional<PlaneTree> tree;
  int64_t denominator = 0;  // 2n for trees, m for epigraphs
};

// the cut chord (g_v - 1, d_v)/2n of the edge above v
Chord cut_chord(const ContourVisits& cv, int64_t v, int64_t den);

// per-edge Poisson(rate * horizon) counts, uniform positions and arrivals;
// filtering by any c <= horizon yields an exact sample at intensity rate * c
CutProcess sample_tree_cut_process(const PlaneTree& t, double rate, double horizon,
                                   RngStream& rng);

// laminations L_c at the queried times: circle plus the distinct chords of
// all cuts arrived by then (nondecreasing in c by the coupling)
std::vector<Lamination> lamination_process(const CutProcess& cp,
                                           const std::vector<double>& times);

struct FragmentationTrace {
  std::vector<double> times;
  std::vector<MassSequence> mass_sequences;
};

// connected-component masses of the tree cut at all arrivals <= each time,
// by contour-time share; equals face_masses of the matching lamination exactly
FragmentationTrace fragmentation_masses(const CutProcess& cp, const std::vector<double>& times);

// component masses for an explicit set of cut edges (edge above each listed
// vertex removed); exposed for oracles and experiments
MassSequence tree_component_masses(const PlaneTree& t, const std::vector<int64_t>& cut_vertices);

struct VertexMarking {
  std::vector<int64_t> order;  // order[0] = root, rest a uniform permutation
};

VertexMarking vertex_marking_process(const PlaneTree& t, RngStream& rng);

// L_s(T): contour chords (g_v, d_v)/2n of the first floor(s) marked vertices
Lamination marking_prefix_lamination(const PlaneTree& t, const VertexMarking& m, double s);

// maximal rectangle of the epigraph of a step excursion: s in [start, end),
// levels in (h_lo, h_hi]; the interval above any level in the slab is constant
struct Slab {
  int64_t start = 0;
  int64_t end = 0;
  int64_t h_lo = 0;
  int64_t h_hi = 0;
};

// f = step values f_0 .. f_{m-1} with f_0 = 0, f_i >= 0 (implicit 0 at m)
std::vector<Slab> epigraph_slabs(const std::vector<int64_t>& f);

// Poisson point process on the epigraph with intensity 2/(d - g) du dt per
// unit arrival time, truncated to chords of extent (d - g)/m > delta; per-slab
// mass is 2 * c * height. Chords are (start-1, end-1)/m, matching the
// tree-cut convention when f is the tree contour.
CutProcess epigraph_ppp_general(const std::vector<int64_t>& f, double c, double delta,
                                RngStream& rng);

// expected number of points of epigraph_ppp_general, summed per slab
double epigraph_expected_count(const std::vector<int64_t>& f, double c, double delta);

// CSV rows "time,mass_1,mass_2,..." padded with zeros to the widest row
std::string trace_to_csv(const FragmentationTrace& trace);

// JSON dump with arrival times for replay
std::string cut_process_to_json(const CutProcess& cp);

}  // namespace lamfrag
