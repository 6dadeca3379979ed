#include "lamfrag/fragmentation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lamfrag {

Chord cut_chord(const ContourVisits& cv, int64_t v, int64_t den) {
  Chord c;
  c.a_num = cv.first[v] - 1;
  c.b_num = cv.last[v];
  c.a = static_cast<double>(c.a_num) / static_cast<double>(den);
  c.b = static_cast<double>(c.b_num) / static_cast<double>(den);
  c.label = v;
  return c;
}

CutProcess sample_tree_cut_process(const PlaneTree& t, double rate, double horizon,
                                   RngStream& rng) {
  if (rate <= 0.0 || horizon <= 0.0) throw std::invalid_argument("rate and horizon must be > 0");
  if (t.size() < 2) throw std::invalid_argument("cut process needs at least one edge");
  auto cv = contour_visits(t);
  CutProcess cp;
  cp.horizon = horizon;
  cp.rate = rate;
  cp.tree = t;
  cp.denominator = 2 * t.size();
  double mean = rate * horizon;
  for (int64_t v = 1; v < t.size(); ++v) {
    auto edge_rng = rng.child(static_cast<uint64_t>(v));
    uint64_t count = edge_rng.poisson(mean);
    for (uint64_t i = 0; i < count; ++i) {
      Cut cut;
      cut.edge_vertex = v;
      cut.position = edge_rng.next_double();
      cut.arrival_time = edge_rng.next_double() * horizon;
      cut.chord = cut_chord(cv, v, cp.denominator);
      cp.cuts.push_back(cut);
    }
  }
  std::sort(cp.cuts.begin(), cp.cuts.end(),
            [](const Cut& a, const Cut& b) { return a.arrival_time < b.arrival_time; });
  return cp;
}

std::vector<Lamination> lamination_process(const CutProcess& cp,
                                           const std::vector<double>& times) {
  std::vector<Lamination> out;
  out.reserve(times.size());
  for (double time : times) {
    if (time > cp.horizon + 1e-12) throw std::invalid_argument("time beyond horizon");
    std::vector<Chord> chords;
    std::vector<char> seen;  // dedupe per edge for tree processes
    if (cp.tree) seen.assign(static_cast<size_t>(cp.tree->size()), 0);
    for (const auto& cut : cp.cuts) {
      if (cut.arrival_time > time) break;
      if (cut.edge_vertex >= 0 && !seen.empty()) {
        if (seen[static_cast<size_t>(cut.edge_vertex)]) continue;
        seen[static_cast<size_t>(cut.edge_vertex)] = 1;
      }
      chords.push_back(cut.chord);
    }
    out.push_back(make_lamination(std::move(chords), cp.denominator));
  }
  return out;
}

MassSequence tree_component_masses(const PlaneTree& t, const std::vector<int64_t>& cut_vertices) {
  int64_t n = t.size();
  std::vector<char> cut(static_cast<size_t>(n), 0);
  for (int64_t v : cut_vertices) {
    if (v < 1 || v >= n) throw std::invalid_argument("cut vertex out of range");
    cut[static_cast<size_t>(v)] = 1;
  }
  // component id = root of the uncut ancestor chain, found in preorder
  std::vector<int64_t> comp(static_cast<size_t>(n));
  std::vector<int64_t> mass;  // contour visits per component, over 2n
  for (int64_t v : t.preorder()) {
    if (v == 0 || cut[static_cast<size_t>(v)]) {
      comp[static_cast<size_t>(v)] = static_cast<int64_t>(mass.size());
      mass.push_back(v == 0 ? 1 : 0);  // the root component owns the extra visit
    } else {
      comp[static_cast<size_t>(v)] = comp[static_cast<size_t>(t.parent(v))];
    }
    mass[static_cast<size_t>(comp[static_cast<size_t>(v)])] += t.degree(v) + 1;
  }
  MassSequence out;
  out.denominator = 2 * n;
  out.numerators = std::move(mass);
  std::sort(out.numerators.rbegin(), out.numerators.rend());
  int64_t total = 0;
  for (int64_t m : out.numerators) {
    total += m;
    out.masses.push_back(static_cast<double>(m) / static_cast<double>(out.denominator));
  }
  if (total != out.denominator) throw std::logic_error("component masses do not sum to one");
  return out;
}

FragmentationTrace fragmentation_masses(const CutProcess& cp, const std::vector<double>& times) {
  if (!cp.tree) throw std::invalid_argument("fragmentation_masses needs a tree cut process");
  FragmentationTrace trace;
  trace.times = times;
  for (double time : times) {
    std::vector<int64_t> cut_vertices;
    for (const auto& cut : cp.cuts) {
      if (cut.arrival_time > time) break;
      cut_vertices.push_back(cut.edge_vertex);
    }
    trace.mass_sequences.push_back(tree_component_masses(*cp.tree, cut_vertices));
  }
  return trace;
}

VertexMarking vertex_marking_process(const PlaneTree& t, RngStream& rng) {
  VertexMarking m;
  m.order.push_back(0);
  std::vector<int64_t> rest;
  for (int64_t v = 1; v < t.size(); ++v) rest.push_back(v);
  rng.shuffle(rest);
  m.order.insert(m.order.end(), rest.begin(), rest.end());
  return m;
}

Lamination marking_prefix_lamination(const PlaneTree& t, const VertexMarking& m, double s) {
  if (s < 1.0) throw std::invalid_argument("prefix needs s >= 1");
  auto cv = contour_visits(t);
  int64_t den = 2 * t.size();
  auto k = std::min<int64_t>(static_cast<int64_t>(std::floor(s)), t.size());
  std::vector<Chord> chords;
  for (int64_t i = 0; i < k; ++i) {
    int64_t v = m.order[static_cast<size_t>(i)];
    Chord c;
    c.a_num = cv.first[v];
    c.b_num = cv.last[v];
    c.a = static_cast<double>(c.a_num) / static_cast<double>(den);
    c.b = static_cast<double>(c.b_num) / static_cast<double>(den);
    c.label = v;
    chords.push_back(c);
  }
  return make_lamination(std::move(chords), den);
}

std::vector<Slab> epigraph_slabs(const std::vector<int64_t>& f) {
  int64_t m = static_cast<int64_t>(f.size());
  if (m == 0 || f[0] != 0) throw std::invalid_argument("step excursion must start at 0");
  for (int64_t v : f)
    if (v < 0) throw std::invalid_argument("step excursion must be nonnegative");
  std::vector<Slab> slabs;
  std::vector<Slab> stack;  // open slabs: start fixed, h_hi = current level
  int64_t prev = 0;
  for (int64_t i = 0; i <= m; ++i) {
    int64_t cur = i < m ? f[static_cast<size_t>(i)] : 0;
    if (cur > prev) {
      stack.push_back({i, -1, prev, cur});
    } else if (cur < prev) {
      while (!stack.empty() && stack.back().h_lo >= cur) {
        Slab s = stack.back();
        stack.pop_back();
        s.end = i;
        slabs.push_back(s);
      }
      if (!stack.empty() && stack.back().h_hi > cur) {
        // split the partially closed slab at the new level
        Slab s = stack.back();
        stack.back().h_hi = cur;
        s.h_lo = cur;
        s.end = i;
        slabs.push_back(s);
      }
    }
    prev = cur;
  }
  if (!stack.empty()) throw std::logic_error("unclosed epigraph slab");
  return slabs;
}

CutProcess epigraph_ppp_general(const std::vector<int64_t>& f, double c, double delta,
                                RngStream& rng) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be > 0");
  if (c <= 0.0) throw std::invalid_argument("c must be > 0");
  auto slabs = epigraph_slabs(f);
  int64_t m = static_cast<int64_t>(f.size());
  CutProcess cp;
  cp.horizon = c;
  cp.rate = 2.0;
  cp.denominator = m;
  for (size_t si = 0; si < slabs.size(); ++si) {
    const Slab& s = slabs[si];
    double extent = static_cast<double>(s.end - s.start) / static_cast<double>(m);
    if (extent <= delta) continue;
    auto slab_rng = rng.child(static_cast<uint64_t>(si));
    double mass = 2.0 * c * static_cast<double>(s.h_hi - s.h_lo);
    uint64_t count = slab_rng.poisson(mass);
    for (uint64_t i = 0; i < count; ++i) {
      Cut cut;
      cut.edge_vertex = -1;
      cut.position = slab_rng.next_double();  // s-coordinate within the slab
      cut.arrival_time = slab_rng.next_double() * c;
      cut.chord.a_num = s.start - 1;
      cut.chord.b_num = s.end - 1;
      cut.chord.a = static_cast<double>(s.start - 1) / static_cast<double>(m);
      cut.chord.b = static_cast<double>(s.end - 1) / static_cast<double>(m);
      cp.cuts.push_back(cut);
    }
  }
  std::sort(cp.cuts.begin(), cp.cuts.end(),
            [](const Cut& a, const Cut& b) { return a.arrival_time < b.arrival_time; });
  return cp;
}

double epigraph_expected_count(const std::vector<int64_t>& f, double c, double delta) {
  double total = 0.0;
  int64_t m = static_cast<int64_t>(f.size());
  for (const Slab& s : epigraph_slabs(f)) {
    double extent = static_cast<double>(s.end - s.start) / static_cast<double>(m);
    if (extent > delta) total += 2.0 * c * static_cast<double>(s.h_hi - s.h_lo);
  }
  return total;
}

std::string trace_to_csv(const FragmentationTrace& trace) {
  size_t width = 0;
  for (const auto& ms : trace.mass_sequences) width = std::max(width, ms.masses.size());
  std::ostringstream out;
  out.precision(17);
  for (size_t i = 0; i < trace.times.size(); ++i) {
    out << trace.times[i];
    const auto& ms = trace.mass_sequences[i].masses;
    for (size_t j = 0; j < width; ++j) out << ',' << (j < ms.size() ? ms[j] : 0.0);
    out << '\n';
  }
  return out.str();
}

std::string cut_process_to_json(const CutProcess& cp) {
  nlohmann::json j;
  j["horizon"] = cp.horizon;
  j["rate"] = cp.rate;
  j["denominator"] = cp.denominator;
  nlohmann::json cuts = nlohmann::json::array();
  for (const auto& c : cp.cuts) {
    cuts.push_back({{"edge_vertex", c.edge_vertex},
                    {"position", c.position},
                    {"arrival_time", c.arrival_time},
                    {"chord", {c.chord.a_num, c.chord.b_num}}});
  }
  j["cuts"] = std::move(cuts);
  return j.dump();
}

}  // namespace lamfrag
