#include "lamfrag/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace lamfrag {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

Chord rational_chord(int64_t a, int64_t b, int64_t den, int64_t label) {
  Chord c;
  c.a_num = a;
  c.b_num = b;
  c.a = static_cast<double>(a) / static_cast<double>(den);
  c.b = static_cast<double>(b) / static_cast<double>(den);
  c.label = label;
  return c;
}

// endpoint comparisons route through the exact integers in rational mode
struct Key {
  int64_t a_num, b_num;
  double a, b;
};

Key key_of(const Chord& c, int64_t den) {
  if (den > 0) return {c.a_num, c.b_num, c.a, c.b};
  return {0, 0, c.a, c.b};
}

}  // namespace

Lamination make_lamination(std::vector<Chord> chords, int64_t denominator) {
  Lamination l;
  l.denominator = denominator;
  for (auto& c : chords) {
    if (denominator > 0) {
      if (c.a_num < 0 || c.b_num > denominator || c.a_num > c.b_num)
        throw std::invalid_argument("chord endpoints out of order or range");
      c.a = static_cast<double>(c.a_num) / static_cast<double>(denominator);
      c.b = static_cast<double>(c.b_num) / static_cast<double>(denominator);
    } else if (!(c.a >= 0.0 && c.b <= 1.0 && c.a <= c.b)) {
      throw std::invalid_argument("chord endpoints out of order or range");
    }
  }
  l.chords = std::move(chords);
  face_masses(l);  // runs the noncrossing structural check
  return l;
}

Lamination lamination_from_path(const std::vector<int64_t>& p, PathMode mode) {
  int64_t n = static_cast<int64_t>(p.size()) - 1;
  if (n < 1) throw std::invalid_argument("path too short");
  Lamination l;
  if (mode == PathMode::lukasiewicz) {
    if (p[0] != 0 || p[n] != -1) throw std::invalid_argument("lukasiewicz path must run 0 -> -1");
    for (int64_t i = 0; i < n; ++i) {
      if (p[i + 1] - p[i] < -1) throw std::invalid_argument("lukasiewicz increments must be >= -1");
      if (i < n - 1 && p[i + 1] < 0) throw std::invalid_argument("path hits -1 before the end");
    }
    l.denominator = n;
    l.chords.reserve(n);
    // next-smaller-element scan from the right: stack holds indices with
    // strictly increasing values from bottom to top
    std::vector<int64_t> stack;  // indices u with W_u candidates
    std::vector<int64_t> d(n);
    for (int64_t a = n; a-- > 0;) {
      while (!stack.empty() && p[stack.back()] >= p[a]) stack.pop_back();
      d[a] = stack.empty() ? n : stack.back();
      stack.push_back(a);
    }
    for (int64_t a = 0; a < n; ++a) l.chords.push_back(rational_chord(a, d[a], n, a));
  } else {
    if (p[n] != 0) throw std::invalid_argument("cadlag excursion must end at 0");
    for (int64_t i = 0; i < n; ++i)
      if (p[i] < 0) throw std::invalid_argument("cadlag excursion must be nonnegative");
    l.denominator = n;
    for (int64_t s = 0; s < n; ++s) {
      int64_t prev = s == 0 ? 0 : p[s - 1];
      if (p[s] <= prev) continue;
      int64_t t = s + 1;
      while (t < n && p[t] > prev) ++t;
      l.chords.push_back(rational_chord(s, t, n, s));
    }
  }
  return l;
}

Lamination lamination_from_tree_contour(const PlaneTree& t) {
  auto cv = contour_visits(t);
  int64_t den = 2 * t.size();
  Lamination l;
  l.denominator = den;
  l.chords.reserve(t.size());
  for (int64_t v = 0; v < t.size(); ++v)
    l.chords.push_back(rational_chord(cv.first[v], cv.last[v], den, v));
  return l;
}

MassSequence face_masses(const Lamination& l) {
  int64_t den = l.denominator;
  bool exact = den > 0;
  // nondegenerate chords only: a chord whose endpoints coincide on the circle
  // (zero or full-turn extent) bounds no face
  std::vector<Key> ks;
  ks.reserve(l.chords.size());
  for (const auto& c : l.chords) {
    Key k = key_of(c, den);
    bool degenerate = exact ? (k.a_num == k.b_num || (k.a_num == 0 && k.b_num == den))
                            : (k.a == k.b || (k.a == 0.0 && k.b == 1.0));
    if (!degenerate) ks.push_back(k);
  }
  auto less = [&](const Key& x, const Key& y) {
    if (exact) return x.a_num != y.a_num ? x.a_num < y.a_num : x.b_num > y.b_num;
    return x.a != y.a ? x.a < y.a : x.b > y.b;
  };
  std::sort(ks.begin(), ks.end(), less);

  MassSequence out;
  out.denominator = den;
  struct Open {
    Key k;
    int64_t child_i = 0;  // exact child width sum
    double child_f = 0.0;
  };
  std::vector<Open> stack;
  int64_t top_i = 0;   // total width of top-level chords (exact)
  double top_f = 0.0;
  std::vector<int64_t> face_i;
  std::vector<double> face_f;
  auto close_top = [&]() {
    Open o = stack.back();
    stack.pop_back();
    int64_t wi = o.k.b_num - o.k.a_num;
    double wf = o.k.b - o.k.a;
    face_i.push_back(wi - o.child_i);
    face_f.push_back(wf - o.child_f);
    if (stack.empty()) {
      top_i += wi;
      top_f += wf;
    } else {
      stack.back().child_i += wi;
      stack.back().child_f += wf;
    }
  };
  for (const auto& k : ks) {
    while (!stack.empty() &&
           (exact ? stack.back().k.b_num <= k.a_num : stack.back().k.b <= k.a))
      close_top();
    if (!stack.empty()) {
      bool crossing = exact ? (stack.back().k.b_num < k.b_num && stack.back().k.b_num > k.a_num)
                            : (stack.back().k.b < k.b && stack.back().k.b > k.a);
      if (crossing) throw std::invalid_argument("lamination has crossing chords");
    }
    stack.push_back({k, 0, 0.0});
  }
  while (!stack.empty()) close_top();
  face_i.push_back(den - top_i);  // outer face
  face_f.push_back((exact ? 1.0 : 1.0) - top_f);

  for (size_t i = 0; i < face_f.size(); ++i) {
    bool zero = exact ? face_i[i] == 0 : face_f[i] <= 1e-12;
    if (zero) continue;
    if (exact) {
      out.numerators.push_back(face_i[i]);
    } else {
      out.masses.push_back(face_f[i]);
    }
  }
  if (exact) {
    std::sort(out.numerators.rbegin(), out.numerators.rend());
    int64_t total = std::accumulate(out.numerators.begin(), out.numerators.end(), int64_t{0});
    if (total != den) throw std::logic_error("face masses do not sum to one");
    for (int64_t num : out.numerators)
      out.masses.push_back(static_cast<double>(num) / static_cast<double>(den));
  } else {
    std::sort(out.masses.rbegin(), out.masses.rend());
  }
  return out;
}

namespace {

struct Point {
  double x, y;
};

void append_samples(const Lamination& l, double spacing, std::vector<Point>& pts) {
  // the circle itself is part of every lamination
  int64_t m = static_cast<int64_t>(std::ceil(kTwoPi / spacing)) + 1;
  for (int64_t i = 0; i < m; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(m);
    pts.push_back({std::cos(kTwoPi * t), -std::sin(kTwoPi * t)});
  }
  for (const auto& c : l.chords) {
    double x1 = std::cos(kTwoPi * c.a), y1 = -std::sin(kTwoPi * c.a);
    double x2 = std::cos(kTwoPi * c.b), y2 = -std::sin(kTwoPi * c.b);
    double len = std::hypot(x2 - x1, y2 - y1);
    int64_t k = static_cast<int64_t>(std::ceil(len / spacing));
    for (int64_t i = 1; i < k; ++i) {
      double u = static_cast<double>(i) / static_cast<double>(k);
      pts.push_back({x1 + u * (x2 - x1), y1 + u * (y2 - y1)});
    }
  }
}

class GridIndex {
 public:
  GridIndex(const std::vector<Point>& pts, double cell) : pts_(pts), cell_(cell) {
    for (size_t i = 0; i < pts.size(); ++i) cells_[cell_key(pts[i])].push_back(i);
  }

  double nearest(const Point& q) const {
    double best = 1e30;
    int64_t qx = coord(q.x), qy = coord(q.y);
    for (int64_t ring = 0;; ++ring) {
      if (static_cast<double>(ring - 1) * cell_ > best) break;
      bool any = false;
      for (int64_t dx = -ring; dx <= ring; ++dx) {
        for (int64_t dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::llabs(dx), std::llabs(dy)) != ring) continue;
          auto it = cells_.find(pack(qx + dx, qy + dy));
          if (it == cells_.end()) continue;
          any = true;
          for (size_t i : it->second) {
            double d = std::hypot(pts_[i].x - q.x, pts_[i].y - q.y);
            best = std::min(best, d);
          }
        }
      }
      (void)any;
      if (ring > 8 && best > 1e29) {
        // empty region far out; jump rings in bulk (cannot happen for
        // laminations, which always contain the circle)
        if (ring * cell_ > 4.0) break;
      }
    }
    return best;
  }

 private:
  int64_t coord(double v) const { return static_cast<int64_t>(std::floor((v + 2.0) / cell_)); }
  static int64_t pack(int64_t x, int64_t y) { return x * 1000003 + y; }
  int64_t cell_key(const Point& p) const { return pack(coord(p.x), coord(p.y)); }

  const std::vector<Point>& pts_;
  double cell_;
  std::unordered_map<int64_t, std::vector<size_t>> cells_;
};

double directed_hausdorff(const std::vector<Point>& from, const GridIndex& to) {
  double worst = 0.0;
  for (const auto& p : from) worst = std::max(worst, to.nearest(p));
  return worst;
}

}  // namespace

double hausdorff_distance(const Lamination& l1, const Lamination& l2, double resolution) {
  if (resolution <= 0.0) throw std::invalid_argument("resolution must be positive");
  std::vector<Point> p1, p2;
  append_samples(l1, resolution, p1);
  append_samples(l2, resolution, p2);
  GridIndex g1(p1, resolution), g2(p2, resolution);
  return std::max(directed_hausdorff(p1, g2), directed_hausdorff(p2, g1));
}

Lamination epsilon_sublamination(const Lamination& l, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  int64_t r = static_cast<int64_t>(std::floor(kTwoPi / eps)) + 1;
  auto arc = [&](double t) {
    auto i = static_cast<int64_t>(std::floor(t * static_cast<double>(r)));
    return std::clamp(i, int64_t{0}, r - 1);
  };
  std::unordered_map<int64_t, bool> seen;
  Lamination out;
  out.denominator = l.denominator;
  for (const auto& c : l.chords) {
    int64_t key = arc(c.a) * r + arc(c.b);
    if (seen.emplace(key, true).second) out.chords.push_back(c);
  }
  return out;
}

std::string lamination_to_json(const Lamination& l) {
  nlohmann::json j;
  if (l.denominator > 0)
    j["denominator"] = l.denominator;
  else
    j["denominator"] = nullptr;
  nlohmann::json chords = nlohmann::json::array();
  for (const auto& c : l.chords) {
    nlohmann::json entry = nlohmann::json::array();
    if (l.denominator > 0) {
      entry.push_back(c.a_num);
      entry.push_back(l.denominator);
      entry.push_back(c.b_num);
      entry.push_back(l.denominator);
    } else {
      entry.push_back(c.a);
      entry.push_back(1);
      entry.push_back(c.b);
      entry.push_back(1);
    }
    if (c.label >= 0) entry.push_back(c.label);
    chords.push_back(std::move(entry));
  }
  j["chords"] = std::move(chords);
  return j.dump();
}

Lamination lamination_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int64_t den = j.at("denominator").is_null() ? 0 : j["denominator"].get<int64_t>();
  std::vector<Chord> chords;
  for (const auto& e : j.at("chords")) {
    Chord c;
    if (den > 0) {
      c.a_num = e.at(0).get<int64_t>();
      c.b_num = e.at(2).get<int64_t>();
    } else {
      c.a = e.at(0).get<double>() / e.at(1).get<double>();
      c.b = e.at(2).get<double>() / e.at(3).get<double>();
    }
    if (e.size() > 4) c.label = e.at(4).get<int64_t>();
    chords.push_back(c);
  }
  return make_lamination(std::move(chords), den);
}

std::vector<std::array<double, 4>> chord_segments(const Lamination& l) {
  std::vector<std::array<double, 4>> out;
  out.reserve(l.chords.size());
  for (const auto& c : l.chords)
    out.push_back({std::cos(kTwoPi * c.a), -std::sin(kTwoPi * c.a), std::cos(kTwoPi * c.b),
                   -std::sin(kTwoPi * c.b)});
  return out;
}

}  // namespace lamfrag
