#include "lamfrag/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lamfrag {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_spec(const RenderSpec& spec) {
  if (spec.width < 64) throw std::invalid_argument("width must be >= 64");
  if (spec.delta < 0.0) throw std::invalid_argument("delta must be >= 0");
}

std::string num(double v) {
  // fixed precision keeps output byte-identical across runs and platforms
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v + 0.0);  // normalize -0
  return buf;
}

std::string svg_open(int64_t w) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << w
      << "\" viewBox=\"0 0 " << w << " " << w << "\">\n";
  return out.str();
}

}  // namespace

std::string render_svg(const Lamination& l, const RenderSpec& spec) {
  check_spec(spec);
  double cx = static_cast<double>(spec.width) / 2.0;
  double r = 0.45 * static_cast<double>(spec.width);
  auto point = [&](double a, double& x, double& y) {
    x = cx + r * std::cos(2.0 * kPi * a);
    y = cx + r * std::sin(2.0 * kPi * a);  // e^{-2 i pi a}, SVG y grows down
  };
  std::vector<Chord> chords = l.chords;
  std::sort(chords.begin(), chords.end(), [](const Chord& u, const Chord& v) {
    if (u.a != v.a) return u.a < v.a;
    if (u.b != v.b) return u.b < v.b;
    return u.label < v.label;
  });
  std::ostringstream out;
  out << svg_open(spec.width);
  out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cx) << "\" r=\"" << num(r)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(spec.stroke) << "\"/>\n";
  for (const auto& ch : chords) {
    double extent = std::min(ch.b - ch.a, 1.0 - (ch.b - ch.a));
    if (extent < spec.delta) continue;
    double x1, y1, x2, y2;
    point(ch.a, x1, y1);
    point(ch.b, x2, y2);
    out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
        << "\" y2=\"" << num(y2) << "\" stroke=\"black\" stroke-width=\"" << num(spec.stroke)
        << "\"/>\n";
    if (spec.labels && ch.label >= 0) {
      out << "<text x=\"" << num((x1 + x2) / 2.0) << "\" y=\"" << num((y1 + y2) / 2.0)
          << "\" font-size=\"" << num(static_cast<double>(spec.width) / 40.0) << "\">"
          << ch.label << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_svg(const PlaneTree& t, const RenderSpec& spec) {
  check_spec(spec);
  int64_t n = t.size();
  auto h = heights(t);
  int64_t max_h = 0;
  for (int64_t v = 0; v < n; ++v) max_h = std::max(max_h, h[v]);
  double margin = 0.05 * static_cast<double>(spec.width);
  double span = static_cast<double>(spec.width) - 2.0 * margin;
  // leaves evenly spaced in preorder, internal vertices above their children
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  int64_t leaves = 0;
  for (int64_t v = 0; v < n; ++v)
    if (t.degree(v) == 0) ++leaves;
  int64_t leaf_idx = 0;
  auto order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int64_t v = *it;
    if (t.degree(v) == 0) {
      // reverse preorder visits leaves right-to-left
      x[static_cast<size_t>(v)] =
          leaves == 1 ? 0.5
                      : static_cast<double>(leaves - 1 - leaf_idx) / static_cast<double>(leaves - 1);
      ++leaf_idx;
    } else {
      double s = 0.0;
      for (int64_t c : t.children(v)) s += x[static_cast<size_t>(c)];
      x[static_cast<size_t>(v)] = s / static_cast<double>(t.degree(v));
    }
  }
  auto px = [&](int64_t v) { return margin + span * x[static_cast<size_t>(v)]; };
  auto py = [&](int64_t v) {
    return margin + span * (max_h == 0 ? 0.0
                                       : static_cast<double>(h[static_cast<size_t>(v)]) /
                                             static_cast<double>(max_h));
  };
  std::ostringstream out;
  out << svg_open(spec.width);
  for (int64_t v = 1; v < n; ++v) {
    out << "<line x1=\"" << num(px(t.parent(v))) << "\" y1=\"" << num(py(t.parent(v)))
        << "\" x2=\"" << num(px(v)) << "\" y2=\"" << num(py(v))
        << "\" stroke=\"black\" stroke-width=\"" << num(spec.stroke) << "\"/>\n";
  }
  for (int64_t v = 0; v < n; ++v) {
    out << "<circle cx=\"" << num(px(v)) << "\" cy=\"" << num(py(v)) << "\" r=\""
        << num(std::max(1.0, spec.stroke * 1.5)) << "\" fill=\"black\"/>\n";
    if (spec.labels)
      out << "<text x=\"" << num(px(v) + 3.0) << "\" y=\"" << num(py(v) - 3.0)
          << "\" font-size=\"" << num(static_cast<double>(spec.width) / 40.0) << "\">" << v
          << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_svg(const LatticePath& p, const RenderSpec& spec) {
  check_spec(spec);
  if (p.times.size() != p.values.size() || p.times.empty())
    throw std::invalid_argument("path needs matching nonempty times and values");
  double t0 = p.times.front(), t1 = p.times.back();
  double lo = p.values[0], hi = p.values[0];
  for (double v : p.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) hi = lo + 1.0;
  if (t1 == t0) t1 = t0 + 1.0;
  double margin = 0.05 * static_cast<double>(spec.width);
  double span = static_cast<double>(spec.width) - 2.0 * margin;
  std::ostringstream out;
  out << svg_open(spec.width);
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << num(spec.stroke)
      << "\" points=\"";
  for (size_t i = 0; i < p.times.size(); ++i) {
    if (i) out << " ";
    out << num(margin + span * (p.times[i] - t0) / (t1 - t0)) << ","
        << num(margin + span * (hi - p.values[i]) / (hi - lo));
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

}  // namespace lamfrag
