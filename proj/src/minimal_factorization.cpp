#include "lamfrag/minimal_factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lamfrag {

namespace {

void check_transposition(int64_t n, std::pair<int64_t, int64_t> t) {
  if (t.first < 1 || t.first >= t.second || t.second > n)
    throw std::invalid_argument("malformed transposition");
}

// left-to-right partial product of the first k transpositions as the array
// p[x] = image of x; maintained with the inverse for O(1) per factor
std::vector<int64_t> partial_product(const MinimalFactorization& f, int64_t k) {
  std::vector<int64_t> p(static_cast<size_t>(f.n) + 1), inv(static_cast<size_t>(f.n) + 1);
  for (int64_t x = 1; x <= f.n; ++x) p[static_cast<size_t>(x)] = inv[static_cast<size_t>(x)] = x;
  for (int64_t i = 0; i < k; ++i) {
    auto [a, b] = f.transpositions[static_cast<size_t>(i)];
    check_transposition(f.n, {a, b});
    int64_t xa = inv[static_cast<size_t>(a)];
    int64_t xb = inv[static_cast<size_t>(b)];
    std::swap(p[static_cast<size_t>(xa)], p[static_cast<size_t>(xb)]);
    inv[static_cast<size_t>(a)] = xb;
    inv[static_cast<size_t>(b)] = xa;
  }
  return p;
}

Chord make_circle_chord(int64_t a, int64_t b, int64_t n, int64_t label) {
  Chord c;
  c.a_num = a;
  c.b_num = b;
  c.a = static_cast<double>(a) / static_cast<double>(n);
  c.b = static_cast<double>(b) / static_cast<double>(n);
  c.label = label;
  return c;
}

// children of a label-l vertex in (C_Delta) order: labels below l descending,
// then labels above l descending
void sort_canonical(std::vector<int64_t>& child_labels, int64_t l) {
  std::sort(child_labels.begin(), child_labels.end(), [l](int64_t x, int64_t y) {
    bool xl = x < l, yl = y < l;
    if (xl != yl) return xl;
    return x > y;
  });
}

std::vector<int64_t> parent_label_map(const LabelledTree& t) {
  int64_t n = t.shape.size();
  if (static_cast<int64_t>(t.labels.size()) != n || n < 1 || t.labels[0] != 1)
    throw std::invalid_argument("labelled tree must be rooted at label 1");
  std::vector<int64_t> pl(static_cast<size_t>(n) + 1, -1);
  for (int64_t v = 0; v < n; ++v) {
    int64_t l = t.labels[static_cast<size_t>(v)];
    if (l < 1 || l > n || pl[static_cast<size_t>(l)] != -1)
      throw std::invalid_argument("labels must be a bijection onto 1..n");
    pl[static_cast<size_t>(l)] = v == 0 ? 0 : t.labels[static_cast<size_t>(t.shape.parent(v))];
  }
  return pl;
}

}  // namespace

bool verify_minimal(const MinimalFactorization& f) {
  if (f.n < 1) return false;
  if (static_cast<int64_t>(f.transpositions.size()) != f.n - 1) return false;
  auto p = partial_product(f, f.n - 1);
  for (int64_t x = 1; x <= f.n; ++x)
    if (p[static_cast<size_t>(x)] != x % f.n + 1) return false;
  return true;
}

LabelledTree canonical_labelled_tree(const std::vector<int64_t>& parent_label) {
  int64_t n = static_cast<int64_t>(parent_label.size()) - 1;
  if (n < 1 || parent_label[1] != 0)
    throw std::invalid_argument("label 1 must be the root (parent 0)");
  std::vector<std::vector<int64_t>> kids(static_cast<size_t>(n) + 1);
  for (int64_t l = 2; l <= n; ++l) {
    int64_t p = parent_label[static_cast<size_t>(l)];
    if (p < 1 || p > n) throw std::invalid_argument("parent label out of range");
    kids[static_cast<size_t>(p)].push_back(l);
  }
  for (int64_t l = 1; l <= n; ++l) sort_canonical(kids[static_cast<size_t>(l)], l);

  LabelledTree out;
  std::vector<int64_t> parents;
  std::vector<std::pair<int64_t, int64_t>> stack{{1, -1}};  // (label, parent index)
  while (!stack.empty()) {
    auto [l, pi] = stack.back();
    stack.pop_back();
    int64_t idx = static_cast<int64_t>(parents.size());
    parents.push_back(pi);
    out.labels.push_back(l);
    const auto& ch = kids[static_cast<size_t>(l)];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back({*it, idx});
  }
  if (static_cast<int64_t>(parents.size()) != n)
    throw std::invalid_argument("parent labels do not form a tree");
  out.shape = PlaneTree::from_parents(std::move(parents));
  return out;
}

bool same_labelled_tree(const LabelledTree& a, const LabelledTree& b) {
  if (a.shape.size() != b.shape.size()) return false;
  return parent_label_map(a) == parent_label_map(b);
}

GouldenYong goulden_yong_forward(const MinimalFactorization& f) {
  if (!verify_minimal(f)) throw std::invalid_argument("not a minimal factorization");
  int64_t n = f.n;
  GouldenYong out;
  std::vector<Chord> chords;
  for (size_t i = 0; i < f.transpositions.size(); ++i) {
    auto [a, b] = f.transpositions[i];
    chords.push_back(make_circle_chord(a, b, n, static_cast<int64_t>(i) + 2));
  }
  out.chords = make_lamination(chords, n);

  // parent of a chord = tightest enclosing chord (shared endpoints allowed),
  // found with a stack over chords sorted by (left asc, right desc)
  std::vector<size_t> order(chords.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (chords[x].a_num != chords[y].a_num) return chords[x].a_num < chords[y].a_num;
    return chords[x].b_num > chords[y].b_num;
  });
  std::vector<int64_t> pl(static_cast<size_t>(n) + 1, -1);
  pl[1] = 0;
  std::vector<size_t> stack;
  for (size_t i : order) {
    while (!stack.empty() && chords[stack.back()].b_num < chords[i].b_num) stack.pop_back();
    pl[static_cast<size_t>(chords[i].label)] =
        stack.empty() ? 1 : chords[stack.back()].label;
    stack.push_back(i);
  }
  out.tree = canonical_labelled_tree(pl);
  return out;
}

MinimalFactorization goulden_yong_inverse(const LabelledTree& t) {
  LabelledTree c = canonical_labelled_tree(parent_label_map(t));
  int64_t n = c.shape.size();
  auto sizes = subtree_sizes(c.shape);
  MinimalFactorization f;
  f.n = n;
  f.transpositions.assign(static_cast<size_t>(n - 1), {0, 0});
  // interval [a_v, b_v] of each vertex; a child of width w occupies w circle
  // steps, and a non-root vertex leaves one unit gap between its two label
  // groups (at the end if a group is empty)
  std::vector<std::pair<int64_t, int64_t>> interval(static_cast<size_t>(n));
  interval[0] = {1, n};
  for (int64_t v : c.shape.preorder()) {
    auto [a, b] = interval[static_cast<size_t>(v)];
    int64_t l = c.labels[static_cast<size_t>(v)];
    if (v != 0) f.transpositions[static_cast<size_t>(l) - 2] = {a, b};
    int64_t pos = a;
    bool gap_placed = v == 0;  // the root interval has no gap
    for (int64_t ch : c.shape.children(v)) {
      if (!gap_placed && c.labels[static_cast<size_t>(ch)] > l) {
        ++pos;
        gap_placed = true;
      }
      interval[static_cast<size_t>(ch)] = {pos, pos + sizes[static_cast<size_t>(ch)]};
      pos += sizes[static_cast<size_t>(ch)];
    }
    if (!gap_placed) ++pos;
    if (pos != b) throw std::logic_error("interval tiling failed");
  }
  return f;
}

MinimalFactorization sample_uniform_factorization(int64_t n, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  std::vector<int64_t> pl(static_cast<size_t>(n) + 1, -1);
  pl[1] = 0;
  if (n == 2) {
    pl[2] = 1;
  } else {
    // decode a uniform Pruefer sequence over {1..n}
    std::vector<int64_t> seq(static_cast<size_t>(n - 2));
    for (auto& s : seq) s = static_cast<int64_t>(rng.uniform_below(static_cast<uint64_t>(n))) + 1;
    std::vector<int64_t> deg(static_cast<size_t>(n) + 1, 1);
    for (int64_t s : seq) ++deg[static_cast<size_t>(s)];
    std::vector<std::pair<int64_t, int64_t>> edges;
    int64_t ptr = 1, leaf = 0;
    auto advance = [&] {
      while (deg[static_cast<size_t>(ptr)] != 1) ++ptr;
      leaf = ptr++;
    };
    advance();
    for (int64_t s : seq) {
      edges.push_back({leaf, s});
      if (--deg[static_cast<size_t>(s)] == 1 && s < ptr)
        leaf = s;
      else
        advance();
    }
    edges.push_back({leaf, n});
    // root the edge set at label 1
    std::vector<std::vector<int64_t>> adj(static_cast<size_t>(n) + 1);
    for (auto [x, y] : edges) {
      adj[static_cast<size_t>(x)].push_back(y);
      adj[static_cast<size_t>(y)].push_back(x);
    }
    std::vector<int64_t> todo{1};
    while (!todo.empty()) {
      int64_t x = todo.back();
      todo.pop_back();
      for (int64_t y : adj[static_cast<size_t>(x)]) {
        if (pl[static_cast<size_t>(y)] == -1 && y != 1) {
          pl[static_cast<size_t>(y)] = x;
          todo.push_back(y);
        }
      }
    }
  }
  return goulden_yong_inverse(canonical_labelled_tree(pl));
}

Lamination prefix_lamination(const MinimalFactorization& f, int64_t k, bool suffix) {
  if (k < 0 || k > f.n - 1) throw std::invalid_argument("k out of range");
  std::vector<Chord> chords;
  int64_t first = suffix ? f.n - 1 - k : 0;
  for (int64_t i = first; i < first + k; ++i) {
    auto [a, b] = f.transpositions[static_cast<size_t>(i)];
    check_transposition(f.n, {a, b});
    chords.push_back(make_circle_chord(a, b, f.n, i + 2));
  }
  return make_lamination(std::move(chords), f.n);
}

std::vector<std::vector<int64_t>> partial_product_cycles(const MinimalFactorization& f,
                                                         int64_t k) {
  if (k < 0 || k > static_cast<int64_t>(f.transpositions.size()))
    throw std::invalid_argument("k out of range");
  auto p = partial_product(f, k);
  std::vector<std::vector<int64_t>> cycles;
  std::vector<char> seen(static_cast<size_t>(f.n) + 1, 0);
  for (int64_t x = 1; x <= f.n; ++x) {
    if (seen[static_cast<size_t>(x)]) continue;
    std::vector<int64_t> cyc;
    for (int64_t y = x; !seen[static_cast<size_t>(y)]; y = p[static_cast<size_t>(y)]) {
      seen[static_cast<size_t>(y)] = 1;
      cyc.push_back(y);
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

Lamination partition_process(const MinimalFactorization& f, int64_t k) {
  std::vector<Chord> chords;
  for (const auto& cyc : partial_product_cycles(f, k)) {
    if (cyc.size() < 2) continue;
    std::vector<int64_t> block = cyc;
    std::sort(block.begin(), block.end());
    for (size_t i = 0; i + 1 < block.size(); ++i)
      chords.push_back(make_circle_chord(block[i], block[i + 1], f.n, block[0]));
    if (block.size() >= 3)
      chords.push_back(make_circle_chord(block.front(), block.back(), f.n, block[0]));
  }
  return make_lamination(std::move(chords), f.n);
}

LabelledTree shuffle_tree(const LabelledTree& t, int64_t K, RngStream& rng) {
  int64_t n = t.shape.size();
  parent_label_map(t);  // validates
  std::vector<int64_t> labels = t.labels;
  std::vector<std::vector<int64_t>> kids(static_cast<size_t>(n));
  for (int64_t v = 0; v < n; ++v)
    kids[static_cast<size_t>(v)].assign(t.shape.children(v).begin(), t.shape.children(v).end());

  // root-first: a vertex is handled before its children, so Operation 1 label
  // moves are visible when the children themselves are processed
  for (int64_t v = 0; v < n; ++v) {
    auto& ch = kids[static_cast<size_t>(v)];
    if (ch.size() < 2) continue;
    bool all_above = true;
    for (int64_t c : ch)
      if (labels[static_cast<size_t>(c)] <= K) all_above = false;
    if (all_above) {
      std::vector<int64_t> ls;
      for (int64_t c : ch) ls.push_back(labels[static_cast<size_t>(c)]);
      rng.shuffle(ls);
      for (size_t i = 0; i < ch.size(); ++i) labels[static_cast<size_t>(ch[i])] = ls[i];
    } else {
      rng.shuffle(ch);
    }
  }

  // renumber in preorder of the shuffled branch order
  LabelledTree out;
  std::vector<int64_t> parents;
  std::vector<std::pair<int64_t, int64_t>> stack{{0, -1}};
  while (!stack.empty()) {
    auto [v, pi] = stack.back();
    stack.pop_back();
    int64_t idx = static_cast<int64_t>(parents.size());
    parents.push_back(pi);
    out.labels.push_back(labels[static_cast<size_t>(v)]);
    const auto& ch = kids[static_cast<size_t>(v)];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back({*it, idx});
  }
  out.shape = PlaneTree::from_parents(std::move(parents));
  return out;
}

LabelledTree reverse_involution(const LabelledTree& t) {
  auto pl = parent_label_map(t);
  int64_t n = t.shape.size();
  auto rev = [n](int64_t l) { return l == 1 ? int64_t{1} : n + 2 - l; };
  std::vector<int64_t> out(static_cast<size_t>(n) + 1, -1);
  out[1] = 0;
  for (int64_t l = 2; l <= n; ++l)
    out[static_cast<size_t>(rev(l))] = rev(pl[static_cast<size_t>(l)]);
  return canonical_labelled_tree(out);
}

double chord_distance(double a1, double b1, double a2, double b2) {
  auto pt = [](double t) {
    double ang = 2.0 * std::numbers::pi * t;
    return std::pair<double, double>{std::cos(ang), -std::sin(ang)};
  };
  auto seg_dist = [](std::pair<double, double> p, std::pair<double, double> u,
                     std::pair<double, double> v) {
    double dx = v.first - u.first, dy = v.second - u.second;
    double len2 = dx * dx + dy * dy;
    double s = 0.0;
    if (len2 > 0.0)
      s = std::clamp(((p.first - u.first) * dx + (p.second - u.second) * dy) / len2, 0.0, 1.0);
    double ex = p.first - (u.first + s * dx), ey = p.second - (u.second + s * dy);
    return std::sqrt(ex * ex + ey * ey);
  };
  auto p1 = pt(a1), q1 = pt(b1), p2 = pt(a2), q2 = pt(b2);
  // Hausdorff distance between two segments is attained at an endpoint
  double d = seg_dist(p1, p2, q2);
  d = std::max(d, seg_dist(q1, p2, q2));
  d = std::max(d, seg_dist(p2, p1, q1));
  d = std::max(d, seg_dist(q2, p1, q1));
  return d;
}

std::string factorization_to_text(const MinimalFactorization& f) {
  std::ostringstream out;
  for (auto [a, b] : f.transpositions) out << a << ' ' << b << '\n';
  return out.str();
}

MinimalFactorization factorization_from_text(const std::string& text, int64_t n) {
  MinimalFactorization f;
  f.n = n;
  std::istringstream in(text);
  int64_t a, b;
  while (in >> a >> b) {
    check_transposition(n, {a, b});
    f.transpositions.push_back({a, b});
  }
  return f;
}

std::string labelled_tree_to_json(const LabelledTree& t) {
  nlohmann::json j;
  j["parents"] = t.shape.parents();
  j["labels"] = t.labels;
  return j.dump();
}

LabelledTree labelled_tree_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  LabelledTree t;
  t.shape = PlaneTree::from_parents(j.at("parents").get<std::vector<int64_t>>());
  t.labels = j.at("labels").get<std::vector<int64_t>>();
  parent_label_map(t);  // validates
  return t;
}

std::vector<MinimalFactorization> enumerate_minimal_factorizations(int64_t n) {
  std::vector<std::pair<int64_t, int64_t>> all;
  for (int64_t a = 1; a <= n; ++a)
    for (int64_t b = a + 1; b <= n; ++b) all.push_back({a, b});
  std::vector<MinimalFactorization> out;
  std::vector<size_t> idx(static_cast<size_t>(n - 1), 0);
  for (;;) {
    MinimalFactorization f;
    f.n = n;
    for (size_t i : idx) f.transpositions.push_back(all[i]);
    if (verify_minimal(f)) out.push_back(std::move(f));
    size_t p = 0;
    while (p < idx.size() && ++idx[p] == all.size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return out;
}

}  // namespace lamfrag
