#include "lamfrag/plane_tree.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace lamfrag {

PlaneTree PlaneTree::from_parents(std::vector<int64_t> parents) {
  int64_t n = static_cast<int64_t>(parents.size());
  if (n == 0) throw std::invalid_argument("tree must have at least one vertex");
  if (parents[0] != -1) throw std::invalid_argument("root must be vertex 0 (parent -1)");
  PlaneTree t;
  t.child_off_.assign(n + 1, 0);
  for (int64_t v = 1; v < n; ++v) {
    if (parents[v] < 0 || parents[v] >= n || parents[v] == v)
      throw std::invalid_argument("invalid parent index");
    ++t.child_off_[parents[v] + 1];
  }
  for (int64_t v = 0; v < n; ++v) t.child_off_[v + 1] += t.child_off_[v];
  t.child_list_.resize(n - 1);
  std::vector<int64_t> cursor(t.child_off_.begin(), t.child_off_.end() - 1);
  for (int64_t v = 1; v < n; ++v) t.child_list_[cursor[parents[v]]++] = v;
  t.parents_ = std::move(parents);
  // connectivity: every vertex must reach the root (guards against cycles)
  std::vector<int8_t> state(n, 0);
  state[0] = 1;
  std::vector<int64_t> chain;
  for (int64_t v = 1; v < n; ++v) {
    int64_t u = v;
    chain.clear();
    while (state[u] == 0) {
      state[u] = 2;
      chain.push_back(u);
      u = t.parents_[u];
      if (u >= 0 && state[u] == 2) throw std::invalid_argument("parent array contains a cycle");
    }
    for (int64_t w : chain) state[w] = 1;
  }
  return t;
}

std::vector<int64_t> PlaneTree::preorder() const {
  std::vector<int64_t> order;
  order.reserve(size());
  std::vector<int64_t> stack{0};
  while (!stack.empty()) {
    int64_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    auto ch = children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

namespace {

struct Frame {
  int64_t v;
  int64_t next_child;
};

// shared contour walk: calls visit(v, time, height) at each arrival
template <typename Visit>
void contour_walk(const PlaneTree& t, Visit&& visit) {
  std::vector<Frame> stack;
  stack.push_back({0, 0});
  int64_t h = 0;
  int64_t time = 0;
  visit(int64_t{0}, time++, h);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_child < t.degree(f.v)) {
      int64_t c = t.children(f.v)[f.next_child++];
      stack.push_back({c, 0});
      ++h;
      visit(c, time++, h);
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        --h;
        visit(stack.back().v, time++, h);
      }
    }
  }
}

}  // namespace

std::vector<int64_t> contour_path(const PlaneTree& t) {
  std::vector<int64_t> path;
  path.reserve(2 * t.size() + 1);
  contour_walk(t, [&](int64_t, int64_t, int64_t h) { path.push_back(h); });
  path.push_back(0);
  path.push_back(0);
  return path;
}

ContourVisits contour_visits(const PlaneTree& t) {
  ContourVisits cv;
  cv.first.assign(t.size(), -1);
  cv.last.assign(t.size(), -1);
  contour_walk(t, [&](int64_t v, int64_t time, int64_t) {
    if (cv.first[v] < 0) cv.first[v] = time;
    cv.last[v] = time;
  });
  return cv;
}

std::vector<int64_t> lukasiewicz_path(const PlaneTree& t) {
  std::vector<int64_t> path;
  path.reserve(t.size() + 1);
  path.push_back(0);
  int64_t w = 0;
  for (int64_t v : t.preorder()) {
    w += t.degree(v) - 1;
    path.push_back(w);
  }
  return path;
}

PlaneTree tree_from_lukasiewicz(const std::vector<int64_t>& path) {
  int64_t n = static_cast<int64_t>(path.size()) - 1;
  if (n < 1 || path[0] != 0 || path[n] != -1)
    throw std::invalid_argument("lukasiewicz path must run from 0 to -1");
  std::vector<int64_t> degs(n);
  for (int64_t i = 0; i < n; ++i) {
    int64_t step = path[i + 1] - path[i];
    if (step < -1) throw std::invalid_argument("lukasiewicz increments must be >= -1");
    if (i < n - 1 && path[i + 1] < 0) throw std::invalid_argument("path hits -1 before the end");
    degs[i] = step + 1;
  }
  std::vector<int64_t> parents(n, -1);
  std::vector<Frame> stack;  // (vertex, remaining children)
  stack.push_back({0, degs[0]});
  for (int64_t v = 1; v < n; ++v) {
    while (!stack.empty() && stack.back().next_child == 0) stack.pop_back();
    if (stack.empty()) throw std::invalid_argument("malformed lukasiewicz path");
    parents[v] = stack.back().v;
    --stack.back().next_child;
    stack.push_back({v, degs[v]});
  }
  return PlaneTree::from_parents(std::move(parents));
}

std::vector<int64_t> subtree_sizes(const PlaneTree& t) {
  std::vector<int64_t> sizes(t.size(), 1);
  auto order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int64_t v = *it;
    if (v != 0) sizes[t.parent(v)] += sizes[v];
  }
  return sizes;
}

std::vector<int64_t> heights(const PlaneTree& t) {
  std::vector<int64_t> h(t.size(), 0);
  for (int64_t v : t.preorder())
    if (v != 0) h[v] = h[t.parent(v)] + 1;
  return h;
}

int64_t tree_height(const PlaneTree& t) {
  auto h = heights(t);
  return *std::max_element(h.begin(), h.end());
}

namespace {

// exact two-group partition feasibility: some subset of sizes sums into
// [a, total-a]. Items are clamped at a (a group containing an item >= a is
// already heavy), which bounds the DP by 2a*deg bits.
bool a_node_feasible(std::vector<int64_t> sizes, int64_t a) {
  int64_t total = 0;
  for (int64_t s : sizes) total += s;
  if (total < 2 * a) return false;
  for (auto& s : sizes)
    if (s > a) s = a;
  int64_t cap = 0;
  for (int64_t s : sizes) cap += s;
  std::vector<uint64_t> bits(static_cast<size_t>(cap / 64 + 1), 0);
  bits[0] = 1;
  for (int64_t s : sizes) {
    int64_t word = s / 64, shift = s % 64;
    for (int64_t i = static_cast<int64_t>(bits.size()) - 1; i >= word; --i) {
      uint64_t v = bits[i - word] << shift;
      if (shift != 0 && i - word - 1 >= 0) v |= bits[i - word - 1] >> (64 - shift);
      bits[i] |= v;
    }
  }
  // group sums s and cap-s must both be >= a in clamped units; unclamped
  // feasibility holds iff some clamped subset sum lies in [a, cap-a]
  for (int64_t s = a; s <= cap - a; ++s)
    if (bits[s / 64] >> (s % 64) & 1) return true;
  return false;
}

}  // namespace

std::vector<int64_t> find_heavy_vertices(const PlaneTree& t, int64_t a, HeavyKind kind) {
  if (a < 1) throw std::invalid_argument("a must be >= 1");
  auto sizes = subtree_sizes(t);
  std::vector<int64_t> out;
  for (int64_t v = 0; v < t.size(); ++v) {
    auto ch = t.children(v);
    if (kind == HeavyKind::branching_point) {
      int64_t heavy = 0;
      for (int64_t c : ch)
        if (sizes[c] >= a) ++heavy;
      if (heavy >= 2) out.push_back(v);
    } else {
      std::vector<int64_t> child_sizes;
      child_sizes.reserve(ch.size());
      for (int64_t c : ch) child_sizes.push_back(sizes[c]);
      if (a_node_feasible(std::move(child_sizes), a)) out.push_back(v);
    }
  }
  return out;
}

std::string tree_to_json(const PlaneTree& t) {
  nlohmann::json j;
  j["n"] = t.size();
  nlohmann::json parents = nlohmann::json::array();
  for (int64_t v = 0; v < t.size(); ++v) {
    if (v == 0)
      parents.push_back(nullptr);
    else
      parents.push_back(t.parent(v));
  }
  j["parents"] = std::move(parents);
  return j.dump();
}

PlaneTree tree_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<int64_t> parents;
  for (const auto& p : j.at("parents")) parents.push_back(p.is_null() ? -1 : p.get<int64_t>());
  if (j.contains("n") && j["n"].get<int64_t>() != static_cast<int64_t>(parents.size()))
    throw std::invalid_argument("tree json: n does not match parents length");
  return PlaneTree::from_parents(std::move(parents));
}

namespace {

void enumerate_paths(int64_t n, std::vector<int64_t>& path, std::vector<PlaneTree>& out) {
  int64_t i = static_cast<int64_t>(path.size()) - 1;
  if (i == n) {
    if (path.back() == -1) out.push_back(tree_from_lukasiewicz(path));
    return;
  }
  for (int64_t step = -1; path.back() + step + (n - i - 1) >= 0 || (i == n - 1 && step == -1); ++step) {
    int64_t next = path.back() + step;
    if (i < n - 1 && next < 0) continue;
    if (next - (n - 1 - i) > -1) break;  // cannot get back down to -1 in time
    path.push_back(next);
    enumerate_paths(n, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<PlaneTree> enumerate_plane_trees(int64_t n) {
  std::vector<PlaneTree> out;
  std::vector<int64_t> path{0};
  enumerate_paths(n, path, out);
  return out;
}

}  // namespace lamfrag
