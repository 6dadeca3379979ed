#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lamfrag {

// Rooted ordered tree (Neveu formalism). Vertices are indices 0..n-1 with the
// root at index 0; child order is significant. Storage is flat (CSR child
// lists) so traversals are iterative and trees up to 1e7 vertices are cheap.
class PlaneTree {
 public:
  // parents[v] = parent index, -1 for the root (exactly one, at index 0).
  // Children of each vertex are ordered by ascending index, which matches
  // insertion order for trees serialized in lexicographic (preorder) indexing.
  static PlaneTree from_parents(std::vector<int64_t> parents);

  int64_t size() const { return static_cast<int64_t>(parents_.size()); }
  int64_t root() const { return 0; }
  int64_t parent(int64_t v) const { return parents_[v]; }
  int64_t degree(int64_t v) const { return child_off_[v + 1] - child_off_[v]; }
  std::span<const int64_t> children(int64_t v) const {
    return {child_list_.data() + child_off_[v], static_cast<size_t>(degree(v))};
  }
  const std::vector<int64_t>& parents() const { return parents_; }

  // depth-first (lexicographic) vertex order
  std::vector<int64_t> preorder() const;

  bool operator==(const PlaneTree& o) const { return parents_ == o.parents_; }

 private:
  std::vector<int64_t> parents_;
  std::vector<int64_t> child_off_;
  std::vector<int64_t> child_list_;
};

// contour function at integer times 0..2n: vertex heights along the
// left-to-right contour for 0..2n-2, then 0 on [2n-2, 2n]
std::vector<int64_t> contour_path(const PlaneTree& t);

// Lukasiewicz path W_0=0, .., W_n=-1 with increments (children - 1) along the
// lexicographic order
std::vector<int64_t> lukasiewicz_path(const PlaneTree& t);

// inverse of lukasiewicz_path; rejects paths that are not first-hit-at-end
PlaneTree tree_from_lukasiewicz(const std::vector<int64_t>& path);

std::vector<int64_t> subtree_sizes(const PlaneTree& t);
std::vector<int64_t> heights(const PlaneTree& t);
int64_t tree_height(const PlaneTree& t);

// first/last contour visit times g_v, d_v over the 2n clock
struct ContourVisits {
  std::vector<int64_t> first;
  std::vector<int64_t> last;
};
ContourVisits contour_visits(const PlaneTree& t);

enum class HeavyKind { node, branching_point };

// a-nodes: children splittable into two groups, each of total subtree mass
// >= a; a-branching points: at least two children with subtree size >= a
std::vector<int64_t> find_heavy_vertices(const PlaneTree& t, int64_t a, HeavyKind kind);

std::string tree_to_json(const PlaneTree& t);
PlaneTree tree_from_json(const std::string& text);

// all plane trees with n vertices (Catalan(n-1) of them), for test oracles
std::vector<PlaneTree> enumerate_plane_trees(int64_t n);

}  // namespace lamfrag
