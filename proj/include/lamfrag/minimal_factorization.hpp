#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lamfrag/lamination.hpp"
#include "lamfrag/plane_tree.hpp"
#include "lamfrag/rng.hpp"

namespace lamfrag {

// n-1 transpositions (a_i, b_i), 1 <= a_i < b_i <= n, multiplying left to
// right (t_1 applied first) to the cycle (1 2 ... n)
struct MinimalFactorization {
  int64_t n = 0;
  std::vector<std::pair<int64_t, int64_t>> transpositions;

  bool operator==(const MinimalFactorization& o) const = default;
};

// Labelled tree on {1..n} rooted at label 1. The plane shape is the canonical
// embedding: children of a vertex labelled l are ordered labels < l
// descending, then labels > l descending.
struct LabelledTree {
  PlaneTree shape;
  std::vector<int64_t> labels;  // labels[v] for vertex v, labels[0] = 1
};

// true iff the left-to-right product equals (1 2 ... n)
bool verify_minimal(const MinimalFactorization& f);

struct GouldenYong {
  Lamination chords;  // chord of t_i at the n-th roots of unity, label i+1
  LabelledTree tree;
};

// the Goulden-Yong bijection: transposition chords become tree edges whose
// label slides to the endpoint further from 1
GouldenYong goulden_yong_forward(const MinimalFactorization& f);

MinimalFactorization goulden_yong_inverse(const LabelledTree& t);

// canonical plane embedding of an arbitrary parent/label description
// (parent_label[l] = parent of the vertex labelled l, 0 for the root label 1)
LabelledTree canonical_labelled_tree(const std::vector<int64_t>& parent_label);

bool same_labelled_tree(const LabelledTree& a, const LabelledTree& b);

// uniform on M_n via a uniform Pruefer sequence and the inverse bijection
MinimalFactorization sample_uniform_factorization(int64_t n, RngStream& rng);

// chords of the first k transpositions (or the last k when suffix is true)
Lamination prefix_lamination(const MinimalFactorization& f, int64_t k, bool suffix = false);

// chords between consecutive elements of every nontrivial cycle of the
// partial product t_1 ... t_k; chord labels carry the cycle's smallest element
Lamination partition_process(const MinimalFactorization& f, int64_t k);

// cycles of the partial product after k transpositions, smallest element
// first in each cycle, cycles sorted by smallest element
std::vector<std::vector<int64_t>> partial_product_cycles(const MinimalFactorization& f,
                                                         int64_t k);

// root-first label/branch shuffling: at each vertex, if every child label
// exceeds K the child labels are permuted in place (subtrees stay), otherwise
// the child branches are permuted with their subtrees
LabelledTree shuffle_tree(const LabelledTree& t, int64_t K, RngStream& rng);

// relabels every non-root x from e_x to n+2-e_x (an involution)
LabelledTree reverse_involution(const LabelledTree& t);

// exact Hausdorff distance between two disk chords given by endpoint angles
// (fractions of a turn)
double chord_distance(double a1, double b1, double a2, double b2);

std::string factorization_to_text(const MinimalFactorization& f);
MinimalFactorization factorization_from_text(const std::string& text, int64_t n);
std::string labelled_tree_to_json(const LabelledTree& t);
LabelledTree labelled_tree_from_json(const std::string& text);

// all of M_n by exhaustive filtering (for n <= 5 oracles)
std::vector<MinimalFactorization> enumerate_minimal_factorizations(int64_t n);

}  // namespace lamfrag
