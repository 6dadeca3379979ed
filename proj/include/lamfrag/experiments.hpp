#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lamfrag/rng.hpp"

namespace lamfrag {

// Machine-readable outcome of one scripted experiment. Reproducible from
// (name, seed, config); `notes` states methodology choices (marginal tests
// standing in for process-level convergence, modified statistics, rates).
struct ExperimentReport {
  std::string name;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> config;
  std::vector<std::pair<std::string, double>> stats;
  double threshold = 0.0;
  bool verdict = false;
  std::vector<std::string> notes;
  std::string raw_csv;  // per-sample statistics

  double stat(const std::string& key) const;  // throws if absent
};

std::string report_to_json(const ExperimentReport& r);

// exact rational equality of lamination face masses and fragmentation
// component masses on random tree/cut samples, plus the zero-cut and
// saturated-cut edge cases
ExperimentReport exp_mass_identity(uint64_t seed, int64_t samples = 1000,
                                   int64_t max_vertices = 500);

// KS marginals at time c: largest face mass and longest chord of the prefix
// lamination of a uniform minimal factorization vs the Poisson cut lamination
// on a conditioned Poisson(1)-GW tree (rate c sqrt(n)/n, matching the
// expected cut count c sqrt(n) of the factorization side)
ExperimentReport exp_factorization_vs_fragmentation(int64_t n, double c, int64_t samples,
                                                    uint64_t seed);

// KS marginals of the top-3 chord arc extents (U(0,1/M)-jittered): Lukasiewicz
// lamination of a mu_n-GW tree conditioned to M = 1 + Bin(n-1, c B_n/n)
// vertices vs the cut lamination with per-edge cut probability c B_n/n on
// conditioned mu-GW trees of size n
ExperimentReport exp_levy_marginal(int64_t n, double c, double alpha, int64_t samples,
                                   uint64_t seed);

// sup_k |B_n P(S_m = k) - q_u(k/B_n)| with the exact law of S_m by
// convolution doubling of the mu_n(.+1) walk step, m = floor(u c B_n) + j
// over j in {-floor(n^{3/8}), 0, +floor(n^{3/8})}
ExperimentReport exp_local_limit(int64_t n, double u, double alpha);

// reduced-tree shape law: Poisson(1)-GW host with i.i.d. marks, conditioned
// on s marks total (root always marked), chi-square against the mu_n-GW law
// conditioned to s vertices
ExperimentReport exp_reduced_tree_law(int64_t s, double p_mark, int64_t samples, uint64_t seed);

// d_H(contour lamination, Lukasiewicz lamination) <= 2 pi (H(T)+2)/n + 2 res
// on random conditioned trees
ExperimentReport exp_luka_vs_contour(int64_t n, int64_t samples, uint64_t seed);

// partition process vs prefix/suffix laminations of minimal factorizations:
// (a)/(b) 95th-percentile d_H decreasing across n_grid, (c) KS of largest
// block mass vs largest face mass at the last n of the grid
ExperimentReport exp_partition_process(const std::vector<int64_t>& n_grid, double c,
                                       int64_t samples, uint64_t seed);

// all of the above with their default desk-scale configurations
std::vector<ExperimentReport> run_all_experiments(uint64_t seed);

}  // namespace lamfrag
