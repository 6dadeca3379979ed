#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lamfrag/plane_tree.hpp"
#include "lamfrag/rng.hpp"

namespace lamfrag {

enum class OffspringFamily { poisson1, stable, custom };

// Critical offspring law in the stable domain of attraction. `weights` always
// holds a finite distribution (truncated at k_max with the cut mass folded
// back so that sum = 1 and mean = 1 within 1e-12); the stable family
// additionally samples its exact untruncated tail lazily by inversion.
struct OffspringDistribution {
  OffspringFamily family = OffspringFamily::custom;
  std::string name = "custom";
  double alpha = 2.0;            // stability index in (1, 2]
  double L_const = 1.0;          // constant value of the slowly varying L
  std::function<double(double)> L_fn;  // optional non-constant L
  std::vector<double> weights;   // corrected probabilities on 0..k_max
  int64_t k_max = 0;
  double mean = 1.0;
};

// name "poisson1" (alpha fixed to 2) or "stable" with alpha in (1,2);
// k_max = 0 picks the family default (64 resp. 1e7)
OffspringDistribution builtin_distribution(const std::string& name, double alpha = 0.0,
                                           int64_t k_max = 0);

OffspringDistribution distribution_from_weights(std::vector<double> weights);

// generating function F(s) = sum mu_k s^k; closed form for the builtins
double offspring_F(const OffspringDistribution& d, double s);

std::string distribution_to_json(const OffspringDistribution& d);
OffspringDistribution distribution_from_json(const std::string& text);

struct ScalingConstant {
  int64_t n = 0;
  double B_n = 0.0;
};

// solves n L(B)/B^alpha = alpha(alpha-1)/Gamma(3-alpha) for B
ScalingConstant compute_Bn(const OffspringDistribution& d, int64_t n);

// Walker/Vose alias table over a finite distribution
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& w);
  int64_t sample(RngStream& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<int64_t> alias_;
};

struct SampleStats {
  int64_t attempts = 0;  // rejection attempts consumed (1 = accepted first try)
};

// Exact sampler for the mu-GW tree conditioned on n vertices: i.i.d.
// increments, rejection on the bridge sum, then the unique cyclic shift to an
// excursion. poisson1 at n >= 1e6 switches to the rejection-free multinomial
// route. Immutable; share across threads with per-call streams.
class GwSampler {
 public:
  explicit GwSampler(OffspringDistribution d);

  const OffspringDistribution& distribution() const { return d_; }
  PlaneTree sample(int64_t n, RngStream& rng, SampleStats* stats = nullptr) const;

  // the two routes, exposed for direct testing
  PlaneTree sample_rejection(int64_t n, RngStream& rng, SampleStats* stats = nullptr) const;
  PlaneTree sample_poisson1_multinomial(int64_t n, RngStream& rng) const;

 private:
  int64_t sample_offspring(RngStream& rng) const;
  void check_reachable(int64_t n) const;

  OffspringDistribution d_;
  AliasTable alias_;
  bool lazy_tail_ = false;
  double tail_mass_ = 0.0;        // exact stable tail mass beyond k_max
  double tail_first_pmf_ = 0.0;   // exact mu_{k_max}
};

// convenience wrapper constructing a sampler per call (fine at desk scale)
PlaneTree sample_conditioned_gw(const OffspringDistribution& d, int64_t n, RngStream& rng,
                                SampleStats* stats = nullptr);

// unique cyclic rotation of bridge increments (each >= -1, summing to -1)
// whose walk first hits -1 at the end; exposed for testing
std::vector<int64_t> excursion_rotation(const std::vector<int64_t>& increments);

}  // namespace lamfrag
