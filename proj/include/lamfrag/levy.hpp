#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lamfrag/gw_sampler.hpp"
#include "lamfrag/plane_tree.hpp"
#include "lamfrag/rng.hpp"

namespace lamfrag {

// parameters of the Levy process tau^{alpha,c}
struct ExponentParams {
  double alpha = 2.0;  // in (1, 2]
  double c = 1.0;      // > 0
};

// unique nonnegative root of X^alpha + c X - c lam = 0; residual <= 1e-12
double laplace_exponent_phibar(double lam, const ExponentParams& p);

// the root of z^alpha + c z + i t c = 0 with Re z >= 0 (principal-branch
// powers, cut along the negative reals), found by homotopy continuation in t
// from |t| = 1e6 with Newton refinement; psibar(-t) = conj(psibar(t))
std::complex<double> char_exponent_psibar(double t, const ExponentParams& p);

// chained continuation over a positive ascending grid (one homotopy sweep)
std::vector<std::complex<double>> char_exponent_psibar_grid(const std::vector<double>& ts,
                                                            const ExponentParams& p);

// winding-number count of the roots of z^alpha + cz + itc in the right half
// disk (contour: imaginary axis + right semicircle of radius R, adaptively
// refined so every step turns by < pi/2)
int64_t count_roots_right_half(double t, const ExponentParams& p, double R);

// density of tau_u, whose characteristic exponent is u(c psibar(t) + itc):
// q_u(x) = (1/pi) int_0^T Re(e^{-it(x + uc)} e^{-u c psibar(t)}) dt,
// T where u c Re psibar(T) = 40
double density_q(double u, double x, const ExponentParams& p);

// uniform table of q_u on [-x_max, x_max] via one FFT inversion, evaluated
// with cubic (Catmull-Rom) interpolation between grid points
struct DensityTable {
  double x0 = 0.0;
  double dx = 0.0;
  std::vector<double> q;

  double eval(double x) const;
};

DensityTable density_q_table(double u, const ExponentParams& p, double x_max);

// fixed point F_{mu_n}(x) = F_mu(p_n x + (1 - p_n) F_{mu_n}(x)), solved
// coefficientwise (triangular recurrences for the builtin families, iterated
// Horner composition otherwise), truncated at k_max with the lost mass and
// mean folded back so the result is exactly critical
OffspringDistribution mu_n_law(const OffspringDistribution& mu, double p_n, int64_t k_max);

// tree spanned by the marked vertices: parent = nearest marked strict
// ancestor, child order inherited from the contour order
struct ReducedTree {
  PlaneTree tree;
  std::vector<int64_t> original;  // original index of each reduced vertex
};

ReducedTree reduced_tree(const PlaneTree& t, const std::vector<char>& marks);

struct LatticePath {
  std::vector<double> times;
  std::vector<double> values;
};

enum class TauMode { stable_skeleton, gw_walk };

struct TauOptions {
  double s_max = 1.0;   // skeleton mode: emit tau_s for s on [0, s_max]
  double dt = 1.0 / 1024.0;  // skeleton mode: time step of the driving process
  // gw_walk mode: walk with jumps mu_n(. + 1), mu_n built from mu at
  // p_n = c B_n / n, emitted as S_j / B_n at times j / floor(c B_n)
  const OffspringDistribution* mu = nullptr;
  int64_t n = 0;
  int64_t k_max = 4096;
};

// paths of tau^{alpha,c}: `steps` grid points after time 0
LatticePath sample_tau_path(const ExponentParams& p, TauMode mode, int64_t steps,
                            RngStream& rng, const TauOptions& opt = {});

// one increment of the spectrally positive alpha-stable process normalized by
// E[e^{-lam Y_s}] = e^{s lam^alpha} (Brownian sqrt(2s) B for alpha = 2)
double stable_increment(double alpha, double s, RngStream& rng);

// cyclic shift of a bridge at its minimum: bridges to 0 shift at the
// right-most minimum and subtract it; walks to -1 use the cycle-lemma shift
// (first minimum), keeping the -1 terminal step
std::vector<int64_t> vervaat_transform(const std::vector<int64_t>& bridge);
LatticePath vervaat_transform(const LatticePath& bridge);

struct GeneratingEstimatePoint {
  std::complex<double> omega;
  std::complex<double> ratio;     // (F(1+w) - (1+w)) / ((-w)^alpha L(1/|w|))
  double estim_residual = 0.0;    // |lhs - rhs| of the integral identity
};

struct GeneratingEstimateReport {
  std::vector<GeneratingEstimatePoint> points;
  double max_ratio_error = 0.0;   // max |ratio - 1|
  double max_estim_residual = 0.0;
};

// checks F(1+w) - (1+w) ~ (-w)^alpha L(1/|w|) on a grid with |1+w| < 1 and
// w off the positive reals, plus the exact integral identity
// F(e^w) = 1 + w - w int (1 - e^{wx}) M_x dx on the represented weights
GeneratingEstimateReport verify_generating_estimate(
    const OffspringDistribution& mu, const std::vector<std::complex<double>>& omega_grid);

std::string density_table_to_csv(const DensityTable& table);

}  // namespace lamfrag
