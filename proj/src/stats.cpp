#include "lamfrag/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lamfrag/numeric.hpp"

namespace lamfrag {

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0.0;
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  double ne = std::sqrt(na * nb / (na + nb));
  // Stephens' finite-sample correction to the asymptotic Kolmogorov law
  double lambda = (ne + 0.12 + 0.11 / ne) * d;
  return {d, kolmogorov_ccdf(lambda)};
}

ChiSquareResult chi_square_test(const std::vector<int64_t>& observed,
                                const std::vector<double>& expected_probs) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw std::invalid_argument("chi_square_test: size mismatch");
  int64_t total = std::accumulate(observed.begin(), observed.end(), int64_t{0});
  double norm = std::accumulate(expected_probs.begin(), expected_probs.end(), 0.0);
  double stat = 0.0;
  int64_t dof = -1;
  for (size_t k = 0; k < observed.size(); ++k) {
    double e = static_cast<double>(total) * expected_probs[k] / norm;
    if (e <= 0.0) {
      if (observed[k] != 0) throw std::invalid_argument("chi_square_test: mass in zero-probability cell");
      continue;
    }
    double diff = static_cast<double>(observed[k]) - e;
    stat += diff * diff / e;
    ++dof;
  }
  if (dof < 1) return {0.0, 0, 1.0};
  return {stat, dof, gamma_q(static_cast<double>(dof) / 2.0, stat / 2.0)};
}

}  // namespace lamfrag
