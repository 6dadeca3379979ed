#pragma once

#include <cstdint>
#include <vector>

namespace lamfrag {

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;
};

struct ChiSquareResult {
  double statistic = 0.0;
  int64_t dof = 0;
  double p_value = 1.0;
};

// two-sample Kolmogorov-Smirnov with the asymptotic p-value
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Pearson chi-square of observed counts against expected probabilities
// (expected need not be normalized; cells with expected 0 must have count 0)
ChiSquareResult chi_square_test(const std::vector<int64_t>& observed,
                                const std::vector<double>& expected_probs);

}  // namespace lamfrag
