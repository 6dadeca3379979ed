#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <complex>
#include <vector>

#include "lamfrag/numeric.hpp"
#include "lamfrag/rng.hpp"

using namespace lamfrag;

namespace {

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a) {
  size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (size_t j = 0; j < n; ++j) {
      double ang = -2.0 * M_PI * static_cast<double>(k * j % n) / static_cast<double>(n);
      s += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = s;
  }
  return out;
}

}  // namespace

TEST_CASE("fft matches naive DFT and inverts") {
  RngStream r(1);
  std::vector<std::complex<double>> a(64);
  for (auto& x : a) x = {r.next_double() - 0.5, r.next_double() - 0.5};
  auto ref = naive_dft(a);
  auto b = a;
  fft(b, false);
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - ref[i]) < 1e-10);
  fft(b, true);
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - a[i]) < 1e-12);
}

TEST_CASE("convolve matches schoolbook multiplication") {
  std::vector<double> a{1.0, 2.0, 3.0};
  std::vector<double> b{4.0, 0.5, 0.0, 1.0};
  auto c = convolve(a, b);
  std::vector<double> ref(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) ref[i + j] += a[i] * b[j];
  REQUIRE(c.size() == ref.size());
  for (size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("gamma_q matches the chi-square dof-2 closed form") {
  // dof = 2: P(X > x) = exp(-x/2), i.e. gamma_q(1, x/2)
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
    CHECK(gamma_q(1.0, x / 2.0) == doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-12));
  }
  // dof = 4: P(X > x) = (1 + x/2) exp(-x/2)
  for (double x : {0.5, 3.0, 8.0, 20.0}) {
    CHECK(gamma_q(2.0, x / 2.0) ==
          doctest::Approx((1.0 + x / 2.0) * std::exp(-x / 2.0)).epsilon(1e-12));
  }
  CHECK(gamma_q(3.7, 0.0) == 1.0);
}

TEST_CASE("gamma_q against erfc for half-integer a") {
  // gamma_q(1/2, x) = erfc(sqrt(x))
  for (double x : {0.01, 0.3, 1.0, 4.0, 9.0}) {
    CHECK(gamma_q(0.5, x) == doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-10));
  }
}

TEST_CASE("kolmogorov_ccdf known values") {
  // classical table: P(K > 1.36) ~ 0.049, P(K > 1.63) ~ 0.010
  CHECK(kolmogorov_ccdf(1.36) == doctest::Approx(0.0491).epsilon(0.01));
  CHECK(kolmogorov_ccdf(1.63) == doctest::Approx(0.0100).epsilon(0.02));
  CHECK(kolmogorov_ccdf(0.0) == 1.0);
  CHECK(kolmogorov_ccdf(5.0) < 1e-10);
}

TEST_CASE("parallel_for covers every index once regardless of thread count") {
  const int64_t n = 5000;
  std::vector<std::atomic<int>> hits(n);
  parallel_for(n, [&](int64_t i) { hits[static_cast<size_t>(i)]++; });
  for (int64_t i = 0; i < n; ++i) CHECK(hits[static_cast<size_t>(i)].load() == 1);
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS(parallel_for(100, [](int64_t i) {
    if (i == 57) throw std::runtime_error("boom");
  }));
}
