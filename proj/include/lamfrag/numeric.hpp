#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace lamfrag {

// in-place radix-2 FFT; size must be a power of two
void fft(std::vector<std::complex<double>>& a, bool inverse);

// linear convolution of two nonnegative sequences via FFT, with tiny negative
// roundoff clipped to zero
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

// regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a)
double gamma_q(double a, double x);
double log_gamma(double x);

// complementary CDF of the Kolmogorov distribution: P(K > lambda)
double kolmogorov_ccdf(double lambda);

// deterministic parallel map: runs body(i) for i in [0, n); the partition into
// threads never affects results because each i owns its own state.
// Thread count is capped by the LAMLAB_THREADS environment variable.
void parallel_for(int64_t n, const std::function<void(int64_t)>& body);

int max_threads();

}  // namespace lamfrag
