#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace lamfrag {

// Splittable counter-based stream built on the SplitMix64 mixer. Every
// stochastic operation derives a child stream from (seed, label) so results
// are reproducible module-by-module and across thread counts. All sampling
// is integer-based or uses fixed algorithms (no std::distribution), so the
// byte stream is identical across platforms.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : state_(seed) {}

  RngStream child(std::string_view label) const;
  RngStream child(uint64_t index) const;

  uint64_t next_u64();
  // uniform in [0,1) with 53 random bits
  double next_double();
  // uniform in [0, bound), bound >= 1
  uint64_t uniform_below(uint64_t bound);
  double exponential();      // rate 1
  double normal();           // standard normal (Box-Muller, one value per call)
  uint64_t poisson(double mean);
  // in-place Fisher-Yates
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace lamfrag
