#include "lamfrag/rng.hpp"

#include <cmath>

namespace lamfrag {
namespace {

constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

uint64_t mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngStream RngStream::child(std::string_view label) const {
  return RngStream(mix(state_ + kGamma + fnv1a(label)));
}

RngStream RngStream::child(uint64_t index) const {
  return RngStream(mix(state_ + kGamma + mix(index + 0x51ed2701a9e7bb21ULL)));
}

uint64_t RngStream::next_u64() {
  state_ += kGamma;
  return mix(state_);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t RngStream::uniform_below(uint64_t bound) {
  // rejection from the top to avoid modulo bias
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

double RngStream::exponential() {
  double u;
  do {
    u = next_double();
  } while (u == 0.0);
  return -std::log(u);
}

double RngStream::normal() {
  double u1, u2;
  do {
    u1 = next_double();
  } while (u1 == 0.0);
  u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

uint64_t RngStream::poisson(double mean) {
  // product method for small means; Poisson additivity above that keeps the
  // sampler exact without a normal approximation
  if (mean <= 0.0) return 0;
  if (mean <= 32.0) {
    double limit = std::exp(-mean);
    uint64_t k = 0;
    double prod = next_double();
    while (prod > limit) {
      ++k;
      prod *= next_double();
    }
    return k;
  }
  return poisson(mean / 2.0) + poisson(mean - mean / 2.0);
}

}  // namespace lamfrag
