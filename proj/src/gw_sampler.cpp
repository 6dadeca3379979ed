#include "lamfrag/gw_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "lamfrag/numeric.hpp"

namespace lamfrag {

namespace {

constexpr int64_t kPoissonDefaultKmax = 64;
constexpr int64_t kStableDefaultKmax = 10000000;
constexpr int64_t kMultinomialThreshold = 1000000;

// exact stable(alpha) pmf mu_0..mu_{len-1} of F(s) = s + (1-s)^alpha / alpha
std::vector<double> stable_pmf(double alpha, int64_t len) {
  std::vector<double> w(static_cast<size_t>(len), 0.0);
  w[0] = 1.0 / alpha;
  if (len > 2) w[2] = (alpha - 1.0) / 2.0;
  double m = len > 2 ? w[2] : 0.0;
  for (int64_t k = 2; k + 1 < len; ++k) {
    m *= (static_cast<double>(k) - alpha) / static_cast<double>(k + 1);
    w[static_cast<size_t>(k + 1)] = m;
  }
  return w;
}

// folds the truncated mass back so sum = 1 and mean = 1 exactly: the last
// bucket absorbs the missing mean, bucket 0 the remaining missing mass
void recenter(std::vector<double>& w) {
  double sum = 0.0, mean = 0.0;
  for (size_t k = 0; k < w.size(); ++k) {
    sum += w[k];
    mean += static_cast<double>(k) * w[k];
  }
  double ds = 1.0 - sum;
  double dm = 1.0 - mean;
  auto last = static_cast<double>(w.size() - 1);
  w.back() += dm / last;
  w[0] += ds - dm / last;
}

}  // namespace

OffspringDistribution builtin_distribution(const std::string& name, double alpha, int64_t k_max) {
  OffspringDistribution d;
  if (name == "poisson1") {
    d.family = OffspringFamily::poisson1;
    d.name = name;
    d.alpha = 2.0;
    d.L_const = 1.0;  // L = E[X^2] - 1 = sigma^2 for Poisson(1)
    d.k_max = k_max > 0 ? k_max : kPoissonDefaultKmax;
    d.weights.resize(static_cast<size_t>(d.k_max) + 1, 0.0);
    double p = std::exp(-1.0);
    for (int64_t k = 0; k <= d.k_max; ++k) {
      d.weights[static_cast<size_t>(k)] = p;
      p /= static_cast<double>(k + 1);
    }
    recenter(d.weights);
  } else if (name == "stable") {
    if (!(alpha > 1.0 && alpha < 2.0))
      throw std::invalid_argument("stable family needs alpha in (1,2)");
    d.family = OffspringFamily::stable;
    d.name = name;
    d.alpha = alpha;
    // matches the generating-function singularity (1-s)^alpha / alpha
    d.L_const = (alpha - 1.0) / std::tgamma(3.0 - alpha);
    d.k_max = k_max > 0 ? k_max : kStableDefaultKmax;
    d.weights = stable_pmf(alpha, d.k_max + 1);
    recenter(d.weights);
  } else {
    throw std::invalid_argument("unknown builtin distribution: " + name);
  }
  d.mean = 1.0;
  return d;
}

OffspringDistribution distribution_from_weights(std::vector<double> weights) {
  if (weights.size() < 2) throw std::invalid_argument("need support beyond 0");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("negative weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
  OffspringDistribution d;
  d.family = OffspringFamily::custom;
  d.name = "custom";
  d.k_max = static_cast<int64_t>(weights.size()) - 1;
  for (auto& w : weights) w /= sum;
  double mean = 0.0;
  for (size_t k = 0; k < weights.size(); ++k) mean += static_cast<double>(k) * weights[k];
  d.mean = mean;
  d.weights = std::move(weights);
  return d;
}

double offspring_F(const OffspringDistribution& d, double s) {
  switch (d.family) {
    case OffspringFamily::poisson1:
      return std::exp(s - 1.0);
    case OffspringFamily::stable:
      return s + std::pow(1.0 - s, d.alpha) / d.alpha;
    case OffspringFamily::custom: {
      double v = 0.0;
      for (size_t k = d.weights.size(); k-- > 0;) v = v * s + d.weights[k];
      return v;
    }
  }
  return 0.0;
}

std::string distribution_to_json(const OffspringDistribution& d) {
  nlohmann::json j;
  j["name"] = d.name;
  j["alpha"] = d.alpha;
  j["truncation"] = d.k_max;
  if (d.family == OffspringFamily::custom) j["weights"] = d.weights;
  return j.dump();
}

OffspringDistribution distribution_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::string name = j.at("name").get<std::string>();
  if (name == "custom") return distribution_from_weights(j.at("weights").get<std::vector<double>>());
  return builtin_distribution(name, j.value("alpha", 0.0), j.value("truncation", int64_t{0}));
}

ScalingConstant compute_Bn(const OffspringDistribution& d, int64_t n) {
  if (n < 1) throw std::invalid_argument("compute_Bn: n must be >= 1");
  double alpha = d.alpha;
  double rhs = alpha * (alpha - 1.0) / std::tgamma(3.0 - alpha);
  ScalingConstant out;
  out.n = n;
  if (!d.L_fn) {
    out.B_n = std::pow(static_cast<double>(n) * d.L_const / rhs, 1.0 / alpha);
    return out;
  }
  // g(B) = n L(B) / B^alpha - rhs is decreasing for slowly varying L
  auto g = [&](double b) {
    return static_cast<double>(n) * d.L_fn(b) / std::pow(b, alpha) - rhs;
  };
  double lo = 1e-9, hi = 1.0;
  while (g(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e18) throw std::runtime_error("compute_Bn: no bracket");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  out.B_n = 0.5 * (lo + hi);
  return out;
}

AliasTable::AliasTable(const std::vector<double>& w) {
  size_t n = w.size();
  if (n == 0) throw std::invalid_argument("empty alias table");
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  prob_.resize(n);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  for (size_t i = 0; i < n; ++i) {
    if (w[i] < 0.0) throw std::invalid_argument("negative weight");
    scaled[i] = w[i] * static_cast<double>(n) / sum;
  }
  std::vector<size_t> small, large;
  for (size_t i = n; i-- > 0;) (scaled[i] < 1.0 ? small : large).push_back(i);
  while (!small.empty() && !large.empty()) {
    size_t s = small.back(), l = large.back();
    small.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = static_cast<int64_t>(l);
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (size_t i : large) prob_[i] = 1.0;
  for (size_t i : small) prob_[i] = 1.0;
}

int64_t AliasTable::sample(RngStream& rng) const {
  auto i = static_cast<size_t>(rng.uniform_below(prob_.size()));
  return rng.next_double() < prob_[i] ? static_cast<int64_t>(i) : alias_[i];
}

std::vector<int64_t> excursion_rotation(const std::vector<int64_t>& increments) {
  int64_t n = static_cast<int64_t>(increments.size());
  int64_t s = 0, min = 0, arg = 0;
  for (int64_t i = 0; i < n; ++i) {
    s += increments[i];
    if (s < min) {
      min = s;
      arg = i + 1;  // rotate to start right after the first minimum
    }
  }
  if (s != -1) throw std::invalid_argument("increments must sum to -1");
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) out.push_back(increments[static_cast<size_t>((arg + i) % n)]);
  return out;
}

namespace {

PlaneTree tree_from_increments(const std::vector<int64_t>& inc) {
  std::vector<int64_t> path;
  path.reserve(inc.size() + 1);
  path.push_back(0);
  int64_t w = 0;
  for (int64_t x : inc) {
    w += x;
    path.push_back(w);
  }
  return tree_from_lukasiewicz(path);
}

}  // namespace

GwSampler::GwSampler(OffspringDistribution d)
    : d_(std::move(d)),
      alias_([&] {
        if (d_.family == OffspringFamily::stable) {
          // exact head probabilities with the true tail mass in the last
          // bucket; drawing that bucket falls through to tail inversion
          auto w = stable_pmf(d_.alpha, d_.k_max + 1);
          double head = std::accumulate(w.begin(), w.end() - 1, 0.0);
          w.back() = std::max(0.0, 1.0 - head);
          return AliasTable(w);
        }
        return AliasTable(d_.weights);
      }()) {
  if (d_.weights.empty() || d_.weights[0] <= 0.0)
    throw std::invalid_argument("offspring law needs mu_0 > 0");
  if (d_.family == OffspringFamily::stable) {
    lazy_tail_ = true;
    // tail budget = the alias bucket's exact mass sum_{k >= k_max} mu_k,
    // walked with p starting at mu_{k_max}
    auto w = stable_pmf(d_.alpha, d_.k_max + 1);
    tail_first_pmf_ = w.back();
    tail_mass_ = std::max(0.0, 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0));
  }
}

int64_t GwSampler::sample_offspring(RngStream& rng) const {
  int64_t k = alias_.sample(rng);
  if (!lazy_tail_ || k < d_.k_max) return k;
  // inversion walk over the exact conditional tail law
  double u = rng.next_double() * tail_mass_;
  double pmf = tail_first_pmf_;
  int64_t kk = d_.k_max;
  int64_t cap = d_.k_max + 100000000;  // roundoff guard; virtually never binds
  for (;;) {
    if (u < pmf || pmf < 1e-300 || kk >= cap) return kk;
    u -= pmf;
    pmf *= (static_cast<double>(kk) - d_.alpha) / static_cast<double>(kk + 1);
    ++kk;
  }
}

void GwSampler::check_reachable(int64_t n) const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n == 1) return;
  int64_t target = n - 1;
  std::vector<int64_t> coins;
  for (int64_t k = 1; k < static_cast<int64_t>(d_.weights.size()) && k <= target; ++k)
    if (d_.weights[static_cast<size_t>(k)] > 0.0) coins.push_back(k);
  if (lazy_tail_) {
    for (int64_t k = static_cast<int64_t>(d_.weights.size());
         k <= std::min<int64_t>(target, d_.k_max + 8); ++k)
      coins.push_back(k);
  }
  if (coins.empty()) throw std::invalid_argument("size unreachable: no positive offspring");
  if (target <= 100000) {
    std::vector<char> ok(static_cast<size_t>(target) + 1, 0);
    ok[0] = 1;
    for (int64_t t = 1; t <= target; ++t)
      for (int64_t c : coins) {
        if (c > t) break;
        if (ok[static_cast<size_t>(t - c)]) {
          ok[static_cast<size_t>(t)] = 1;
          break;
        }
      }
    if (!ok[static_cast<size_t>(target)])
      throw std::invalid_argument("size unreachable under the offspring support");
    return;
  }
  // large n: gcd criterion (the numerical-semigroup gaps end well below 1e5
  // for every law with two moderate support points)
  int64_t g = 0;
  for (int64_t c : coins) g = std::gcd(g, c);
  if (target % g != 0)
    throw std::invalid_argument("size unreachable under the offspring support");
}

PlaneTree GwSampler::sample_rejection(int64_t n, RngStream& rng, SampleStats* stats) const {
  check_reachable(n);
  std::vector<int64_t> inc(static_cast<size_t>(n));
  int64_t attempts = 0;
  for (;;) {
    ++attempts;
    int64_t sum = 0;
    for (auto& x : inc) {
      x = sample_offspring(rng) - 1;
      sum += x;
    }
    if (sum == -1) break;
  }
  if (stats) stats->attempts = attempts;
  return tree_from_increments(excursion_rotation(inc));
}

PlaneTree GwSampler::sample_poisson1_multinomial(int64_t n, RngStream& rng) const {
  if (d_.family != OffspringFamily::poisson1)
    throw std::invalid_argument("multinomial route is Poisson(1)-specific");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  // offspring counts conditioned on sum n-1 are a uniform occupancy vector
  std::vector<int64_t> inc(static_cast<size_t>(n), -1);
  for (int64_t b = 0; b < n - 1; ++b) ++inc[rng.uniform_below(static_cast<uint64_t>(n))];
  return tree_from_increments(excursion_rotation(inc));
}

PlaneTree GwSampler::sample(int64_t n, RngStream& rng, SampleStats* stats) const {
  if (d_.family == OffspringFamily::poisson1 && n >= kMultinomialThreshold) {
    if (stats) stats->attempts = 1;
    return sample_poisson1_multinomial(n, rng);
  }
  return sample_rejection(n, rng, stats);
}

PlaneTree sample_conditioned_gw(const OffspringDistribution& d, int64_t n, RngStream& rng,
                                SampleStats* stats) {
  return GwSampler(d).sample(n, rng, stats);
}

}  // namespace lamfrag
