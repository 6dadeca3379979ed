#include "lamfrag/levy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lamfrag/numeric.hpp"

namespace lamfrag {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void check_params(const ExponentParams& p) {
  if (!(p.alpha > 1.0 && p.alpha <= 2.0)) throw std::invalid_argument("alpha must be in (1,2]");
  if (!(p.c > 0.0)) throw std::invalid_argument("c must be > 0");
}

cd psi_poly(cd z, double t, const ExponentParams& p) {
  return std::pow(z, p.alpha) + p.c * z + cd(0.0, t * p.c);
}

cd newton_refine(cd z, double t, const ExponentParams& p) {
  for (int iter = 0; iter < 80; ++iter) {
    cd g = psi_poly(z, t, p);
    double scale = std::max(1.0, std::pow(std::abs(z), p.alpha) + p.c * std::abs(z) +
                                     std::fabs(t) * p.c);
    if (std::abs(g) <= 1e-14 * scale) break;
    cd gp = p.alpha * std::pow(z, p.alpha - 1.0) + p.c;
    cd dz = g / gp;
    double s = 1.0;
    while (s > 1e-4 && std::abs(psi_poly(z - s * dz, t, p)) > std::abs(g)) s *= 0.5;
    z -= s * dz;
  }
  return z;
}

// continuation along positive t between two solved points; factor 0.85 keeps
// Newton in its basin all the way down to t ~ 0
cd continue_to(cd z, double t_from, double t_to, const ExponentParams& p) {
  double t = t_from;
  while (t != t_to) {
    t = t_to > t_from ? std::min(t / 0.85, t_to) : std::max(t * 0.85, t_to);
    z = newton_refine(z, t, p);
  }
  return z;
}

cd psibar_positive(double t, const ExponentParams& p) {
  double t0 = 1e6;
  cd z = std::pow(cd(0.0, -t0 * p.c), 1.0 / p.alpha);
  z = newton_refine(z, t0, p);
  return continue_to(z, t0, t, p);
}

// total winding of psi_poly along the polyline z(s), refined until each step
// turns by less than pi/2
double winding(const std::function<cd(double)>& path, double a, double b, double t,
               const ExponentParams& p, int depth) {
  cd ga = psi_poly(path(a), t, p);
  cd gb = psi_poly(path(b), t, p);
  double d = std::arg(gb / ga);
  // force 2^7 base segments: the endpoint test alone aliases a near-2 pi
  // swing inside one coarse segment to ~0
  if ((depth >= 7 && std::fabs(d) < kPi / 2.0) || depth > 48) return d;
  double m = 0.5 * (a + b);
  return winding(path, a, m, t, p, depth + 1) + winding(path, m, b, t, p, depth + 1);
}

double slowly_varying(const OffspringDistribution& mu, double arg) {
  return mu.L_fn ? mu.L_fn(arg) : mu.L_const;
}

cd horner_series(const std::vector<double>& w, cd s) {
  cd r = 0.0;
  for (size_t j = w.size(); j-- > 0;) r = r * s + w[j];
  return r;
}

cd offspring_F_complex(const OffspringDistribution& mu, cd s) {
  switch (mu.family) {
    case OffspringFamily::poisson1:
      return std::exp(s - 1.0);
    case OffspringFamily::stable:
      return s + std::pow(1.0 - s, mu.alpha) / mu.alpha;
    case OffspringFamily::custom:
      return horner_series(mu.weights, s);
  }
  throw std::logic_error("unknown family");
}

// restores sum = 1 and mean = 1 exactly after truncation by adjusting the
// buckets 0 and k_max (first two tail moments)
void moment_correct(std::vector<double>& w) {
  double sum = 0.0, mean = 0.0;
  for (size_t k = 0; k < w.size(); ++k) {
    sum += w[k];
    mean += static_cast<double>(k) * w[k];
  }
  double k_last = static_cast<double>(w.size() - 1);
  double x_last = (1.0 - mean) / k_last;
  double x_first = (1.0 - sum) - x_last;
  double nb = w.back() + x_last;
  double nf = w.front() + x_first;
  if (nb < 0.0 && nb > -1e-12) {
    // light-tailed laws underflow at k_max; fold the roundoff-scale deficit
    // into bucket 0 (mean then off by <= k_max * 1e-12, inside the gate)
    nf += nb;
    nb = 0.0;
  }
  if (nb < 0.0 || nf < 0.0)
    throw std::runtime_error("mu_n truncation too aggressive for moment correction");
  w.back() = nb;
  w.front() = nf;
}

std::vector<double> mu_n_poisson1(double p, int64_t k_max) {
  // G = e^{u-1}, u = p x + (1-p) G  =>  G' (1 - (1-p) G) = p G
  std::vector<double> g(static_cast<size_t>(k_max) + 1, 0.0);
  double g0 = 0.5;
  for (int iter = 0; iter < 500; ++iter) g0 = std::exp((1.0 - p) * g0 - 1.0);
  g[0] = g0;
  std::vector<double> h(static_cast<size_t>(k_max), 0.0);  // h = G'
  for (int64_t k = 0; k < k_max; ++k) {
    double acc = p * g[static_cast<size_t>(k)];
    for (int64_t j = 0; j < k; ++j)
      acc += (1.0 - p) * h[static_cast<size_t>(j)] * g[static_cast<size_t>(k - j)];
    h[static_cast<size_t>(k)] = acc / (1.0 - (1.0 - p) * g0);
    g[static_cast<size_t>(k) + 1] = h[static_cast<size_t>(k)] / static_cast<double>(k + 1);
  }
  return g;
}

std::vector<double> mu_n_stable(double alpha, double p, int64_t k_max) {
  // with A = (1-u)^alpha the fixed point collapses to u = x + beta A,
  // G = x + A/(alpha p), and (1-x) A' + (alpha-1) beta A A' + alpha A = 0
  double beta = (1.0 - p) / (alpha * p);
  double lo = 0.0, hi = beta > 0.0 ? std::min(1.0, 1.0 / beta) : 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    (std::pow(1.0 - beta * mid, alpha) - mid > 0.0 ? lo : hi) = mid;
  }
  std::vector<double> a(static_cast<size_t>(k_max) + 1, 0.0);
  a[0] = 0.5 * (lo + hi);
  double lead = 1.0 + (alpha - 1.0) * beta * a[0];
  for (int64_t k = 0; k < k_max; ++k) {
    double acc = (static_cast<double>(k) - alpha) * a[static_cast<size_t>(k)];
    for (int64_t j = 0; j < k; ++j)
      acc -= (alpha - 1.0) * beta * static_cast<double>(j + 1) * a[static_cast<size_t>(j) + 1] *
             a[static_cast<size_t>(k - j)];
    a[static_cast<size_t>(k) + 1] = acc / (static_cast<double>(k + 1) * lead);
  }
  std::vector<double> g(static_cast<size_t>(k_max) + 1, 0.0);
  for (int64_t k = 0; k <= k_max; ++k) g[static_cast<size_t>(k)] = a[static_cast<size_t>(k)] / (alpha * p);
  if (k_max >= 1) g[1] += 1.0;
  return g;
}

std::vector<double> truncate_mul(const std::vector<double>& x, const std::vector<double>& y,
                                 size_t len) {
  auto full = convolve(x, y);
  full.resize(len, 0.0);
  return full;
}

std::vector<double> mu_n_generic(const OffspringDistribution& mu, double p, int64_t k_max) {
  size_t len = static_cast<size_t>(k_max) + 1;
  std::vector<double> g(len, 0.0);
  g[0] = mu.weights[0];
  for (int iter = 0; iter < 200000; ++iter) {
    std::vector<double> u = g;
    for (auto& v : u) v *= 1.0 - p;
    if (len > 1) u[1] += p;
    // F_mu(u) by Horner over the finite support
    std::vector<double> r(len, 0.0);
    r[0] = mu.weights.back();
    for (size_t j = mu.weights.size() - 1; j-- > 0;) {
      r = truncate_mul(r, u, len);
      r[0] += mu.weights[j];
    }
    double delta = 0.0;
    for (size_t k = 0; k < len; ++k) delta = std::max(delta, std::fabs(r[k] - g[k]));
    g = std::move(r);
    if (delta < 1e-15) return g;
  }
  throw std::runtime_error("mu_n fixed point stalled");
}

}  // namespace

double laplace_exponent_phibar(double lam, const ExponentParams& p) {
  check_params(p);
  if (lam < 0.0) throw std::invalid_argument("lam must be >= 0");
  if (lam == 0.0) return 0.0;
  double target = p.c * lam;
  double hi = std::max({1.0, std::pow(target, 1.0 / p.alpha), lam});
  while (std::pow(hi, p.alpha) + p.c * hi < target) hi *= 2.0;
  double lo = 0.0;
  for (int iter = 0; iter < 400; ++iter) {
    double mid = 0.5 * (lo + hi);
    (std::pow(mid, p.alpha) + p.c * mid < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::complex<double> char_exponent_psibar(double t, const ExponentParams& p) {
  check_params(p);
  if (t == 0.0) return 0.0;
  if (t < 0.0) return std::conj(psibar_positive(-t, p));
  return psibar_positive(t, p);
}

std::vector<std::complex<double>> char_exponent_psibar_grid(const std::vector<double>& ts,
                                                            const ExponentParams& p) {
  check_params(p);
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < 0.0) throw std::invalid_argument("grid must be nonnegative");
    if (i > 0 && ts[i] < ts[i - 1]) throw std::invalid_argument("grid must be ascending");
  }
  std::vector<cd> out(ts.size());
  double t0 = 1e6;
  cd z = newton_refine(std::pow(cd(0.0, -t0 * p.c), 1.0 / p.alpha), t0, p);
  double cur = t0;
  for (size_t i = ts.size(); i-- > 0;) {
    if (ts[i] == 0.0) {
      out[i] = 0.0;
      continue;
    }
    z = continue_to(z, cur, ts[i], p);
    cur = ts[i];
    out[i] = z;
  }
  return out;
}

int64_t count_roots_right_half(double t, const ExponentParams& p, double R) {
  check_params(p);
  double total = 0.0;
  // down the imaginary axis, then the right semicircle back up
  total += winding([R](double s) { return cd(0.0, R - 2.0 * R * s); }, 0.0, 1.0, t, p, 0);
  total += winding([R](double s) { return R * std::exp(cd(0.0, -kPi / 2.0 + kPi * s)); }, 0.0,
                   1.0, t, p, 0);
  return std::llround(total / (2.0 * kPi));
}

namespace {

double integration_horizon(double u, const ExponentParams& p) {
  // u c Re psibar(T) = 40 with Re psibar(t) ~ (tc)^{1/alpha} cos(pi/(2 alpha))
  double target = 40.0 / (u * p.c * std::cos(kPi / (2.0 * p.alpha)));
  return std::pow(target, p.alpha) / p.c;
}

}  // namespace

double density_q(double u, double x, const ExponentParams& p) {
  check_params(p);
  if (!(u > 0.0)) throw std::invalid_argument("u must be > 0");
  double T = integration_horizon(u, p);
  int64_t n = 4096;
  double need = 8.0 * T * (std::fabs(x) + 1.0) / kPi;
  while (static_cast<double>(n) < need) n *= 2;
  double prev = 0.0;
  bool have_prev = false;
  for (;; n *= 2) {
    std::vector<double> ts(static_cast<size_t>(n) + 1);
    for (int64_t j = 0; j <= n; ++j)
      ts[static_cast<size_t>(j)] = T * static_cast<double>(j) / static_cast<double>(n);
    auto psi = char_exponent_psibar_grid(ts, p);
    double h = T / static_cast<double>(n);
    double acc = 0.0;
    for (int64_t j = 0; j <= n; ++j) {
      double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      // characteristic exponent of tau_u is u (c psibar(t) + itc): the drift
      // term recentres the first passage time by uc
      cd val = std::exp(cd(0.0, -ts[static_cast<size_t>(j)] * (x + u * p.c)) -
                        u * p.c * psi[static_cast<size_t>(j)]);
      acc += w * val.real();
    }
    double q = acc * h / (3.0 * kPi);
    if (have_prev && std::fabs(q - prev) <= 1e-8 * std::max(1.0, std::fabs(q))) return q;
    if (n >= (1 << 21)) return q;
    prev = q;
    have_prev = true;
  }
}

DensityTable density_q_table(double u, const ExponentParams& p, double x_max) {
  check_params(p);
  if (!(u > 0.0 && x_max > 0.0)) throw std::invalid_argument("u and x_max must be > 0");
  double T = integration_horizon(u, p);
  int64_t n = 1 << 14;
  while (static_cast<double>(n) < std::max(8.0 * T, 4.0 * x_max * T / kPi)) n *= 2;
  double dt = 2.0 * T / static_cast<double>(n);
  // positive-frequency samples; negative side by conjugate symmetry
  std::vector<double> ts(static_cast<size_t>(n / 2) + 1);
  for (int64_t k = 0; k <= n / 2; ++k) ts[static_cast<size_t>(k)] = dt * static_cast<double>(k);
  auto psi = char_exponent_psibar_grid(ts, p);
  std::vector<cd> a(static_cast<size_t>(n));
  for (int64_t j = 0; j < n; ++j) {
    int64_t k = j - n / 2;  // t_j = -T + j dt = k dt
    double t = ts[static_cast<size_t>(std::llabs(k))];
    cd f = std::exp(-u * p.c * psi[static_cast<size_t>(std::llabs(k))] - cd(0.0, t * u * p.c));
    a[static_cast<size_t>(j)] = k >= 0 ? f : std::conj(f);
  }
  // q(pi k / T) = dt/(2 pi) (-1)^k DFT_k, shifted by the t_0 = -T phase
  fft(a, false);
  int64_t half_k = std::min<int64_t>(n / 2 - 1, static_cast<int64_t>(x_max * T / kPi) + 2);
  DensityTable table;
  table.dx = kPi / T;
  table.x0 = -static_cast<double>(half_k) * table.dx;
  for (int64_t k = -half_k; k <= half_k; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    size_t idx = static_cast<size_t>((k + n) % n);
    table.q.push_back(sign * a[idx].real() * dt / (2.0 * kPi));
  }
  return table;
}

double DensityTable::eval(double x) const {
  double s = (x - x0) / dx;
  auto i = static_cast<int64_t>(std::floor(s));
  if (i < 1 || i + 2 >= static_cast<int64_t>(q.size())) return 0.0;
  double f = s - static_cast<double>(i);
  double p0 = q[static_cast<size_t>(i - 1)], p1 = q[static_cast<size_t>(i)];
  double p2 = q[static_cast<size_t>(i + 1)], p3 = q[static_cast<size_t>(i + 2)];
  return p1 + 0.5 * f * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                        f * (3.0 * (p1 - p2) + p3 - p0)));
}

OffspringDistribution mu_n_law(const OffspringDistribution& mu, double p_n, int64_t k_max) {
  if (!(p_n > 0.0 && p_n <= 1.0)) throw std::invalid_argument("p_n must be in (0,1]");
  if (k_max < 2) throw std::invalid_argument("k_max too small");
  if (mu.weights.size() >= 2 && mu.weights[0] + mu.weights[1] >= 1.0 - 1e-12 &&
      mu.family == OffspringFamily::custom)
    throw std::invalid_argument("need mu_0 + mu_1 < 1");
  if (p_n == 1.0) return mu;

  std::vector<double> g;
  switch (mu.family) {
    case OffspringFamily::poisson1:
      g = mu_n_poisson1(p_n, k_max);
      break;
    case OffspringFamily::stable:
      g = mu_n_stable(mu.alpha, p_n, k_max);
      break;
    case OffspringFamily::custom:
      g = mu_n_generic(mu, p_n, k_max);
      break;
  }
  for (auto& w : g) {
    if (w < -1e-9) throw std::runtime_error("mu_n series produced a negative weight");
    if (w < 0.0) w = 0.0;
  }
  moment_correct(g);
  auto out = distribution_from_weights(g);
  out.name = "mu_n";
  out.alpha = mu.alpha;
  return out;
}

ReducedTree reduced_tree(const PlaneTree& t, const std::vector<char>& marks) {
  if (static_cast<int64_t>(marks.size()) != t.size())
    throw std::invalid_argument("marks size mismatch");
  if (!marks[0]) throw std::invalid_argument("root must be marked");
  std::vector<int64_t> nearest(static_cast<size_t>(t.size()));  // nearest marked ancestor-or-self
  std::vector<int64_t> new_index(static_cast<size_t>(t.size()), -1);
  ReducedTree out;
  std::vector<int64_t> parents;
  for (int64_t v : t.preorder()) {
    if (marks[static_cast<size_t>(v)]) {
      nearest[static_cast<size_t>(v)] = v;
      new_index[static_cast<size_t>(v)] = static_cast<int64_t>(parents.size());
      parents.push_back(v == 0 ? -1
                               : new_index[static_cast<size_t>(
                                     nearest[static_cast<size_t>(t.parent(v))])]);
      out.original.push_back(v);
    } else {
      nearest[static_cast<size_t>(v)] = nearest[static_cast<size_t>(t.parent(v))];
    }
  }
  out.tree = PlaneTree::from_parents(std::move(parents));
  return out;
}

double stable_increment(double alpha, double s, RngStream& rng) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must be in (1,2]");
  if (alpha == 2.0) return std::sqrt(2.0 * s) * rng.normal();
  // Chambers-Mallows-Stuck, totally skewed (beta = 1).  The Weron scale
  // (1 + tan^2(pi alpha/2))^{1/(2 alpha)} times the sigma that yields
  // E[e^{-lam Y_s}] = e^{s lam^alpha} collapses to s^{1/alpha}
  double b = std::atan(std::tan(kPi * alpha / 2.0)) / alpha;
  double v = kPi * (rng.next_double() - 0.5);
  double w = rng.exponential();
  double x = std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
             std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
  return std::pow(s, 1.0 / alpha) * x;
}

LatticePath sample_tau_path(const ExponentParams& p, TauMode mode, int64_t steps,
                            RngStream& rng, const TauOptions& opt) {
  check_params(p);
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  LatticePath path;
  if (mode == TauMode::gw_walk) {
    if (opt.mu == nullptr || opt.n < 2) throw std::invalid_argument("gw_walk needs mu and n");
    double B_n = compute_Bn(*opt.mu, opt.n).B_n;
    auto mu_n = mu_n_law(*opt.mu, p.c * B_n / static_cast<double>(opt.n), opt.k_max);
    AliasTable alias(mu_n.weights);
    auto cB = static_cast<double>(std::max<int64_t>(
        1, static_cast<int64_t>(std::floor(p.c * B_n))));
    int64_t s = 0;
    for (int64_t j = 0; j <= steps; ++j) {
      path.times.push_back(static_cast<double>(j) / cB);
      path.values.push_back(static_cast<double>(s) / B_n);
      s += alias.sample(rng) - 1;
    }
    return path;
  }

  // stable skeleton: first passage of Y_t - c^{1/alpha} t below the moving
  // barrier -c^{1+1/alpha} s, emitted as tau_s = passage time - c s
  double drift = std::pow(p.c, 1.0 / p.alpha);
  double barrier_rate = std::pow(p.c, 1.0 + 1.0 / p.alpha);
  double dt = opt.dt;
  if (!(dt > 0.0 && opt.s_max > 0.0)) throw std::invalid_argument("bad tau options");
  path.times.resize(static_cast<size_t>(steps) + 1);
  path.values.assign(static_cast<size_t>(steps) + 1, 0.0);
  for (int64_t i = 0; i <= steps; ++i)
    path.times[static_cast<size_t>(i)] =
        opt.s_max * static_cast<double>(i) / static_cast<double>(steps);
  int64_t next = 1;  // tau_0 = 0 always
  double z = 0.0, time = 0.0;
  const double sigma2 = 2.0;  // Var of the alpha = 2 driver per unit time
  int64_t guard = 0;
  while (next <= steps) {
    if (++guard > (1 << 28)) throw std::runtime_error("tau path did not cross in time");
    double z_next = z + (p.alpha == 2.0 ? std::sqrt(sigma2 * dt) * rng.normal()
                                        : stable_increment(p.alpha, dt, rng)) -
                    drift * dt;
    double step_min;
    if (p.alpha == 2.0) {
      // exact Brownian-bridge minimum over the step
      double lu = std::log(rng.next_double());
      double d = z_next - z;
      step_min = 0.5 * (z + z_next - std::sqrt(d * d - 2.0 * sigma2 * dt * lu));
    } else {
      step_min = std::min(z, z_next);  // grid passage for the jump case
    }
    while (next <= steps &&
           step_min < -barrier_rate * path.times[static_cast<size_t>(next)]) {
      double level = -barrier_rate * path.times[static_cast<size_t>(next)];
      // linear interpolation of the crossing time within the step
      double frac =
          z <= level ? 0.0 : std::min(1.0, (z - level) / std::max(z - step_min, 1e-300));
      double cross = time + frac * dt;
      path.values[static_cast<size_t>(next)] =
          cross - p.c * path.times[static_cast<size_t>(next)];
      ++next;
    }
    z = z_next;
    time += dt;
  }
  return path;
}

std::vector<int64_t> vervaat_transform(const std::vector<int64_t>& bridge) {
  if (bridge.size() < 2 || bridge.front() != 0)
    throw std::invalid_argument("bridge must start at 0");
  size_t m = bridge.size() - 1;
  if (bridge.back() == -1) {
    std::vector<int64_t> inc(m);
    for (size_t i = 0; i < m; ++i) inc[i] = bridge[i + 1] - bridge[i];
    auto rot = excursion_rotation(inc);
    std::vector<int64_t> out{0};
    for (int64_t d : rot) out.push_back(out.back() + d);
    return out;
  }
  if (bridge.back() != 0) throw std::invalid_argument("bridge must end at 0 or -1");
  size_t x = 0;
  for (size_t i = 0; i < m; ++i)
    if (bridge[i] <= bridge[x]) x = i;  // right-most minimum before the end
  std::vector<int64_t> out;
  for (size_t j = 0; j <= m; ++j) out.push_back(bridge[(x + j) % m] - bridge[x]);
  return out;
}

LatticePath vervaat_transform(const LatticePath& bridge) {
  if (bridge.values.size() < 2 || std::fabs(bridge.values.front()) > 1e-12 ||
      std::fabs(bridge.values.back()) > 1e-9)
    throw std::invalid_argument("need a bridge from 0 to 0");
  size_t m = bridge.values.size() - 1;
  size_t x = 0;
  for (size_t i = 0; i < m; ++i)
    if (bridge.values[i] <= bridge.values[x]) x = i;
  LatticePath out;
  out.times = bridge.times;
  for (size_t j = 0; j <= m; ++j)
    out.values.push_back(bridge.values[(x + j) % m] - bridge.values[x]);
  out.values.back() = 0.0;
  return out;
}

GeneratingEstimateReport verify_generating_estimate(
    const OffspringDistribution& mu, const std::vector<std::complex<double>>& omega_grid) {
  GeneratingEstimateReport report;
  double alpha = mu.family == OffspringFamily::poisson1 ? 2.0 : mu.alpha;
  double theorem_scale = std::tgamma(3.0 - alpha) / (alpha * (alpha - 1.0));
  // tail probabilities M_j = P(X > j) of the represented weights
  std::vector<double> M(mu.weights.size() - 1, 0.0);
  double tail = 0.0;
  for (size_t j = mu.weights.size() - 1; j-- > 0;) {
    tail += mu.weights[j + 1];
    M[j] = tail;
  }
  for (cd omega : omega_grid) {
    if (std::abs(1.0 + omega) >= 1.0)
      throw std::invalid_argument("grid point with |1+omega| >= 1");
    if (omega.imag() == 0.0 && omega.real() >= 0.0)
      throw std::invalid_argument("grid point on the branch cut");
    GeneratingEstimatePoint pt;
    pt.omega = omega;
    cd num = offspring_F_complex(mu, 1.0 + omega) - (1.0 + omega);
    double L = theorem_scale * slowly_varying(mu, 1.0 / std::abs(omega));
    pt.ratio = num / (std::pow(-omega, alpha) * L);

    // integral identity on the represented law: F(e^w) = 1 + w - w sum_j M_j
    // int_j^{j+1} (1 - e^{wx}) dx, exact up to roundoff
    cd w = std::log(1.0 + omega);
    cd lhs = horner_series(mu.weights, std::exp(w));
    cd ew = std::exp(w);
    cd ewj = 1.0;
    cd integral = 0.0;
    for (size_t j = 0; j < M.size(); ++j) {
      integral += M[j] * (1.0 - ewj * (ew - 1.0) / w);
      ewj *= ew;
    }
    cd rhs = 1.0 + w - w * integral;
    pt.estim_residual = std::abs(lhs - rhs);

    report.max_ratio_error = std::max(report.max_ratio_error, std::abs(pt.ratio - 1.0));
    report.max_estim_residual = std::max(report.max_estim_residual, pt.estim_residual);
    report.points.push_back(pt);
  }
  return report;
}

std::string density_table_to_csv(const DensityTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "x,q\n";
  for (size_t i = 0; i < table.q.size(); ++i)
    out << table.x0 + static_cast<double>(i) * table.dx << ',' << table.q[i] << '\n';
  return out.str();
}

}  // namespace lamfrag
