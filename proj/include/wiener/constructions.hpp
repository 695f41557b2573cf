#pragma once

// Positive definite counterexample polynomials.
//
//  * shapiro_counterexample  D_n * mu_k, an idempotent whose L^p mass near 0
//                            is only about 1/k of the total.
//  * triangle_poly           truncated Fourier series of (1 - 2N|t|)_+.
//  * sign_search             random +-1 polynomial g with ||D_{n+1}||_p <= eps ||g||_q.
//  * lowp/highp concentrator Delta(t-a) g(2Nt) + Delta(t+a) g(2Nt) + 2 Delta(t) G(2Nt)
//                            for a majorant pair |g^| <= G^.
//  * ms_pair / riesz_pair    g0 = (1+e_j)(1-e_{j+1}), G0 = (1+e_j)(1+e_{j+1}) and
//                            their Riesz products over dilations.
//  * gap_series              sum_k e_{m_k} f_k with growing gaps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wiener/norms.hpp"
#include "wiener/rng.hpp"
#include "wiener/torus_set.hpp"
#include "wiener/trig_poly.hpp"

namespace wiener {

// ---------------------------------------------------------------------------
// Shapiro sharpness example

inline TrigPoly shapiro_counterexample(std::int64_t n, std::int64_t k) {
  if (k < 2) throw std::invalid_argument("shapiro_counterexample: k must be >= 2");
  if (n < k) throw std::invalid_argument("shapiro_counterexample: n must be >= k");
  return filter_multiples(dirichlet(n), k);
}

// ---------------------------------------------------------------------------
// Triangle function

/// Fourier coefficient of (1 - 2N|t|)_+ at frequency m:
/// (1/h) (sin(pi m h) / (pi m))^2 with h = 1/(2N), and h at m = 0.
inline double triangle_coefficient(std::int64_t n_scale, std::int64_t m) {
  const double h = 1.0 / (2.0 * static_cast<double>(n_scale));
  if (m == 0) return h;
  const std::int64_t period = 2 * n_scale;  // sin^2(pi m h) is 2N-periodic in m
  const std::int64_t r = ((m % period) + period) % period;
  if (r == 0) return 0.0;
  const double s = std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(period));
  const double pm = std::numbers::pi * static_cast<double>(m);
  return s * s / (pm * pm) / h;
}

/// Smallest cutoff M whose dropped tail sum_{|m|>M} coef(m) is <= tail_budget * h.
/// Uses sum_{m>=1} sin^2(m x)/m^2 = x (pi - x)/2, so the full series sums to 1.
inline std::int64_t triangle_cutoff(std::int64_t n_scale, double tail_budget) {
  if (n_scale < 1) throw std::invalid_argument("triangle_poly: N must be >= 1");
  if (!(tail_budget > 0.0 && tail_budget < 1.0)) throw std::invalid_argument("triangle_poly: tail budget must lie in (0, 1)");
  const double h = 1.0 / (2.0 * static_cast<double>(n_scale));
  const double target = tail_budget * h;
  constexpr std::int64_t kMaxCutoff = std::int64_t{1} << 26;
  // The tail decays like 1 / (pi^2 h M), so M is about 1 / (pi^2 tau h^2).
  const double estimate = 1.0 / (std::numbers::pi * std::numbers::pi * tail_budget * h * h);
  if (estimate > 1.5 * static_cast<double>(kMaxCutoff)) throw std::overflow_error("triangle_poly: cutoff exceeds 2^26");
  // tail(M) = (1 - h) - 2 sum_{m=1}^M coef(m), accumulated with Kahan summation.
  double sum = 0.0, comp = 0.0;
  for (std::int64_t m = 1; m <= kMaxCutoff; ++m) {
    const double y = triangle_coefficient(n_scale, m) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if ((1.0 - h) - 2.0 * sum <= target) return m;
  }
  throw std::overflow_error("triangle_poly: cutoff exceeds 2^26");
}

/// Truncated triangle series on [-M, M]; nonnegative coefficients.
inline TrigPoly triangle_poly(std::int64_t n_scale, double tail_budget) {
  const std::int64_t cutoff = triangle_cutoff(n_scale, tail_budget);
  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(2 * cutoff + 1));
  for (std::int64_t m = -cutoff; m <= cutoff; ++m) terms.push_back({m, triangle_coefficient(n_scale, m)});
  return TrigPoly::from_sorted(std::move(terms));
}

// ---------------------------------------------------------------------------
// Khintchine sign search

struct SignVector {
  std::vector<int> signs;  // each entry +1 or -1, length n + 1
  std::uint64_t seed = 0;
  int trials_used = 0;
};

/// g = sum_{k=0}^{n} eta_k e_k.
inline TrigPoly sign_polynomial(const std::vector<int>& signs) {
  std::vector<Term> terms(signs.size());
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] != 1 && signs[k] != -1) throw std::invalid_argument("sign_polynomial: entries must be +-1");
    terms[k] = {static_cast<Frequency>(k), static_cast<double>(signs[k])};
  }
  return TrigPoly::from_sorted(std::move(terms));
}

/// ||D_{n+1}||_p / ||g||_q for g the sign polynomial of `signs`.
inline double sign_ratio(const std::vector<int>& signs, double p, double q, const QuadratureOptions& opts = {}) {
  const auto n1 = static_cast<std::int64_t>(signs.size());
  const double dn = lp_norm(lp_integral(dirichlet(n1), p, SymmetricSet::torus(), opts));
  const double gq = lp_norm(lp_integral(sign_polynomial(signs), q, SymmetricSet::torus(), opts));
  return dn / gq;
}

struct SignSearchResult {
  bool found = false;
  SignVector best;  // accepted vector, or the best one seen on failure
  double best_ratio = 0.0;
  double dirichlet_norm = 0.0;  // ||D_{n+1}||_p
};

/// Draws uniform sign vectors (trial t uses the child stream t of `seed`)
/// until ||D_{n+1}||_p <= eps ||g||_q or the budget is spent.
inline SignSearchResult sign_search(std::int64_t n, double p, double q, double eps, int budget, std::uint64_t seed,
                                    const QuadratureOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("sign_search: n must be >= 1");
  if (budget < 1) throw std::invalid_argument("sign_search: budget must be >= 1");
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("sign_search: p and q must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("sign_search: eps must be > 0");

  SignSearchResult res;
  res.dirichlet_norm = lp_norm(lp_integral(dirichlet(n + 1), p, SymmetricSet::torus(), opts));
  res.best_ratio = std::numeric_limits<double>::infinity();
  const Rng root(seed);
  for (int t = 0; t < budget; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));
    std::vector<int> signs(static_cast<std::size_t>(n + 1));
    for (int& s : signs) s = rng.sign();
    const double gq = lp_norm(lp_integral(sign_polynomial(signs), q, SymmetricSet::torus(), opts));
    const double ratio = res.dirichlet_norm / gq;
    if (ratio < res.best_ratio) {
      res.best_ratio = ratio;
      res.best = {std::move(signs), seed, t + 1};
    }
    if (ratio <= eps) {
      res.found = true;
      res.best.trials_used = t + 1;
      return res;
    }
  }
  res.best.trials_used = budget;
  return res;
}

// ---------------------------------------------------------------------------
// Three-term assembly

struct PolyPair {
  TrigPoly g;  // signed polynomial
  TrigPoly G;  // its nonnegative majorant, |g^(h)| <= G^(h)
};

/// Coefficients of
///   Delta(t - a) g(2Nt) + Delta(t + a) g(2Nt) + 2 Delta(t) G(2Nt),
/// modulated by e_M (M the triangle cutoff) so the spectrum is nonnegative.
/// The +-a pair is combined before materializing: the coefficient collected
/// from (k, m) is 2 Delta^(m) (G^_k + cos(2 pi a m) g^_k) >= 0.
inline TrigPoly assemble_concentrator(const PolyPair& pair, std::int64_t n_scale, double center, double tail_budget) {
  const TrigPoly& g = pair.g;
  const TrigPoly& G = pair.G;
  if (G.is_zero()) throw std::invalid_argument("assemble_concentrator: zero majorant");
  if (G.min_frequency() < 0) throw std::invalid_argument("assemble_concentrator: majorant must have nonnegative spectrum");
  for (const Term& t : G.terms()) {
    if (t.coef.imag() != 0.0 || t.coef.real() < 0.0) throw std::invalid_argument("assemble_concentrator: G must be positive definite");
  }
  for (const Term& t : g.terms()) {
    if (t.coef.imag() != 0.0) throw std::invalid_argument("assemble_concentrator: g must have real coefficients");
    if (std::abs(t.coef.real()) > G.coefficient(t.freq).real())
      throw std::invalid_argument("assemble_concentrator: G does not majorize g");
  }

  const std::int64_t cutoff = triangle_cutoff(n_scale, tail_budget);
  const std::int64_t step = detail::checked_mul(2, n_scale);
  const std::int64_t top = detail::checked_add(detail::checked_mul(step, G.max_frequency()), 2 * cutoff);
  if (top > (std::int64_t{1} << 34)) throw std::overflow_error("assemble_concentrator: spectrum too large");

  std::vector<double> delta(static_cast<std::size_t>(2 * cutoff + 1));
  std::vector<double> cosines(delta.size());
  for (std::int64_t m = -cutoff; m <= cutoff; ++m) {
    const auto i = static_cast<std::size_t>(m + cutoff);
    delta[i] = triangle_coefficient(n_scale, m);
    double x = center * static_cast<double>(m);
    x -= std::floor(x);
    cosines[i] = std::cos(2.0 * std::numbers::pi * x);
  }

  std::vector<double> acc(static_cast<std::size_t>(top + 1), 0.0);
  for (const Term& big : G.terms()) {
    const double gk = g.coefficient(big.freq).real();
    const double majorant = big.coef.real();
    const std::int64_t base = step * big.freq;
    for (std::size_t i = 0; i < delta.size(); ++i) {
      acc[static_cast<std::size_t>(base) + i] += 2.0 * delta[i] * (majorant + cosines[i] * gk);
    }
  }

  std::vector<Term> terms;
  for (std::size_t h = 0; h < acc.size(); ++h) {
    if (acc[h] < -kDefaultPdTolerance) throw std::logic_error("assemble_concentrator: negative coefficient (assembly bug)");
    if (acc[h] != 0.0) terms.push_back({static_cast<Frequency>(h), std::max(acc[h], 0.0)});
  }
  return TrigPoly::from_sorted(std::move(terms));
}

struct ConcentratorParams {
  std::int64_t n = 0;        // sign polynomial has n + 1 terms
  std::int64_t N = 1;        // triangle half-width 1/(2N), dilation 2N
  double a = 0.25;           // center of the target interval I
  double p = 1.0;
  double q = 1.0;
  double eps = 1.0;
};

inline void validate(const ConcentratorParams& c) {
  if (c.n < 1 || c.N < 1) throw std::invalid_argument("ConcentratorParams: n, N must be >= 1");
  if (!(c.q > 0.0) || c.q > c.p) throw std::invalid_argument("ConcentratorParams: need 0 < q <= p");
  if (!(c.eps > 0.0)) throw std::invalid_argument("ConcentratorParams: eps must be > 0");
}

/// Low-exponent concentrator: g = sign polynomial of eta, G = D_{n+1}.
inline TrigPoly lowp_concentrator(const ConcentratorParams& params, const SignVector& eta, double tail_budget) {
  validate(params);
  if (eta.signs.size() != static_cast<std::size_t>(params.n + 1))
    throw std::invalid_argument("lowp_concentrator: sign vector length must be n + 1");
  return assemble_concentrator({sign_polynomial(eta.signs), dirichlet(params.n + 1)}, params.N, params.a, tail_budget);
}

// ---------------------------------------------------------------------------
// Mockenhaupt-Schlag pair and Riesz products

inline PolyPair ms_pair(std::int64_t j) {
  if (j < 1 || j % 2 == 0) throw std::invalid_argument("ms_pair: j must be an odd positive integer");
  const TrigPoly one_plus_ej = make_poly({{0, 1.0}, {j, 1.0}});
  return {multiply(one_plus_ej, make_poly({{0, 1.0}, {j + 1, -1.0}})),
          multiply(one_plus_ej, make_poly({{0, 1.0}, {j + 1, 1.0}}))};
}

/// Default scale growth for Riesz products (see riesz_pair).
inline constexpr std::int64_t kDefaultRieszGrowth = 10;

/// g = g0(t) g0(N_1 t) ... g0(N_K t), G likewise, with
/// N_i = growth * degree(partial product) + 1 so dilated spectra never
/// collide and every product coefficient is a product of base coefficients.
inline PolyPair riesz_pair(std::int64_t j, int depth, std::int64_t growth = kDefaultRieszGrowth) {
  if (depth < 0) throw std::invalid_argument("riesz_pair: K must be >= 0");
  if (growth < 2) throw std::invalid_argument("riesz_pair: growth must be >= 2");
  const PolyPair base = ms_pair(j);
  PolyPair out = base;
  for (int i = 0; i < depth; ++i) {
    const std::int64_t scale_i = detail::checked_add(detail::checked_mul(growth, out.G.degree()), 1);
    out.g = multiply(out.g, dilate(base.g, scale_i));
    out.G = multiply(out.G, dilate(base.G, scale_i));
  }
  return out;
}

/// Scales N_1..N_K used by riesz_pair, for reporting.
inline std::vector<std::int64_t> riesz_scales(std::int64_t j, int depth, std::int64_t growth = kDefaultRieszGrowth) {
  std::vector<std::int64_t> scales;
  std::int64_t degree = 2 * j + 1;
  for (int i = 0; i < depth; ++i) {
    const std::int64_t s = detail::checked_add(detail::checked_mul(growth, degree), 1);
    scales.push_back(s);
    degree = detail::checked_add(degree, detail::checked_mul(s, 2 * j + 1));
  }
  return scales;
}

struct HighpParams {
  Interval interval{0.3, 0.4};  // I; the construction also uses -I
  std::int64_t j = 3;
  int K = 0;
  std::int64_t N = 10;
  double tail_budget = 0.5;
  double p = 3.0;
  double q = 3.0;
  std::int64_t growth = kDefaultRieszGrowth;
};

/// The three-term assembly with the Riesz pair, centered at a = center of I.
/// Requires [a - 1/2N, a + 1/2N] inside I.
inline TrigPoly highp_concentrator(const HighpParams& hp) {
  if (!(hp.p > 2.0)) throw std::invalid_argument("highp_concentrator: p must exceed 2");
  if (std::fmod(hp.p, 2.0) == 0.0) throw std::invalid_argument("highp_concentrator: p must not be an even integer");
  if (!(hp.q > 0.0) || hp.q > hp.p) throw std::invalid_argument("highp_concentrator: need 0 < q <= p");
  if (!(static_cast<double>(hp.j) > hp.p / 2.0)) throw std::invalid_argument("highp_concentrator: need j > p/2");
  if (hp.N < 1) throw std::invalid_argument("highp_concentrator: N must be >= 1");
  const double a = hp.interval.center();
  const double half = 1.0 / (2.0 * static_cast<double>(hp.N));
  if (!(hp.interval.lo <= a - half && a + half <= hp.interval.hi))
    throw std::invalid_argument("highp_concentrator: triangle support does not fit inside I");
  return assemble_concentrator(riesz_pair(hp.j, hp.K, hp.growth), hp.N, a, hp.tail_budget);
}

// ---------------------------------------------------------------------------
// Gap series

enum class ConcentratorKind { lowp, highp };

struct GapSeriesOptions {
  ConcentratorKind builder = ConcentratorKind::highp;
  int alpha = 0;  // 0: smallest integer with alpha (1 - q/p) >= q + 1
  double tail_budget = 0.5;
  // highp blocks
  std::int64_t riesz_j = 0;  // 0: smallest odd integer > p/2
  int riesz_K = 0;
  std::int64_t riesz_growth = kDefaultRieszGrowth;
  // lowp blocks
  std::int64_t sign_n = 256;
  double sign_eps = 1.0;
  int sign_budget = 64;
  QuadratureOptions quad{};
};

struct GapBlock {
  std::int64_t modulation = 0;   // m_k
  TrigPoly poly;                 // f_k, normalized, before modulation
  SymmetricSet set;              // E_k
  Interval interval{};           // positive half of E_k
  std::int64_t N = 0;            // E_k = (a - 1/2N, a + 1/2N) and its mirror
  std::int64_t dilation = 1;     // spectrum pre-dilation for the gap condition
  double raw_norm = 0.0;         // ||f_k||_p before normalization
  std::int64_t min_gap = 0;      // intra-block
};

struct GapSeries {
  std::vector<GapBlock> blocks;
  TrigPoly assembled;
  int K = 0;
  int alpha = 0;
};

inline int default_alpha(double p, double q) {
  if (!(q < p)) throw std::invalid_argument("default_alpha: need q < p");
  return static_cast<int>(std::ceil((q + 1.0) / (1.0 - q / p) - 1e-12));
}

inline std::int64_t default_riesz_j(double p) {
  auto j = static_cast<std::int64_t>(std::floor(p / 2.0)) + 1;
  if (j % 2 == 0) ++j;
  return j;
}

namespace detail {

inline std::int64_t round_up_multiple(std::int64_t x, std::int64_t d) { return ((x + d - 1) / d) * d; }

inline double wrap_to_fundamental(double x) {
  x -= std::floor(x + 0.5);
  return x;
}

}  // namespace detail

/// Builds K blocks. Block k:
///   E_k = I_k u (-I_k), |E_k| = 2/N_k < 2^{-alpha k}, I_k packed downward from
///   the top of the longest positive component of target_E;
///   f_k = concentrator for E_k; when k >= 2 the contiguous triangle spectrum
///   is pre-dilated by d = k + 1 (built at scale N_k/d around d a_k mod 1, so
///   one of the d copies lands on E_k);
///   normalized so ||f_k||_p = 2^{k/2};
///   m_1 = 0, m_k = m_{k-1} + degree(f_{k-1}) + k + 1.
inline GapSeries gap_series(const SymmetricSet& target, int K, double p, double q, std::uint64_t seed,
                            const GapSeriesOptions& opts = {}) {
  if (K < 1) throw std::invalid_argument("gap_series: K must be >= 1");
  if (!(p > 0.0) || !(q > 0.0) || !(q < p)) throw std::invalid_argument("gap_series: need 0 < q < p");
  GapSeries out;
  out.K = K;
  out.alpha = opts.alpha > 0 ? opts.alpha : default_alpha(p, q);

  // Longest positive component of the target set.
  double u_lo = 0.0, u_hi = 0.0;
  for (const Interval& i : target.intervals()) {
    if (i.hi <= 0.0) continue;
    const double lo = std::max(i.lo, 0.0);
    if (i.hi - lo > u_hi - u_lo) {
      u_lo = lo;
      u_hi = i.hi;
    }
  }
  if (!(u_hi > u_lo)) throw std::invalid_argument("gap_series: target set has no positive component");
  // Keep the lowest third free for the central bumps when the component touches 0.
  const double floor_lo = (u_lo == 0.0) ? u_hi / 3.0 : u_lo;

  const Rng root(seed);
  double cursor = u_hi;
  std::int64_t next_modulation = 0;
  TrigPoly assembled;
  for (int k = 1; k <= K; ++k) {
    const double room = cursor - floor_lo;
    if (!(room > 0.0)) throw std::domain_error("gap_series: cannot fit E_k inside the target set");
    const int exponent = out.alpha * k + 1;
    if (exponent > 40) throw std::overflow_error("gap_series: |E_k| < 2^(-alpha k) needs frequencies beyond 2^40");
    const std::int64_t dilation = (k >= 2) ? k + 1 : 1;
    std::int64_t n_k = std::max<std::int64_t>((std::int64_t{1} << exponent) + 1,
                                              static_cast<std::int64_t>(std::ceil(2.0 / room)));
    n_k = detail::round_up_multiple(n_k, dilation);

    GapBlock block;
    block.N = n_k;
    block.dilation = dilation;
    const double half = 1.0 / (2.0 * static_cast<double>(n_k));
    const double a = cursor - half;
    block.interval = {a - half, a + half};
    if (!(block.interval.lo >= floor_lo)) throw std::domain_error("gap_series: cannot fit E_k inside the target set");
    block.set = make_set({{-block.interval.hi, -block.interval.lo}, block.interval});

    const std::int64_t inner_scale = n_k / dilation;
    const double inner_center = detail::wrap_to_fundamental(static_cast<double>(dilation) * a);
    TrigPoly f;
    if (opts.builder == ConcentratorKind::highp) {
      const std::int64_t j = opts.riesz_j > 0 ? opts.riesz_j : default_riesz_j(p);
      f = assemble_concentrator(riesz_pair(j, opts.riesz_K, opts.riesz_growth), inner_scale, inner_center,
                                opts.tail_budget);
    } else {
      const SignSearchResult s = sign_search(opts.sign_n, p, q, opts.sign_eps, opts.sign_budget,
                                             root.split(static_cast<std::uint64_t>(k)).seed(), opts.quad);
      ConcentratorParams cp{opts.sign_n, inner_scale, inner_center, p, q, opts.sign_eps};
      f = lowp_concentrator(cp, s.best, opts.tail_budget);
    }
    if (dilation > 1) f = dilate(f, dilation);
    block.min_gap = classify(f).min_gap;
    if (f.support_size() >= 2 && block.min_gap < k) throw std::logic_error("gap_series: block gap below k after dilation");

    block.raw_norm = lp_norm(lp_integral(f, p, SymmetricSet::torus(), opts.quad));
    f = scale(f, std::pow(2.0, 0.5 * k) / block.raw_norm);
    block.poly = f;

    if (k > 1) {
      const GapBlock& prev = out.blocks.back();
      next_modulation = detail::checked_add(prev.modulation, detail::checked_add(prev.poly.max_frequency(), k + 1));
    }
    block.modulation = next_modulation;
    assembled = combine(1.0, assembled, 1.0, modulate(f, block.modulation));
    out.blocks.push_back(std::move(block));
    cursor = out.blocks.back().interval.lo;
  }
  out.assembled = std::move(assembled);
  return out;
}

}  // namespace wiener
