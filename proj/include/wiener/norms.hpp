#pragma once

// Integrals of |f|^p over symmetric subsets of the torus.
//
// Quadrature: f is sampled on the uniform grid t_j = j/M (one FFT), and
//     int_E |f|^p  ~  (1/M) sum_j w_j |f(t_j)|^p
// where w_j in [0, 1] is the fraction of the cell [t_j - 1/2M, t_j + 1/2M]
// lying in E. Interior cells have w_j = 1, so this is the midpoint rule with
// exact partial-cell weights at interval endpoints.
//
// Error bound (sound, not sharp). Let g = e_{-c} f for a frequency center c,
// so |g| = |f| and ||f|'| <= |g'|. With S = sum |a_h|,
// D1 = 2 pi sum |h - c| |a_h| >= sup |g'| and D2 = 4 pi^2 sum (h - c)^2 |a_h|
// >= sup |g''|, the samples of f and g' give on cell j
//   |g'| <= v_j = min(D1, |g'(t_j)| + D2 h/2),  |f| <= u_j = min(S, |f(t_j)| + v_j h/2)
// and phi = |f|^p obeys, per cell of width h (w h for a partial cell):
//   p >= 1, full cell:       L_j h^2 / 4,           L_j = p u_j^(p-1) v_j
//   p >= 1, partial cell:    L_j w h^2 / 2
//   p <  1:                  Hoelder, |phi(t) - phi(t_j)| <= (v_j |t - t_j|)^p
//   p >= 2, full cell:       also h^3/24 p u_j^(p-2) ((p-1) v_j^2 + u_j D2)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "wiener/grid.hpp"
#include "wiener/summation.hpp"
#include "wiener/torus_set.hpp"
#include "wiener/trig_poly.hpp"

namespace wiener {

struct QuadratureOptions {
  /// Grid size is oversample * (2 degree + 1), rounded up to a 7-smooth size.
  std::int64_t oversample = 16;
};

struct NormResult {
  double value = 0.0;        // int_E |f|^p, torus normalized to length 1
  double error_bound = 0.0;  // bound on |value - exact integral|
  std::int64_t grid_size = 0;
  double p = 0.0;
};

inline std::int64_t quadrature_grid_size(const TrigPoly& f, const QuadratureOptions& opts) {
  if (opts.oversample < 1) throw std::invalid_argument("QuadratureOptions: oversample must be >= 1");
  std::int64_t base;
  if (__builtin_mul_overflow(opts.oversample, 2 * f.degree() + 1, &base) || base > (std::int64_t{1} << 31) - 1)
    throw std::overflow_error("quadrature grid too large");
  return smooth_size_at_least(base);
}

/// r^p via exp((p/2) log r^2); vanishing samples contribute 0.
inline double abs_pow(double r, double p) {
  const double u = r * r;
  if (u < 1e-300) return 0.0;
  if (p == 2.0) return u;
  return std::exp(0.5 * p * std::log(u));
}

inline double abs_pow(Complex z, double p) { return abs_pow(std::abs(z), p); }

/// Grid magnitudes of f and of its centered derivative, plus the constants the
/// error bound needs. Several integrals (different p, different sets) can
/// share one sampling.
class SampledPoly {
 public:
  SampledPoly(const TrigPoly& f, std::int64_t grid_size) : grid_size_(grid_size) {
    sup_bound_ = f.abs_coefficient_sum();
    const double c = weighted_median_frequency(f);
    double m1 = 0.0, m2 = 0.0;
    std::vector<Term> deriv;
    deriv.reserve(f.support_size());
    for (const Term& t : f.terms()) {
      const double d = static_cast<double>(t.freq) - c;
      m1 += std::abs(d) * std::abs(t.coef);
      m2 += d * d * std::abs(t.coef);
      deriv.push_back({t.freq, Complex{0.0, 2.0 * std::numbers::pi * d} * t.coef});
    }
    d1_ = 2.0 * std::numbers::pi * m1;
    d2_ = 4.0 * std::numbers::pi * std::numbers::pi * m2;
    abs_ = magnitudes(evaluate_grid(f, grid_size));
    // e_{-c} only rotates phases, so |g'(t_j)| = |sum 2 pi i (h - c) a_h e(h t_j)|.
    dabs_ = magnitudes(evaluate_grid(TrigPoly::from_sorted(std::move(deriv)), grid_size));
  }

  SampledPoly(const TrigPoly& f, const QuadratureOptions& opts) : SampledPoly(f, quadrature_grid_size(f, opts)) {}

  std::int64_t grid_size() const { return grid_size_; }
  /// |f(j/M)|, j = 0..M-1.
  std::span<const double> magnitudes() const { return abs_; }
  double sup_bound() const { return sup_bound_; }

  NormResult lp_integral(double p, const SymmetricSet& e) const {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("lp_integral: p must be > 0");
    NormResult r;
    r.p = p;
    r.grid_size = grid_size_;
    const auto m = static_cast<std::size_t>(grid_size_);
    const double h = 1.0 / static_cast<double>(grid_size_);
    auto weight = [&](std::size_t j) {
      return e.is_torus() ? 1.0 : cell_overlap(e, static_cast<std::int64_t>(j), grid_size_);
    };
    const double sum = chunked_sum(m, [&](std::size_t j) {
      const double w = weight(j);
      return w == 0.0 ? 0.0 : w * abs_pow(abs_[j], p);
    });
    r.value = sum * h;
    r.error_bound = chunked_sum(m, [&](std::size_t j) {
      const double w = weight(j);
      return w == 0.0 ? 0.0 : cell_error(p, j, h, std::min(w, 1.0));
    });
    return r;
  }

 private:
  static std::vector<double> magnitudes(const Samples& s) {
    std::vector<double> out(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) out[j] = std::abs(s[j]);
    return out;
  }

  static double weighted_median_frequency(const TrigPoly& f) {
    const double total = f.abs_coefficient_sum();
    double acc = 0.0;
    for (const Term& t : f.terms()) {
      acc += std::abs(t.coef);
      if (acc >= 0.5 * total) return static_cast<double>(t.freq);
    }
    return 0.0;
  }

  /// Bound on |int phi - w h phi(t_j)| over the part of cell j inside E.
  double cell_error(double p, std::size_t j, double h, double w) const {
    if (sup_bound_ == 0.0 || d1_ == 0.0) return 0.0;
    const double v = std::min(d1_, dabs_[j] + d2_ * h / 2.0);
    if (p < 1.0) {
      const double full = 2.0 * std::pow(v, p) * std::pow(h / 2.0, p + 1.0) / (p + 1.0);
      return w == 1.0 ? full : std::min(full, w * h * std::pow(v * h / 2.0, p));
    }
    const double u = std::min(sup_bound_, abs_[j] + v * h / 2.0);
    const double lip = p * std::pow(u, p - 1.0) * v;
    if (w < 1.0) return lip * w * h * h / 2.0;
    double err = lip * h * h / 4.0;
    if (p >= 2.0) {
      const double phi2 = p * std::pow(u, p - 2.0) * ((p - 1.0) * v * v + u * d2_);
      err = std::min(err, phi2 * h * h * h / 24.0);
    }
    return err;
  }

  std::int64_t grid_size_;
  std::vector<double> abs_;
  std::vector<double> dabs_;
  double sup_bound_ = 0.0;
  double d1_ = 0.0;
  double d2_ = 0.0;
};

/// int_E |f|^p by grid quadrature with a sound error bound.
inline NormResult lp_integral(const TrigPoly& f, double p, const SymmetricSet& e, const QuadratureOptions& opts = {}) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_integral: p must be > 0");
  return SampledPoly(f, opts).lp_integral(p, e);
}

/// (int |f|^p)^(1/p) over E, convenience for the norm-level statements.
inline double lp_norm(const NormResult& r) { return std::pow(r.value, 1.0 / r.p); }

/// int_T |f|^(2k) = sum_h |coef(f^k)(h)|^2, computed exactly on the spectrum.
/// `work_cap` bounds the number of coefficient products of the k-fold power.
inline double even_exact(const TrigPoly& f, int k, double work_cap = 1e9) {
  if (k < 1) throw std::invalid_argument("even_exact: k must be >= 1");
  if (std::pow(static_cast<double>(f.support_size()), k) > work_cap)
    throw std::length_error("even_exact: k-fold spectral power exceeds the configured cap");
  TrigPoly power = f;
  for (int i = 1; i < k; ++i) power = multiply(power, f);
  std::vector<double> sq;
  sq.reserve(power.support_size());
  for (const Term& t : power.terms()) sq.push_back(std::norm(t.coef));
  return pairwise_sum(sq);
}

struct ConcentrationResult {
  double ratio = 0.0;
  double error_bound = 0.0;
  NormResult on_set;
  NormResult total;
};

/// int_E |f|^p / int_T |f|^p from one shared grid.
inline ConcentrationResult concentration_ratio(const SampledPoly& sampled, double p, const SymmetricSet& e) {
  ConcentrationResult c;
  c.on_set = sampled.lp_integral(p, e);
  c.total = sampled.lp_integral(p, SymmetricSet::torus());
  if (!(c.total.value > 0.0)) throw std::domain_error("concentration_ratio: zero total integral");
  c.ratio = c.on_set.value / c.total.value;
  const double denom = c.total.value - c.total.error_bound;
  c.error_bound = denom > 0.0 ? (c.on_set.error_bound + c.ratio * c.total.error_bound) / denom
                              : std::numeric_limits<double>::infinity();
  return c;
}

inline ConcentrationResult concentration_ratio(const TrigPoly& f, double p, const SymmetricSet& e,
                                               const QuadratureOptions& opts = {}) {
  if (f.is_zero()) throw std::domain_error("concentration_ratio: zero polynomial");
  return concentration_ratio(SampledPoly(f, opts), p, e);
}

/// f_r: coefficient at n multiplied by r^|n|.
inline TrigPoly poisson_regularize(const TrigPoly& f, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("poisson_regularize: r must lie in [0, 1]");
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (Term& t : terms) t.coef *= std::pow(r, static_cast<double>(std::abs(t.freq)));
  return TrigPoly::from_sorted(std::move(terms));
}

/// max over r in r_grid of int_T |f_r|^q, the finite-grid stand-in for the
/// H^q quasi-norm sup_{0<r<1} int |f_r|^q. Returns the maximizing integral.
inline NormResult hq_estimate(const TrigPoly& f, double q, std::span<const double> r_grid,
                              const QuadratureOptions& opts = {}) {
  if (r_grid.empty()) throw std::invalid_argument("hq_estimate: empty r grid");
  NormResult best;
  bool first = true;
  for (double r : r_grid) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("hq_estimate: r must lie in (0, 1]");
    const NormResult v = lp_integral(poisson_regularize(f, r), q, SymmetricSet::torus(), opts);
    if (first || v.value > best.value) best = v;
    first = false;
  }
  return best;
}

}  // namespace wiener
