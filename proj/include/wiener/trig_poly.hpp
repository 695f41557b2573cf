#pragma once

// Trigonometric polynomials on the torus R/Z with sparse integer spectra.
//
// A TrigPoly is the finite sum  f(t) = sum_h a_h e(h t),  e(x) = exp(2 pi i x),
// stored as frequency-sorted (h, a_h) pairs with no exactly-zero coefficient.
// Values are immutable; every operation returns a new polynomial.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wiener {

using Frequency = std::int64_t;
using Complex = std::complex<double>;

struct Term {
  Frequency freq;
  Complex coef;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Default tolerance for coefficient predicates (positive definiteness,
/// idempotency). Absorbs floating rounding only.
inline constexpr double kDefaultPdTolerance = 1e-12;

namespace detail {

inline Frequency checked_add(Frequency a, Frequency b) {
  Frequency r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("frequency overflow");
  return r;
}

inline Frequency checked_mul(Frequency a, Frequency b) {
  Frequency r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("frequency overflow");
  return r;
}

/// exp(2 pi i x) with x reduced mod 1 first, so large arguments keep accuracy.
inline Complex unit(double x) {
  x -= std::floor(x);
  const double phi = 2.0 * std::numbers::pi * x;
  return {std::cos(phi), std::sin(phi)};
}

}  // namespace detail

class TrigPoly {
 public:
  TrigPoly() = default;

  /// Takes terms already sorted by strictly increasing frequency; drops zeros.
  static TrigPoly from_sorted(std::vector<Term> terms) {
    for (std::size_t i = 1; i < terms.size(); ++i) {
      if (terms[i - 1].freq >= terms[i].freq)
        throw std::invalid_argument("TrigPoly::from_sorted: frequencies not increasing");
    }
    std::erase_if(terms, [](const Term& t) { return t.coef == Complex{}; });
    TrigPoly f;
    f.terms_ = std::move(terms);
    return f;
  }

  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  /// max |h| over the support; 0 for the zero polynomial.
  Frequency degree() const {
    if (terms_.empty()) return 0;
    return std::max(std::abs(terms_.front().freq), std::abs(terms_.back().freq));
  }

  Frequency min_frequency() const { return terms_.empty() ? 0 : terms_.front().freq; }
  Frequency max_frequency() const { return terms_.empty() ? 0 : terms_.back().freq; }

  Complex coefficient(Frequency h) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), h,
                               [](const Term& t, Frequency v) { return t.freq < v; });
    return (it != terms_.end() && it->freq == h) ? it->coef : Complex{};
  }

  /// Direct evaluation at a point of the torus.
  Complex operator()(double t) const {
    Complex s{};
    for (const Term& term : terms_) {
      s += term.coef * detail::unit(static_cast<double>(term.freq) * t);
    }
    return s;
  }

  /// sum |a_h|, an upper bound for sup |f|.
  double abs_coefficient_sum() const {
    double s = 0.0;
    for (const Term& t : terms_) s += std::abs(t.coef);
    return s;
  }

  /// sum |a_h|^2, equal to the integral of |f|^2 over the torus.
  double parseval_l2() const {
    double s = 0.0;
    for (const Term& t : terms_) s += std::norm(t.coef);
    return s;
  }

  /// sum |h|^j |a_h|. With 2 pi factors this bounds sup |f^(j)|.
  double weighted_abs_sum(int j) const {
    double s = 0.0;
    for (const Term& t : terms_) s += std::pow(std::abs(static_cast<double>(t.freq)), j) * std::abs(t.coef);
    return s;
  }

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  std::vector<Term> terms_;
};

/// Builds a polynomial from unordered (frequency, coefficient) entries.
/// Duplicate frequencies are summed in input order; exact zeros are dropped.
inline TrigPoly make_poly(std::span<const std::pair<Frequency, Complex>> entries) {
  std::vector<Term> terms;
  terms.reserve(entries.size());
  for (const auto& [h, c] : entries) terms.push_back({h, c});
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.freq < b.freq; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().freq == t.freq) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  return TrigPoly::from_sorted(std::move(merged));
}

inline TrigPoly make_poly(std::initializer_list<std::pair<Frequency, Complex>> entries) {
  return make_poly(std::span<const std::pair<Frequency, Complex>>(entries.begin(), entries.size()));
}

inline TrigPoly constant(Complex c) { return make_poly({{0, c}}); }

/// e_h, the single exponential of frequency h.
inline TrigPoly exponential(Frequency h) { return make_poly({{h, 1.0}}); }

/// D_n(x) = sum_{v=0}^{n-1} e(v x).
inline TrigPoly dirichlet(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("dirichlet: n must be >= 1");
  std::vector<Term> terms(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v) terms[static_cast<std::size_t>(v)] = {v, 1.0};
  return TrigPoly::from_sorted(std::move(terms));
}

/// e_K * f: every frequency shifted by K. |result| = |f| pointwise.
inline TrigPoly modulate(const TrigPoly& f, Frequency shift) {
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (Term& t : terms) t.freq = detail::checked_add(t.freq, shift);
  return TrigPoly::from_sorted(std::move(terms));
}

/// t -> f(N t): frequency h moves to N h.
inline TrigPoly dilate(const TrigPoly& f, std::int64_t scale) {
  if (scale < 1) throw std::invalid_argument("dilate: scale must be >= 1");
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (Term& t : terms) t.freq = detail::checked_mul(t.freq, scale);
  return TrigPoly::from_sorted(std::move(terms));
}

inline TrigPoly scale(const TrigPoly& f, Complex c) {
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (Term& t : terms) t.coef *= c;
  return TrigPoly::from_sorted(std::move(terms));
}

/// Pointwise product, computed as the exact convolution of coefficient
/// sequences. Accumulation order is (i over f, j over g) on every path.
inline TrigPoly multiply(const TrigPoly& f, const TrigPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const Frequency lo = detail::checked_add(f.min_frequency(), g.min_frequency());
  const Frequency hi = detail::checked_add(f.max_frequency(), g.max_frequency());
  const double pairs = static_cast<double>(f.support_size()) * static_cast<double>(g.support_size());
  const double range = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;

  if (range <= 4.0 * pairs + 1024.0 && range <= double(1 << 26)) {
    std::vector<Complex> acc(static_cast<std::size_t>(hi - lo + 1));
    for (const Term& a : f.terms())
      for (const Term& b : g.terms()) acc[static_cast<std::size_t>(a.freq + b.freq - lo)] += a.coef * b.coef;
    std::vector<Term> terms;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] != Complex{}) terms.push_back({lo + static_cast<Frequency>(i), acc[i]});
    }
    return TrigPoly::from_sorted(std::move(terms));
  }

  std::map<Frequency, Complex> acc;
  for (const Term& a : f.terms())
    for (const Term& b : g.terms()) acc[a.freq + b.freq] += a.coef * b.coef;
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [h, c] : acc) terms.push_back({h, c});
  return TrigPoly::from_sorted(std::move(terms));
}

/// a f + b g, coefficientwise.
inline TrigPoly combine(Complex a, const TrigPoly& f, Complex b, const TrigPoly& g) {
  std::vector<Term> terms;
  terms.reserve(f.support_size() + g.support_size());
  auto fi = f.terms().begin(), fe = f.terms().end();
  auto gi = g.terms().begin(), ge = g.terms().end();
  while (fi != fe || gi != ge) {
    if (gi == ge || (fi != fe && fi->freq < gi->freq)) {
      terms.push_back({fi->freq, a * fi->coef});
      ++fi;
    } else if (fi == fe || gi->freq < fi->freq) {
      terms.push_back({gi->freq, b * gi->coef});
      ++gi;
    } else {
      terms.push_back({fi->freq, a * fi->coef + b * gi->coef});
      ++fi;
      ++gi;
    }
  }
  return TrigPoly::from_sorted(std::move(terms));
}

/// Convolution with the uniform measure on the k-th roots of unity: keeps the
/// frequencies divisible by k.
inline TrigPoly filter_multiples(const TrigPoly& f, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("filter_multiples: k must be >= 1");
  std::vector<Term> terms;
  for (const Term& t : f.terms()) {
    if (t.freq % k == 0) terms.push_back(t);
  }
  return TrigPoly::from_sorted(std::move(terms));
}

struct SpectrumReport {
  bool is_positive_definite = true;
  bool is_idempotent = true;
  std::int64_t min_gap = 0;  // 0 when fewer than two frequencies
  std::int64_t degree = 0;
  std::size_t support_size = 0;
};

/// Coefficient predicates. The zero polynomial is vacuously positive definite
/// and idempotent.
inline SpectrumReport classify(const TrigPoly& f, double tau = kDefaultPdTolerance) {
  SpectrumReport r;
  r.degree = f.degree();
  r.support_size = f.support_size();
  const auto terms = f.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Complex c = terms[i].coef;
    if (std::abs(c.imag()) > tau || c.real() < -tau) r.is_positive_definite = false;
    if (std::abs(c - Complex{1.0}) > tau) r.is_idempotent = false;
    if (i > 0) {
      const std::int64_t gap = terms[i].freq - terms[i - 1].freq;
      r.min_gap = (i == 1) ? gap : std::min(r.min_gap, gap);
    }
  }
  return r;
}

/// Smallest coefficient real part, useful for reporting how far from the
/// positive cone a construction sits. +inf for the zero polynomial.
inline double min_real_coefficient(const TrigPoly& f) {
  double m = std::numeric_limits<double>::infinity();
  for (const Term& t : f.terms()) m = std::min(m, t.coef.real());
  return m;
}

inline double max_abs_imag_coefficient(const TrigPoly& f) {
  double m = 0.0;
  for (const Term& t : f.terms()) m = std::max(m, std::abs(t.coef.imag()));
  return m;
}

}  // namespace wiener
