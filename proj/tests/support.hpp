#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "wiener/rng.hpp"
#include "wiener/trig_poly.hpp"

namespace wiener::testing {

/// Dense random complex polynomial on [-degree, degree].
inline TrigPoly random_poly(Rng& rng, std::int64_t degree) {
  std::vector<Term> terms;
  for (std::int64_t h = -degree; h <= degree; ++h) terms.push_back({h, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}});
  return TrigPoly::from_sorted(std::move(terms));
}

/// Random sparse polynomial with frequencies in [lo, hi].
inline TrigPoly random_sparse_poly(Rng& rng, std::int64_t lo, std::int64_t hi, int count) {
  std::vector<std::pair<Frequency, Complex>> entries;
  for (int i = 0; i < count; ++i) {
    const auto h = lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    entries.emplace_back(h, Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  }
  return make_poly(entries);
}

/// Naive evaluation in long double, independent of detail::unit.
inline std::complex<long double> naive_eval(const TrigPoly& f, long double t) {
  std::complex<long double> s{};
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (const Term& term : f.terms()) {
    const long double phase = two_pi * static_cast<long double>(term.freq) * t;
    s += std::complex<long double>(term.coef.real(), term.coef.imag()) *
         std::complex<long double>(std::cos(phase), std::sin(phase));
  }
  return s;
}

/// int_lo^hi |f|^2 in closed form: sum_{h,h'} a_h conj(a_h') int e((h - h') t) dt.
inline double exact_l2_on_interval(const TrigPoly& f, double lo, double hi) {
  long double total = 0.0L;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (const Term& x : f.terms()) {
    for (const Term& y : f.terms()) {
      const std::complex<long double> c = std::complex<long double>(x.coef.real(), x.coef.imag()) *
                                          std::conj(std::complex<long double>(y.coef.real(), y.coef.imag()));
      const std::int64_t d = x.freq - y.freq;
      if (d == 0) {
        total += c.real() * (static_cast<long double>(hi) - lo);
        continue;
      }
      const long double w = two_pi * static_cast<long double>(d);
      // int e(d t) = (sin(w t) - i cos(w t)) / w
      const std::complex<long double> prim_hi(std::sin(w * hi) / w, -std::cos(w * hi) / w);
      const std::complex<long double> prim_lo(std::sin(w * lo) / w, -std::cos(w * lo) / w);
      total += (c * (prim_hi - prim_lo)).real();
    }
  }
  return static_cast<double>(total);
}

}  // namespace wiener::testing
