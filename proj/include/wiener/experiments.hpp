#pragma once

// Seeded desk-scale experiments. Each returns an ExperimentReport whose
// verdicts reference quantities stored in the same report.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wiener/constructions.hpp"
#include "wiener/norms.hpp"
#include "wiener/poly_io.hpp"
#include "wiener/report.hpp"
#include "wiener/rng.hpp"
#include "wiener/torus_set.hpp"
#include "wiener/trig_poly.hpp"

namespace wiener {

namespace detail {

inline std::string indexed(const std::string& stem, std::int64_t i) { return stem + "[" + std::to_string(i) + "]"; }

/// Error of I^(1/p) given |I - I_true| <= e, toward the lower side.
inline double norm_error_below(double integral, double err, double p) {
  return std::pow(integral, 1.0 / p) - std::pow(std::max(integral - err, 0.0), 1.0 / p);
}

inline double norm_error_above(double integral, double err, double p) {
  return std::pow(integral + err, 1.0 / p) - std::pow(integral, 1.0 / p);
}

/// Longest interval of E inside (0, 1/2].
inline Interval positive_component(const SymmetricSet& e) {
  Interval best{0.0, 0.0};
  for (const Interval& i : e.intervals()) {
    if (i.hi <= 0.0) continue;
    const Interval part{std::max(i.lo, 0.0), i.hi};
    if (part.length() > best.length()) best = part;
  }
  if (!(best.length() > 0.0)) throw std::invalid_argument("set has no positive component");
  return best;
}

}  // namespace detail

/// Random positive definite polynomial: each frequency in [0, degree_cap] is
/// kept with probability 1/2 and gets a coefficient uniform on [0, 1).
inline TrigPoly random_pd_polynomial(Rng& rng, std::int64_t degree_cap) {
  std::vector<Term> terms;
  for (std::int64_t h = 0; h <= degree_cap; ++h) {
    const bool keep = (rng.bits() >> 63) != 0;
    const double c = rng.uniform();
    if (keep) terms.push_back({h, c});
  }
  if (terms.empty()) terms.push_back({0, 1.0});
  return TrigPoly::from_sorted(std::move(terms));
}

// ---------------------------------------------------------------------------

struct ShapiroParams {
  int p = 2;
  double a = 0.25;
  int corpus_size = 500;
  std::int64_t degree_cap = 64;
  std::int64_t k = 0;  // sharpness k; 0 picks the largest k with a < 1/k
  double sharpness_tolerance = 0.02;
  std::vector<std::int64_t> sweep = {256, 512, 1024, 2048, 4096};
};

inline std::int64_t default_sharpness_k(double a) {
  return std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(1.0 / a)) - 1);
}

inline ExperimentReport verify_shapiro(const ShapiroParams& sp, std::uint64_t seed, const QuadratureOptions& quad) {
  if (sp.p != 2 && sp.p != 4 && sp.p != 6) throw std::invalid_argument("verify_shapiro: p must be 2, 4 or 6");
  if (!(sp.a > 0.0 && sp.a < 0.5)) throw std::invalid_argument("verify_shapiro: a must lie in (0, 1/2)");
  if (sp.corpus_size < 1 || sp.degree_cap < 0) throw std::invalid_argument("verify_shapiro: bad corpus parameters");
  const std::int64_t k = sp.k > 0 ? sp.k : default_sharpness_k(sp.a);
  if (k < 2) throw std::invalid_argument("verify_shapiro: k must be >= 2");

  ExperimentReport r;
  r.experiment_id = "verify_shapiro";
  r.seed = seed;
  r.param("p", std::int64_t{sp.p});
  r.param("a", sp.a);
  r.param("corpus_size", std::int64_t{sp.corpus_size});
  r.param("degree_cap", sp.degree_cap);
  r.param("oversample", quad.oversample);
  r.param("k", k);

  const double p = sp.p;
  const SymmetricSet window = make_set({{-sp.a, sp.a}});
  const Rng root(seed);
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double slack_err = 0.0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sp.corpus_size; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const TrigPoly f = random_pd_polynomial(rng, sp.degree_cap);
    const SampledPoly s(f, quad);
    const NormResult local = s.lp_integral(p, window);
    const NormResult total = s.lp_integral(p, SymmetricSet::torus());
    const double lhs = local.value / (2.0 * sp.a);
    const double rhs = 0.5 * total.value;
    const double err = local.error_bound / (2.0 * sp.a) + 0.5 * total.error_bound;
    if (lhs < rhs - err) ++violations;
    const double slack = lhs - rhs;
    if (slack < min_slack) {
      min_slack = slack;
      slack_err = err;
    }
    worst_ratio = std::min(worst_ratio, lhs / rhs);
  }
  r.quantity("violations", violations);
  r.quantity("min_slack", min_slack, slack_err);
  r.quantity("min_mean_ratio", worst_ratio);
  r.verdict("local mean of |f|^p over (-a,a) >= half the total, for every sample", violations == 0, "violations");

  // Sharpness sweep: D_n * mu_k puts about 1/k of its L^p mass on (-a, a).
  const double target = 1.0 / static_cast<double>(k);
  double prev_dist = std::numeric_limits<double>::infinity();
  bool monotone = true;
  std::string last;
  for (std::int64_t n : sp.sweep) {
    const ConcentrationResult c = concentration_ratio(shapiro_counterexample(n, k), p, window, quad);
    last = detail::indexed("sharpness_ratio", n);
    r.quantity(last, c.ratio, c.error_bound);
    const double dist = std::abs(c.ratio - target);
    if (dist > prev_dist) monotone = false;
    prev_dist = dist;
  }
  if (!sp.sweep.empty()) {
    r.quantity("sharpness_target", target);
    const Quantity& q = r.find(last);
    r.verdict("sharpness ratio at largest n within tolerance of 1/k",
              std::abs(q.value - target) <= sp.sharpness_tolerance, last);
    r.verdict("distance to 1/k is nonincreasing along the sweep", monotone, last);
  }
  return r;
}

// ---------------------------------------------------------------------------

struct DiophantineParams {
  std::int64_t min_denominator = 4;
  std::int64_t max_denominator = 32;
  int radius_exponent = 3;
  std::int64_t n = 4096;
  std::int64_t l = 5;
  int p = 2;
  double tolerance = 0.03;
};

/// Concentration of D_n * mu_l on the diophantine set: tends to 1/l.
inline ExperimentReport diophantine_concentration(const DiophantineParams& dp, const QuadratureOptions& quad) {
  if (dp.l <= dp.min_denominator) throw std::invalid_argument("diophantine: need l > L");
  ExperimentReport r;
  r.experiment_id = "diophantine_concentration";
  r.param("L", dp.min_denominator);
  r.param("l_max", dp.max_denominator);
  r.param("radius_exponent", std::int64_t{dp.radius_exponent});
  r.param("n", dp.n);
  r.param("l", dp.l);
  r.param("p", std::int64_t{dp.p});
  r.param("oversample", quad.oversample);
  const SymmetricSet e = diophantine_set(dp.min_denominator, dp.max_denominator, dp.radius_exponent);
  const ConcentrationResult c = concentration_ratio(shapiro_counterexample(dp.n, dp.l), dp.p, e, quad);
  r.quantity("set_measure", e.measure());
  r.quantity("set_intervals", static_cast<double>(e.intervals().size()));
  r.quantity("ratio", c.ratio, c.error_bound);
  r.quantity("target", 1.0 / static_cast<double>(dp.l));
  r.verdict("ratio within tolerance of 1/l", std::abs(c.ratio - 1.0 / static_cast<double>(dp.l)) <= dp.tolerance,
            "ratio");
  return r;
}

// ---------------------------------------------------------------------------

enum class ConcentrationMode { lowp, highp };

struct ConcentrationDemoParams {
  ConcentrationMode mode = ConcentrationMode::lowp;
  double p = 1.5;
  double q = 1.2;
  double eps = 0.1;
  SymmetricSet target = make_set({{-0.4, -0.3}, {0.3, 0.4}});
  std::int64_t N = 10;
  double tail_budget = 0.01;
  // lowp
  std::int64_t n = 256;
  double sign_eps = 1.0;
  int sign_budget = 16;
  // highp
  std::int64_t j = 3;
  std::vector<int> depths = {0, 1, 2};
  std::int64_t growth = kDefaultRieszGrowth;
};

namespace detail {

struct SidesResult {
  double ratio, error;
};

/// int_{cE} |f|^p / (int_T |f|^q)^(p/q), one FFT for both sides.
inline SidesResult concentration_sides(ExperimentReport& r, const std::string& tag, const TrigPoly& f, double p, double q,
                                       const SymmetricSet& outside, const QuadratureOptions& quad) {
  const SampledPoly s(f, quad);
  const NormResult lhs = s.lp_integral(p, outside);
  const NormResult iq = s.lp_integral(q, SymmetricSet::torus());
  const double rhs = std::pow(iq.value, p / q);
  const double rhs_err = std::pow(iq.value + iq.error_bound, p / q) - rhs;
  const double ratio = lhs.value / rhs;
  const double lower = std::pow(std::max(iq.value - iq.error_bound, 0.0), p / q);
  const double err = lower > 0.0 ? (lhs.error_bound + ratio * rhs_err) / lower : std::numeric_limits<double>::infinity();
  r.quantity("complement_integral_p" + tag, lhs.value, lhs.error_bound);
  r.quantity("total_integral_q" + tag, iq.value, iq.error_bound);
  r.quantity("ratio" + tag, ratio, err);
  return {ratio, err};
}

inline void record_spectrum(ExperimentReport& r, const std::string& tag, const TrigPoly& f) {
  const SpectrumReport sr = classify(f);
  r.quantity("min_coefficient" + tag, min_real_coefficient(f));
  r.quantity("max_abs_imag" + tag, max_abs_imag_coefficient(f));
  r.quantity("is_positive_definite" + tag, sr.is_positive_definite ? 1.0 : 0.0);
  r.quantity("min_gap" + tag, static_cast<double>(sr.min_gap));
  r.quantity("degree" + tag, static_cast<double>(sr.degree));
  r.quantity("support_size" + tag, static_cast<double>(sr.support_size));
  r.verdict("assembled polynomial is positive definite" + (tag.empty() ? std::string() : " " + tag),
            sr.is_positive_definite, "min_coefficient" + tag);
}

}  // namespace detail

inline ExperimentReport demo_strong_concentration(const ConcentrationDemoParams& cp, std::uint64_t seed,
                                                  const QuadratureOptions& quad) {
  ExperimentReport r;
  r.seed = seed;
  const Interval I = detail::positive_component(cp.target);
  const double a = I.center();
  const SymmetricSet outside = complement(cp.target);
  r.param("p", cp.p);
  r.param("q", cp.q);
  r.param("eps", cp.eps);
  r.param("set", format_set(cp.target));
  r.param("N", cp.N);
  r.param("tail_budget", cp.tail_budget);
  r.param("oversample", quad.oversample);

  if (cp.mode == ConcentrationMode::lowp) {
    r.experiment_id = "demo_strong_concentration_lowp";
    if (!(cp.q > 0.0 && cp.q <= cp.p && cp.p < 2.0)) throw std::invalid_argument("lowp: need 0 < q <= p < 2");
    const double half = 1.0 / (2.0 * static_cast<double>(cp.N));
    if (!(I.lo <= a - half && a + half <= I.hi)) throw std::invalid_argument("lowp: triangle support does not fit inside E");
    r.param("n", cp.n);
    r.param("sign_eps", cp.sign_eps);
    r.param("sign_budget", std::int64_t{cp.sign_budget});
    const SignSearchResult s = sign_search(cp.n, cp.p, cp.q, cp.sign_eps, cp.sign_budget, seed, quad);
    r.quantity("dirichlet_norm_p", s.dirichlet_norm);
    r.quantity("sign_ratio", s.best_ratio);
    r.quantity("sign_found", s.found ? 1.0 : 0.0);
    r.quantity("sign_trials", s.best.trials_used);
    const TrigPoly f = lowp_concentrator({cp.n, cp.N, a, cp.p, cp.q, cp.eps}, s.best, cp.tail_budget);
    detail::record_spectrum(r, "", f);
    const auto sides = detail::concentration_sides(r, "", f, cp.p, cp.q, outside, quad);
    r.verdict("int_{cE}|f|^p <= eps (int|f|^q)^(p/q)", sides.ratio <= cp.eps, "ratio");
    return r;
  }

  r.experiment_id = "demo_strong_concentration_highp";
  r.param("j", cp.j);
  r.param("growth", cp.growth);
  std::string depths;
  for (int d : cp.depths) depths += (depths.empty() ? "" : ",") + std::to_string(d);
  r.param("K", depths);
  if (cp.depths.empty()) throw std::invalid_argument("highp: empty K list");
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  std::string last;
  for (int depth : cp.depths) {
    HighpParams hp{I, cp.j, depth, cp.N, cp.tail_budget, cp.p, cp.q, cp.growth};
    const TrigPoly f = highp_concentrator(hp);
    const std::string tag = "[K=" + std::to_string(depth) + "]";
    const PolyPair pair = riesz_pair(cp.j, depth, cp.growth);
    const SampledPoly sg(pair.g, quad), sG(pair.G, quad);
    const NormResult ng = sg.lp_integral(cp.p, SymmetricSet::torus());
    const NormResult nG = sG.lp_integral(cp.p, SymmetricSet::torus());
    r.quantity("majorant_norm_ratio" + tag, lp_norm(nG) / lp_norm(ng));
    detail::record_spectrum(r, tag, f);
    const auto sides = detail::concentration_sides(r, tag, f, cp.p, cp.q, outside, quad);
    if (!(sides.ratio < prev)) monotone = false;
    prev = sides.ratio;
    last = "ratio" + tag;
  }
  r.verdict("ratio decreases strictly with K", monotone, last);
  r.verdict("int_{cE}|f|^p <= eps (int|f|^q)^(p/q) at the largest K", prev <= cp.eps, last);
  return r;
}

// ---------------------------------------------------------------------------

struct WienerDemoParams {
  double p = 2.5;
  double q = 2.0;
  SymmetricSet target = make_set({{-0.3, 0.3}});
  int K = 6;
  GapSeriesOptions series{};
  double complement_bound = 2.0;
  std::vector<double> r_grid = {0.5, 0.75, 0.9, 0.99, 1.0};
};

inline ExperimentReport demo_wiener_failure(const WienerDemoParams& wp, std::uint64_t seed, const QuadratureOptions& quad) {
  if (std::fmod(wp.p, 2.0) == 0.0) throw std::invalid_argument("demo_wiener_failure: p must not be an even integer");
  if (!(wp.q < wp.p)) throw std::invalid_argument("demo_wiener_failure: need q < p");
  GapSeriesOptions opts = wp.series;
  opts.quad = quad;
  const GapSeries gs = gap_series(wp.target, wp.K, wp.p, wp.q, seed, opts);

  ExperimentReport r;
  r.experiment_id = "demo_wiener_failure";
  r.seed = seed;
  r.param("p", wp.p);
  r.param("q", wp.q);
  r.param("set", format_set(wp.target));
  r.param("K", std::int64_t{wp.K});
  r.param("alpha", std::int64_t{gs.alpha});
  r.param("builder", std::string(opts.builder == ConcentratorKind::highp ? "highp" : "lowp"));
  r.param("tail_budget", opts.tail_budget);
  r.param("oversample", quad.oversample);

  double tail = 0.0;
  for (int j = 1; j <= wp.K; ++j) tail += std::pow(2.0, -0.5 * j);
  r.quantity("block_tail_sum", tail);

  const SampledPoly whole(gs.assembled, quad);
  const auto& terms = gs.assembled.terms();
  std::size_t cursor = 0;
  for (std::size_t b = 0; b < gs.blocks.size(); ++b) {
    const GapBlock& blk = gs.blocks[b];
    const auto k = static_cast<std::int64_t>(b + 1);
    r.quantity(detail::indexed("N", k), static_cast<double>(blk.N));
    r.quantity(detail::indexed("modulation", k), static_cast<double>(blk.modulation));
    r.quantity(detail::indexed("E_measure", k), blk.set.measure());

    const NormResult on = whole.lp_integral(wp.p, blk.set);
    const double mass = lp_norm(on);
    const double mass_err = detail::norm_error_below(on.value, on.error_bound, wp.p);
    const std::string mass_label = detail::indexed("mass_on_E", k);
    r.quantity(mass_label, mass, mass_err);
    const double threshold = std::pow(2.0, 0.5 * static_cast<double>(k)) - tail;
    r.quantity(detail::indexed("mass_threshold", k), threshold);
    r.verdict("L^p mass on E_" + std::to_string(k) + " >= 2^(k/2) - sum 2^(-j/2) - error", mass >= threshold - mass_err,
              mass_label);

    const NormResult own = lp_integral(blk.poly, wp.p, blk.set, quad);
    r.quantity(detail::indexed("block_share_on_E", k), lp_norm(own) / std::pow(2.0, 0.5 * static_cast<double>(k)));

    // Gaps whose upper frequency lies in block k.
    const std::int64_t lo = blk.modulation + blk.poly.min_frequency();
    const std::int64_t hi = blk.modulation + blk.poly.max_frequency();
    std::int64_t min_gap = std::numeric_limits<std::int64_t>::max();
    while (cursor < terms.size() && terms[cursor].freq <= hi) {
      if (terms[cursor].freq >= lo && cursor > 0) min_gap = std::min(min_gap, terms[cursor].freq - terms[cursor - 1].freq);
      ++cursor;
    }
    const std::string gap_label = detail::indexed("min_gap", k);
    r.quantity(gap_label, min_gap == std::numeric_limits<std::int64_t>::max() ? 0.0 : static_cast<double>(min_gap));
    r.verdict("spectral gaps at block " + std::to_string(k) + " >= " + std::to_string(k),
              min_gap == std::numeric_limits<std::int64_t>::max() || min_gap >= k, gap_label);
  }

  const NormResult out = whole.lp_integral(wp.p, complement(wp.target));
  r.quantity("complement_mass", lp_norm(out), detail::norm_error_above(out.value, out.error_bound, wp.p));
  r.param("complement_bound", wp.complement_bound);
  r.verdict("L^p mass off the target set stays bounded", lp_norm(out) <= wp.complement_bound, "complement_mass");

  TrigPoly partial;
  double prev = 0.0;
  bool grows = true;
  std::string last;
  for (std::size_t b = 0; b < gs.blocks.size(); ++b) {
    partial = combine(1.0, partial, 1.0, modulate(gs.blocks[b].poly, gs.blocks[b].modulation));
    const NormResult h = hq_estimate(partial, wp.q, wp.r_grid, quad);
    last = detail::indexed("hq_partial", static_cast<std::int64_t>(b + 1));
    r.quantity(last, lp_norm(h), detail::norm_error_above(h.value, h.error_bound, wp.q));
    if (!(lp_norm(h) > prev)) grows = false;
    prev = lp_norm(h);
  }
  r.verdict("H^q estimate of partial sums increases with k", grows, last);
  return r;
}

}  // namespace wiener
