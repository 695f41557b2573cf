#include <gtest/gtest.h>

#include "support.hpp"
#include "wiener/constructions.hpp"

using namespace wiener;

namespace {

double triangle(double t, std::int64_t n_scale) { return std::max(0.0, 1.0 - 2.0 * static_cast<double>(n_scale) * std::abs(t)); }

// Composite Simpson for int (1 - |t|/h) cos(2 pi m t) over [-h, h].
double triangle_coefficient_by_quadrature(std::int64_t n_scale, std::int64_t m) {
  const double h = 1.0 / (2.0 * static_cast<double>(n_scale));
  const int steps = 20000;
  const double dx = h / steps;
  double s = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = i * dx;
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * (1.0 - t / h) * std::cos(2.0 * std::numbers::pi * static_cast<double>(m) * t);
  }
  return 2.0 * s * dx / 3.0;
}

}  // namespace

TEST(Shapiro, IdempotentOnMultiplesOfK) {
  const TrigPoly f = shapiro_counterexample(100, 4);
  const SpectrumReport r = classify(f);
  EXPECT_TRUE(r.is_idempotent);
  EXPECT_TRUE(r.is_positive_definite);
  EXPECT_EQ(r.support_size, 25u);
  EXPECT_EQ(r.min_gap, 4);
  EXPECT_THROW(shapiro_counterexample(3, 4), std::invalid_argument);
  EXPECT_THROW(shapiro_counterexample(10, 1), std::invalid_argument);
}

TEST(Shapiro, ConcentrationApproachesOneOverK) {
  const SymmetricSet window = make_set({{-0.2, 0.2}});
  double prev = 1.0;
  for (std::int64_t n : {256, 1024, 4096}) {
    const double d = std::abs(concentration_ratio(shapiro_counterexample(n, 4), 2.0, window).ratio - 0.25);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 0.02);
}

TEST(Triangle, CoefficientsMatchDirectIntegral) {
  for (std::int64_t n_scale : {1, 3, 10}) {
    for (std::int64_t m : {0, 1, 2, 5, 6, 17, -4}) {
      EXPECT_NEAR(triangle_coefficient(n_scale, m), triangle_coefficient_by_quadrature(n_scale, m), 1e-12)
          << n_scale << ' ' << m;
    }
  }
  EXPECT_EQ(triangle_coefficient(5, 10), 0.0);
  EXPECT_EQ(triangle_coefficient(5, -20), 0.0);
}

TEST(Triangle, CutoffIsMinimalForTheTailBudget) {
  for (std::int64_t n_scale : {2, 10, 40}) {
    for (double tau : {0.5, 0.05}) {
      const std::int64_t m = triangle_cutoff(n_scale, tau);
      const double h = 1.0 / (2.0 * static_cast<double>(n_scale));
      auto tail = [&](std::int64_t cut) {
        double s = h;
        for (std::int64_t k = 1; k <= cut; ++k) s += 2.0 * triangle_coefficient(n_scale, k);
        return 1.0 - s;
      };
      EXPECT_LE(tail(m), tau * h + 1e-14);
      EXPECT_GT(tail(m - 1), tau * h - 1e-14);
    }
  }
  EXPECT_THROW(triangle_cutoff(0, 0.1), std::invalid_argument);
  EXPECT_THROW(triangle_cutoff(3, 0.0), std::invalid_argument);
  EXPECT_THROW(triangle_cutoff(std::int64_t{1} << 20, 0.5), std::overflow_error);
}

TEST(Triangle, TruncationErrorWithinTail) {
  const std::int64_t n_scale = 6;
  const double tau = 0.1;
  const TrigPoly d = triangle_poly(n_scale, tau);
  EXPECT_TRUE(classify(d).is_positive_definite);
  const double h = 1.0 / (2.0 * n_scale);
  const double peak = d(0.0).real();
  EXPECT_GE(peak, 1.0 - tau);
  EXPECT_LE(peak, 1.0);
  for (int i = 0; i <= 200; ++i) {
    const double t = -0.5 + i / 200.0;
    EXPECT_NEAR(d(t).real(), triangle(t, n_scale), tau * h + 1e-12) << t;
  }
}

TEST(SignSearch, SucceedsAndIsDeterministic) {
  const SignSearchResult a = sign_search(256, 1.0, 2.0, 0.5, 64, 0);
  const SignSearchResult b = sign_search(256, 1.0, 2.0, 0.5, 64, 0);
  ASSERT_TRUE(a.found);
  EXPECT_LE(a.best_ratio, 0.5);
  EXPECT_EQ(a.best.signs, b.best.signs);
  EXPECT_EQ(a.best.trials_used, b.best.trials_used);
  EXPECT_EQ(a.best.signs.size(), 257u);
  // ||g||_2 = sqrt(n + 1) by Parseval, so the ratio pins ||D_257||_1.
  EXPECT_NEAR(a.best_ratio * std::sqrt(257.0), a.dirichlet_norm, 1e-9);
}

TEST(SignSearch, AllPlusVectorHasRatioOneWhenExponentsAgree) {
  const std::vector<int> ones(65, 1);
  EXPECT_NEAR(sign_ratio(ones, 1.3, 1.3), 1.0, 1e-14);
  EXPECT_THROW(sign_polynomial({1, 0, -1}), std::invalid_argument);
  EXPECT_THROW(sign_search(10, 1.0, 2.0, 0.5, 0, 0), std::invalid_argument);
  EXPECT_THROW(sign_search(10, 0.0, 2.0, 0.5, 4, 0), std::invalid_argument);
}

TEST(MsPair, MajorantStructure) {
  const PolyPair pr = ms_pair(3);
  EXPECT_EQ(pr.G, make_poly({{0, 1.0}, {3, 1.0}, {4, 1.0}, {7, 1.0}}));
  EXPECT_EQ(pr.g, make_poly({{0, 1.0}, {3, 1.0}, {4, -1.0}, {7, -1.0}}));
  EXPECT_THROW(ms_pair(2), std::invalid_argument);
  EXPECT_THROW(ms_pair(-1), std::invalid_argument);
}

TEST(MsPair, MajorantHasSmallerNormForOddJAbove) {
  const PolyPair pr = ms_pair(3);
  const double g3 = lp_norm(lp_integral(pr.g, 3.0, SymmetricSet::torus(), {1024}));
  const double G3 = lp_norm(lp_integral(pr.G, 3.0, SymmetricSet::torus(), {1024}));
  EXPECT_LT(G3, g3);
  // Even exponents cannot separate them: L^4 norms agree exactly.
  EXPECT_DOUBLE_EQ(even_exact(pr.g, 2), even_exact(pr.G, 2));
}

TEST(RieszPair, ProductStructure) {
  for (int depth : {0, 1, 2}) {
    const PolyPair pr = riesz_pair(3, depth);
    EXPECT_EQ(pr.G.support_size(), static_cast<std::size_t>(std::pow(4, depth + 1)));
    EXPECT_TRUE(classify(pr.G).is_positive_definite);
    for (const Term& t : pr.g.terms()) EXPECT_EQ(std::abs(t.coef), pr.G.coefficient(t.freq).real());
  }
  const auto scales = riesz_scales(3, 2);
  const PolyPair base = ms_pair(3), pr = riesz_pair(3, 2);
  for (double t : {0.013, 0.27, -0.41}) {
    const Complex expect = base.g(t) * base.g(scales[0] * t) * base.g(scales[1] * t);
    EXPECT_LE(std::abs(pr.g(t) - expect), 1e-10);
  }
  EXPECT_THROW(riesz_pair(3, 1, 1), std::invalid_argument);
}

TEST(Concentrator, AssemblyMatchesPointwiseFormula) {
  const std::int64_t n = 40, n_scale = 5;
  const double a = 0.3, tau = 0.05;
  std::vector<int> signs(n + 1);
  Rng rng(4);
  for (int& s : signs) s = rng.sign();
  const TrigPoly f = lowp_concentrator({n, n_scale, a, 1.5, 1.2, 1.0}, {signs, 4, 1}, tau);
  EXPECT_TRUE(classify(f).is_positive_definite);
  EXPECT_GE(f.min_frequency(), 0);

  const TrigPoly delta = triangle_poly(n_scale, tau);
  const TrigPoly g = sign_polynomial(signs), big = dirichlet(n + 1);
  const auto shift = static_cast<double>(triangle_cutoff(n_scale, tau));
  for (int i = 0; i < 25; ++i) {
    const double t = rng.uniform(-0.5, 0.5);
    const double s = 2.0 * static_cast<double>(n_scale) * t;
    const Complex expect = detail::unit(shift * t) * ((delta(t - a) + delta(t + a)) * g(s) + 2.0 * delta(t) * big(s));
    EXPECT_LE(std::abs(f(t) - expect), 1e-9 * f.abs_coefficient_sum()) << t;
  }
}

TEST(Concentrator, RejectsNonMajorant) {
  const PolyPair bad{make_poly({{0, 2.0}}), make_poly({{0, 1.0}})};
  EXPECT_THROW(assemble_concentrator(bad, 4, 0.3, 0.1), std::invalid_argument);
  const PolyPair complex_g{make_poly({{0, Complex{0.0, 0.5}}}), make_poly({{0, 1.0}})};
  EXPECT_THROW(assemble_concentrator(complex_g, 4, 0.3, 0.1), std::invalid_argument);
}

TEST(Concentrator, HighpChecksPreconditions) {
  HighpParams hp;
  hp.interval = {0.3, 0.4};
  hp.N = 10;
  hp.p = 3.0;
  hp.q = 3.0;
  const TrigPoly f = highp_concentrator(hp);
  EXPECT_TRUE(classify(f).is_positive_definite);
  hp.N = 9;  // triangle wider than I
  EXPECT_THROW(highp_concentrator(hp), std::invalid_argument);
  hp.N = 10;
  hp.p = 4.0;
  EXPECT_THROW(highp_concentrator(hp), std::invalid_argument);
  hp.p = 7.0;  // j = 3 is not above p/2
  EXPECT_THROW(highp_concentrator(hp), std::invalid_argument);
}

TEST(GapSeries, BlockLayoutInvariants) {
  const SymmetricSet target = make_set({{-0.3, 0.3}});
  GapSeriesOptions opts;
  opts.alpha = 1;
  const double p = 2.5;
  const GapSeries gs = gap_series(target, 3, p, 2.0, 0, opts);
  ASSERT_EQ(gs.blocks.size(), 3u);
  TrigPoly sum;
  for (std::size_t b = 0; b < gs.blocks.size(); ++b) {
    const GapBlock& blk = gs.blocks[b];
    const int k = static_cast<int>(b + 1);
    EXPECT_TRUE(target.contains_interval(blk.interval));
    EXPECT_LT(blk.set.measure(), std::pow(2.0, -k));
    EXPECT_EQ(blk.N % blk.dilation, 0);
    if (b > 0) {
      EXPECT_LE(blk.interval.hi, gs.blocks[b - 1].interval.lo);
      const GapBlock& prev = gs.blocks[b - 1];
      EXPECT_EQ(blk.modulation, prev.modulation + prev.poly.max_frequency() + k + 1);
      EXPECT_GE(blk.min_gap, k);
    } else {
      EXPECT_EQ(blk.modulation, 0);
    }
    EXPECT_TRUE(classify(blk.poly).is_positive_definite);
    const double norm = lp_norm(lp_integral(blk.poly, p, SymmetricSet::torus(), {64}));
    EXPECT_NEAR(norm / std::pow(2.0, 0.5 * k), 1.0, 1e-6);
    sum = combine(1.0, sum, 1.0, modulate(blk.poly, blk.modulation));
  }
  EXPECT_EQ(sum, gs.assembled);
}

TEST(GapSeries, DefaultAlphaOverflowsFrequencies) {
  EXPECT_EQ(default_alpha(2.5, 2.0), 15);
  EXPECT_THROW(gap_series(make_set({{-0.3, 0.3}}), 3, 2.5, 2.0, 0), std::overflow_error);
  EXPECT_THROW(gap_series(make_set({{-0.3, 0.3}}), 3, 2.0, 2.5, 0), std::invalid_argument);
}
