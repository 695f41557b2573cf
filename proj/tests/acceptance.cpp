// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 once every criterion has been evaluated, whatever the
// verdicts; pass --strict to turn any FAIL into a nonzero exit.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "wiener/wiener.hpp"

using namespace wiener;

namespace {

// ||g0||_3 - ||G0||_3 for j = 3 at oversample 4096, frozen from the first run.
constexpr double kMsMarginGolden = 7.451634147104258e-05;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<TrigPoly> oracle_corpus() {
  std::vector<TrigPoly> corpus;
  const Rng root(2024);
  for (int i = 0; i < 200; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    corpus.push_back(testing::random_poly(rng, 1 + static_cast<std::int64_t>(rng.below(512))));
  }
  return corpus;
}

Outcome parseval_oracle() {
  double worst = 0.0;
  for (const TrigPoly& f : oracle_corpus()) {
    const NormResult r = lp_integral(f, 2.0, SymmetricSet::torus(), {16});
    worst = std::max(worst, std::abs(r.value - f.parseval_l2()) / f.parseval_l2());
  }
  return {worst <= 1e-6, fmt("max relative error %.3g (tol 1e-6) over 200 polynomials", worst)};
}

Outcome even_power_oracle() {
  int outside = 0;
  double worst = 0.0, worst_bound = 0.0;
  for (const TrigPoly& f : oracle_corpus()) {
    const NormResult r = lp_integral(f, 4.0, SymmetricSet::torus(), {16});
    const double exact = even_exact(f, 2);
    const double diff = std::abs(r.value - exact);
    if (diff > r.error_bound) ++outside;
    worst = std::max(worst, diff / exact);
    worst_bound = std::max(worst_bound, r.error_bound / exact);
  }
  return {outside == 0, fmt("%d outside bounds; max relative |quad - exact| %.3g, max relative bound %.3g", outside, worst,
                            worst_bound)};
}

Outcome shapiro_inequality() {
  int violations = 0;
  double min_ratio = 1e300;
  for (int p : {2, 4}) {
    for (double a : {0.1, 0.25, 0.4}) {
      ShapiroParams sp;
      sp.p = p;
      sp.a = a;
      sp.corpus_size = 500;
      sp.sweep.clear();
      const ExperimentReport r = verify_shapiro(sp, 0, {16});
      violations += static_cast<int>(r.find("violations").value);
      min_ratio = std::min(min_ratio, r.find("min_mean_ratio").value);
    }
  }
  return {violations == 0,
          fmt("%d violations in 6 x 500 samples; smallest local/global mean ratio %.4f", violations, min_ratio)};
}

Outcome shapiro_sharpness() {
  const SymmetricSet window = make_set({{-0.2, 0.2}});
  std::string trail;
  double prev = 1e300, last = 0.0;
  bool monotone = true;
  for (std::int64_t n : {256, 1024, 4096}) {
    const ConcentrationResult c = concentration_ratio(shapiro_counterexample(n, 4), 2.0, window, {16});
    trail += fmt("%s%lld:%.6f", trail.empty() ? "" : " ", static_cast<long long>(n), c.ratio);
    const double d = std::abs(c.ratio - 0.25);
    monotone = monotone && d < prev;
    prev = d;
    last = c.ratio;
  }
  return {monotone && std::abs(last - 0.25) <= 0.02, "ratios " + trail + (monotone ? ", monotone" : ", NOT monotone")};
}

Outcome diophantine_remark() {
  const ExperimentReport r = diophantine_concentration({}, {16});
  const Quantity& q = r.find("ratio");
  return {r.all_pass(), fmt("ratio %.6f (+-%.2g), |E| = %.6f, target 0.2 +- 0.03", q.value, q.error_bound,
                            r.find("set_measure").value)};
}

Outcome majorant_margin() {
  const PolyPair pr = ms_pair(3);
  const QuadratureOptions quad{4096};
  const NormResult g = lp_integral(pr.g, 3.0, SymmetricSet::torus(), quad);
  const NormResult G = lp_integral(pr.G, 3.0, SymmetricSet::torus(), quad);
  const double margin = lp_norm(g) - lp_norm(G);
  const double err = detail::norm_error_below(g.value, g.error_bound, 3.0) + detail::norm_error_above(G.value, G.error_bound, 3.0);
  const bool golden_ok = std::abs(margin - kMsMarginGolden) <= err;
  return {margin > 10.0 * err && golden_ok,
          fmt("margin %.17g, combined error %.3g (x%.0f), golden %s", margin, err, margin / err, golden_ok ? "matches" : "MISMATCH")};
}

ConcentrationDemoParams lowp_params() {
  ConcentrationDemoParams cp;
  cp.mode = ConcentrationMode::lowp;
  cp.p = 1.5;
  cp.q = 1.2;
  cp.eps = 0.1;
  cp.target = make_set({{-0.4, -0.3}, {0.3, 0.4}});
  cp.n = 1 << 14;  // largest admissible n
  cp.N = 10;       // smallest N whose triangle fits inside (0.3, 0.4)
  cp.tail_budget = 0.01;
  cp.sign_eps = 1e-9;  // keep the best of the whole budget
  cp.sign_budget = 8;
  return cp;
}

Outcome lowp_concentration() {
  const ExperimentReport r = demo_strong_concentration(lowp_params(), 0, {16});
  const double ratio = r.find("ratio").value;
  const double min_coef = r.find("min_coefficient").value;
  return {ratio <= 0.1 && min_coef >= -1e-12,
          fmt("ratio %.4f (target 0.1) at n=16384, N=10; min coefficient %.3g", ratio, min_coef)};
}

Outcome khintchine_search() {
  const SignSearchResult s = sign_search(256, 1.0, 2.0, 0.5, 64, 0);
  return {s.found, fmt("%s after %d trials, ratio %.4f", s.found ? "found" : "not found", s.best.trials_used, s.best_ratio)};
}

WienerDemoParams wiener_params() {
  WienerDemoParams wp;
  wp.p = 2.5;
  wp.q = 2.0;
  wp.target = make_set({{-0.3, 0.3}});
  wp.K = 6;
  wp.series.alpha = 1;
  return wp;
}

Outcome wiener_truncation() {
  const ExperimentReport r = demo_wiener_failure(wiener_params(), 0, {16});
  int mass_fail = 0, gap_fail = 0;
  std::string masses;
  for (int k = 1; k <= 6; ++k) {
    const std::string kk = std::to_string(k);
    const Quantity& m = r.find("mass_on_E[" + kk + "]");
    const double thr = r.find("mass_threshold[" + kk + "]").value;
    if (!(m.value >= thr - m.error_bound)) ++mass_fail;
    if (r.find("min_gap[" + kk + "]").value < k) ++gap_fail;
    masses += fmt("%s%.3f/%.3f", masses.empty() ? "" : " ", m.value, thr);
  }
  const double comp = r.find("complement_mass").value;
  return {mass_fail == 0 && gap_fail == 0 && comp <= 2.0,
          fmt("mass/threshold %s; complement %.3f (<= 2); gap failures %d", masses.c_str(), comp, gap_fail)};
}

Outcome determinism() {
  std::vector<std::function<ExperimentReport()>> runs = {
      [] {
        ShapiroParams sp;
        sp.corpus_size = 100;
        return verify_shapiro(sp, 0, {16});
      },
      [] {
        ShapiroParams sp;
        sp.p = 4;
        sp.a = 0.1;
        sp.corpus_size = 100;
        return verify_shapiro(sp, 3, {16});
      },
      [] { return diophantine_concentration({}, {16}); },
      [] {
        ConcentrationDemoParams cp = lowp_params();
        cp.n = 2048;
        return demo_strong_concentration(cp, 0, {16});
      },
      [] {
        ConcentrationDemoParams cp;
        cp.mode = ConcentrationMode::highp;
        cp.p = 3.0;
        cp.q = 3.0;
        cp.depths = {0, 1};
        return demo_strong_concentration(cp, 0, {16});
      },
      [] { return demo_wiener_failure(wiener_params(), 0, {16}); },
  };
  int differing = 0;
  for (const auto& run : runs) {
    set_worker_threads(1);
    const std::string a = to_json(run());
    set_worker_threads(0);
    const std::string b = to_json(run());
    if (a != b) ++differing;
  }
  return {differing == 0, fmt("%d of %zu reports differ between a 1-thread and an all-thread rerun", differing, runs.size())};
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<Criterion> criteria = {
      {"parseval oracle", 10, parseval_oracle},
      {"even-power oracle", 30, even_power_oracle},
      {"even-p inequality on random corpus", 0, shapiro_inequality},
      {"sharpness of the even-p inequality", 10, shapiro_sharpness},
      {"concentration on the diophantine set", 10, diophantine_remark},
      {"majorant norm gap for j=3, p=3", 0, majorant_margin},
      {"low-p strong concentration", 60, lowp_concentration},
      {"Khintchine sign search", 0, khintchine_search},
      {"truncated gap series chain", 120, wiener_truncation},
      {"byte-identical reruns", 0, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2fs", secs);
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      timing += fmt(" > %.0fs limit", c.time_limit_s);
    }
    failed += !o.pass;
    std::printf("%-4s %2zu  %-38s %s [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, c.name.c_str(), o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return strict && failed ? 1 : 0;
}
