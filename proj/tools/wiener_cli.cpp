// wiener: command-line driver for the positive definite counterexample experiments.
//
//   wiener verify-shapiro --p 2 --a 0.25
//   wiener demo-conc --mode lowp --p 1.5 --q 1.2 --eps 0.1 --n 4096 --N 10
//   wiener demo-wiener --p 2.5 --q 2 --set "-0.3,0.3" --K 6 --alpha 1
//   wiener construct shapiro --n 4096 --k 4 --out f.json
//   wiener norm --poly f.json --p 3 --set "0.3,0.4;-0.4,-0.3"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wiener/wiener.hpp"

namespace {

using namespace wiener;

struct Globals {
  std::uint64_t seed = 0;
  std::int64_t oversample = 16;
  unsigned threads = 0;
  std::string csv;
  bool timing = false;
};

int emit(const Globals& g, ExperimentReport r, double elapsed_ms) {
  if (g.timing) r.runtime_ms = elapsed_ms;
  write_json(std::cout, r);
  if (!g.csv.empty()) {
    std::ofstream os(g.csv);
    if (!os) throw std::runtime_error("cannot write " + g.csv);
    write_csv(os, r);
  }
  return r.all_pass() ? 0 : 1;
}

int timed(const Globals& g, const std::function<ExperimentReport()>& run) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r = run();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return emit(g, std::move(r), ms);
}

/// Construction record: parameters plus spectrum flags, saved next to the polynomial.
ExperimentReport construction_record(const std::string& name, const TrigPoly& f) {
  ExperimentReport r;
  r.experiment_id = "construct_" + name;
  const SpectrumReport sr = classify(f);
  r.quantity("degree", static_cast<double>(sr.degree));
  r.quantity("support_size", static_cast<double>(sr.support_size));
  r.quantity("min_gap", static_cast<double>(sr.min_gap));
  r.quantity("min_coefficient", f.is_zero() ? 0.0 : min_real_coefficient(f));
  r.quantity("is_positive_definite", sr.is_positive_definite ? 1.0 : 0.0);
  r.quantity("is_idempotent", sr.is_idempotent ? 1.0 : 0.0);
  return r;
}

void save_with_sidecar(const std::string& path, const TrigPoly& f, const ExperimentReport& record) {
  save_poly(path, f);
  std::ofstream os(path + ".sidecar.json");
  if (!os) throw std::runtime_error("cannot write " + path + ".sidecar.json");
  write_json(os, record);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive definite counterexamples to Wiener's L^p property"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--oversample", g.oversample, "quadrature oversampling factor")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "worker threads (0 = all); never changes results");
  app.add_option("--csv", g.csv, "also write quantities and verdicts as CSV");
  app.add_flag("--timing", g.timing, "include runtime_ms in the report (breaks byte-identity)");

  std::function<int()> action;

  // verify-shapiro
  ShapiroParams sp;
  std::optional<std::string> dioph;
  DiophantineParams dp;
  auto* vs = app.add_subcommand("verify-shapiro", "even-p inequality on a random corpus plus the sharpness sweep");
  vs->add_option("--p", sp.p)->capture_default_str();
  vs->add_option("--a", sp.a)->capture_default_str();
  vs->add_option("--corpus", sp.corpus_size)->capture_default_str();
  vs->add_option("--degree-cap", sp.degree_cap)->capture_default_str();
  vs->add_option("--k", sp.k, "sharpness k (default: largest k with a < 1/k)");
  vs->add_option("--sweep", sp.sweep, "sharpness n values")->capture_default_str();
  vs->add_option("--tolerance", sp.sharpness_tolerance)->capture_default_str();
  vs->add_option("--dioph", dioph, "run the diophantine variant instead: L,l_max,exponent");
  vs->add_option("--dioph-n", dp.n)->capture_default_str();
  vs->add_option("--dioph-l", dp.l)->capture_default_str();
  vs->add_option("--dioph-tolerance", dp.tolerance)->capture_default_str();
  vs->callback([&] {
    action = [&] {
      if (dioph) {
        const auto parts = detail::split(*dioph, ',');
        if (parts.size() != 3) throw CLI::ValidationError("--dioph", "expected L,l_max,exponent");
        dp.min_denominator = std::stoll(parts[0]);
        dp.max_denominator = std::stoll(parts[1]);
        dp.radius_exponent = std::stoi(parts[2]);
        dp.p = sp.p;
        return timed(g, [&] { return diophantine_concentration(dp, {g.oversample}); });
      }
      return timed(g, [&] { return verify_shapiro(sp, g.seed, {g.oversample}); });
    };
  });

  // demo-conc
  ConcentrationDemoParams cp;
  std::string mode = "lowp", conc_set;
  auto* dc = app.add_subcommand("demo-conc", "strong concentration of a positive definite polynomial on E");
  dc->add_option("--mode", mode)->check(CLI::IsMember({"lowp", "highp"}))->capture_default_str();
  dc->add_option("--p", cp.p)->capture_default_str();
  dc->add_option("--q", cp.q)->capture_default_str();
  dc->add_option("--eps", cp.eps)->capture_default_str();
  dc->add_option("--set", conc_set, "target set E");
  dc->add_option("--N", cp.N)->capture_default_str();
  dc->add_option("--tail-budget", cp.tail_budget)->capture_default_str();
  dc->add_option("--n", cp.n, "lowp: sign polynomial length n + 1")->capture_default_str();
  dc->add_option("--sign-eps", cp.sign_eps)->capture_default_str();
  dc->add_option("--budget", cp.sign_budget, "lowp: sign search trials")->capture_default_str();
  dc->add_option("--j", cp.j, "highp: odd base frequency")->capture_default_str();
  dc->add_option("--K", cp.depths, "highp: Riesz depths")->capture_default_str();
  dc->add_option("--growth", cp.growth)->capture_default_str();
  dc->callback([&] {
    action = [&] {
      cp.mode = mode == "lowp" ? ConcentrationMode::lowp : ConcentrationMode::highp;
      if (!conc_set.empty()) cp.target = parse_set(conc_set);
      return timed(g, [&] { return demo_strong_concentration(cp, g.seed, {g.oversample}); });
    };
  });

  // demo-wiener
  WienerDemoParams wp;
  std::string wiener_set, builder = "highp";
  auto* dw = app.add_subcommand("demo-wiener", "truncated gap series: large on E, bounded off E");
  dw->add_option("--p", wp.p)->capture_default_str();
  dw->add_option("--q", wp.q)->capture_default_str();
  dw->add_option("--set", wiener_set, "target set E");
  dw->add_option("--K", wp.K)->capture_default_str();
  dw->add_option("--alpha", wp.series.alpha, "measure decay exponent (0 = default)")->capture_default_str();
  dw->add_option("--builder", builder)->check(CLI::IsMember({"lowp", "highp"}))->capture_default_str();
  dw->add_option("--tail-budget", wp.series.tail_budget)->capture_default_str();
  dw->add_option("--riesz-K", wp.series.riesz_K)->capture_default_str();
  dw->add_option("--complement-bound", wp.complement_bound)->capture_default_str();
  dw->callback([&] {
    action = [&] {
      wp.series.builder = builder == "lowp" ? ConcentratorKind::lowp : ConcentratorKind::highp;
      if (!wiener_set.empty()) wp.target = parse_set(wiener_set);
      return timed(g, [&] { return demo_wiener_failure(wp, g.seed, {g.oversample}); });
    };
  });

  // construct
  auto* cons = app.add_subcommand("construct", "build a polynomial and write it to a file");
  cons->require_subcommand(1);
  std::string out, out_majorant;
  std::int64_t n = 256, k = 4, big_n = 10, j = 3, growth = kDefaultRieszGrowth;
  int depth = 0, budget = 64, gs_k = 3, alpha = 0;
  double a = 0.35, p = 1.5, q = 1.2, eps = 1.0, tail = 0.01;
  std::string gs_set = "-0.3,0.3", gs_builder = "highp";

  auto* c_sh = cons->add_subcommand("shapiro", "D_n * mu_k");
  c_sh->add_option("--n", n)->capture_default_str();
  c_sh->add_option("--k", k)->capture_default_str();
  c_sh->add_option("--out", out)->required();
  c_sh->callback([&] {
    action = [&] {
      const TrigPoly f = shapiro_counterexample(n, k);
      ExperimentReport rec = construction_record("shapiro", f);
      rec.param("n", n);
      rec.param("k", k);
      save_with_sidecar(out, f, rec);
      return emit(g, rec, 0.0);
    };
  });

  auto* c_lp = cons->add_subcommand("lowp", "low-exponent concentrator");
  c_lp->add_option("--n", n)->capture_default_str();
  c_lp->add_option("--N", big_n)->capture_default_str();
  c_lp->add_option("--a", a)->capture_default_str();
  c_lp->add_option("--p", p)->capture_default_str();
  c_lp->add_option("--q", q)->capture_default_str();
  c_lp->add_option("--eps", eps, "sign search target")->capture_default_str();
  c_lp->add_option("--budget", budget)->capture_default_str();
  c_lp->add_option("--tail-budget", tail)->capture_default_str();
  c_lp->add_option("--out", out)->required();
  c_lp->callback([&] {
    action = [&] {
      const SignSearchResult s = sign_search(n, p, q, eps, budget, g.seed, {g.oversample});
      const TrigPoly f = lowp_concentrator({n, big_n, a, p, q, eps}, s.best, tail);
      ExperimentReport rec = construction_record("lowp", f);
      rec.seed = g.seed;
      rec.param("n", n);
      rec.param("N", big_n);
      rec.param("a", a);
      rec.param("p", p);
      rec.param("q", q);
      rec.param("eps", eps);
      rec.param("tail_budget", tail);
      rec.quantity("sign_ratio", s.best_ratio);
      rec.quantity("sign_trials", s.best.trials_used);
      rec.quantity("sign_found", s.found ? 1.0 : 0.0);
      save_with_sidecar(out, f, rec);
      return emit(g, rec, 0.0);
    };
  });

  auto write_pair = [&](const std::string& name, const PolyPair& pr, ExperimentReport rec) {
    rec.experiment_id = "construct_" + name;
    const SampledPoly sg(pr.g, QuadratureOptions{g.oversample});
    const SampledPoly sG(pr.G, QuadratureOptions{g.oversample});
    rec.quantity("g_support_size", static_cast<double>(pr.g.support_size()));
    rec.quantity("G_is_positive_definite", classify(pr.G).is_positive_definite ? 1.0 : 0.0);
    rec.quantity("norm_ratio_p", lp_norm(sG.lp_integral(p, SymmetricSet::torus())) / lp_norm(sg.lp_integral(p, SymmetricSet::torus())));
    save_with_sidecar(out, pr.g, rec);
    if (!out_majorant.empty()) save_poly(out_majorant, pr.G);
    return emit(g, rec, 0.0);
  };

  auto* c_ms = cons->add_subcommand("ms", "base pair g0, G0");
  c_ms->add_option("--j", j)->capture_default_str();
  c_ms->add_option("--p", p, "exponent for the reported norm ratio")->capture_default_str();
  c_ms->add_option("--out", out)->required();
  c_ms->add_option("--out-majorant", out_majorant);
  c_ms->callback([&] {
    action = [&] {
      const PolyPair pr = ms_pair(j);
      ExperimentReport rec = construction_record("ms", pr.g);
      rec.param("j", j);
      rec.param("p", p);
      return write_pair("ms", pr, rec);
    };
  });

  auto* c_rz = cons->add_subcommand("riesz", "Riesz products of the base pair");
  c_rz->add_option("--j", j)->capture_default_str();
  c_rz->add_option("--K", depth)->capture_default_str();
  c_rz->add_option("--growth", growth)->capture_default_str();
  c_rz->add_option("--p", p, "exponent for the reported norm ratio")->capture_default_str();
  c_rz->add_option("--out", out)->required();
  c_rz->add_option("--out-majorant", out_majorant);
  c_rz->callback([&] {
    action = [&] {
      const PolyPair pr = riesz_pair(j, depth, growth);
      ExperimentReport rec = construction_record("riesz", pr.g);
      rec.param("j", j);
      rec.param("K", std::int64_t{depth});
      rec.param("growth", growth);
      rec.param("p", p);
      return write_pair("riesz", pr, rec);
    };
  });

  auto* c_gs = cons->add_subcommand("gapseries", "assembled gap series");
  c_gs->add_option("--set", gs_set)->capture_default_str();
  c_gs->add_option("--K", gs_k)->capture_default_str();
  c_gs->add_option("--p", p)->capture_default_str();
  c_gs->add_option("--q", q)->capture_default_str();
  c_gs->add_option("--alpha", alpha)->capture_default_str();
  c_gs->add_option("--builder", gs_builder)->check(CLI::IsMember({"lowp", "highp"}))->capture_default_str();
  c_gs->add_option("--out", out)->required();
  c_gs->callback([&] {
    action = [&] {
      GapSeriesOptions opts;
      opts.alpha = alpha;
      opts.builder = gs_builder == "lowp" ? ConcentratorKind::lowp : ConcentratorKind::highp;
      opts.quad = {g.oversample};
      const GapSeries gs = gap_series(parse_set(gs_set), gs_k, p, q, g.seed, opts);
      ExperimentReport rec = construction_record("gapseries", gs.assembled);
      rec.seed = g.seed;
      rec.param("set", gs_set);
      rec.param("K", std::int64_t{gs_k});
      rec.param("p", p);
      rec.param("q", q);
      rec.param("alpha", std::int64_t{gs.alpha});
      rec.param("builder", gs_builder);
      for (std::size_t b = 0; b < gs.blocks.size(); ++b) {
        const auto kb = static_cast<std::int64_t>(b + 1);
        rec.quantity(detail::indexed("N", kb), static_cast<double>(gs.blocks[b].N));
        rec.quantity(detail::indexed("modulation", kb), static_cast<double>(gs.blocks[b].modulation));
        rec.quantity(detail::indexed("E_lo", kb), gs.blocks[b].interval.lo);
        rec.quantity(detail::indexed("E_hi", kb), gs.blocks[b].interval.hi);
      }
      save_with_sidecar(out, gs.assembled, rec);
      return emit(g, rec, 0.0);
    };
  });

  // norm
  std::string poly_path, norm_set = "torus";
  double norm_p = 2.0;
  auto* nm = app.add_subcommand("norm", "integral of |f|^p over a set");
  nm->add_option("--poly", poly_path)->required();
  nm->add_option("--p", norm_p)->capture_default_str();
  nm->add_option("--set", norm_set)->capture_default_str();
  nm->callback([&] {
    action = [&] {
      const NormResult res = lp_integral(load_poly(poly_path), norm_p, parse_set(norm_set), {g.oversample});
      std::cout << "{\"value\": " << detail::format_double(res.value)
                << ", \"error_bound\": " << detail::format_double(res.error_bound) << ", \"grid_size\": " << res.grid_size
                << ", \"p\": " << detail::format_double(res.p) << "}\n";
      return 0;
    };
  });

  for (CLI::App* sub : {vs, dc, dw, cons, nm}) sub->fallthrough();
  for (CLI::App* sub : {c_sh, c_lp, c_ms, c_rz, c_gs}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    set_worker_threads(g.threads);
    return action ? action() : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
