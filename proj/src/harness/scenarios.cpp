#include "artifact/harness/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "artifact/sensing.hpp"
#include "artifact/wpt.hpp"

namespace artifact::harness {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(0..count-1) across threads. Cells must be independent and write
// only their own slot, so the result is schedule-independent.
template <class F>
void parallel_cells(std::size_t count, int threads, F&& fn) {
  const std::size_t nthreads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  const double la = std::log10(lo), lb = std::log10(hi);
  for (int i = 0; i < count; ++i)
    out.push_back(std::pow(10.0, la + (lb - la) * i / (count - 1)));
  return out;
}

std::vector<int> draw_occupied(int I, int K, mathkit::Rng& rng) {
  std::vector<int> chosen;
  while (static_cast<int>(chosen.size()) < K) {
    const int c = std::min(I - 1, static_cast<int>(rng.uniform() * I));
    bool dup = false;
    for (int x : chosen) dup = dup || (x == c);
    if (!dup) chosen.push_back(c);
  }
  return chosen;
}

throughput::GridSteps grid_steps(const Config& cfg) {
  return {cfg.grid_dalpha, cfg.grid_dalpha, cfg.grid_dalpha, cfg.grid_dpt_db};
}

std::vector<std::string> opt_row(const throughput::OptResult& r,
                                 std::vector<std::string> prefix) {
  prefix.push_back(r.method);
  prefix.push_back(format_double(r.value));
  prefix.push_back(format_double(r.best.alpha1));
  prefix.push_back(format_double(r.best.beta));
  prefix.push_back(format_double(r.best.alpha2));
  prefix.push_back(format_double(watt_to_dbm(r.best.Pt)));
  prefix.push_back(std::to_string(r.evaluations));
  prefix.push_back(r.feasible ? "1" : "0");
  return prefix;
}

constexpr double kKappaSweep[] = {0.25, 0.5, 0.75, 1.0};

}  // namespace

ResultTable scenario_fig2(const Config& cfg) {
  ResultTable table({"lambda_p", "Ps_dbm", "d0_m", "p_out_analytic", "p_out_mc",
                     "mc_stderr"});
  const auto lambdas = log_spaced(1e-4, 1e-2, 10);
  const double ps_dbm[] = {0.0, 10.0};
  const double d0s[] = {1.0, 1.5};
  const int threads = resolve_threads(cfg.threads);
  std::uint64_t idx = 0;
  for (double ps : ps_dbm)
    for (double d0 : d0s)
      for (double lp : lambdas) {
        Config point = cfg;
        point.Ps_dbm = ps;
        point.d0_m = d0;
        point.lambda_p_per_m2 = lp;
        const auto params = point.wpt_params();
        const double mu = wpt::mu_coefficient(wpt::MuKind::s, params, point.frame(),
                                              point.thresholds());
        const double analytic = wpt::outage_closed_form(mu, params);
        const auto mc = wpt::outage_monte_carlo_mu(
            mu, params, cfg.trials, wpt::default_r_max(mu, params), cfg.base_seed,
            idx << 32, threads);
        table.add_row({lp, ps, d0, analytic, mc.estimate, mc.stderr_});
        ++idx;
      }
  return table;
}

ResultTable scenario_fig3(const Config& cfg) {
  ResultTable table({"snr_db", "kappa", "pf_analytic", "pf_empirical"});
  const double kappas[] = {1.0, 0.5, 0.25};
  std::vector<double> snrs;
  for (double s = -14.0; s <= -2.0 + 1e-9; s += 2.0) snrs.push_back(s);
  const int threads = resolve_threads(cfg.threads);
  std::uint64_t cell = 0;
  for (double snr_db : snrs)
    for (double kappa : kappas) {
      const double snr = std::pow(10.0, snr_db / 10.0);
      sensing::SpectrumScene scene;
      scene.I = cfg.I;
      scene.K = cfg.K;
      scene.n = cfg.n_window;
      scene.sigma2 = 1.0;
      scene.sigma_s2 = snr;
      const double n_eff = static_cast<double>(scene.n) / scene.I;
      const double analytic = sensing::pf_analytic(cfg.pd_target, snr, n_eff);

      const std::uint64_t trials = kappa >= 1.0 ? cfg.detection_trials
                                                : cfg.recovery_trials;
      const std::uint64_t stream_base = cell << 32;
      std::vector<std::uint64_t> fa(trials), idle(trials);
      parallel_cells(trials, threads, [&](std::size_t t) {
        mathkit::Rng rng(cfg.base_seed, stream_base + t);
        sensing::SpectrumScene sc = scene;
        sc.occupied = draw_occupied(sc.I, sc.K, rng);
        const auto flags = sensing::detect_trial(sc, kappa, cfg.pd_target, rng);
        std::uint64_t f = 0, n_idle = 0;
        for (int c = 0; c < sc.I; ++c) {
          bool occ = false;
          for (int x : sc.occupied) occ = occ || (x == c);
          if (occ) continue;
          ++n_idle;
          f += flags[c];
        }
        fa[t] = f;
        idle[t] = n_idle;
      });
      std::uint64_t f_tot = 0, idle_tot = 0;
      for (std::uint64_t t = 0; t < trials; ++t) {
        f_tot += fa[t];
        idle_tot += idle[t];
      }
      const double pf = idle_tot ? static_cast<double>(f_tot) / idle_tot : 0.0;
      table.add_row({snr_db, kappa, analytic, pf});
      ++cell;
    }
  return table;
}

ResultTable compare_optimizers(const Config& cfg, throughput::Variant variant) {
  ResultTable table({"alpha2_min", "method", "tau_opt", "alpha1_opt", "beta_opt",
                     "alpha2_opt", "pt_dbm_opt", "evaluations", "feasible"});
  const auto spec = cfg.problem_spec(variant);
  const std::string a2 = format_double(cfg.alpha2_min);
  table.add_row(opt_row(throughput::grid_search(spec, grid_steps(cfg)), {a2}));
  mathkit::Rng rng_r(cfg.base_seed, 0x72616e64);
  table.add_row(opt_row(throughput::random_sampling(spec, cfg.random_Z, rng_r), {a2}));
  mathkit::Rng rng_l(cfg.base_seed, 0x6c6f6361);
  const auto starts = throughput::random_starts(spec, cfg.local_starts, rng_l);
  table.add_row(
      opt_row(throughput::local_search(spec, starts, cfg.local_budget), {a2}));
  return table;
}

ResultTable scenario_fig4(const Config& cfg) {
  ResultTable table({"alpha2_min", "method", "tau_opt", "alpha1_opt", "beta_opt",
                     "alpha2_opt", "pt_dbm_opt", "evaluations", "feasible"});
  std::vector<double> sweep;
  for (double a = 0.05; a <= 0.30 + 1e-9; a += 0.05) sweep.push_back(a);
  std::vector<std::vector<std::vector<std::string>>> cells(sweep.size());
  parallel_cells(sweep.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    Config point = cfg;
    point.alpha2_min = sweep[i];
    const auto sub = compare_optimizers(point, throughput::Variant::P0);
    cells[i] = sub.rows();
  });
  for (const auto& rows : cells)
    for (const auto& r : rows) table.add_row(r);
  return table;
}

ResultTable scenario_fig5(const Config& cfg) {
  ResultTable table({"alpha2_min", "kappa", "tau_opt", "alpha1_opt", "beta_opt",
                     "alpha2_opt", "pt_dbm_opt"});
  std::vector<std::pair<double, double>> cells;
  for (double a = 0.05; a <= 0.30 + 1e-9; a += 0.05)
    for (double k : kKappaSweep) cells.emplace_back(a, k);
  std::vector<throughput::OptResult> results(cells.size());
  parallel_cells(cells.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    auto spec = cfg.problem_spec(throughput::Variant::P0);
    spec.alpha2_min = cells[i].first;
    spec.kappa = cells[i].second;
    results[i] = throughput::grid_search(spec, grid_steps(cfg));
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& r = results[i];
    table.add_row({cells[i].first, cells[i].second, r.value, r.best.alpha1,
                   r.best.beta, r.best.alpha2, watt_to_dbm(r.best.Pt)});
  }
  return table;
}

ResultTable scenario_fig6(const Config& cfg) {
  ResultTable table(
      {"lambda_p", "p_single", "p_active", "p_inactive", "p_average"});
  for (double lp : log_spaced(1e-4, 1e-2, 10)) {
    Config point = cfg;
    point.lambda_p_per_m2 = lp;
    const auto params = point.wpt_params();
    const auto frame = point.frame();
    const auto thr = point.thresholds();
    const double p_s = wpt::outage_closed_form(
        wpt::mu_coefficient(wpt::MuKind::s, params, frame, thr), params);
    const double p_t = wpt::outage_closed_form(
        wpt::mu_coefficient(wpt::MuKind::t, params, frame, thr), params);
    const double single = wpt::system_outage(p_s, p_t);
    const auto css = wpt::css_outage_profile(params, frame, thr, cfg.J, cfg.J1);
    table.add_row({lp, single, css.p_active, css.p_inactive, css.p_average});
  }
  return table;
}

ResultTable scenario_fig7(const Config& cfg) {
  ResultTable table({"J1", "kappa", "tau_per_su", "feasible"});
  std::vector<std::pair<int, double>> cells;
  for (int j1 = 10; j1 <= 50; j1 += 5)
    for (double k : kKappaSweep) cells.emplace_back(j1, k);
  std::vector<throughput::OptResult> results(cells.size());
  parallel_cells(cells.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    auto spec = cfg.problem_spec(throughput::Variant::P1);
    spec.J1 = cells[i].first;
    spec.kappa = cells[i].second;
    results[i] = throughput::grid_search(spec, grid_steps(cfg));
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& r = results[i];
    const double per_su = r.feasible ? r.value / cfg.J : 0.0;
    table.add_row({std::to_string(cells[i].first), format_double(cells[i].second),
                   format_double(per_su), r.feasible ? "1" : "0"});
  }
  return table;
}

ResultTable scenario_fig8(const Config& cfg) {
  ResultTable table({"alpha2_min", "kappa", "tau_per_su", "feasible"});
  std::vector<std::pair<double, double>> cells;
  for (double a = 0.05; a <= 0.30 + 1e-9; a += 0.05)
    for (double k : kKappaSweep) cells.emplace_back(a, k);
  std::vector<throughput::OptResult> results(cells.size());
  parallel_cells(cells.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    auto spec = cfg.problem_spec(throughput::Variant::P1);
    spec.alpha2_min = cells[i].first;
    spec.kappa = cells[i].second;
    results[i] = throughput::grid_search(spec, grid_steps(cfg));
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& r = results[i];
    const double per_su = r.feasible ? r.value / cfg.J : 0.0;
    table.add_row({format_double(cells[i].first), format_double(cells[i].second),
                   format_double(per_su), r.feasible ? "1" : "0"});
  }
  return table;
}

ResultTable run_scenario(const Config& cfg) {
  if (cfg.scenario == "fig2") return scenario_fig2(cfg);
  if (cfg.scenario == "fig3") return scenario_fig3(cfg);
  if (cfg.scenario == "fig4") return scenario_fig4(cfg);
  if (cfg.scenario == "fig5") return scenario_fig5(cfg);
  if (cfg.scenario == "fig6") return scenario_fig6(cfg);
  if (cfg.scenario == "fig7") return scenario_fig7(cfg);
  if (cfg.scenario == "fig8") return scenario_fig8(cfg);
  throw std::runtime_error("unknown scenario '" + cfg.scenario +
                           "' (expected fig2..fig8)");
}

}  // namespace artifact::harness
