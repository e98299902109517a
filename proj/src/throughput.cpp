#include "artifact/throughput.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace artifact::throughput {

namespace {

constexpr double kEps = 1e-12;

wpt::FrameSplit frame_of(const DesignTuple& d, const ProblemSpec& spec) {
  wpt::FrameSplit f;
  f.alpha1 = d.alpha1;
  f.beta = d.beta;
  f.alpha2 = d.alpha2;
  f.kappa = spec.kappa;
  f.T = spec.T;
  return f;
}

wpt::PowerThresholds thr_of(const DesignTuple& d, const ProblemSpec& spec) {
  wpt::PowerThresholds t = spec.thr;
  t.Pt = d.Pt;
  return t;
}

bool tuple_less(const DesignTuple& a, const DesignTuple& b) {
  if (a.alpha1 != b.alpha1) return a.alpha1 < b.alpha1;
  if (a.beta != b.beta) return a.beta < b.beta;
  if (a.alpha2 != b.alpha2) return a.alpha2 < b.alpha2;
  return a.Pt < b.Pt;
}

}  // namespace

double ProblemSpec::beta_lower() const {
  const double denom = kappa * T * thr.Ps;
  if (variant == Variant::P0) {
    const double K_eff = static_cast<double>(K) * n_nom / I;  // bin-level sparsity
    const double bound = completion::cs_sample_bound(n_nom, K_eff, sense.C_cs);
    return sense.e_s * bound / denom;
  }
  const auto mc =
      completion::mc_sample_bound(n_nom, J, K, C_mc, mc_mode, mc_ratio);
  return sense.e_s * mc.bound / (denom * J1);
}

double tau_transmission(double Pt, double N0) {
  if (N0 <= 0.0) throw std::domain_error("tau_transmission: N0 <= 0");
  if (Pt < 0.0) throw std::domain_error("tau_transmission: Pt < 0");
  return std::log2(1.0 + Pt / N0);
}

double tau_cs(const DesignTuple& d, const ProblemSpec& spec) {
  auto f = feasible(d, spec);
  if (!f.ok) throw std::domain_error("tau_cs: infeasible design: " + f.violated.front());
  const auto frame = frame_of(d, spec);
  const double tt = frame.transmit_fraction();
  if (tt <= 0.0 || d.alpha1 <= 0.0) return 0.0;  // no transmission / certain sensing outage
  const auto thr = thr_of(d, spec);
  const double mu_s = wpt::mu_coefficient(wpt::MuKind::s, spec.wpt_params, frame, thr);
  const double mu_t = wpt::mu_coefficient(wpt::MuKind::t, spec.wpt_params, frame, thr);
  const double n = static_cast<double>(
      sensing::sample_count(d.beta, spec.T, spec.thr.Ps, spec.sense.e_s));
  const double pf = sensing::pf_analytic(spec.sense.Pd_target, spec.snr, n);
  return (1.0 - wpt::outage_closed_form(mu_s, spec.wpt_params)) *
         (1.0 - wpt::outage_closed_form(mu_t, spec.wpt_params)) * (1.0 - pf) * tt *
         tau_transmission(d.Pt, spec.thr.N0);
}

double tau_mc(const DesignTuple& d, const ProblemSpec& spec) {
  auto f = feasible(d, spec);
  if (!f.ok) throw std::domain_error("tau_mc: infeasible design: " + f.violated.front());
  const auto frame = frame_of(d, spec);
  const double tt = frame.transmit_fraction();
  if (tt <= 0.0) return 0.0;
  const auto thr = thr_of(d, spec);
  const double mu_a = wpt::mu_coefficient(wpt::MuKind::a, spec.wpt_params, frame, thr);
  const double mu_i = wpt::mu_coefficient(wpt::MuKind::i, spec.wpt_params, frame, thr);
  const double n = static_cast<double>(
      sensing::sample_count(d.beta, spec.T, spec.thr.Ps, spec.sense.e_s));
  const double qf = sensing::qf_analytic(spec.sense.Pd_target, spec.snr, n, spec.J);
  const double active = spec.J1 * (1.0 - wpt::outage_closed_form(mu_a, spec.wpt_params));
  const double inactive =
      (spec.J - spec.J1) * (1.0 - wpt::outage_closed_form(mu_i, spec.wpt_params));
  return (active + inactive) * (1.0 - qf) * tt * tau_transmission(d.Pt, spec.thr.N0);
}

double objective(const DesignTuple& d, const ProblemSpec& spec) {
  return spec.variant == Variant::P0 ? tau_cs(d, spec) : tau_mc(d, spec);
}

Feasibility feasible(const DesignTuple& d, const ProblemSpec& spec) {
  Feasibility f;
  if (d.alpha1 < -kEps || d.alpha1 > 1.0 + kEps) f.violated.push_back("C1");
  const double bl = spec.beta_lower();
  if (d.beta < bl - kEps || d.beta > 1.0 + kEps)
    f.violated.push_back(spec.variant == Variant::P0 ? "C2" : "C6");
  if (d.alpha2 < spec.alpha2_min - kEps || d.alpha2 > 1.0 + kEps)
    f.violated.push_back("C3");
  const double tt = 1.0 - d.alpha1 - spec.kappa * d.beta - d.alpha2;
  if (tt < -kEps || tt > 1.0 + kEps) f.violated.push_back("C4");
  if (d.Pt < spec.thr.Pt_min - kEps || d.Pt > spec.thr.Pt_max + kEps)
    f.violated.push_back("C5");
  f.ok = f.violated.empty();
  return f;
}

OptResult grid_search(const ProblemSpec& spec, const GridSteps& steps) {
  if (steps.d_alpha1 <= 0.0 || steps.d_beta <= 0.0 || steps.d_alpha2 <= 0.0 ||
      steps.d_pt_db <= 0.0)
    throw std::domain_error("grid_search: steps must be positive");
  OptResult out;
  out.method = "grid";
  const double bl = spec.beta_lower();
  if (bl > 1.0) return out;  // empty feasible lattice
  const double pt_min_db = 10.0 * std::log10(spec.thr.Pt_min * 1e3);
  const double pt_max_db = 10.0 * std::log10(spec.thr.Pt_max * 1e3);

  std::vector<double> betas;
  for (double b = std::ceil((bl - kEps) / steps.d_beta) * steps.d_beta; b <= 1.0 + kEps;
       b += steps.d_beta)
    betas.push_back(std::max(b, bl));
  std::vector<double> pts;
  for (double p = pt_min_db; p <= pt_max_db + kEps; p += steps.d_pt_db)
    pts.push_back(1e-3 * std::pow(10.0, p / 10.0));

  for (double b : betas) {
    for (double a1 = 0.0; a1 <= 1.0 + kEps; a1 += steps.d_alpha1) {
      if (a1 + spec.kappa * b > 1.0 + kEps) break;
      for (double a2 = spec.alpha2_min; a2 <= 1.0 + kEps; a2 += steps.d_alpha2) {
        if (a1 + spec.kappa * b + a2 > 1.0 + kEps) break;
        for (double pt : pts) {
          DesignTuple d{a1, b, a2, pt};
          ++out.evaluations;
          const double v = objective(d, spec);
          if (!out.feasible || v > out.value) {
            out.value = v;
            out.best = d;
            out.feasible = true;
          } else if (v == out.value && tuple_less(d, out.best)) {
            out.best = d;
          }
        }
      }
    }
  }
  return out;
}

std::vector<DesignTuple> random_starts(const ProblemSpec& spec, int count,
                                       mathkit::Rng& rng) {
  std::vector<DesignTuple> starts;
  const double bl = spec.beta_lower();
  int guard = 0;
  while (static_cast<int>(starts.size()) < count && guard < count * 10000) {
    ++guard;
    DesignTuple d;
    d.alpha1 = rng.uniform();
    d.beta = rng.uniform();
    d.alpha2 = rng.uniform();
    d.Pt = spec.thr.Pt_min + rng.uniform() * (spec.thr.Pt_max - spec.thr.Pt_min);
    if (d.beta < bl) continue;
    if (feasible(d, spec).ok) starts.push_back(d);
  }
  return starts;
}

OptResult random_sampling(const ProblemSpec& spec, std::uint64_t Z,
                          mathkit::Rng& rng) {
  if (Z < 1) throw std::domain_error("random_sampling: Z < 1");
  OptResult out;
  out.method = "random";
  for (std::uint64_t z = 0; z < Z; ++z) {
    DesignTuple d;
    d.alpha1 = rng.uniform();
    d.beta = rng.uniform();
    d.alpha2 = rng.uniform();
    d.Pt = spec.thr.Pt_min + rng.uniform() * (spec.thr.Pt_max - spec.thr.Pt_min);
    if (!feasible(d, spec).ok) continue;
    ++out.evaluations;
    const double v = objective(d, spec);
    if (!out.feasible || v > out.value) {
      out.value = v;
      out.best = d;
      out.feasible = true;
    }
  }
  return out;
}

namespace {

// Penalized objective for the simplex: clamp box variables, penalize C4.
double penalized(DesignTuple d, const ProblemSpec& spec, const double bl) {
  d.alpha1 = std::clamp(d.alpha1, 0.0, 1.0);
  d.beta = std::clamp(d.beta, bl, 1.0);
  d.alpha2 = std::clamp(d.alpha2, spec.alpha2_min, 1.0);
  d.Pt = std::clamp(d.Pt, spec.thr.Pt_min, spec.thr.Pt_max);
  const double tt = 1.0 - d.alpha1 - spec.kappa * d.beta - d.alpha2;
  if (tt < 0.0) return -1e6 * (1.0 - tt);
  return objective(d, spec);
}

DesignTuple clamp_tuple(DesignTuple d, const ProblemSpec& spec, const double bl) {
  d.alpha1 = std::clamp(d.alpha1, 0.0, 1.0);
  d.beta = std::clamp(d.beta, bl, 1.0);
  d.alpha2 = std::clamp(d.alpha2, spec.alpha2_min, 1.0);
  d.Pt = std::clamp(d.Pt, spec.thr.Pt_min, spec.thr.Pt_max);
  return d;
}

}  // namespace

OptResult local_search(const ProblemSpec& spec,
                       const std::vector<DesignTuple>& starts, int budget) {
  OptResult out;
  out.method = "local";
  const double bl = spec.beta_lower();
  if (bl > 1.0) return out;
  using V4 = std::array<double, 4>;
  auto to_v = [](const DesignTuple& d) { return V4{d.alpha1, d.beta, d.alpha2, d.Pt}; };
  auto to_d = [](const V4& v) { return DesignTuple{v[0], v[1], v[2], v[3]}; };

  for (const auto& start : starts) {
    if (!feasible(start, spec).ok) continue;
    const double start_value = objective(start, spec);
    // Nelder-Mead simplex seeded at the start point
    std::vector<V4> simplex;
    std::vector<double> fv;
    simplex.push_back(to_v(start));
    const double hs[4] = {0.05, 0.05, 0.05,
                          0.1 * (spec.thr.Pt_max - spec.thr.Pt_min)};
    for (int i = 0; i < 4; ++i) {
      V4 v = to_v(start);
      v[i] += hs[i];
      simplex.push_back(v);
    }
    std::uint64_t evals = 0;
    for (auto& v : simplex) {
      fv.push_back(penalized(to_d(v), spec, bl));
      ++evals;
    }
    while (evals < static_cast<std::uint64_t>(budget)) {
      // order: best first
      std::vector<int> ord{0, 1, 2, 3, 4};
      std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fv[a] > fv[b]; });
      std::vector<V4> sx;
      std::vector<double> sf;
      for (int i : ord) {
        sx.push_back(simplex[i]);
        sf.push_back(fv[i]);
      }
      simplex = sx;
      fv = sf;
      V4 centroid{0, 0, 0, 0};
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) centroid[k] += simplex[i][k] / 4.0;
      auto mix = [&](double t) {
        V4 v;
        for (int k = 0; k < 4; ++k)
          v[k] = centroid[k] + t * (simplex[4][k] - centroid[k]);
        return v;
      };
      V4 xr = mix(-1.0);
      double fr = penalized(to_d(xr), spec, bl);
      ++evals;
      if (fr > fv[0]) {
        V4 xe = mix(-2.0);
        double fe = penalized(to_d(xe), spec, bl);
        ++evals;
        if (fe > fr) {
          simplex[4] = xe;
          fv[4] = fe;
        } else {
          simplex[4] = xr;
          fv[4] = fr;
        }
      } else if (fr > fv[3]) {
        simplex[4] = xr;
        fv[4] = fr;
      } else {
        V4 xc = mix(0.5);
        double fc = penalized(to_d(xc), spec, bl);
        ++evals;
        if (fc > fv[4]) {
          simplex[4] = xc;
          fv[4] = fc;
        } else {
          for (int i = 1; i < 5; ++i) {
            for (int k = 0; k < 4; ++k)
              simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
            fv[i] = penalized(to_d(simplex[i]), spec, bl);
            ++evals;
          }
        }
      }
    }
    int bi = 0;
    for (int i = 1; i < 5; ++i)
      if (fv[i] > fv[bi]) bi = i;
    DesignTuple cand = clamp_tuple(to_d(simplex[bi]), spec, bl);
    double cand_value =
        feasible(cand, spec).ok ? objective(cand, spec) : -1.0;
    // improvement-only contract: never report worse than the start
    if (cand_value < start_value) {
      cand = start;
      cand_value = start_value;
    }
    out.evaluations += evals;
    if (!out.feasible || cand_value > out.value) {
      out.value = cand_value;
      out.best = cand;
      out.feasible = true;
    }
  }
  return out;
}

}  // namespace artifact::throughput
