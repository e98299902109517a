#include "artifact/wpt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace artifact::wpt {

using mathkit::Rng;

void WptParams::validate() const {
  if (lambda_p < 0.0) throw std::domain_error("WptParams: lambda_p < 0");
  if (M < 1) throw std::domain_error("WptParams: M < 1");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("WptParams: eta out of (0,1]");
  if (xi < 2.0) throw std::domain_error("WptParams: xi < 2");
  if (d0 < 1.0) throw std::domain_error("WptParams: d0 < 1");
}

void FrameSplit::validate() const {
  if (alpha1 < 0.0 || beta < 0.0 || alpha2 < 0.0)
    throw std::domain_error("FrameSplit: negative fraction");
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw std::domain_error("FrameSplit: kappa out of (0,1]");
  if (alpha1 + kappa * beta + alpha2 > 1.0 + 1e-12)
    throw std::domain_error("FrameSplit: alpha1 + kappa*beta + alpha2 > 1");
  if (T <= 0.0) throw std::domain_error("FrameSplit: T <= 0");
}

PbDraw sample_pb_field(const WptParams& params, double r_max, Rng& rng) {
  if (r_max <= params.d0)
    throw std::domain_error("sample_pb_field: r_max must exceed d0");
  const double area = M_PI * (r_max * r_max - params.d0 * params.d0);
  const std::uint64_t count = mathkit::sample_poisson(params.lambda_p * area, rng);
  PbDraw draw;
  draw.pbs.reserve(count);
  const double d0sq = params.d0 * params.d0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double u = rng.uniform();
    const double r = std::sqrt(d0sq + u * (r_max * r_max - d0sq));
    const double g = mathkit::sample_channel_gain(params.M, rng);
    draw.pbs.emplace_back(r, g);
  }
  return draw;
}

double best_effective_gain(const PbDraw& draw, const WptParams& params) {
  double best = 0.0;
  for (const auto& [d, g] : draw.pbs)
    best = std::max(best, g * params.A * std::pow(d, -params.xi));
  return best;
}

SlotPowers slot_powers(double G, const WptParams& params, const FrameSplit& frame,
                       const PowerThresholds& thr) {
  frame.validate();
  const double kb = frame.kappa * frame.beta;
  const double tt = frame.transmit_fraction();
  if (kb <= 0.0) throw std::domain_error("slot_powers: kappa*beta must be > 0");
  if (tt <= 0.0) throw std::domain_error("slot_powers: degenerate frame, no transmission slot");
  const double harv = G * params.eta * params.Pp;
  SlotPowers out;
  out.P_H1 = harv * frame.alpha1 / kb;
  out.P_T2 = std::max(0.0, (harv * (frame.alpha1 + frame.alpha2) - thr.Ps * kb) / tt);
  out.P_H3 = harv * (frame.alpha1 + kb + frame.alpha2) / tt;
  return out;
}

double mu_coefficient(MuKind kind, const WptParams& params, const FrameSplit& frame,
                      const PowerThresholds& thr) {
  const double kb = frame.kappa * frame.beta;
  const double tt = frame.transmit_fraction();
  const double epa = params.eta * params.Pp * params.A;
  switch (kind) {
    case MuKind::s:
      if (frame.alpha1 <= 0.0)
        throw std::domain_error("mu_coefficient: alpha1 must be > 0 for kind s");
      return kb * thr.Ps / (epa * frame.alpha1);
    case MuKind::t:
    case MuKind::a:
      if (frame.alpha1 + frame.alpha2 <= 0.0)
        throw std::domain_error("mu_coefficient: alpha1 + alpha2 must be > 0");
      return (thr.Pt * tt + thr.Ps * kb) / (epa * (frame.alpha1 + frame.alpha2));
    case MuKind::i:
      if (frame.alpha1 + kb + frame.alpha2 <= 0.0)
        throw std::domain_error("mu_coefficient: harvest window must be > 0");
      return thr.Pt * tt / (epa * (frame.alpha1 + kb + frame.alpha2));
  }
  throw std::logic_error("mu_coefficient: unknown kind");
}

double outage_closed_form(double mu, const WptParams& params) {
  if (mu < 0.0) throw std::domain_error("outage_closed_form: mu < 0");
  if (mu == 0.0) return 0.0;
  if (params.lambda_p == 0.0) return 1.0;
  const double delta = params.delta();
  const double z = mu * std::pow(params.d0, params.xi);
  const double sum = mathkit::upper_gamma_sum(params.M, delta, z);
  const double expo = -M_PI * params.lambda_p * delta / std::pow(mu, delta) * sum;
  return std::exp(expo);
}

double default_r_max(double mu, const WptParams& params) {
  if (mu <= 0.0) return 1e4;
  return std::min(10.0 * std::pow(params.M / mu, 1.0 / params.xi), 1e4);
}

McEstimate outage_monte_carlo_mu(double mu, const WptParams& params,
                                 std::uint64_t trials, double r_max,
                                 std::uint64_t base_seed,
                                 std::uint64_t stream_base, int threads) {
  if (trials < 1) throw std::domain_error("outage_monte_carlo: trials < 1");
  if (params.lambda_p == 0.0) return {1.0, 0.0};
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  const double d0sq = params.d0 * params.d0;
  const double area = M_PI * (r_max * r_max - d0sq);
  const double mean_count = params.lambda_p * area;

  auto run_block = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
    std::uint64_t fails = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Rng rng(base_seed, stream_base + t);
      const std::uint64_t count = mathkit::sample_poisson(mean_count, rng);
      bool ok = false;
      for (std::uint64_t i = 0; i < count; ++i) {
        const double u = rng.uniform();
        const double r = std::sqrt(d0sq + u * (r_max * r_max - d0sq));
        const double g = mathkit::sample_channel_gain(params.M, rng);
        if (g >= mu * std::pow(r, params.xi)) {
          ok = true;
          break;  // trial-local stream, safe to stop early
        }
      }
      if (!ok) ++fails;
    }
    return fails;
  };

  std::uint64_t fails = 0;
  if (threads == 1 || trials < 1000) {
    fails = run_block(0, trials);
  } else {
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, w, lo, hi] { partial[w] = run_block(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (auto f : partial) fails += f;
  }
  const double p = static_cast<double>(fails) / static_cast<double>(trials);
  const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
  return {p, se};
}

McEstimate outage_monte_carlo(MuKind kind, const WptParams& params,
                              const FrameSplit& frame, const PowerThresholds& thr,
                              std::uint64_t trials, double r_max,
                              std::uint64_t base_seed, std::uint64_t stream_base,
                              int threads) {
  const double mu = mu_coefficient(kind, params, frame, thr);
  return outage_monte_carlo_mu(mu, params, trials, r_max, base_seed, stream_base,
                               threads);
}

double system_outage(double p_s_out, double p_t_out) {
  if (p_s_out < 0.0 || p_s_out > 1.0 || p_t_out < 0.0 || p_t_out > 1.0)
    throw std::domain_error("system_outage: probabilities out of [0,1]");
  return 1.0 - (1.0 - p_s_out) * (1.0 - p_t_out);
}

CssOutageProfile css_outage_profile(const WptParams& params, const FrameSplit& frame,
                                    const PowerThresholds& thr, int J, int J1) {
  if (J1 < 1 || J1 > J) throw std::domain_error("css_outage_profile: need 1 <= J1 <= J");
  // Active SUs harvested enough to sense by definition, so their sensing
  // outage contribution is zero; only the transmission outage remains.
  const double p_a =
      system_outage(0.0, outage_closed_form(
                             mu_coefficient(MuKind::a, params, frame, thr), params));
  const double p_i =
      outage_closed_form(mu_coefficient(MuKind::i, params, frame, thr), params);
  const double p_avg = (J1 * p_a + (J - J1) * p_i) / J;
  return {p_a, p_i, p_avg};
}

}  // namespace artifact::wpt
