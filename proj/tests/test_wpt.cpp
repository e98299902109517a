#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "artifact/wpt.hpp"

using namespace artifact::wpt;

namespace {

WptParams spot_params() {
  WptParams p;
  p.M = 1;
  p.xi = 2.0;
  p.d0 = 1.0;
  p.lambda_p = 1e-3;
  return p;
}

}  // namespace

TEST_CASE("parameter validation rejects nonsense") {
  WptParams p;
  p.lambda_p = -1.0;
  CHECK_THROWS(p.validate());
  FrameSplit f;
  f.alpha1 = 0.9;
  f.beta = 0.9;
  CHECK_THROWS(f.validate());
}

TEST_CASE("closed form edge cases") {
  WptParams p = spot_params();
  CHECK(outage_closed_form(0.0, p) == 0.0);
  WptParams empty = p;
  empty.lambda_p = 0.0;
  CHECK(outage_closed_form(0.5, empty) == 1.0);
}

TEST_CASE("closed form monotone in mu and lambda_p") {
  WptParams p = spot_params();
  double prev = -1.0;
  for (double mu : {1e-3, 1e-2, 1e-1, 1.0}) {
    const double v = outage_closed_form(mu, p);
    CHECK(v > prev);
    prev = v;
  }
  prev = 2.0;
  for (double lp : {1e-4, 1e-3, 1e-2}) {
    WptParams q = p;
    q.lambda_p = lp;
    const double v = outage_closed_form(0.01, q);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("closed form spot value (M=1, xi=2, d0=1, lambda=1e-3, mu=0.01)") {
  CHECK(outage_closed_form(0.01, spot_params()) ==
        doctest::Approx(0.732691).epsilon(7e-4));
}

TEST_CASE("mu coefficients match their defining ratios") {
  WptParams p;  // defaults
  FrameSplit f;
  PowerThresholds thr;
  const double denom = p.eta * p.Pp * p.A;
  const double tt = f.transmit_fraction();
  CHECK(mu_coefficient(MuKind::s, p, f, thr) ==
        doctest::Approx(f.kappa * f.beta * thr.Ps / (denom * f.alpha1)).epsilon(1e-12));
  CHECK(mu_coefficient(MuKind::t, p, f, thr) ==
        doctest::Approx((thr.Pt * tt + thr.Ps * f.kappa * f.beta) /
                        (denom * (f.alpha1 + f.alpha2)))
            .epsilon(1e-12));
  CHECK(mu_coefficient(MuKind::a, p, f, thr) ==
        doctest::Approx(mu_coefficient(MuKind::t, p, f, thr)).epsilon(1e-12));
  CHECK(mu_coefficient(MuKind::i, p, f, thr) ==
        doctest::Approx(thr.Pt * tt /
                        (denom * (f.alpha1 + f.kappa * f.beta + f.alpha2)))
            .epsilon(1e-12));
}

TEST_CASE("monte carlo degenerate cases") {
  WptParams empty = spot_params();
  empty.lambda_p = 0.0;
  const auto mc = outage_monte_carlo_mu(0.01, empty, 1, 50.0, 99);
  CHECK(mc.estimate == 1.0);
}

TEST_CASE("monte carlo agrees with closed form") {
  WptParams p = spot_params();
  const double mu = 0.01;
  const double cf = outage_closed_form(mu, p);
  const auto mc =
      outage_monte_carlo_mu(mu, p, 20000, default_r_max(mu, p), 2024, 0, 2);
  CHECK(std::abs(mc.estimate - cf) <= std::max(4.0 * mc.stderr_, 0.015));

  WptParams p32;  // defaults: M = 32
  const double mu2 = 0.05;
  const double cf2 = outage_closed_form(mu2, p32);
  const auto mc2 =
      outage_monte_carlo_mu(mu2, p32, 20000, default_r_max(mu2, p32), 2024, 1u << 20, 2);
  CHECK(std::abs(mc2.estimate - cf2) <= std::max(4.0 * mc2.stderr_, 0.015));
}

TEST_CASE("monte carlo is deterministic, also across thread counts") {
  WptParams p = spot_params();
  const auto a = outage_monte_carlo_mu(0.01, p, 5000, 50.0, 7, 0, 1);
  const auto b = outage_monte_carlo_mu(0.01, p, 5000, 50.0, 7, 0, 3);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("stderr follows the sqrt law") {
  WptParams p = spot_params();
  const auto small = outage_monte_carlo_mu(0.01, p, 10000, 50.0, 31, 0, 2);
  const auto large = outage_monte_carlo_mu(0.01, p, 40000, 50.0, 31, 1u << 20, 2);
  CHECK(small.stderr_ / large.stderr_ == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("system outage composes independent failures") {
  CHECK(system_outage(0.0, 0.0) == 0.0);
  CHECK(system_outage(1.0, 0.3) == 1.0);
  CHECK(system_outage(0.2, 0.3) == doctest::Approx(1.0 - 0.8 * 0.7).epsilon(1e-12));
}

TEST_CASE("css profile: active SUs fare better, average is the mixture") {
  WptParams p;
  FrameSplit f;
  PowerThresholds thr;
  const auto css = css_outage_profile(p, f, thr, 50, 30);
  CHECK(css.p_active < 1.0);
  CHECK(css.p_inactive < css.p_active);  // 3-slot harvest, no sensing spend
  CHECK(css.p_average ==
        doctest::Approx((30 * css.p_active + 20 * css.p_inactive) / 50.0)
            .epsilon(1e-12));
}

TEST_CASE("slot powers scale with the harvested gain") {
  WptParams p;
  FrameSplit f;
  PowerThresholds thr;
  const auto lo = slot_powers(0.01, p, f, thr);
  const auto hi = slot_powers(0.02, p, f, thr);
  CHECK(hi.P_H1 == doctest::Approx(2.0 * lo.P_H1).epsilon(1e-12));
  CHECK(lo.P_H1 > 0.0);
  CHECK(lo.P_T2 >= 0.0);
  CHECK(hi.P_H3 > lo.P_H3);
}
