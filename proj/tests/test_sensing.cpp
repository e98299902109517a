#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "artifact/sensing.hpp"

using namespace artifact::sensing;
using artifact::mathkit::Rng;

namespace {

SpectrumScene default_scene() {
  SpectrumScene s;
  s.I = 32;
  s.K = 4;
  s.occupied = {3, 11, 19, 27};
  s.n = 1024;
  s.sigma_s2 = 0.1;
  s.sigma2 = 1.0;
  return s;
}

}  // namespace

TEST_CASE("scene validation") {
  SpectrumScene s = default_scene();
  CHECK_NOTHROW(s.validate());
  s.n = 1000;  // not a multiple of 2I = 64
  CHECK_THROWS(s.validate());
  s = default_scene();
  s.occupied = {3, 3, 19, 27};
  CHECK_THROWS(s.validate());
  CHECK(default_scene().nbins() == 512);
  CHECK(default_scene().bins_per_channel() == 16);
}

TEST_CASE("dft matrix is unitary") {
  const auto F = dft_matrix(32);
  CHECK((F * F.adjoint() - artifact::mathkit::CMat::Identity(32, 32)).norm() < 1e-10);
}

TEST_CASE("measurement operator shape and scaling") {
  Rng rng(5, 0);
  const auto op = make_measurement_op(0.5, 512, rng);
  CHECK(op.Lambda == 256);
  CHECK(op.Phi.rows() == 256);
  CHECK(op.Phi.cols() == 512);
  CHECK(op.Theta.rows() == 256);
  CHECK(op.Theta.cols() == 512);
  // entries N(0, 1/Lambda)
  const double var = op.Phi.array().square().mean();
  CHECK(var == doctest::Approx(1.0 / 256).epsilon(0.05));
}

TEST_CASE("synthesis puts energy exactly on the occupied channels") {
  SpectrumScene s = default_scene();
  Rng rng(17, 0);
  const auto syn = synthesize_received(s, rng);
  CHECK(syn.r_time.size() == s.nbins());
  CHECK(syn.s_freq.size() == s.nbins());
  const int b = s.bins_per_channel();
  double on = 0.0, off = 0.0;
  int on_bins = 0, off_bins = 0;
  for (int c = 0; c < s.I; ++c) {
    const bool occ = s.occupied.end() !=
                     std::find(s.occupied.begin(), s.occupied.end(), c);
    for (int k = 0; k < b; ++k) {
      const double e = std::norm(syn.s_freq[c * b + k]);
      (occ ? on : off) += e;
      (occ ? on_bins : off_bins) += 1;
    }
  }
  CHECK(off == 0.0);
  // per occupied bin: sigma_s2 * I / K = 0.8
  CHECK(on / on_bins == doctest::Approx(0.8).epsilon(0.5));
  // spectrum and time series are the same signal: F r_time = r_freq
  const auto F = dft_matrix(s.nbins());
  CHECK((F * syn.r_time - syn.r_freq).norm() < 1e-9);
}

TEST_CASE("compress is Theta applied to the spectrum") {
  SpectrumScene s = default_scene();
  Rng rng(19, 0);
  const auto syn = synthesize_received(s, rng);
  const auto op = make_measurement_op(0.5, s.nbins(), rng);
  const auto y = compress(syn.r_time, op);
  CHECK(y.size() == op.Lambda);
  CHECK((y - op.Theta * syn.r_freq).norm() / y.norm() < 1e-10);
}

TEST_CASE("cs_recover finds a noiseless block-sparse spectrum") {
  const int nbins = 256, b = 8;
  Rng rng(23, 0);
  artifact::mathkit::CVec x = artifact::mathkit::CVec::Zero(nbins);
  const std::set<int> blocks = {2, 9, 17, 30};
  for (int blk : blocks)
    for (int k = 0; k < b; ++k)
      x[blk * b + k] = std::complex<double>(rng.normal(), rng.normal());
  const auto op = make_measurement_op(0.5, nbins, rng);
  const auto y = op.Theta * x;
  const auto rec = cs_recover(y, op, 4 * b, 1e-8, b, 30);
  CHECK(rec.converged);
  CHECK((rec.estimate - x).norm() / x.norm() < 1e-6);
}

TEST_CASE("frozen threshold and analytic false-alarm oracles") {
  CHECK(detection_threshold(0.9, 1000.0, 0.1, 1.0) ==
        doctest::Approx(1.03693).epsilon(1e-4));
  CHECK(detection_threshold(0.9, 32.0, 0.1, 1.0) ==
        doctest::Approx(0.74764).epsilon(1e-4));
  CHECK(pf_analytic(0.9, 0.1, 1000.0) == doctest::Approx(0.18616).epsilon(5e-3));
  CHECK(pf_analytic(0.9, 0.1, 32.0) == doctest::Approx(0.82737).epsilon(5e-3));
  // cooperation shrinks the false-alarm rate
  CHECK(qf_analytic(0.9, 0.1, 1000.0, 50) < pf_analytic(0.9, 0.1, 1000.0));
}

TEST_CASE("sample_count floors the energy budget") {
  CHECK(sample_count(0.25, 1.0, 1e-3, 2.5e-7) == 1000);
  CHECK(sample_count(0.2501, 1.0, 1e-3, 2.5e-7) == 1000);
  CHECK_THROWS(sample_count(1e-9, 1.0, 1e-3, 2.5e-7));
}

TEST_CASE("energy detector flags channels above the threshold") {
  // deterministic estimate: channel 0 hot, channel 1 cold
  artifact::mathkit::CVec est = artifact::mathkit::CVec::Zero(8);
  est[0] = est[1] = est[2] = est[3] = 2.0;  // channel 0: power 4 per bin
  const auto flags = energy_detect(est, 2, 1.0);
  REQUIRE(flags.size() == 2);
  CHECK(flags[0] == 1);
  CHECK(flags[1] == 0);
}

TEST_CASE("full-band empirical Pf tracks the analytic curve") {
  const double analytic = pf_analytic(0.9, 0.1, 1000.0);
  const double emp = empirical_fullband_pf(0.9, 0.1, 1000, 4000, 2025, 0, 2);
  // known mild systematic offset of the canonical formula; wide gate here
  CHECK(emp > analytic - 0.02);
  CHECK(emp < analytic + 0.05);
}

TEST_CASE("detect_trial is deterministic and catches occupied channels") {
  SpectrumScene s = default_scene();
  int hits = 0, total = 0;
  for (int t = 0; t < 40; ++t) {
    Rng rng(31, 100 + t);
    const auto flags = detect_trial(s, 1.0, 0.9, rng);
    for (int c : s.occupied) {
      hits += flags[c];
      ++total;
    }
  }
  CHECK(static_cast<double>(hits) / total > 0.9);
  Rng r1(31, 100), r2(31, 100);
  CHECK(detect_trial(s, 1.0, 0.9, r1) == detect_trial(s, 1.0, 0.9, r2));
}

TEST_CASE("detect_trial under compression still detects occupied channels") {
  SpectrumScene s = default_scene();
  int hits = 0, total = 0;
  for (int t = 0; t < 12; ++t) {
    Rng rng(37, 500 + t);
    const auto flags = detect_trial(s, 0.5, 0.9, rng);
    for (int c : s.occupied) {
      hits += flags[c];
      ++total;
    }
  }
  CHECK(static_cast<double>(hits) / total > 0.8);
}
