#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "artifact/mathkit.hpp"

using namespace artifact::mathkit;

TEST_CASE("rng streams replay and diverge") {
  Rng a(42, 0), b(42, 0), c(42, 1);
  bool same = true, differ = false;
  for (int i = 0; i < 256; ++i) {
    const auto v = a.next_u64();
    same = same && (v == b.next_u64());
    differ = differ || (v != c.next_u64());
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("uniform in range, normal has right moments") {
  Rng rng(7, 3);
  double sum = 0.0, sum2 = 0.0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / N) < 0.01);
  CHECK(sum2 / N == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gamma sampler matches mean/variance for Erlang shapes") {
  Rng rng(11, 0);
  for (int M : {1, 8, 32}) {
    double sum = 0.0, sum2 = 0.0;
    const int N = 100000;
    for (int i = 0; i < N; ++i) {
      const double g = sample_channel_gain(M, rng);
      sum += g;
      sum2 += g * g;
    }
    const double mean = sum / N;
    const double var = sum2 / N - mean * mean;
    CHECK(mean == doctest::Approx(M).epsilon(0.02));
    CHECK(var == doctest::Approx(M).epsilon(0.05));
  }
}

TEST_CASE("poisson mean and additivity of large means") {
  Rng rng(13, 5);
  const double mean = 137.4;  // forces chunked sampling
  double sum = 0.0;
  const int N = 50000;
  for (int i = 0; i < N; ++i) sum += static_cast<double>(sample_poisson(mean, rng));
  CHECK(sum / N == doctest::Approx(mean).epsilon(0.01));
  Rng z(13, 6);
  CHECK(sample_poisson(0.0, z) == 0);
}

TEST_CASE("erlang_cdf endpoints and monotonicity") {
  CHECK(erlang_cdf(4, 0.0) == doctest::Approx(0.0));
  CHECK(erlang_cdf(4, 1e3) == doctest::Approx(1.0));
  double prev = -1.0;
  for (double x = 0.0; x < 20.0; x += 0.25) {
    const double v = erlang_cdf(8, x);
    CHECK(v >= prev);
    prev = v;
  }
  // M=1 is Exp(1)
  CHECK(erlang_cdf(1, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("q function against known values") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q_function(1.6448536269514722) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(q_inverse(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  for (double p : {1e-8, 1e-4, 0.01, 0.3, 0.6, 0.9, 0.9999})
    CHECK(q_function(q_inverse(p)) == doctest::Approx(p).epsilon(1e-9));
}

TEST_CASE("upper incomplete gamma against hand values") {
  // Gamma(1, z) = e^{-z}
  CHECK(upper_incomplete_gamma(1.0, 2.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
  // Gamma(2, z) = (z + 1) e^{-z}
  CHECK(upper_incomplete_gamma(2.0, 3.0) ==
        doctest::Approx(4.0 * std::exp(-3.0)).epsilon(1e-12));
  // Gamma(a, 0) = Gamma(a)
  CHECK(upper_incomplete_gamma(5.0, 0.0) == doctest::Approx(24.0).epsilon(1e-12));
  // recurrence spot check at fractional a
  const double a = 3.7, z = 1.9;
  CHECK(upper_incomplete_gamma(a + 1.0, z) ==
        doctest::Approx(a * upper_incomplete_gamma(a, z) + std::pow(z, a) * std::exp(-z))
            .epsilon(1e-11));
}

TEST_CASE("upper_gamma_sum equals naive sum") {
  for (int M : {1, 2, 16, 32})
    for (double delta : {0.4, 1.0})
      for (double z : {0.03, 1.7, 24.0}) {
        double naive = 0.0, mfact = 1.0;
        for (int m = 0; m < M; ++m) {
          naive += upper_incomplete_gamma(m + delta, z) / mfact;
          mfact *= (m + 1);
        }
        CHECK(upper_gamma_sum(M, delta, z) == doctest::Approx(naive).epsilon(1e-11));
      }
}

TEST_CASE("complex svd reconstructs") {
  Rng rng(3, 0);
  CMat A(9, 6);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      A(i, j) = std::complex<double>(rng.normal(), rng.normal());
  const auto r = svd(A);
  CHECK((r.U * r.s.asDiagonal() * r.V.adjoint() - A).norm() / A.norm() < 1e-12);
  for (int i = 1; i < r.s.size(); ++i) CHECK(r.s[i] <= r.s[i - 1]);
}
