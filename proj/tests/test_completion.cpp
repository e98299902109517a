#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "artifact/completion.hpp"
#include "artifact/sensing.hpp"

using namespace artifact::completion;
using artifact::mathkit::CMat;
using artifact::mathkit::CVec;
using artifact::mathkit::Rng;

namespace {

struct Instance {
  FcMatrix fc;
  std::vector<artifact::sensing::MeasurementOp> ops;
  CMat truth;  // n x J
};

// Rank-1 ground truth S = u v^H observed through per-SU compressive ops.
Instance rank1_instance(int n, int J, int J1, double kappa, std::uint64_t seed) {
  Rng rng(seed, 0);
  CVec u(n), v(J);
  for (int i = 0; i < n; ++i) u[i] = std::complex<double>(rng.normal(), rng.normal());
  for (int j = 0; j < J; ++j) v[j] = std::complex<double>(rng.normal(), rng.normal());
  Instance inst;
  inst.truth = u * v.adjoint();
  std::vector<std::pair<int, CVec>> views;
  for (int j = 0; j < J1; ++j) {
    auto op = artifact::sensing::make_measurement_op(kappa, n, rng);
    views.emplace_back(j, op.Theta * inst.truth.col(j));
    inst.ops.push_back(std::move(op));
  }
  inst.fc = assemble_fc_matrix(views, J);
  return inst;
}

}  // namespace

TEST_CASE("fc matrix validation") {
  CMat X = CMat::Zero(4, 2);
  FcMatrix fc;
  fc.X = X;
  fc.J = 8;
  fc.observed = {1, 1};  // duplicate
  CHECK_THROWS(fc.validate());
  fc.observed = {1, 9};  // out of range
  CHECK_THROWS(fc.validate());
  fc.observed = {1};  // width mismatch
  CHECK_THROWS(fc.validate());
  fc.observed = {1, 4};
  CHECK_NOTHROW(fc.validate());
  CHECK_THROWS(assemble_fc_matrix({}, 4));
}

TEST_CASE("zero input is a fixed point") {
  auto inst = rank1_instance(32, 6, 3, 0.5, 3);
  inst.fc.X.setZero();
  const auto res = complete_matrix(inst.fc, inst.ops, {});
  CHECK(res.converged);
  CHECK(res.S.norm() == 0.0);
}

TEST_CASE("rank-1 recovery from half-rate measurements") {
  // sized so the total measurement count comfortably covers the rank-1
  // degrees of freedom; smaller instances are genuinely ambiguous
  auto inst = rank1_instance(128, 16, 8, 0.5, 7);
  const auto res = complete_matrix(inst.fc, inst.ops, {});
  CHECK(res.converged);
  CHECK(res.rank == 1);
  double num = 0.0, den = 0.0;
  for (int j : inst.fc.observed) {
    num += (res.S.col(j) - inst.truth.col(j)).squaredNorm();
    den += inst.truth.col(j).squaredNorm();
  }
  CHECK(std::sqrt(num / den) < 1e-3);
  // unobserved columns are reported as zero, not hallucinated
  CHECK(res.S.col(15).norm() == 0.0);
}

TEST_CASE("fully observed kappa=1 instance inverts exactly") {
  auto inst = rank1_instance(48, 6, 6, 1.0, 11);
  const auto res = complete_matrix(inst.fc, inst.ops, {});
  CHECK(res.converged);
  CHECK((res.S - inst.truth).norm() / inst.truth.norm() < 1e-6);
}

TEST_CASE("residuals are reported per observed column") {
  auto inst = rank1_instance(64, 8, 4, 0.5, 13);
  const auto res = complete_matrix(inst.fc, inst.ops, {});
  REQUIRE(res.residuals.size() == 4);
  for (double r : res.residuals) CHECK(r < 1e-5 * inst.fc.X.norm());
}

TEST_CASE("op count must match the observed columns") {
  auto inst = rank1_instance(32, 6, 3, 0.5, 17);
  inst.ops.pop_back();
  CHECK_THROWS(complete_matrix(inst.fc, inst.ops, {}));
}

TEST_CASE("cs sample bound") {
  CHECK(cs_sample_bound(1000.0, 125.0, 2.0) == 520);  // ceil(250 ln 8)
  CHECK_THROWS(cs_sample_bound(100.0, 100.0, 2.0));
}

TEST_CASE("mc sample bounds") {
  const auto practical =
      mc_sample_bound(128.0, 16.0, 1.0, 2.0, McBoundMode::practical, 0.3);
  CHECK(practical.bound == std::ceil(0.3 * 128 * 16));
  CHECK(practical.feasible);
  const auto theo =
      mc_sample_bound(1000.0, 50.0, 4.0, 2.0, McBoundMode::theoretical, 0.3);
  CHECK(theo.bound > 1000.0 * 50.0);  // log^6 blow-up: unusable at this scale
  CHECK_FALSE(theo.feasible);
}
