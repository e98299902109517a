#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "artifact/mathkit.hpp"
#include "artifact/sensing.hpp"

namespace artifact::completion {

using mathkit::CMat;
using mathkit::CVec;

// Fusion-center measurement matrix. Only the J1 active SUs contribute columns;
// unobserved columns are absent (mask semantics), not zero-filled.
struct FcMatrix {
  CMat X;                     // Lambda x J1, observed columns in index order
  std::vector<int> observed;  // SU indices of the observed columns
  int J = 0;
  std::optional<CMat> ground_truth;  // n x J, for evaluation only
  void validate() const;
};

struct CompletionConfig {
  double threshold_tau = 0.0;  // <= 0: auto (||X||_F continuation start)
  double step = 1.2;           // relative to 1/||A||^2
  int max_iter = 500;
  double tol = 1e-5;
  std::vector<double> eps_vec;    // per-column residual bounds (optional)
  int continuation_levels = 8;    // tau is scaled by 0.2 per level
  bool polish = true;             // rank-r alternating least-squares refinement
};

struct CompletionResult {
  CMat S;  // n x J estimate; unobserved columns are zero
  bool converged = false;
  bool diverged = false;
  std::vector<double> residuals;  // per observed column, final
  int iterations = 0;
  int rank = 0;
};

FcMatrix assemble_fc_matrix(const std::vector<std::pair<int, CVec>>& views, int J);

// Nuclear-norm completion by iterative singular-value thresholding on the
// observed columns (mask-aware data fidelity), with tau continuation and an
// optional ALS polish at the detected rank.
CompletionResult complete_matrix(const FcMatrix& fc,
                                 const std::vector<sensing::MeasurementOp>& ops,
                                 const CompletionConfig& cfg);

// Lambda >= C * K * ln(n / K)
std::uint64_t cs_sample_bound(double n, double K_eff, double C_cs);

enum class McBoundMode { theoretical, practical };

struct McBound {
  double bound;
  bool feasible;  // bound <= n * J
};

// Minimum total observed measurement count at the FC. theoretical:
// C * mu^2 * nu * K * log^6(nu) with nu = max(n, J) and mu^2 = ln(nu);
// practical: ceil(ratio * n * J).
McBound mc_sample_bound(double n, double J, double K, double C_mc, McBoundMode mode,
                        double ratio = 0.3);

}  // namespace artifact::completion
