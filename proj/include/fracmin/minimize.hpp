#pragma once

#include <cstdint>
#include <vector>

#include "fracmin/functionals.hpp"

namespace fracmin {

struct SolverOptions {
  int max_iters = 1500;
  double tol_grad = 1e-9;       // infinity norm of the quotient gradient
  int n_random_starts = 8;
  std::uint64_t seed = 1234;
  int threads = 0;              // 0 = hardware concurrency
};

struct MinimizeResult {
  CoefficientVector minimizer;  // normalized to lq_norm = 1, nonnegative
  double value = 0.0;
  bool is_constant = false;
  int starts_used = 0;
  bool converged = false;
};

// One projected-gradient descent run from a given start: every iteration
// takes |u| (kept only when it does not increase the quotient, which the
// truncation can do by a hair), renormalizes to lq_norm = 1, then moves
// against the gradient with a backtracking line search.
struct SingleRun {
  CoefficientVector c;
  double value = 0.0;
  int iters = 0;
  bool converged = false;
  std::vector<double> value_history;  // one entry per accepted iterate
};
SingleRun descend_single(const CoefficientVector& start, const ProblemParams& p,
                         const SpectralData& data, const SolverOptions& opts);

// The deterministic start family: the constant, 1 +- t phi_1 for
// t in {0.1, 0.5, 1.0, 2.0}, and every pure mode. Random mean-free
// perturbations of the constant are appended by minimize_quotient itself.
std::vector<CoefficientVector> ladder_starts(const SpectralData& data);

// Multistart descent over ladder_starts plus seeded random starts, merged
// deterministically (best value, ties by lexicographic coefficients). If no
// start beats eps^(2s) - 1e-9 the exact constant is returned, which keeps
// the constancy verdict two-sided robust.
MinimizeResult minimize_quotient(const ProblemParams& p,
                                 const SpectralData& data,
                                 const SolverOptions& opts = {});

// Sign of the second differential at the constant in the softest direction;
// when it degenerates, the cubic term decides (nonzero cubic overlap means
// no local minimum).
enum class LocalVerdict { LocalMin, Saddle, Degenerate };
LocalVerdict local_min_test_at_one(const ProblemParams& p,
                                   const SpectralData& data);

// Exhaustive grid scan over {c_0 = 1, c_j in [-radius, radius]} for the
// first `modes` coefficients (scale invariance fixes c_0), followed by a
// derivative-free local refinement of the best cell. Independent of the
// gradient path, so agreement with minimize_quotient is a real cross-check.
struct OracleResult {
  double value = 0.0;
  CoefficientVector argmin;
};
OracleResult brute_force_oracle(const ProblemParams& p, const SpectralData& data,
                                int modes, double grid_radius, int grid_steps);

}  // namespace fracmin
