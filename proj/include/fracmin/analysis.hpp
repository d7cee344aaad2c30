#pragma once

#include <vector>

#include "fracmin/minimize.hpp"

namespace fracmin {

// One cell of a (q, eps) sweep.
struct PhaseCell {
  double q = 0.0;
  double eps = 0.0;
  bool constant_global = false;
  double min_value = 0.0;
  double eps_threshold_local = 0.0;  // local bifurcation threshold at this q
  bool solver_ok = true;
};

struct BubbleParams {
  double a = 0.1;            // width of the peak
  Eigen::VectorXd center;    // point in the closed box; default = corner 0
};

// (lambda_1^s / (q-2))^(1/(2s)); +infinity for q <= 2 (the constant is a
// local minimizer at every scale there).
double epsilon_threshold(double q, FracOrder s, const SpectralData& data);

// Bisection estimate of the global constancy threshold in eps at fixed q.
struct BigEResult {
  double value = 0.0;
  bool at_upper_bound = false;  // constant all the way up: E >= value
  double upper_seed = 0.0;
  int probes = 0;
};
// Upper seed = min(local threshold, eps_max); a probe counts as constant
// only when every multistart returns the constant. tol is the final
// bracket width. eps_max <= 0 means 10x the local threshold.
BigEResult estimate_big_E(double q, const ProblemParams& tmpl,
                          const SpectralData& data, double tol,
                          const SolverOptions& opts = {}, double eps_max = 0.0);

// Cell-by-cell constancy verdicts over the product grid. Cells run in
// parallel; output order is row-major (q outer, eps inner) regardless of
// scheduling. Per-cell solver failures are recorded in the cell, not fatal.
std::vector<PhaseCell> phase_sweep(const std::vector<double>& q_grid,
                                   const std::vector<double>& eps_grid,
                                   const ProblemParams& tmpl,
                                   const SpectralData& data,
                                   const SolverOptions& opts = {});

// Once the constant loses at some (q0, eps0) it keeps losing up and to the
// right. Returns true when no nonconstant cell has a constant cell at
// (q >= q0, eps >= eps0).
bool phase_staircase_ok(const std::vector<PhaseCell>& cells);

// Sharp constant of the whole-space fractional embedding,
// 2^(2s) pi^s Gamma(n/2+s)/Gamma(n/2-s) [Gamma(n/2)/Gamma(n)]^(2s/n).
// Requires n > 2s.
double sobolev_sharp_constant(int n, FracOrder s);

// Value of the quotient at the peaked test profile
// (a^2 + |x - center|^2)^((2s-n)/2), sampled on the grid and projected onto
// the basis, at the critical exponent with eps at the local threshold.
// Refuses
// (std::invalid_argument) when the grid cannot resolve width a: requires
// per-axis node gap <= a/8 and modes per axis >= 4/a, and box-built data.
double bubble_quotient(const BubbleParams& bp, const ProblemParams& p,
                       const SpectralData& data);

// lhs = pi^(2s)(n-2s)/(4s): the quotient's value at the constant on the
// unit box at the critical coupling. rhs = 2^(-2s) * sharp constant: the
// infimum reached by peaked profiles at a corner. holds = (lhs > rhs),
// i.e. the constant is beaten on every box.
struct CubeGap {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
CubeGap cube_gap_check(int n, FracOrder s);

}  // namespace fracmin
