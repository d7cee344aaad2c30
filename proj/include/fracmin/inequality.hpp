#pragma once

#include <string>
#include <vector>

namespace fracmin {

// Result of one inequality / identity check over a parameter region.
// Semantics of min_margin depend on kind:
//   Strict    - smallest slack of a strict inequality; holds iff > 0
//   NonStrict - may touch zero (e.g. a Bernoulli bound that is exact at
//               one point); holds iff >= -1e-12
//   Equality  - min_margin stores the largest |deviation|; holds iff it is
//               below the tolerance named in `name`
enum class IneqKind { Strict, NonStrict, Equality };

struct IneqReport {
  std::string name;
  std::string domain_checked;
  double min_margin = 0.0;
  bool holds = false;
  std::string worst_point;
  IneqKind kind = IneqKind::Strict;
};

// A_n(s) = 2s Gamma((n+2s)/2)/Gamma((n-2s+2)/2) [Gamma(n/2)/Gamma(n)]^(2s/n).
// Comparing A_n with pi^s is the Gamma-function form of the cube gap.
// Evaluates for any s in (0,1] with positive Gamma arguments (that admits
// the s = 1 endpoint used by the monotonicity transfer); the n > 2s
// restriction belongs to the gap claims, not to the formula.
double A_value(int n, double s);

// B_n = (n+2)Gamma(n/2)/((n+4)Gamma(n)) [2(n+1)(n/(n+2))^((n+2)/2)]^(n/2),
// evaluated in log space so large n cannot overflow. B_2 = 1 exactly.
double B_value(int n);

// Closed form of the ratio B_{n+2}/B_n. Decreases to 1, hence B_n >= 1.
double g_ratio(double n);

// f(s) = [(n+2s)/(n-2s+2)]^(n(n+2)/(4s)) must be nondecreasing on any grid
// inside (0,1]. Margin is the smallest forward difference quotient, which
// stays put when the grid is refined (raw differences would shrink).
IneqReport f_monotonicity_check(int n, const std::vector<double>& s_grid);

// Every link of the chain that closes the cube gap for all n: ratio
// monotonicity of A, A < pi^s, the n = 1, 2, 3 base cases with the n = 2
// split at s = 0.7, the reflection identity, the Bernoulli bounds, the
// polynomial sign certificate behind g's monotonicity, and the B/g range
// facts. All reports returned; callers abort on any holds = false.
std::vector<IneqReport> verify_chain(int n_max, double s_step);

}  // namespace fracmin
