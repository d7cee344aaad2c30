#pragma once

#include "fracmin/fractional.hpp"

namespace fracmin {

// 2n/(n-2s) when n > 2s, +infinity otherwise.
double critical_exponent(int dimension, FracOrder s);

// Parameters of the scaled quotient: order s, target exponent q, dilation
// eps. q > 2 is the interesting regime; q in [1,2] is admitted for the
// sanity checks where the constant is known to win outright.
struct ProblemParams {
  ProblemParams(int dimension, FracOrder s, double q, double eps);

  int dimension;
  FracOrder s;
  double q;
  double eps;
  double crit_exponent;  // derived; +inf when dimension <= 2s

  double eps_pow_2s() const;  // eps^(2s), the quotient's value at constants
  ProblemParams with_eps(double new_eps) const;
  ProblemParams with_q(double new_q) const;
};

// (quadratic_form + eps^(2s) ||u||_2^2) / ||u||_q^2. Scale invariant;
// equals eps^(2s) at constants.
double rayleigh_I(const CoefficientVector& c, const ProblemParams& p,
                  const SpectralData& data);

// quadratic_form + eps^(2s) (||u||_2^2 - ||u||_q^2). Vanishes at constants
// and satisfies J = ||u||_q^2 (I[u] - eps^(2s)), so the constant is the
// global minimizer of the quotient exactly when J >= 0.
double auxiliary_J(const CoefficientVector& c, const ProblemParams& p,
                   const SpectralData& data);

// Coefficient-space gradient of rayleigh_I. Zero at critical points, in
// particular at constants. |u|^(q-2)u is used for the nonlinear term so
// sign-changing iterates stay well-defined.
CoefficientVector grad_rayleigh(const CoefficientVector& c,
                                const ProblemParams& p,
                                const SpectralData& data);

// Second differential of J at the constant along mode j >= 1:
// 2 (lambda_j^s - (q-2) eps^(2s)). Rejects j = 0 (the mean direction is
// neutral). Sign changes exactly at the local bifurcation threshold.
double d2J_at_one(int direction_mode, const ProblemParams& p,
                  const SpectralData& data);

// Second differential of J at a general base point along h, evaluated by
// quadrature. For q < 3 the base must be strictly positive on the grid
// (u^(q-2) is singular at zeros there); throws std::domain_error otherwise.
double d2J_general(const CoefficientVector& c_base, const CoefficientVector& h,
                   const ProblemParams& p, const SpectralData& data);

// Third differential of J at the constant along phi_1 three times:
// -2 (q-1)(q-2) eps^(2s) * integral of phi_1^3. Zero on boxes by symmetry.
double d3J_at_one_phi1(const ProblemParams& p, const SpectralData& data);

// Quadrature value of the cubic self-overlap of the first nonconstant mode.
double phi1_cubed_integral(const SpectralData& data);

}  // namespace fracmin
