#pragma once

#include <utility>

#include "fracmin/spectral.hpp"

namespace fracmin {

// c_j = coefficient of phi_j, aligned with SpectralData eigenvalue order.
using CoefficientVector = Eigen::VectorXd;
// Pointwise values aligned with the quadrature nodes.
using GridFunction = Eigen::VectorXd;

// values_i = sum_j c_j phi_j(node_i)
GridFunction synthesize(const CoefficientVector& c, const SpectralData& data);

// c_j = <g, phi_j>_quad; inverse of synthesize on band-limited data.
CoefficientVector analyze(const GridFunction& g, const SpectralData& data);

// (sum_i w_i |g_i|^q)^(1/q); q must be >= 1 and finite.
double lq_norm(const GridFunction& g, double q, const SpectralData& data);

// Pointwise absolute value. Replacing u by |u| never increases the
// quadratic form, which is what makes it safe inside descent.
GridFunction abs_substitute(const GridFunction& g);

// Split off the mean: returns (c_0, c with the 0 entry zeroed). The hat
// part integrates to zero since the nonconstant modes do.
std::pair<double, CoefficientVector> mean_split(const CoefficientVector& c);

}  // namespace fracmin
