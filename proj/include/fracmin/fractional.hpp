#pragma once

#include "fracmin/transforms.hpp"

namespace fracmin {

// Order of the fractional Laplacian, s in (0,1]. s = 1 is admitted so the
// local-operator checks can run through the same code path.
struct FracOrder {
  explicit FracOrder(double s);
  double s;
};

// lambda^s with the zero eigenvalue contributing zero (avoids 0^s).
double lambda_pow(double lambda, double s);

// sum_{j>=1} lambda_j^s c_j^2; the spectral quadratic form of the Neumann
// fractional Laplacian. Kills constants (j = 0 term has lambda_0 = 0).
double quadratic_form(const CoefficientVector& c, FracOrder s,
                      const SpectralData& data);

// quadratic_form + L2 norm squared.
double hs_norm_sq(const CoefficientVector& c, FracOrder s,
                  const SpectralData& data);

}  // namespace fracmin
