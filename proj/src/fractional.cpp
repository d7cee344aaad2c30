#include "fracmin/fractional.hpp"

#include <cmath>
#include <stdexcept>

namespace fracmin {

FracOrder::FracOrder(double s_) : s(s_) {
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("FracOrder: s must lie in (0, 1]");
}

double lambda_pow(double lambda, double s) {
  if (lambda == 0.0) return 0.0;
  return std::exp(s * std::log(lambda));
}

double quadratic_form(const CoefficientVector& c, FracOrder s,
                      const SpectralData& data) {
  if (c.size() != data.modes())
    throw std::invalid_argument("quadratic_form: coefficient length mismatch");
  double sum = 0.0;
  for (int j = 1; j < data.modes(); ++j)
    sum += lambda_pow(data.eigenvalues[j], s.s) * c[j] * c[j];
  return sum;
}

double hs_norm_sq(const CoefficientVector& c, FracOrder s,
                  const SpectralData& data) {
  return quadratic_form(c, s, data) + c.squaredNorm();
}

}  // namespace fracmin
