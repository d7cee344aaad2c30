#include "fracmin/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace fracmin {

GridFunction synthesize(const CoefficientVector& c, const SpectralData& data) {
  if (c.size() != data.modes())
    throw std::invalid_argument("synthesize: coefficient length mismatch");
  return data.eigenfunctions.transpose() * c;
}

CoefficientVector analyze(const GridFunction& g, const SpectralData& data) {
  if (g.size() != data.points())
    throw std::invalid_argument("analyze: grid length mismatch");
  return data.eigenfunctions * data.weights.cwiseProduct(g);
}

double lq_norm(const GridFunction& g, double q, const SpectralData& data) {
  if (g.size() != data.points())
    throw std::invalid_argument("lq_norm: grid length mismatch");
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::invalid_argument("lq_norm: q must be finite and >= 1");
  if (q == 2.0)  // common case, keep it cheap and exact
    return std::sqrt(data.weights.dot(g.cwiseAbs2()));
  const double sum = data.weights.dot(g.array().abs().pow(q).matrix());
  return std::pow(sum, 1.0 / q);
}

GridFunction abs_substitute(const GridFunction& g) { return g.cwiseAbs(); }

std::pair<double, CoefficientVector> mean_split(const CoefficientVector& c) {
  CoefficientVector hat = c;
  double mean = 0.0;
  if (c.size() > 0) {
    mean = c[0];
    hat[0] = 0.0;
  }
  return {mean, hat};
}

}  // namespace fracmin
