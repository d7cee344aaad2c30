#include "fracmin/gammafn.hpp"

#include <cmath>
#include <stdexcept>

namespace fracmin {
namespace {

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
// Relative error of the rational part is below 1e-15 on the half-line.
constexpr double kG = 607.0 / 128.0;
constexpr double kCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * M_PI);

// Core series for x >= 1/2.
double log_gamma_core(double x) {
  const double z = x - 1.0;
  double sum = kCoef[0];
  for (int k = 1; k < 15; ++k) sum += kCoef[k] / (z + k);
  const double t = z + kG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be > 0");
  if (x < 0.5) {
    // Reflection keeps the series argument away from the poles and the
    // cancellation-prone left edge.
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma_core(1.0 - x);
  }
  return log_gamma_core(x);
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  return std::exp(log_gamma(x));
}

}  // namespace fracmin
