#include "fracmin/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracmin {

double critical_exponent(int dimension, FracOrder s) {
  if (dimension <= 2.0 * s.s) return std::numeric_limits<double>::infinity();
  return 2.0 * dimension / (dimension - 2.0 * s.s);
}

ProblemParams::ProblemParams(int dimension_, FracOrder s_, double q_, double eps_)
    : dimension(dimension_), s(s_), q(q_), eps(eps_),
      crit_exponent(critical_exponent(dimension_, s_)) {
  if (dimension < 1) throw std::domain_error("ProblemParams: dimension < 1");
  if (!(eps > 0.0)) throw std::domain_error("ProblemParams: eps must be > 0");
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::domain_error("ProblemParams: q must be finite and >= 1");
  if (q > crit_exponent * (1.0 + 1e-12))
    throw std::domain_error("ProblemParams: q exceeds the critical exponent");
}

double ProblemParams::eps_pow_2s() const { return std::pow(eps, 2.0 * s.s); }

ProblemParams ProblemParams::with_eps(double new_eps) const {
  return ProblemParams(dimension, s, q, new_eps);
}

ProblemParams ProblemParams::with_q(double new_q) const {
  return ProblemParams(dimension, s, new_q, eps);
}

namespace {

// |u|^(q-2) u evaluated pointwise; tends to 0 at zeros of u for q > 1.
GridFunction signed_power(const GridFunction& u, double q) {
  GridFunction out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    out[i] = (a == 0.0) ? 0.0 : std::copysign(std::pow(a, q - 1.0), u[i]);
  }
  return out;
}

}  // namespace

double rayleigh_I(const CoefficientVector& c, const ProblemParams& p,
                  const SpectralData& data) {
  const double l2sq = c.squaredNorm();
  if (l2sq == 0.0) throw std::invalid_argument("rayleigh_I: zero function");
  const GridFunction u = synthesize(c, data);
  const double nq = lq_norm(u, p.q, data);
  if (nq == 0.0) throw std::invalid_argument("rayleigh_I: zero denominator");
  return (quadratic_form(c, p.s, data) + p.eps_pow_2s() * l2sq) / (nq * nq);
}

double auxiliary_J(const CoefficientVector& c, const ProblemParams& p,
                   const SpectralData& data) {
  const GridFunction u = synthesize(c, data);
  const double nq = lq_norm(u, p.q, data);
  return quadratic_form(c, p.s, data) +
         p.eps_pow_2s() * (c.squaredNorm() - nq * nq);
}

CoefficientVector grad_rayleigh(const CoefficientVector& c,
                                const ProblemParams& p,
                                const SpectralData& data) {
  if (c.squaredNorm() == 0.0)
    throw std::invalid_argument("grad_rayleigh: zero function");
  const double e2s = p.eps_pow_2s();
  const GridFunction u = synthesize(c, data);
  const double nq = lq_norm(u, p.q, data);
  if (nq == 0.0) throw std::invalid_argument("grad_rayleigh: zero denominator");
  const double nq2 = nq * nq;
  const double I = (quadratic_form(c, p.s, data) + e2s * c.squaredNorm()) / nq2;

  // d/dc_j of ||u||_q^2 is 2 ||u||_q^(2-q) <|u|^(q-2) u, phi_j>.
  const CoefficientVector nonlinear =
      analyze(signed_power(u, p.q), data) * std::pow(nq, 2.0 - p.q);

  CoefficientVector grad(c.size());
  for (int j = 0; j < data.modes(); ++j) {
    const double ls = lambda_pow(data.eigenvalues[j], p.s.s);
    grad[j] = 2.0 / nq2 * ((ls + e2s) * c[j] - I * nonlinear[j]);
  }
  return grad;
}

double d2J_at_one(int direction_mode, const ProblemParams& p,
                  const SpectralData& data) {
  if (direction_mode < 1 || direction_mode >= data.modes())
    throw std::invalid_argument("d2J_at_one: direction mode out of range");
  const double ls = lambda_pow(data.eigenvalues[direction_mode], p.s.s);
  return 2.0 * (ls - (p.q - 2.0) * p.eps_pow_2s());
}

double d2J_general(const CoefficientVector& c_base, const CoefficientVector& h,
                   const ProblemParams& p, const SpectralData& data) {
  const GridFunction u = synthesize(c_base, data);
  if (p.q < 3.0 && u.minCoeff() <= 0.0)
    throw std::domain_error(
        "d2J_general: base must be strictly positive on the grid for q < 3");
  const double e2s = p.eps_pow_2s();
  const double q = p.q;
  const GridFunction hg = synthesize(h, data);
  const double nq = lq_norm(u, q, data);

  // Second variation of ||u||_q^2 has a rank-one part from the first
  // derivative of the q-integral and a diagonal part with |u|^(q-2) h^2.
  const double inner_qm1 = data.weights.dot(signed_power(u, q).cwiseProduct(hg));
  const double inner_qm2 =
      data.weights.dot(u.array().abs().pow(q - 2.0).matrix().cwiseProduct(
          hg.cwiseAbs2()));
  const double d2_lq2 = (2.0 - q) * std::pow(nq, 2.0 - 2.0 * q) * 2.0 *
                            inner_qm1 * inner_qm1 +
                        (q - 1.0) * std::pow(nq, 2.0 - q) * 2.0 * inner_qm2;

  return 2.0 * quadratic_form(h, p.s, data) + 2.0 * e2s * h.squaredNorm() -
         e2s * d2_lq2;
}

double d3J_at_one_phi1(const ProblemParams& p, const SpectralData& data) {
  return -2.0 * (p.q - 1.0) * (p.q - 2.0) * p.eps_pow_2s() *
         phi1_cubed_integral(data);
}

double phi1_cubed_integral(const SpectralData& data) {
  if (data.modes() < 2)
    throw std::invalid_argument("phi1_cubed_integral: need at least two modes");
  const Eigen::VectorXd phi1 = data.eigenfunctions.row(1).transpose();
  return data.weights.dot(phi1.array().cube().matrix());
}

}  // namespace fracmin
