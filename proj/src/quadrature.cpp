#include "fracmin/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fracmin {

// Nodes are the roots of the Legendre polynomial P_m, found by Newton from
// the Chebyshev-like initial guess; weights from the standard identity
// w = 2 / ((1 - x^2) P_m'(x)^2). Converges to machine precision in a
// handful of iterations for any m of interest here.
QuadratureRule gauss_legendre_unit(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre_unit: points < 1");
  const int m = points;
  Eigen::VectorXd x(m), w(m);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Recurrence for P_m(z) and its derivative.
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < m; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = m * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    // cos gives descending z; store ascending on (0,1).
    x[m - 1 - i] = 0.5 * (z + 1.0);
    w[m - 1 - i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
  return {x, w};
}

double max_node_gap(const Eigen::VectorXd& sorted_nodes) {
  const int m = static_cast<int>(sorted_nodes.size());
  if (m == 0) return 1.0;
  double gap = sorted_nodes[0];  // from the left edge
  for (int i = 1; i < m; ++i) gap = std::max(gap, sorted_nodes[i] - sorted_nodes[i - 1]);
  gap = std::max(gap, 1.0 - sorted_nodes[m - 1]);
  return gap;
}

}  // namespace fracmin
