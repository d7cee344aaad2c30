#pragma once

#include <Eigen/Core>

namespace fracmin {

// Gauss-Legendre rule rescaled to (0,1). Weights sum to 1 exactly up to
// round-off, so quadrature of 1 equals the measure of the unit box.
struct QuadratureRule {
  Eigen::VectorXd nodes;    // ascending, strictly inside (0,1)
  Eigen::VectorXd weights;  // positive
};

QuadratureRule gauss_legendre_unit(int points);

// Largest gap between consecutive nodes, counting the distance from 0 to the
// first node and from the last node to 1. Used as a resolution guard for
// sharply peaked integrands.
double max_node_gap(const Eigen::VectorXd& sorted_nodes);

}  // namespace fracmin
