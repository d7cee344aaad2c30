#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace fracmin {

enum class DomainKind { UnitBox, External };

// Request for a spectral model. For UnitBox the basis is built analytically;
// External data comes from a file and carries its own resolution.
struct DomainSpec {
  int dimension = 1;
  DomainKind kind = DomainKind::UnitBox;
  int modes_per_axis = 1;       // N, UnitBox only
  int quad_nodes_per_axis = 4;  // M, must satisfy M >= 4N
};

// Discrete spectral model of a unit-measure domain: Neumann eigenvalues plus
// eigenfunction samples on a quadrature rule. Immutable after construction;
// safe to share read-only across threads.
struct SpectralData {
  int dimension = 1;
  Eigen::VectorXd eigenvalues;     // nondecreasing, eigenvalues[0] == 0
  Eigen::MatrixXd nodes;           // points x dimension
  Eigen::VectorXd weights;         // positive, sum to 1
  Eigen::MatrixXd eigenfunctions;  // modes x points, row 0 identically 1

  // Multi-indices of the tensor modes, aligned with eigenvalue order.
  // Populated by build_box_basis; empty for externally loaded data.
  std::vector<std::vector<int>> multi_index;

  int modes() const { return static_cast<int>(eigenvalues.size()); }
  int points() const { return static_cast<int>(weights.size()); }
  double lambda1() const;  // first nonzero eigenvalue
};

// All tensor-product cosine modes phi_k(x) = prod_i c(k_i, x_i) with
// c(0,t) = 1, c(k,t) = sqrt(2) cos(k pi t) and eigenvalue pi^2 |k|^2,
// 0 <= k_i <= N, sorted by eigenvalue with ties in odometer order
// (first axis fastest). Quadrature is the tensor Gauss-Legendre rule with
// M nodes per axis on (0,1).
SpectralData build_box_basis(const DomainSpec& spec);

// Interval sample with an eigenbasis rotated inside the first two cosine
// modes so that the first mode has a nonzero cubic self-overlap
// (integral of phi_1^3 = 0.6791712...). Eigenvalues stay {0, pi^2, 4 pi^2}.
SpectralData build_asymmetric_interval(int quad_points = 64);
double asymmetric_interval_cubed();  // closed-form value of that overlap

// max_{i,j} |<phi_i, phi_j>_quad - delta_ij|
double check_orthonormality(const SpectralData& data);

// Throws std::runtime_error naming the first violated invariant:
// weights_sum, weights_positive, lambda0_nonzero, eigenvalues_not_sorted,
// row0_not_constant, orthonormality, shape_mismatch.
void validate_spectral_data(const SpectralData& data);

// JSON file with keys dimension, eigenvalues, quadrature_nodes (array of
// n-vectors), quadrature_weights, eigenfunctions (row-major), and an
// optional meta object of named scalars. load validates before returning.
void save_spectral_data(const SpectralData& data, const std::string& path,
                        const std::map<std::string, double>& meta = {});
SpectralData load_spectral_data(const std::string& path);

}  // namespace fracmin
