#include "fracmin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "fracmin/quadrature.hpp"
#include "json.hpp"

namespace fracmin {

double SpectralData::lambda1() const {
  for (int j = 0; j < modes(); ++j)
    if (eigenvalues[j] > 0.0) return eigenvalues[j];
  throw std::runtime_error("SpectralData: no nonzero eigenvalue");
}

namespace {

// 1D Neumann cosine factor: c(0,t) = 1, c(k,t) = sqrt(2) cos(k pi t).
double cosine_factor(int k, double t) {
  if (k == 0) return 1.0;
  return std::sqrt(2.0) * std::cos(k * M_PI * t);
}

}  // namespace

SpectralData build_box_basis(const DomainSpec& spec) {
  if (spec.kind != DomainKind::UnitBox)
    throw std::invalid_argument("build_box_basis: spec.kind must be UnitBox");
  const int n = spec.dimension;
  const int N = spec.modes_per_axis;
  const int M = spec.quad_nodes_per_axis;
  if (n < 1 || N < 1 || M < 1)
    throw std::invalid_argument("build_box_basis: dimension, N, M must be >= 1");
  if (M < 4 * N)
    throw std::invalid_argument(
        "build_box_basis: need quad_nodes_per_axis >= 4 * modes_per_axis");

  const QuadratureRule rule = gauss_legendre_unit(M);

  // Tensor quadrature grid, first axis fastest.
  long points = 1;
  for (int d = 0; d < n; ++d) points *= M;
  SpectralData data;
  data.dimension = n;
  data.nodes.resize(points, n);
  data.weights.resize(points);
  for (long p = 0; p < points; ++p) {
    long rest = p;
    double w = 1.0;
    for (int d = 0; d < n; ++d) {
      const int i = static_cast<int>(rest % M);
      rest /= M;
      data.nodes(p, d) = rule.nodes[i];
      w *= rule.weights[i];
    }
    data.weights[p] = w;
  }

  // All multi-indices 0..N per axis, enumerated with the first axis fastest,
  // then stable-sorted by eigenvalue so ties keep that order.
  long modes = 1;
  for (int d = 0; d < n; ++d) modes *= (N + 1);
  std::vector<std::vector<int>> idx(modes, std::vector<int>(n));
  for (long m = 0; m < modes; ++m) {
    long rest = m;
    for (int d = 0; d < n; ++d) {
      idx[m][d] = static_cast<int>(rest % (N + 1));
      rest /= (N + 1);
    }
  }
  std::vector<long> order(modes);
  std::iota(order.begin(), order.end(), 0);
  auto eig_of = [&](long m) {
    double k2 = 0.0;
    for (int d = 0; d < n; ++d) k2 += double(idx[m][d]) * idx[m][d];
    return M_PI * M_PI * k2;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](long a, long b) { return eig_of(a) < eig_of(b); });

  data.eigenvalues.resize(modes);
  data.eigenfunctions.resize(modes, points);
  data.multi_index.resize(modes);
  for (long r = 0; r < modes; ++r) {
    const long m = order[r];
    data.eigenvalues[r] = eig_of(m);
    data.multi_index[r] = idx[m];
    for (long p = 0; p < points; ++p) {
      double v = 1.0;
      for (int d = 0; d < n; ++d) v *= cosine_factor(idx[m][d], data.nodes(p, d));
      data.eigenfunctions(r, p) = v;
    }
  }
  data.eigenvalues[0] = 0.0;  // exact, not pi^2 * 0 by accident of round-off
  return data;
}

SpectralData build_asymmetric_interval(int quad_points) {
  // Rotate the first two cosine modes: psi_1 = (e1 + 0.4 e2)/sqrt(1.16),
  // psi_2 = (-0.4 e1 + e2)/sqrt(1.16). Orthonormality is exact and psi_1
  // picks up a cubic self-overlap through the e1^2 e2 cross term.
  DomainSpec box{1, DomainKind::UnitBox, 2, std::max(quad_points, 8)};
  SpectralData base = build_box_basis(box);

  const double r = 1.0 / std::sqrt(1.16);
  SpectralData data;
  data.dimension = 1;
  data.nodes = base.nodes;
  data.weights = base.weights;
  data.eigenvalues.resize(3);
  data.eigenvalues << 0.0, M_PI * M_PI, 4.0 * M_PI * M_PI;
  data.eigenfunctions.resize(3, base.points());
  data.eigenfunctions.row(0) = base.eigenfunctions.row(0);
  data.eigenfunctions.row(1) =
      r * (base.eigenfunctions.row(1) + 0.4 * base.eigenfunctions.row(2));
  data.eigenfunctions.row(2) =
      r * (-0.4 * base.eigenfunctions.row(1) + base.eigenfunctions.row(2));
  return data;
}

double asymmetric_interval_cubed() {
  // 3 a^2 b <e1^2, e2> with a = 1/sqrt(1.16), b = 0.4/sqrt(1.16) and
  // <e1^2, e2> = 1/sqrt(2).
  const double a = 1.0 / std::sqrt(1.16);
  const double b = 0.4 / std::sqrt(1.16);
  return 3.0 * a * a * b / std::sqrt(2.0);
}

double check_orthonormality(const SpectralData& data) {
  const Eigen::MatrixXd gram = data.eigenfunctions *
                               data.weights.asDiagonal() *
                               data.eigenfunctions.transpose();
  const Eigen::MatrixXd dev =
      gram - Eigen::MatrixXd::Identity(data.modes(), data.modes());
  return dev.cwiseAbs().maxCoeff();
}

void validate_spectral_data(const SpectralData& data) {
  const int J = data.modes();
  const int P = data.points();
  if (J < 1 || P < 1 || data.nodes.rows() != P ||
      data.nodes.cols() != data.dimension || data.eigenfunctions.rows() != J ||
      data.eigenfunctions.cols() != P)
    throw std::runtime_error("spectral data invalid: shape_mismatch");
  if ((data.weights.array() <= 0.0).any())
    throw std::runtime_error("spectral data invalid: weights_positive");
  if (std::abs(data.weights.sum() - 1.0) > 1e-12)
    throw std::runtime_error("spectral data invalid: weights_sum");
  if (data.eigenvalues[0] != 0.0)
    throw std::runtime_error("spectral data invalid: lambda0_nonzero");
  for (int j = 1; j < J; ++j)
    if (data.eigenvalues[j] < data.eigenvalues[j - 1] || data.eigenvalues[j] < 0.0)
      throw std::runtime_error("spectral data invalid: eigenvalues_not_sorted");
  if ((data.eigenfunctions.row(0).array() - 1.0).abs().maxCoeff() > 1e-12)
    throw std::runtime_error("spectral data invalid: row0_not_constant");
  if (check_orthonormality(data) > 1e-10)
    throw std::runtime_error("spectral data invalid: orthonormality");
}

void save_spectral_data(const SpectralData& data, const std::string& path,
                        const std::map<std::string, double>& meta) {
  nlohmann::json j;
  j["dimension"] = data.dimension;
  j["eigenvalues"] = std::vector<double>(
      data.eigenvalues.data(), data.eigenvalues.data() + data.modes());
  auto nodes = nlohmann::json::array();
  for (int p = 0; p < data.points(); ++p) {
    auto pt = nlohmann::json::array();
    for (int d = 0; d < data.dimension; ++d) pt.push_back(data.nodes(p, d));
    nodes.push_back(std::move(pt));
  }
  j["quadrature_nodes"] = std::move(nodes);
  j["quadrature_weights"] = std::vector<double>(
      data.weights.data(), data.weights.data() + data.points());
  auto rows = nlohmann::json::array();
  for (int r = 0; r < data.modes(); ++r) {
    auto row = nlohmann::json::array();
    for (int p = 0; p < data.points(); ++p) row.push_back(data.eigenfunctions(r, p));
    rows.push_back(std::move(row));
  }
  j["eigenfunctions"] = std::move(rows);
  if (!meta.empty()) j["meta"] = meta;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(1) << "\n";
}

SpectralData load_spectral_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spectral data file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("spectral data invalid: parse error: " +
                             std::string(e.what()));
  }

  SpectralData data;
  try {
    data.dimension = j.at("dimension").get<int>();
    const auto eig = j.at("eigenvalues").get<std::vector<double>>();
    const auto wts = j.at("quadrature_weights").get<std::vector<double>>();
    const auto& nj = j.at("quadrature_nodes");
    const auto& fj = j.at("eigenfunctions");
    const int J = static_cast<int>(eig.size());
    const int P = static_cast<int>(wts.size());
    if (static_cast<int>(nj.size()) != P || static_cast<int>(fj.size()) != J)
      throw std::runtime_error("spectral data invalid: shape_mismatch");
    data.eigenvalues = Eigen::Map<const Eigen::VectorXd>(eig.data(), J);
    data.weights = Eigen::Map<const Eigen::VectorXd>(wts.data(), P);
    data.nodes.resize(P, data.dimension);
    for (int p = 0; p < P; ++p) {
      const auto pt = nj[p].get<std::vector<double>>();
      if (static_cast<int>(pt.size()) != data.dimension)
        throw std::runtime_error("spectral data invalid: shape_mismatch");
      for (int d = 0; d < data.dimension; ++d) data.nodes(p, d) = pt[d];
    }
    data.eigenfunctions.resize(J, P);
    for (int r = 0; r < J; ++r) {
      const auto row = fj[r].get<std::vector<double>>();
      if (static_cast<int>(row.size()) != P)
        throw std::runtime_error("spectral data invalid: shape_mismatch");
      for (int p = 0; p < P; ++p) data.eigenfunctions(r, p) = row[p];
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("spectral data invalid: schema: " +
                             std::string(e.what()));
  }
  validate_spectral_data(data);
  return data;
}

}  // namespace fracmin
