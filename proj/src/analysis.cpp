#include "fracmin/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fracmin/gammafn.hpp"
#include "fracmin/quadrature.hpp"

namespace fracmin {

double epsilon_threshold(double q, FracOrder s, const SpectralData& data) {
  if (q <= 2.0) return std::numeric_limits<double>::infinity();
  const double l1s = lambda_pow(data.lambda1(), s.s);
  return std::pow(l1s / (q - 2.0), 1.0 / (2.0 * s.s));
}

BigEResult estimate_big_E(double q, const ProblemParams& tmpl,
                          const SpectralData& data, double tol,
                          const SolverOptions& opts, double eps_max) {
  if (!(q > 2.0))
    throw std::invalid_argument("estimate_big_E: q must be > 2");
  if (!(tol > 0.0)) throw std::invalid_argument("estimate_big_E: tol must be > 0");
  const double eps_s = epsilon_threshold(q, tmpl.s, data);
  const double cap = eps_max > 0.0 ? eps_max : 10.0 * eps_s;
  const double upper = std::min(eps_s, cap);

  BigEResult out;
  out.upper_seed = upper;

  auto probe_constant = [&](double eps) {
    const MinimizeResult r =
        minimize_quotient(tmpl.with_q(q).with_eps(eps), data, opts);
    ++out.probes;
    if (!r.converged && !r.is_constant)
      throw std::runtime_error("estimate_big_E: solver did not converge at eps = " +
                               std::to_string(eps));
    return r.is_constant;
  };

  // The threshold cannot exceed the local one, so a constant verdict at the
  // seed already closes the bracket from above.
  if (probe_constant(upper)) {
    out.value = upper;
    out.at_upper_bound = true;
    return out;
  }

  double lo = 0.0, hi = upper;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe_constant(mid))
      lo = mid;
    else
      hi = mid;
  }
  out.value = 0.5 * (lo + hi);
  return out;
}

std::vector<PhaseCell> phase_sweep(const std::vector<double>& q_grid,
                                   const std::vector<double>& eps_grid,
                                   const ProblemParams& tmpl,
                                   const SpectralData& data,
                                   const SolverOptions& opts) {
  if (q_grid.empty() || eps_grid.empty())
    throw std::invalid_argument("phase_sweep: empty grid");
  for (double q : q_grid)
    if (!(q > 2.0) || q > tmpl.crit_exponent * (1.0 + 1e-12))
      throw std::invalid_argument("phase_sweep: q outside (2, critical]");
  for (double eps : eps_grid)
    if (!(eps > 0.0)) throw std::invalid_argument("phase_sweep: eps <= 0");

  std::vector<PhaseCell> cells(q_grid.size() * eps_grid.size());
  // Cells are parallelized here, so the inner solver runs single-threaded.
  SolverOptions inner = opts;
  inner.threads = 1;

  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const double q = q_grid[i / eps_grid.size()];
      const double eps = eps_grid[i % eps_grid.size()];
      PhaseCell cell;
      cell.q = q;
      cell.eps = eps;
      cell.eps_threshold_local = epsilon_threshold(q, tmpl.s, data);
      try {
        const MinimizeResult r =
            minimize_quotient(tmpl.with_q(q).with_eps(eps), data, inner);
        cell.constant_global = r.is_constant;
        cell.min_value = r.value;
        cell.solver_ok = r.converged;
      } catch (const std::exception&) {
        cell.solver_ok = false;
        cell.min_value = std::numeric_limits<double>::quiet_NaN();
      }
      cells[i] = cell;
    }
  };

  int workers = opts.threads > 0
                    ? opts.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(cells.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return cells;
}

bool phase_staircase_ok(const std::vector<PhaseCell>& cells) {
  for (const PhaseCell& lo : cells) {
    if (lo.constant_global) continue;
    for (const PhaseCell& hi : cells) {
      if (hi.q >= lo.q && hi.eps >= lo.eps && hi.constant_global) return false;
    }
  }
  return true;
}

double sobolev_sharp_constant(int n, FracOrder s) {
  if (!(n > 2.0 * s.s))
    throw std::domain_error("sobolev_sharp_constant: requires n > 2s");
  const double lg = 2.0 * s.s * std::log(2.0) + s.s * std::log(M_PI) +
                    log_gamma(0.5 * n + s.s) - log_gamma(0.5 * n - s.s) +
                    (2.0 * s.s / n) * (log_gamma(0.5 * n) - log_gamma(n));
  return std::exp(lg);
}

namespace {

// Per-axis resolution of box-built data: the distinct coordinates used on
// each axis (tensor grids repeat them) and the largest mode index.
struct AxisInfo {
  double max_gap = 1.0;
  int max_mode = 0;
};

AxisInfo axis_info(const SpectralData& data, int axis) {
  std::vector<double> coords(data.nodes.col(axis).data(),
                             data.nodes.col(axis).data() + data.points());
  std::sort(coords.begin(), coords.end());
  Eigen::VectorXd distinct(coords.size());
  int m = 0;
  for (double x : coords)
    if (m == 0 || x > distinct[m - 1] + 1e-13) distinct[m++] = x;
  AxisInfo info;
  info.max_gap = max_node_gap(distinct.head(m));
  for (const auto& k : data.multi_index)
    info.max_mode = std::max(info.max_mode, k[axis]);
  return info;
}

}  // namespace

double bubble_quotient(const BubbleParams& bp, const ProblemParams& p,
                       const SpectralData& data) {
  const int n = data.dimension;
  if (!(n > 2.0 * p.s.s))
    throw std::invalid_argument("bubble_quotient: requires n > 2s");
  if (!(bp.a > 0.0)) throw std::invalid_argument("bubble_quotient: a must be > 0");
  const double crit = critical_exponent(n, p.s);
  if (std::abs(p.q - crit) > 1e-9 * crit)
    throw std::invalid_argument(
        "bubble_quotient: q must equal the critical exponent");
  if (data.multi_index.empty())
    throw std::invalid_argument(
        "bubble_quotient: resolution rule needs box-built spectral data");

  Eigen::VectorXd center = bp.center;
  if (center.size() == 0) center = Eigen::VectorXd::Zero(n);
  if (center.size() != n)
    throw std::invalid_argument("bubble_quotient: center dimension mismatch");
  for (int d = 0; d < n; ++d)
    if (center[d] < 0.0 || center[d] > 1.0)
      throw std::invalid_argument("bubble_quotient: center outside the box");

  // A profile of width a needs nodes at spacing a/8 and modes out to 4/a
  // per axis; anything less biases the quotient up without warning.
  for (int d = 0; d < n; ++d) {
    const AxisInfo info = axis_info(data, d);
    if (info.max_gap > bp.a / 8.0)
      throw std::invalid_argument(
          "bubble_quotient: quadrature gap exceeds a/8 on axis " +
          std::to_string(d));
    if (info.max_mode < 4.0 / bp.a)
      throw std::invalid_argument(
          "bubble_quotient: modes per axis below 4/a on axis " +
          std::to_string(d));
  }

  GridFunction values(data.points());
  const double expo = 0.5 * (2.0 * p.s.s - n);
  for (int pt = 0; pt < data.points(); ++pt) {
    double r2 = bp.a * bp.a;
    for (int d = 0; d < n; ++d) {
      const double dx = data.nodes(pt, d) - center[d];
      r2 += dx * dx;
    }
    values[pt] = std::pow(r2, expo);
  }
  const CoefficientVector c = analyze(values, data);
  const double eps_s = epsilon_threshold(p.q, p.s, data);
  return rayleigh_I(c, p.with_eps(eps_s), data);
}

CubeGap cube_gap_check(int n, FracOrder s) {
  if (!(n > 2.0 * s.s))
    throw std::domain_error("cube_gap_check: requires n > 2s");
  CubeGap gap;
  gap.lhs = std::pow(M_PI, 2.0 * s.s) * (n - 2.0 * s.s) / (4.0 * s.s);
  gap.rhs = std::pow(2.0, -2.0 * s.s) * sobolev_sharp_constant(n, s);
  gap.holds = gap.lhs > gap.rhs;
  return gap;
}

}  // namespace fracmin
