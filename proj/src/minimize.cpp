#include "fracmin/minimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace fracmin {
namespace {

// Uniform draw from the raw 64-bit stream. uniform_real_distribution is
// implementation-defined, which would break byte-identical reruns across
// standard libraries.
double uniform01(std::mt19937_64& eng) { return (eng() >> 11) * 0x1.0p-53; }

void normalize_lq(CoefficientVector& c, const ProblemParams& p,
                  const SpectralData& data) {
  const double nq = lq_norm(synthesize(c, data), p.q, data);
  if (nq > 0.0) c /= nq;
}

bool lex_less(const CoefficientVector& a, const CoefficientVector& b) {
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return true;
    if (a[j] > b[j]) return false;
  }
  return false;
}

int pool_size(const SolverOptions& opts, int jobs) {
  int t = opts.threads > 0
              ? opts.threads
              : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return std::min(t, jobs);
}

}  // namespace

SingleRun descend_single(const CoefficientVector& start, const ProblemParams& p,
                         const SpectralData& data, const SolverOptions& opts) {
  SingleRun run;
  CoefficientVector c = start;
  if (c.size() != data.modes())
    throw std::invalid_argument("descend_single: start length mismatch");
  if (c.squaredNorm() == 0.0)
    throw std::invalid_argument("descend_single: zero start");
  normalize_lq(c, p, data);
  double val = rayleigh_I(c, p, data);
  run.value_history.push_back(val);

  double step = 0.1;
  for (run.iters = 0; run.iters < opts.max_iters; ++run.iters) {
    // Take |u| whenever that does not increase the quotient. On the
    // continuum it never does; the truncated reprojection can lose a hair
    // in the denominator, hence the guard.
    CoefficientVector ca = analyze(abs_substitute(synthesize(c, data)), data);
    if (ca.squaredNorm() > 0.0) {
      normalize_lq(ca, p, data);
      const double va = rayleigh_I(ca, p, data);
      if (va <= val) {
        c = ca;
        val = va;
      }
    }

    const CoefficientVector g = grad_rayleigh(c, p, data);
    if (g.lpNorm<Eigen::Infinity>() < opts.tol_grad) {
      run.converged = true;
      break;
    }

    // Backtracking line search on the quotient itself, warm-started from
    // the last accepted step so runs do not crawl.
    step = std::clamp(step * 4.0, 1e-8, 1e3);
    bool accepted = false;
    while (step >= 1e-16) {
      CoefficientVector ct = c - step * g;
      if (ct.squaredNorm() > 0.0) {
        normalize_lq(ct, p, data);
        const double vt = rayleigh_I(ct, p, data);
        if (vt < val) {
          c = ct;
          val = vt;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No descent direction at line-search resolution: numerically
      // stationary even if the gradient norm has not hit tol.
      run.converged = true;
      break;
    }
    run.value_history.push_back(val);
  }

  run.c = c;
  run.value = val;
  return run;
}

std::vector<CoefficientVector> ladder_starts(const SpectralData& data) {
  const int J = data.modes();
  std::vector<CoefficientVector> starts;
  CoefficientVector one = CoefficientVector::Zero(J);
  one[0] = 1.0;
  starts.push_back(one);
  if (J > 1) {
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
      for (double sign : {1.0, -1.0}) {
        CoefficientVector c = one;
        c[1] = sign * t;
        starts.push_back(c);
      }
    }
    for (int j = 1; j < J; ++j) {
      CoefficientVector c = CoefficientVector::Zero(J);
      c[j] = 1.0;
      starts.push_back(c);
    }
  }
  return starts;
}

MinimizeResult minimize_quotient(const ProblemParams& p,
                                 const SpectralData& data,
                                 const SolverOptions& opts) {
  if (data.modes() < 2)
    throw std::invalid_argument("minimize_quotient: need at least two modes");

  std::vector<CoefficientVector> starts = ladder_starts(data);
  const int J = data.modes();
  for (int i = 0; i < opts.n_random_starts; ++i) {
    std::mt19937_64 eng(opts.seed + static_cast<std::uint64_t>(i));
    CoefficientVector c = CoefficientVector::Zero(J);
    c[0] = 1.0;
    for (int j = 1; j < J; ++j) c[j] = uniform01(eng) - 0.5;
    starts.push_back(c);
  }

  // Starts are independent; results land in fixed slots so the merge below
  // is identical regardless of scheduling.
  std::vector<SingleRun> runs(starts.size());
  const int workers = pool_size(opts, static_cast<int>(starts.size()));
  SolverOptions inner = opts;
  inner.threads = 1;
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= starts.size()) return;
      runs[i] = descend_single(starts[i], p, data, inner);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  size_t best = 0;
  for (size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].value < runs[best].value ||
        (runs[i].value == runs[best].value && lex_less(runs[i].c, runs[best].c)))
      best = i;
  }

  MinimizeResult result;
  result.starts_used = static_cast<int>(runs.size());
  const double e2s = p.eps_pow_2s();

  if (runs[best].value >= e2s - 1e-9) {
    // Nothing beat the constant beyond noise level; report the exact
    // constant so downstream constancy verdicts are deterministic.
    result.minimizer = CoefficientVector::Zero(J);
    result.minimizer[0] = 1.0;
    result.value = e2s;
    result.is_constant = true;
    result.converged = true;
    return result;
  }

  CoefficientVector c = runs[best].c;
  if (c[0] < 0.0) c = -c;  // u and -u tie; keep the nonnegative-mean one
  CoefficientVector ca = analyze(abs_substitute(synthesize(c, data)), data);
  if (ca.squaredNorm() > 0.0) {
    normalize_lq(ca, p, data);
    if (rayleigh_I(ca, p, data) <= runs[best].value) c = ca;
  }
  normalize_lq(c, p, data);
  result.minimizer = c;
  result.value = rayleigh_I(c, p, data);
  result.converged = runs[best].converged;
  const auto [mean, hat] = mean_split(c);
  result.is_constant = hat.norm() / c.norm() < 1e-6;
  return result;
}

LocalVerdict local_min_test_at_one(const ProblemParams& p,
                                   const SpectralData& data) {
  if (data.modes() < 2) return LocalVerdict::LocalMin;
  const double tol = 1e-9;
  // Eigenvalues ascend, so mode 1 is the softest direction.
  const double d2 = d2J_at_one(1, p, data);
  if (d2 > tol) return LocalVerdict::LocalMin;
  if (d2 < -tol) return LocalVerdict::Saddle;
  const double d3 = d3J_at_one_phi1(p, data);
  return std::abs(d3) > tol ? LocalVerdict::Saddle : LocalVerdict::Degenerate;
}

OracleResult brute_force_oracle(const ProblemParams& p,
                                const SpectralData& data, int modes,
                                double grid_radius, int grid_steps) {
  if (modes < 2 || modes > data.modes())
    throw std::invalid_argument("brute_force_oracle: modes out of range");
  if (grid_steps < 2 || !(grid_radius > 0.0))
    throw std::invalid_argument("brute_force_oracle: bad grid");
  const int free_axes = modes - 1;
  double cells = 1.0;
  for (int a = 0; a < free_axes; ++a) cells *= grid_steps;
  if (cells > 1e7)
    throw std::invalid_argument("brute_force_oracle: grid too large");

  const int J = data.modes();
  CoefficientVector c = CoefficientVector::Zero(J);
  c[0] = 1.0;  // scale invariance pins the mean component

  std::vector<double> coord(free_axes, 0.0);
  std::vector<double> best_coord(free_axes, 0.0);
  double best_val = rayleigh_I(c, p, data);

  auto eval_at = [&](const std::vector<double>& x) {
    for (int a = 0; a < free_axes; ++a) c[1 + a] = x[a];
    const double v = rayleigh_I(c, p, data);
    if (v < best_val) {
      best_val = v;
      best_coord = x;
    }
  };

  std::vector<int> odo(free_axes, 0);
  const double h0 = 2.0 * grid_radius / (grid_steps - 1);
  for (;;) {
    for (int a = 0; a < free_axes; ++a) coord[a] = -grid_radius + h0 * odo[a];
    eval_at(coord);
    int a = 0;
    for (; a < free_axes; ++a) {
      if (++odo[a] < grid_steps) break;
      odo[a] = 0;
    }
    if (a == free_axes) break;
  }

  // Derivative-free polish: shrink a 9-point-per-axis box around the
  // incumbent a few times. Stays off the gradient path on purpose.
  double h = h0;
  for (int round = 0; round < 3; ++round) {
    const std::vector<double> center = best_coord;
    std::vector<int> sub(free_axes, 0);
    for (;;) {
      for (int a = 0; a < free_axes; ++a)
        coord[a] = center[a] + (sub[a] - 4) * (h / 2.0);
      eval_at(coord);
      int a = 0;
      for (; a < free_axes; ++a) {
        if (++sub[a] < 9) break;
        sub[a] = 0;
      }
      if (a == free_axes) break;
    }
    h /= 2.0;
  }

  for (int a = 0; a < free_axes; ++a) c[1 + a] = best_coord[a];
  return {best_val, c};
}

}  // namespace fracmin
