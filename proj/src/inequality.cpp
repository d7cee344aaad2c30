#include "fracmin/inequality.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fracmin/gammafn.hpp"

namespace fracmin {
namespace {

std::string point_ns(int n, double s) {
  std::ostringstream os;
  os << "n=" << n << ", s=" << s;
  return os.str();
}

std::string point_n(double n) {
  std::ostringstream os;
  os << "n=" << n;
  return os.str();
}

// Running minimum with the attaining point.
struct Scan {
  double margin = std::numeric_limits<double>::infinity();
  std::string worst;
  void update(double value, const std::string& point) {
    if (value < margin) {
      margin = value;
      worst = point;
    }
  }
};

IneqReport make_report(const std::string& name, const std::string& domain,
                       const Scan& scan, IneqKind kind, double tol = 0.0) {
  IneqReport r;
  r.name = name;
  r.domain_checked = domain;
  r.min_margin = scan.margin;
  r.worst_point = scan.worst;
  r.kind = kind;
  switch (kind) {
    case IneqKind::Strict: r.holds = scan.margin > 0.0; break;
    case IneqKind::NonStrict: r.holds = scan.margin >= -1e-12; break;
    case IneqKind::Equality: r.holds = scan.margin <= tol; break;
  }
  return r;
}

// For equality reports Scan tracks the *largest* deviation instead.
struct MaxScan {
  double dev = 0.0;
  std::string worst;
  void update(double value, const std::string& point) {
    if (value > dev) {
      dev = value;
      worst = point;
    }
  }
};

IneqReport make_equality_report(const std::string& name,
                                const std::string& domain, const MaxScan& scan,
                                double tol) {
  IneqReport r;
  r.name = name;
  r.domain_checked = domain;
  r.min_margin = scan.dev;
  r.worst_point = scan.worst;
  r.kind = IneqKind::Equality;
  r.holds = scan.dev <= tol;
  return r;
}

double log_A(int n, double s) {
  return std::log(2.0 * s) + log_gamma(0.5 * (n + 2.0 * s)) -
         log_gamma(0.5 * (n - 2.0 * s + 2.0)) +
         (2.0 * s / n) * (log_gamma(0.5 * n) - log_gamma(double(n)));
}

double log_B(double n) {
  return std::log(n + 2.0) - std::log(n + 4.0) + log_gamma(0.5 * n) -
         log_gamma(n) +
         0.5 * n * (std::log(2.0 * (n + 1.0)) +
                    0.5 * (n + 2.0) * (std::log(n) - std::log(n + 2.0)));
}

double log_f(int n, double s) {
  return n * (n + 2.0) / (4.0 * s) *
         std::log((n + 2.0 * s) / (n - 2.0 * s + 2.0));
}

double f_value(int n, double s) { return std::exp(log_f(n, s)); }

// f(s) * Gamma(n) / (Gamma(n/2) [2(n+1)]^(n/2)), the quantity whose being
// below 1 is equivalent to the ratio A_{n+2}/A_n being below 1.
double ratio_core(int n, double s) {
  const double log_rest = log_gamma(double(n)) - log_gamma(0.5 * n) -
                          0.5 * n * std::log(2.0 * (n + 1.0));
  return f_value(n, s) * std::exp(log_rest);
}

// Closed form of A_{n+2}/A_n.
double a_ratio_closed(int n, double s) {
  const double log_rest = log_gamma(double(n)) - log_gamma(0.5 * n) -
                          0.5 * n * std::log(2.0 * (n + 1.0));
  return (n + 2.0 * s) / (n - 2.0 * s + 2.0) *
         std::exp(4.0 * s / (n * (n + 2.0)) * log_rest);
}

std::vector<double> make_grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (double s = lo; s <= hi + 1e-12; s += step) g.push_back(std::min(s, hi));
  if (g.size() < 2) g = {lo, hi};
  return g;
}

// Degree-8 numerator of the monotonicity certificate for g, in the original
// variable and shifted by 2. The shifted form has all coefficients positive,
// which is the whole point; the correspondence is checked exactly in int64.
constexpr std::array<std::int64_t, 9> kPolyX = {18,    219,   910,   1236, -968,
                                                -4080, -5024, -4608, -2304};
constexpr std::array<std::int64_t, 9> kPolyY = {
    18, 507, 5992, 38616, 147472, 338112, 443968, 285504, 50688};

double horner(const std::array<std::int64_t, 9>& coef, double x) {
  double v = 0.0;
  for (std::int64_t c : coef) v = v * x + double(c);
  return v;
}

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients of p(x) rewritten in y = x - 2, exact integer arithmetic.
std::array<std::int64_t, 9> shift_by_two(const std::array<std::int64_t, 9>& cx) {
  std::array<std::int64_t, 9> cy{};
  for (int k = 0; k <= 8; ++k) {         // degree of the term, cx[8-k] x^k
    const std::int64_t a = cx[8 - k];
    std::int64_t pow2 = 1;
    for (int j = k; j >= 0; --j) {       // x^k = sum_j C(k,j) 2^(k-j) y^j
      cy[8 - j] += a * binom(k, j) * pow2;
      pow2 *= 2;
    }
  }
  return cy;
}

}  // namespace

double A_value(int n, double s) {
  if (n < 1) throw std::domain_error("A_value: n must be >= 1");
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("A_value: s must lie in (0, 1]");
  return std::exp(log_A(n, s));
}

double B_value(int n) {
  if (n < 2) throw std::domain_error("B_value: n must be >= 2");
  return std::exp(log_B(double(n)));
}

double g_ratio(double n) {
  if (!(n >= 2.0)) throw std::domain_error("g_ratio: n must be >= 2");
  const double lg =
      2.0 * std::log(n + 4.0) - std::log(n + 2.0) - std::log(n + 6.0) +
      0.5 * (n + 2.0) *
          (std::log(n + 3.0) + 2.0 * std::log(n + 2.0) - std::log(n + 1.0) -
           2.0 * std::log(n + 4.0) +
           0.5 * n * (2.0 * std::log(n + 2.0) - std::log(n) - std::log(n + 4.0)));
  return std::exp(lg);
}

IneqReport f_monotonicity_check(int n, const std::vector<double>& s_grid) {
  if (n < 1) throw std::domain_error("f_monotonicity_check: n must be >= 1");
  if (s_grid.size() < 2)
    throw std::invalid_argument("f_monotonicity_check: grid too small");
  for (size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0.0 && s_grid[i] <= 1.0))
      throw std::invalid_argument("f_monotonicity_check: grid outside (0,1]");
    if (i > 0 && s_grid[i] <= s_grid[i - 1])
      throw std::invalid_argument("f_monotonicity_check: grid not ascending");
  }
  // Margin as a log-space difference quotient. Positivity is still exactly
  // monotonicity of f, but the margin stays O(1): near s = 0 the function
  // itself collapses super-exponentially, so raw differences there underflow
  // and jump by orders of magnitude under refinement, while d log f / ds is
  // smallest at the right end of the grid and moves only O(step).
  Scan scan;
  for (size_t i = 0; i + 1 < s_grid.size(); ++i) {
    const double ds = s_grid[i + 1] - s_grid[i];
    const double quot = (log_f(n, s_grid[i + 1]) - log_f(n, s_grid[i])) / ds;
    std::ostringstream os;
    os << "n=" << n << ", s in [" << s_grid[i] << ", " << s_grid[i + 1] << "]";
    scan.update(quot, os.str());
  }
  std::ostringstream dom;
  dom << "n=" << n << ", s in [" << s_grid.front() << ", " << s_grid.back()
      << "], " << s_grid.size() << " points";
  return make_report("f_monotone", dom.str(), scan, IneqKind::Strict);
}

std::vector<IneqReport> verify_chain(int n_max, double s_step) {
  if (n_max < 3) throw std::invalid_argument("verify_chain: n_max must be >= 3");
  if (!(s_step > 0.0 && s_step < 0.5))
    throw std::invalid_argument("verify_chain: s_step must lie in (0, 0.5)");

  // Buffered grids: margins of several links legitimately vanish toward
  // s -> 0, s -> 1/2 (the n = 1 family) and s -> 1, so the verification
  // region keeps a fixed standoff and refines only its interior.
  const std::vector<double> s_full = make_grid(0.05, 0.95, s_step);
  const std::vector<double> s_half = make_grid(0.05, 0.45, s_step);
  const int nB = std::max(60, n_max);

  std::vector<IneqReport> reports;

  {  // ratio step: A_{n+2} strictly below A_n wherever the claim lives
    Scan scan;
    for (int n = 1; n <= n_max; ++n) {
      const auto& grid = (n == 1) ? s_half : s_full;
      for (double s : grid)
        scan.update(A_value(n, s) - A_value(n + 2, s), point_ns(n, s));
    }
    reports.push_back(make_report(
        "a_ratio_decreasing",
        "n=1.." + std::to_string(n_max) + ", buffered s grid with n > 2s",
        scan, IneqKind::Strict));
  }

  {  // the target inequality itself
    Scan scan;
    for (int n = 1; n <= n_max; ++n) {
      const auto& grid = (n == 1) ? s_half : s_full;
      for (double s : grid)
        scan.update(std::pow(M_PI, s) - A_value(n, s), point_ns(n, s));
    }
    reports.push_back(make_report(
        "a_below_pi_s",
        "n=1.." + std::to_string(n_max) + ", buffered s grid with n > 2s",
        scan, IneqKind::Strict));
  }

  {  // n = 1 base case, s < 1/2
    Scan scan;
    for (double s : s_half)
      scan.update(1.0 - 2.0 * s * gamma_fn(0.5 * (1.0 + 2.0 * s)) /
                            gamma_fn(0.5 * (3.0 - 2.0 * s)),
                  point_ns(1, s));
    reports.push_back(make_report("base_n1", "n=1, s in [0.05, 0.45]", scan,
                                  IneqKind::Strict));
  }

  {  // n = 2 base case after reflection
    Scan scan;
    for (double s : s_full) {
      const double g1s = gamma_fn(1.0 + s);
      scan.update(std::pow(M_PI, 1.0 + s) * (1.0 - s) -
                      2.0 * g1s * g1s * std::sin(M_PI * s),
                  point_ns(2, s));
    }
    reports.push_back(make_report("base_n2", "n=2, s in [0.05, 0.95]", scan,
                                  IneqKind::Strict));
  }

  {  // the two-range estimate that proves base_n2, split at s = 0.7
    Scan lo_scan, hi_scan;
    for (double s : s_full) {
      const double g1s = gamma_fn(1.0 + s);
      const double lhs = 2.0 * g1s * g1s * std::sin(M_PI * s);
      if (s <= 0.7 + 1e-12) {
        lo_scan.update(2.0 - lhs, point_ns(2, s));
        lo_scan.update(std::pow(M_PI, 1.0 + s) * (1.0 - s) - 2.0,
                       point_ns(2, s));
      }
      if (s >= 0.7 - 1e-12) {
        const double mid = 2.0 * std::sin(M_PI * (1.0 - s));
        hi_scan.update(mid - lhs, point_ns(2, s));
        hi_scan.update(2.0 * M_PI * (1.0 - s) - mid, point_ns(2, s));
        hi_scan.update(std::pow(M_PI, 1.0 + s) * (1.0 - s) -
                           2.0 * M_PI * (1.0 - s),
                       point_ns(2, s));
      }
    }
    reports.push_back(make_report("base_n2_low_split", "n=2, s in [0.05, 0.7]",
                                  lo_scan, IneqKind::Strict));
    reports.push_back(make_report("base_n2_high_split", "n=2, s in [0.7, 0.95]",
                                  hi_scan, IneqKind::Strict));
  }

  {  // reflection identity residual
    MaxScan scan;
    for (double z = 0.02; z <= 0.98 + 1e-12; z += s_step) {
      const double res =
          std::abs(std::exp(log_gamma(z) + log_gamma(1.0 - z)) *
                       std::sin(M_PI * z) -
                   M_PI);
      scan.update(res, "z=" + std::to_string(z));
    }
    reports.push_back(make_equality_report(
        "reflection_identity (tol 1e-11)", "z in [0.02, 0.98]", scan, 1e-11));
  }

  {  // n = 3 base case
    Scan scan;
    for (double s : s_full)
      scan.update(std::pow(4.0 * M_PI, 2.0 * s / 3.0) *
                          gamma_fn(0.5 * (5.0 - 2.0 * s)) -
                      2.0 * s * gamma_fn(0.5 * (3.0 + 2.0 * s)),
                  point_ns(3, s));
    reports.push_back(make_report("base_n3", "n=3, s in [0.05, 0.95]", scan,
                                  IneqKind::Strict));
  }

  {  // Bernoulli bounds feeding the limit of g; exact equality at n = 2
    Scan scan;
    for (int n = 2; n <= nB; ++n) {
      const double t1 = 4.0 / (double(n) * n + 4.0 * n);
      scan.update(std::pow(1.0 + t1, 0.5 * n) - (n + 6.0) / (n + 4.0),
                  point_n(n) + " (first bound)");
      const double num = double(n) * n + 2.0 * n - 4.0;
      const double den = (n + 1.0) * std::pow(n + 4.0, 3.0);
      scan.update(std::pow(1.0 - 2.0 * num / den, 0.5 * (n + 2.0)) -
                      (1.0 - num * (n + 2.0) / den),
                  point_n(n) + " (second bound)");
    }
    reports.push_back(make_report("bernoulli_bounds",
                                  "n=2.." + std::to_string(nB), scan,
                                  IneqKind::NonStrict));
  }

  {  // B_2 = 1 exactly; B_3 clears 1.05; B_n >= 1 beyond
    MaxScan b2;
    b2.update(std::abs(B_value(2) - 1.0), "n=2");
    reports.push_back(
        make_equality_report("b2_equals_one (tol 1e-12)", "n=2", b2, 1e-12));

    Scan b3;
    b3.update(B_value(3) - 1.05, "n=3");
    reports.push_back(
        make_report("b3_above_1_05", "n=3", b3, IneqKind::Strict));

    Scan scan;
    for (int n = 3; n <= nB; ++n)
      scan.update(B_value(n) - 1.0, point_n(n));
    reports.push_back(make_report("b_sequence_above_one",
                                  "n=3.." + std::to_string(nB), scan,
                                  IneqKind::Strict));
  }

  {  // g sits above 1 and decreases
    Scan above, decreasing;
    for (int n = 2; n <= nB; ++n) {
      above.update(g_ratio(n) - 1.0, point_n(n));
      if (n < nB) decreasing.update(g_ratio(n) - g_ratio(n + 1), point_n(n));
    }
    reports.push_back(make_report("g_above_one", "n=2.." + std::to_string(nB),
                                  above, IneqKind::Strict));
    reports.push_back(make_report("g_decreasing", "n=2.." + std::to_string(nB),
                                  decreasing, IneqKind::Strict));

    MaxScan consistency;
    for (int n = 2; n <= 40; ++n)
      consistency.update(
          std::abs(g_ratio(n) - B_value(n + 2) / B_value(n)), point_n(n));
    reports.push_back(make_equality_report("g_matches_b_ratio (tol 1e-10)",
                                           "n=2..40", consistency, 1e-10));
  }

  {  // sign certificate for the derivative bound behind g's monotonicity:
    // the shifted numerator must have all-positive coefficients, match the
    // original exactly, and stay positive along the half-line
    bool ok = shift_by_two(kPolyX) == kPolyY;
    Scan scan;
    for (std::int64_t c : kPolyY) scan.update(double(c), "coefficient");
    for (double y = 0.0; y <= 100.0 + 1e-9; y += 1.0) {
      scan.update(horner(kPolyY, y), "y=" + std::to_string(y));
      const double px = horner(kPolyX, y + 2.0);
      const double py = horner(kPolyY, y);
      if (std::abs(px - py) > 1e-10 * std::max(1.0, std::abs(py))) ok = false;
    }
    IneqReport r = make_report("poly_certificate",
                               "y in [0, 100] and exact coefficient shift",
                               scan, IneqKind::Strict);
    r.holds = r.holds && ok;
    if (!ok) r.worst_point = "coefficient correspondence failed";
    reports.push_back(r);
  }

  {  // f increasing on (0,1] for every n, margin as log-space quotient
    Scan scan;
    for (int n = 1; n <= n_max; ++n) {
      const IneqReport r = f_monotonicity_check(n, s_full);
      scan.update(r.min_margin, r.worst_point);
    }
    reports.push_back(make_report("f_monotone",
                                  "n=1.." + std::to_string(n_max) +
                                      ", s in [0.05, 0.95]",
                                  scan, IneqKind::Strict));
  }

  {  // monotonicity transfer: the s = 1 endpoint dominates and closes
    Scan scan;
    for (int n = 1; n <= n_max; ++n) {
      const double at_one = ratio_core(n, 1.0);
      scan.update(1.0 - at_one, point_ns(n, 1.0));
      for (double s : s_full)
        scan.update(at_one - ratio_core(n, s), point_ns(n, s));
    }
    reports.push_back(make_report("f_endpoint_domination",
                                  "n=1.." + std::to_string(n_max) +
                                      ", s in [0.05, 0.95] vs s=1",
                                  scan, IneqKind::Strict));
  }

  {  // the closed form used for the ratio really is A_{n+2}/A_n
    MaxScan scan;
    for (int n = 1; n <= n_max; ++n) {
      const auto& grid = (n == 1) ? s_half : s_full;
      for (double s : grid) {
        const double direct = A_value(n + 2, s) / A_value(n, s);
        scan.update(std::abs(direct - a_ratio_closed(n, s)) / direct,
                    point_ns(n, s));
      }
    }
    reports.push_back(make_equality_report(
        "a_ratio_closed_form (rel tol 1e-12)",
        "n=1.." + std::to_string(n_max) + ", buffered s grid", scan, 1e-12));
  }

  return reports;
}

}  // namespace fracmin
