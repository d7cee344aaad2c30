#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fracmin/gammafn.hpp"
#include "fracmin/inequality.hpp"

using namespace fracmin;

namespace {
constexpr double kPi = 3.14159265358979323846;

const IneqReport& find_report(const std::vector<IneqReport>& reports,
                              const std::string& prefix) {
  for (const IneqReport& r : reports)
    if (r.name.rfind(prefix, 0) == 0) return r;
  static IneqReport missing;
  REQUIRE_MESSAGE(false, "no report named ", prefix);
  return missing;
}
}  // namespace

TEST_CASE("gamma function basics") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_fn(6.0) == doctest::Approx(120.0).epsilon(1e-12));

  // recurrence on a random grid
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(0.05, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double x = uni(rng);
    CHECK(gamma_fn(x + 1.0) ==
          doctest::Approx(x * gamma_fn(x)).epsilon(1e-11));
  }

  // log form stays finite where the direct value overflows
  CHECK(std::isfinite(log_gamma(500.0)));
  CHECK(log_gamma(500.0) > 2500.0);
  CHECK(std::exp(log_gamma(6.0)) == doctest::Approx(120.0).epsilon(1e-12));

  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-2.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
}

TEST_CASE("A values") {
  // n = 2, s = 1 collapses symbolically to 2
  CHECK(A_value(2, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(A_value(2, 0.5) < std::sqrt(kPi));

  // below pi^s across the family; index-based grid so the n = 2s boundary
  // (where the two sides agree exactly) is excluded without float drift
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= 19; ++k) {
      const double s = k / 20.0;
      if (!(n > 2 * s)) continue;
      CHECK(A_value(n, s) < std::pow(kPi, s));
    }

  CHECK_THROWS_AS(A_value(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(A_value(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(A_value(2, 1.2), std::domain_error);
}

TEST_CASE("B values") {
  CHECK(std::abs(B_value(2) - 1.0) <= 1e-12);
  CHECK(B_value(3) >= 1.05);
  // n = 2 is an exact equality, so the log-space value may sit one ulp
  // under 1; from n = 3 on the sequence is strictly above
  CHECK(B_value(2) >= 1.0 - 1e-12);
  for (int n = 3; n <= 60; ++n) CHECK(B_value(n) > 1.0);

  // log-space evaluation against the direct product for moderate n
  for (int n = 2; n <= 30; ++n) {
    const double direct =
        (n + 2.0) * gamma_fn(n / 2.0) / ((n + 4.0) * gamma_fn(double(n))) *
        std::pow(2.0 * (n + 1.0) *
                     std::pow(n / (n + 2.0), (n + 2.0) / 2.0),
                 n / 2.0);
    CHECK(B_value(n) == doctest::Approx(direct).epsilon(1e-9));
  }

  // no overflow far beyond the double-factorial range
  CHECK(std::isfinite(B_value(400)));
  CHECK(B_value(400) >= 1.0);

  CHECK_THROWS_AS(B_value(1), std::domain_error);
}

TEST_CASE("g ratio") {
  for (int n = 2; n <= 40; ++n)
    CHECK(g_ratio(n) ==
          doctest::Approx(B_value(n + 2) / B_value(n)).epsilon(1e-10));
  for (int n = 2; n <= 60; ++n) {
    CHECK(g_ratio(n) > 1.0);
    CHECK(g_ratio(n + 1) < g_ratio(n));
  }
  // decreases toward one
  CHECK(g_ratio(4000.0) == doctest::Approx(1.0).epsilon(1e-2));
  CHECK_THROWS_AS(g_ratio(1.5), std::domain_error);
}

TEST_CASE("f monotonicity") {
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(i / 100.0);
  for (int n : {1, 2, 10, 20}) {
    const IneqReport r = f_monotonicity_check(n, grid);
    CHECK(r.holds);
    CHECK(r.min_margin > 0.0);
  }
  CHECK_THROWS_AS(f_monotonicity_check(2, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(f_monotonicity_check(2, {0.5, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(f_monotonicity_check(2, {0.5, 1.2}), std::invalid_argument);
}

TEST_CASE("the full chain holds") {
  const auto reports = verify_chain(20, 0.01);
  for (const IneqReport& r : reports) {
    INFO(r.name, " at ", r.worst_point);
    CHECK(r.holds);
    if (r.kind == IneqKind::Strict) CHECK(r.min_margin > 0.0);
    CHECK_FALSE(r.domain_checked.empty());
  }

  for (const char* name :
       {"a_ratio_decreasing", "a_below_pi_s", "base_n1", "base_n2",
        "base_n2_low_split", "base_n2_high_split", "reflection_identity",
        "base_n3", "bernoulli_bounds", "b2_equals_one", "b3_above_1_05",
        "b_sequence_above_one", "g_above_one", "g_decreasing",
        "g_matches_b_ratio", "poly_certificate", "f_monotone",
        "f_endpoint_domination", "a_ratio_closed_form"}) {
    const IneqReport& r = find_report(reports, name);
    CHECK(r.holds);
  }

  // the reflection-identity residual bound doubles as an accuracy check
  CHECK(find_report(reports, "reflection_identity").min_margin < 1e-11);
  CHECK(find_report(reports, "b2_equals_one").min_margin <= 1e-12);
  // the first Bernoulli bound is an exact equality at n = 2, so that
  // report is non-strict by design
  CHECK(find_report(reports, "bernoulli_bounds").kind == IneqKind::NonStrict);

  CHECK_THROWS_AS(verify_chain(2, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(verify_chain(20, 0.6), std::invalid_argument);
}

TEST_CASE("margins are stable under grid refinement") {
  const auto coarse = verify_chain(10, 0.02);
  const auto fine = verify_chain(10, 0.01);
  for (const char* name :
       {"a_ratio_decreasing", "a_below_pi_s", "base_n1", "base_n2",
        "base_n3", "f_monotone"}) {
    const double m1 = find_report(coarse, name).min_margin;
    const double m2 = find_report(fine, name).min_margin;
    INFO(name, ": coarse ", m1, " fine ", m2);
    CHECK(std::abs(m1 - m2) < 0.10 * std::max(std::abs(m1), std::abs(m2)));
    CHECK(m1 > 0.0);
    CHECK(m2 > 0.0);
  }
}
