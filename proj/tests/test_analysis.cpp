#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fracmin/analysis.hpp"
#include "fracmin/gammafn.hpp"
#include "fracmin/inequality.hpp"
#include "fracmin/io.hpp"
#include "fracmin/transforms.hpp"

using namespace fracmin;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpectralData box1d(int modes_per_axis, int quad) {
  DomainSpec spec;
  spec.dimension = 1;
  spec.kind = DomainKind::UnitBox;
  spec.modes_per_axis = modes_per_axis;
  spec.quad_nodes_per_axis = quad;
  return build_box_basis(spec);
}
}  // namespace

TEST_CASE("local bifurcation threshold") {
  const SpectralData data = box1d(3, 16);

  CHECK(epsilon_threshold(4.0, FracOrder(1.0), data) ==
        doctest::Approx(kPi / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(epsilon_threshold(4.0, FracOrder(0.5), data) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-13));

  // s = 1 reduces to the classical square-root formula
  for (double q : {2.5, 3.0, 4.0, 7.0}) {
    CHECK(epsilon_threshold(q, FracOrder(1.0), data) ==
          doctest::Approx(std::sqrt(kPi * kPi / (q - 2.0))).epsilon(1e-13));
  }

  CHECK(std::isinf(epsilon_threshold(2.0, FracOrder(0.5), data)));
  CHECK(std::isinf(epsilon_threshold(1.2, FracOrder(0.5), data)));
}

TEST_CASE("bisection estimate of the global threshold") {
  const SpectralData data = box1d(5, 24);
  const FracOrder half(0.5);
  SolverOptions opts;
  opts.n_random_starts = 3;

  SUBCASE("bracketing and ordering") {
    const double q1 = 3.0, q2 = 4.0;
    const ProblemParams tmpl(1, half, q1, 1.0);
    const double es1 = epsilon_threshold(q1, half, data);
    const double es2 = epsilon_threshold(q2, half, data);
    const double tol1 = 0.02 * es1, tol2 = 0.02 * es2;
    const BigEResult e1 = estimate_big_E(q1, tmpl, data, tol1, opts);
    const BigEResult e2 =
        estimate_big_E(q2, tmpl.with_q(q2), data, tol2, opts);

    CHECK(e1.value <= es1 + tol1);
    CHECK(e2.value <= es2 + tol2);
    CHECK(e1.value > 0.0);
    CHECK(e1.probes > 0);
    // the threshold decreases in q
    CHECK(e1.value >= e2.value - (tol1 + tol2));
  }

  SUBCASE("a cap below the answer is reported, not hidden") {
    const double q = 2.05;  // threshold far above any sane eps here
    const ProblemParams tmpl(1, half, q, 1.0);
    const BigEResult e =
        estimate_big_E(q, tmpl, data, 0.05, opts, /*eps_max=*/1.0);
    CHECK(e.at_upper_bound);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.upper_seed == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("input validation") {
    const ProblemParams tmpl(1, half, 4.0, 1.0);
    CHECK_THROWS_AS(estimate_big_E(2.0, tmpl, data, 0.1, opts),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_big_E(4.0, tmpl, data, -0.1, opts),
                    std::invalid_argument);
  }
}

TEST_CASE("phase sweep has the staircase structure") {
  const SpectralData data = box1d(5, 24);
  const FracOrder half(0.5);
  const ProblemParams tmpl(1, half, 3.0, 1.0);
  SolverOptions opts;
  opts.n_random_starts = 3;

  const std::vector<double> q_grid = {2.6, 3.2, 3.8, 4.4, 5.0};
  const std::vector<double> eps_grid = {0.5, 1.1, 1.7, 2.3, 2.9};
  const auto cells = phase_sweep(q_grid, eps_grid, tmpl, data, opts);
  REQUIRE(cells.size() == 25);

  CHECK(phase_staircase_ok(cells));
  bool saw_constant = false, saw_nonconstant = false;
  for (const PhaseCell& c : cells) {
    CHECK(c.solver_ok);
    if (c.constant_global) {
      saw_constant = true;
      CHECK(std::abs(c.min_value - std::pow(c.eps, 2.0 * half.s)) <= 1e-9);
    } else {
      saw_nonconstant = true;
    }
    if (c.eps > c.eps_threshold_local) CHECK_FALSE(c.constant_global);
  }
  CHECK(saw_constant);
  CHECK(saw_nonconstant);

  // row-major output order: q outer, eps inner
  CHECK(cells[0].q == 2.6);
  CHECK(cells[0].eps == 0.5);
  CHECK(cells[1].eps == 1.1);
  CHECK(cells[5].q == 3.2);

  CHECK_THROWS_AS(phase_sweep({}, eps_grid, tmpl, data, opts),
                  std::invalid_argument);
  CHECK_THROWS_AS(phase_sweep({2.0}, eps_grid, tmpl, data, opts),
                  std::invalid_argument);
  CHECK_THROWS_AS(phase_sweep(q_grid, {0.0}, tmpl, data, opts),
                  std::invalid_argument);
}

TEST_CASE("staircase predicate itself") {
  PhaseCell a;  // constant cell
  a.q = 3.0;
  a.eps = 1.0;
  a.constant_global = true;
  PhaseCell b = a;  // nonconstant strictly down-left of it
  b.q = 2.5;
  b.eps = 0.5;
  b.constant_global = false;
  CHECK_FALSE(phase_staircase_ok({a, b}));
  b.q = 3.5;  // now the nonconstant cell sits to the right: fine
  CHECK(phase_staircase_ok({a, b}));
}

TEST_CASE("sharp embedding constant") {
  CHECK(sobolev_sharp_constant(2, FracOrder(0.5)) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  // s -> 0 limit is 1
  CHECK(sobolev_sharp_constant(1, FracOrder(1e-6)) ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(sobolev_sharp_constant(1, FracOrder(0.5)),
                  std::domain_error);
  CHECK_THROWS_AS(sobolev_sharp_constant(1, FracOrder(0.8)),
                  std::domain_error);
}

TEST_CASE("cube comparison against the rescaled sharp constant") {
  // identity between the two forms of the right-hand side:
  // 2^-2s S * 4s / (pi^2s (n-2s)) = pi^-s A_n
  for (int n = 1; n <= 6; ++n) {
    for (double s : {0.1, 0.2, 0.35, 0.45, 0.7, 0.9}) {
      if (!(n > 2 * s)) continue;
      const CubeGap gap = cube_gap_check(n, FracOrder(s));
      CHECK(gap.lhs ==
            doctest::Approx(std::pow(kPi, 2 * s) * (n - 2 * s) / (4 * s))
                .epsilon(1e-13));
      const double lhs_form = gap.rhs * 4 * s /
                              (std::pow(kPi, 2 * s) * (n - 2 * s));
      const double rhs_form = A_value(n, s) / std::pow(kPi, s);
      CHECK(lhs_form == doctest::Approx(rhs_form).epsilon(1e-12));
      // gap verdict matches the A-form verdict
      CHECK(gap.holds == (A_value(n, s) < std::pow(kPi, s)));
      CHECK(gap.holds);
    }
  }
}

TEST_CASE("bubble quotient") {
  const FracOrder quarter(0.25);

  SUBCASE("very wide bubbles look constant") {
    const SpectralData data = box1d(32, 128);
    const ProblemParams p(1, quarter, 4.0, 1.0);
    BubbleParams bp;
    bp.a = 50.0;
    const double v = bubble_quotient(bp, p, data);
    const double constant_value =
        std::pow(epsilon_threshold(4.0, quarter, data), 0.5);
    CHECK(v == doctest::Approx(constant_value).epsilon(1e-3));
  }

  SUBCASE("narrowing bubbles descend") {
    const ProblemParams p(1, quarter, 4.0, 1.0);
    BubbleParams b1, b2, b3;
    b1.a = 0.4;
    b2.a = 0.2;
    b3.a = 0.1;
    const double v1 = bubble_quotient(b1, p, box1d(40, 168));
    const double v2 = bubble_quotient(b2, p, box1d(80, 328));
    const double v3 = bubble_quotient(b3, p, box1d(160, 648));
    CHECK(v2 < v1);
    CHECK(v3 < v2);
    // the wide rungs hover just above the constant level and only the
    // narrow ones dip below it
    const double constant_value = std::sqrt(kPi) / 2.0;
    CHECK(v1 == doctest::Approx(constant_value).epsilon(3e-3));
    CHECK(v3 < constant_value);
  }

  SUBCASE("refusals") {
    const SpectralData coarse = box1d(16, 64);
    const ProblemParams p(1, quarter, 4.0, 1.0);
    BubbleParams narrow;
    narrow.a = 0.05;  // needs ~80 modes, far beyond 16
    CHECK_THROWS_AS(bubble_quotient(narrow, p, coarse),
                    std::invalid_argument);

    BubbleParams ok;
    ok.a = 0.5;
    const ProblemParams wrong_q(1, quarter, 3.0, 1.0);
    CHECK_THROWS_AS(bubble_quotient(ok, wrong_q, coarse),
                    std::invalid_argument);

    BubbleParams outside;
    outside.a = 0.5;
    outside.center = Eigen::VectorXd::Constant(1, 2.0);
    CHECK_THROWS_AS(bubble_quotient(outside, p, coarse),
                    std::invalid_argument);

    const ProblemParams too_frac(1, FracOrder(0.6), 3.0, 1.0);
    CHECK_THROWS_AS(bubble_quotient(ok, too_frac, coarse),
                    std::invalid_argument);
  }
}

TEST_CASE("grid parser") {
  CHECK(parse_grid("2.5") == std::vector<double>{2.5});
  const auto g = parse_grid("1:3:5");
  REQUIRE(g.size() == 5);
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[2] == doctest::Approx(2.0));
  CHECK(g[4] == doctest::Approx(3.0));
  CHECK(parse_grid("4:9:1") == std::vector<double>{4.0});
  CHECK_THROWS_AS(parse_grid("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:0"), std::invalid_argument);
}

TEST_CASE("csv bodies carry full precision and stable headers") {
  PhaseCell c;
  c.q = 1.0 / 3.0;
  c.eps = 2.0;
  c.constant_global = true;
  c.min_value = std::sqrt(2.0);
  c.eps_threshold_local = kPi;
  const std::string body = phase_csv({c});
  CHECK(body.find("q,eps,constant_global,min_value,eps_threshold_local\n") ==
        0);
  CHECK(body.find("0.33333333333333331") != std::string::npos);
  CHECK(body.find("1.4142135623730951") != std::string::npos);

  CHECK(format_full(0.1) == "0.10000000000000001");
  CHECK(format_full(1.0) == "1");
}
