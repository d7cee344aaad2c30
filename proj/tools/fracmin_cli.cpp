// Command-line front end: minimize / bifurcation / phase / big-e / bubble /
// verify-ineq / make-domain. Every run writes its artifact plus a JSON
// manifest holding the full input set, so any number in the output can be
// recomputed from the manifest alone.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 numerical failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracmin/analysis.hpp"
#include "fracmin/gammafn.hpp"
#include "fracmin/inequality.hpp"
#include "fracmin/io.hpp"

namespace {

constexpr const char* kVersion = "fracmin 0.1.0";

using nlohmann::json;
using namespace fracmin;

struct DomainOpts {
  std::string data_path;  // load instead of building when nonempty
  int dimension = 1;
  int modes = 16;  // per axis
  int quad = 0;    // per axis; 0 picks an oversampled default
};

// 4x oversampling alone leaves visible orthonormality error below ~5 modes;
// the +8 floor keeps the Gram matrix at machine precision for every size.
int default_quad(int modes) { return 4 * modes + 8; }

void add_domain_flags(CLI::App* cmd, DomainOpts& d) {
  cmd->add_option("--data", d.data_path,
                  "Spectral data file (overrides the built-in box)");
  cmd->add_option("--n", d.dimension, "Box dimension")->check(CLI::Range(1, 4));
  cmd->add_option("--modes", d.modes, "Cosine modes per axis");
  cmd->add_option("--quad", d.quad,
                  "Quadrature nodes per axis (default 4 * modes + 8)");
}

SpectralData resolve_domain(const DomainOpts& d) {
  if (!d.data_path.empty()) return load_spectral_data(d.data_path);
  DomainSpec spec;
  spec.dimension = d.dimension;
  spec.kind = DomainKind::UnitBox;
  spec.modes_per_axis = d.modes;
  spec.quad_nodes_per_axis = d.quad > 0 ? d.quad : default_quad(d.modes);
  return build_box_basis(spec);
}

json domain_json(const DomainOpts& d) {
  json j;
  if (!d.data_path.empty()) {
    j["data"] = d.data_path;
  } else {
    j["dimension"] = d.dimension;
    j["modes_per_axis"] = d.modes;
    j["quad_per_axis"] = d.quad > 0 ? d.quad : default_quad(d.modes);
  }
  return j;
}

struct SolverFlags {
  SolverOptions opts;
  void add(CLI::App* cmd) {
    cmd->add_option("--max-iters", opts.max_iters, "Descent iteration cap");
    cmd->add_option("--tol-grad", opts.tol_grad, "Gradient stopping tolerance");
    cmd->add_option("--random-starts", opts.n_random_starts,
                    "Seeded random starts per solve");
    cmd->add_option("--seed", opts.seed, "Random-start seed");
    cmd->add_option("--threads", opts.threads,
                    "Worker threads (0 = hardware concurrency)");
  }
  json to_json() const {
    return {{"max_iters", opts.max_iters},
            {"tol_grad", opts.tol_grad},
            {"n_random_starts", opts.n_random_starts},
            {"seed", opts.seed},
            {"threads", opts.threads}};
  }
};

class Manifest {
 public:
  explicit Manifest(const std::string& command) : start_(clock_::now()) {
    j_["tool_version"] = kVersion;
    j_["command"] = command;
  }
  json& inputs() { return j_["inputs"]; }
  json& results() { return j_["results"]; }
  void write(const std::string& path) {
    j_["wall_time_s"] =
        std::chrono::duration<double>(clock_::now() - start_).count();
    write_text_file(path, j_.dump(1) + "\n");
  }

 private:
  using clock_ = std::chrono::steady_clock;
  json j_;
  clock_::time_point start_;
};

std::vector<double> eps_grid_for(const std::string& text, double q,
                                 FracOrder s, const SpectralData& data) {
  if (text == "auto") {
    const double es = epsilon_threshold(q, s, data);
    std::vector<double> g;
    for (double f : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) g.push_back(f * es);
    return g;
  }
  return parse_grid(text);
}

int cmd_minimize(const DomainOpts& dom, const SolverFlags& sf, double s,
                 double q, double eps, const std::string& out,
                 std::string manifest_path) {
  const SpectralData data = resolve_domain(dom);
  const ProblemParams p(data.dimension, FracOrder(s), q, eps);
  const MinimizeResult res = minimize_quotient(p, data, sf.opts);

  json j;
  j["s"] = s;
  j["q"] = q;
  j["eps"] = eps;
  j["eps_pow_2s"] = p.eps_pow_2s();
  j["eps_threshold_local"] = epsilon_threshold(q, p.s, data);
  j["value"] = res.value;
  j["is_constant"] = res.is_constant;
  j["converged"] = res.converged;
  j["starts_used"] = res.starts_used;
  j["minimizer"] = std::vector<double>(
      res.minimizer.data(), res.minimizer.data() + res.minimizer.size());
  write_text_file(out, j.dump(1) + "\n");

  Manifest m("minimize");
  m.inputs() = {{"domain", domain_json(dom)},
                {"s", s},
                {"q", q},
                {"eps", eps},
                {"solver", sf.to_json()}};
  m.results() = {{"out", out},
                 {"value", res.value},
                 {"is_constant", res.is_constant},
                 {"converged", res.converged}};
  if (manifest_path.empty()) manifest_path = out + ".manifest.json";
  m.write(manifest_path);

  std::cout << "value=" << format_full(res.value)
            << " is_constant=" << (res.is_constant ? "true" : "false")
            << " starts=" << res.starts_used << "\n";
  return res.converged ? 0 : 3;
}

int cmd_bifurcation(const DomainOpts& dom, const SolverFlags& sf, double s,
                    double q, const std::string& eps_grid_text,
                    const std::string& out, std::string manifest_path) {
  const SpectralData data = resolve_domain(dom);
  const FracOrder order(s);
  const std::vector<double> eps_grid =
      eps_grid_for(eps_grid_text, q, order, data);

  std::vector<BifurcationRow> rows;
  bool all_ok = true;
  for (double eps : eps_grid) {
    const ProblemParams p(data.dimension, order, q, eps);
    const MinimizeResult res = minimize_quotient(p, data, sf.opts);
    all_ok = all_ok && res.converged;
    BifurcationRow row;
    row.eps = eps;
    row.value = res.value;
    row.is_constant = res.is_constant;
    row.verdict = local_min_test_at_one(p, data);
    row.d2_first = d2J_at_one(1, p, data);
    rows.push_back(row);
  }
  write_text_file(out, bifurcation_csv(rows));

  Manifest m("bifurcation");
  m.inputs() = {{"domain", domain_json(dom)},
                {"s", s},
                {"q", q},
                {"eps_grid", eps_grid},
                {"solver", sf.to_json()}};
  m.results() = {{"out", out}, {"all_converged", all_ok}};
  if (manifest_path.empty()) manifest_path = out + ".manifest.json";
  m.write(manifest_path);
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  return all_ok ? 0 : 3;
}

int cmd_phase(const DomainOpts& dom, const SolverFlags& sf, double s,
              const std::string& q_grid_text, const std::string& eps_grid_text,
              const std::string& out, std::string manifest_path) {
  const SpectralData data = resolve_domain(dom);
  const FracOrder order(s);
  const std::vector<double> q_grid = parse_grid(q_grid_text);

  std::vector<PhaseCell> cells;
  if (eps_grid_text == "auto") {
    // The interesting eps band tracks the local threshold, so auto builds
    // a per-q ladder rather than one rectangle.
    for (double q : q_grid) {
      const ProblemParams tmpl(data.dimension, order, q, 1.0);
      const auto part = phase_sweep({q}, eps_grid_for("auto", q, order, data),
                                    tmpl, data, sf.opts);
      cells.insert(cells.end(), part.begin(), part.end());
    }
  } else {
    const ProblemParams tmpl(data.dimension, order, q_grid.front(), 1.0);
    cells = phase_sweep(q_grid, parse_grid(eps_grid_text), tmpl, data, sf.opts);
  }
  write_text_file(out, phase_csv(cells));

  const bool stair = phase_staircase_ok(cells);
  bool all_ok = true;
  for (const PhaseCell& c : cells) all_ok = all_ok && c.solver_ok;

  Manifest m("phase");
  m.inputs() = {{"domain", domain_json(dom)},
                {"s", s},
                {"q_grid", q_grid},
                {"eps_grid", eps_grid_text},
                {"solver", sf.to_json()}};
  m.results() = {{"out", out},
                 {"cells", cells.size()},
                 {"staircase_ok", stair},
                 {"all_cells_ok", all_ok}};
  if (manifest_path.empty()) manifest_path = out + ".manifest.json";
  m.write(manifest_path);

  std::cout << "cells=" << cells.size()
            << " staircase=" << (stair ? "ok" : "VIOLATED") << "\n";
  if (!all_ok) return 3;
  return stair ? 0 : 1;
}

int cmd_big_e(const DomainOpts& dom, const SolverFlags& sf, double s,
              const std::string& q_grid_text, double tol_frac, double eps_max,
              const std::string& out, std::string manifest_path) {
  const SpectralData data = resolve_domain(dom);
  const FracOrder order(s);
  const std::vector<double> q_grid = parse_grid(q_grid_text);

  std::vector<BigERow> rows;
  for (double q : q_grid) {
    const ProblemParams tmpl(data.dimension, order, q, 1.0);
    BigERow row;
    row.q = q;
    row.eps_s = epsilon_threshold(q, order, data);
    row.result = estimate_big_E(q, tmpl, data, tol_frac * row.eps_s, sf.opts,
                                eps_max);
    rows.push_back(row);
    std::cout << "q=" << format_full(q) << " E=" << format_full(row.result.value)
              << (row.result.at_upper_bound ? " (>= upper seed)" : "") << "\n";
  }
  write_text_file(out, big_e_csv(rows));

  // Decreasing thresholds, allowing bisection slack on both entries.
  bool monotone = true;
  for (size_t i = 1; i < rows.size(); ++i) {
    const double slack =
        2.0 * tol_frac * std::max(rows[i - 1].eps_s, rows[i].eps_s);
    if (rows[i].result.value > rows[i - 1].result.value + slack)
      monotone = false;
  }

  Manifest m("big-e");
  m.inputs() = {{"domain", domain_json(dom)},
                {"s", s},
                {"q_grid", q_grid},
                {"tol_frac", tol_frac},
                {"eps_max", eps_max},
                {"solver", sf.to_json()}};
  m.results() = {{"out", out}, {"monotone_nonincreasing", monotone}};
  if (manifest_path.empty()) manifest_path = out + ".manifest.json";
  m.write(manifest_path);
  return monotone ? 0 : 1;
}

int cmd_bubble(double s, int dimension, std::vector<double> a_list,
               std::vector<double> center, int modes_override,
               const std::string& out, std::string manifest_path) {
  const FracOrder order(s);
  const double crit = critical_exponent(dimension, order);
  if (!std::isfinite(crit))
    throw std::domain_error("bubble: needs dimension > 2s");

  std::vector<BubbleRow> rows;
  double constant_value = 0.0;
  for (double a : a_list) {
    // Resolution follows the width: modes out to well past 4/a per axis,
    // quadrature oversampled on top of that.
    const int N = modes_override > 0
                      ? modes_override
                      : std::max(16, static_cast<int>(std::ceil(16.0 / a)));
    DomainSpec spec{dimension, DomainKind::UnitBox, N, default_quad(N)};
    const SpectralData data = build_box_basis(spec);
    const ProblemParams p(dimension, order, crit, 1.0);
    BubbleParams bp;
    bp.a = a;
    if (!center.empty())
      bp.center = Eigen::Map<Eigen::VectorXd>(center.data(), center.size());
    BubbleRow row;
    row.a = a;
    row.modes_per_axis = N;
    row.quad_per_axis = default_quad(N);
    row.quotient = bubble_quotient(bp, p, data);
    rows.push_back(row);
    constant_value = std::pow(epsilon_threshold(crit, order, data), 2.0 * s);
    std::cout << "a=" << format_full(a) << " quotient=" << format_full(row.quotient)
              << "\n";
  }
  const double limit =
      std::pow(2.0, -2.0 * s) * sobolev_sharp_constant(dimension, order);
  write_text_file(out, bubble_csv(rows, constant_value, limit));

  Manifest m("bubble");
  m.inputs() = {{"dimension", dimension},
                {"s", s},
                {"q", crit},
                {"a_list", a_list},
                {"center", center},
                {"modes_override", modes_override}};
  m.results() = {{"out", out},
                 {"constant_value", constant_value},
                 {"limit_value", limit}};
  if (manifest_path.empty()) manifest_path = out + ".manifest.json";
  m.write(manifest_path);
  return 0;
}

int cmd_verify_ineq(int n_max, double s_step) {
  const std::vector<IneqReport> reports = verify_chain(n_max, s_step);
  bool all_hold = true;
  for (const IneqReport& r : reports) {
    std::cout << (r.holds ? "[ok]   " : "[FAIL] ") << r.name
              << "  margin=" << format_full(r.min_margin);
    if (!r.worst_point.empty()) std::cout << "  at " << r.worst_point;
    std::cout << "  (" << r.domain_checked << ")\n";
    all_hold = all_hold && r.holds;
  }
  if (!all_hold) {
    for (const IneqReport& r : reports)
      if (!r.holds)
        std::cerr << "verification failed: " << r.name << " at "
                  << r.worst_point << "\n";
    return 1;
  }
  return 0;
}

int cmd_make_domain(const std::string& kind, int dimension, int modes, int quad,
                    const std::string& out) {
  if (kind == "box") {
    DomainSpec spec{dimension, DomainKind::UnitBox, modes,
                    quad > 0 ? quad : default_quad(modes)};
    save_spectral_data(build_box_basis(spec), out);
  } else if (kind == "asymmetric-interval") {
    const SpectralData data = build_asymmetric_interval(quad > 0 ? quad : 64);
    save_spectral_data(data, out,
                       {{"phi1_cubed", asymmetric_interval_cubed()}});
  } else {
    throw std::domain_error("make-domain: kind must be box or asymmetric-interval");
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimizers of the scaled fractional Rayleigh quotient on boxes"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Read options from an INI file");
  app.require_subcommand(0, 1);

  std::function<int()> chosen;

  // minimize
  {
    auto* c = app.add_subcommand("minimize", "Minimize the quotient once");
    c->configurable();
    auto dom = std::make_shared<DomainOpts>();
    auto sf = std::make_shared<SolverFlags>();
    auto s = std::make_shared<double>(0.5);
    auto q = std::make_shared<double>(4.0);
    auto eps = std::make_shared<double>(1.0);
    auto out = std::make_shared<std::string>("minimize_result.json");
    auto man = std::make_shared<std::string>();
    add_domain_flags(c, *dom);
    sf->add(c);
    c->add_option("--s", *s, "Fractional order in (0,1]")->required();
    c->add_option("--q", *q, "Target exponent")->required();
    c->add_option("--eps", *eps, "Scale parameter")->required();
    c->add_option("--out", *out, "Result JSON path");
    c->add_option("--manifest", *man, "Manifest path");
    c->callback([&chosen, dom, sf, s, q, eps, out, man]() {
      chosen = [=]() {
        return cmd_minimize(*dom, *sf, *s, *q, *eps, *out, *man);
      };
    });
  }

  // bifurcation
  {
    auto* c = app.add_subcommand("bifurcation",
                                 "Constancy and local verdicts along eps");
    c->configurable();
    auto dom = std::make_shared<DomainOpts>();
    auto sf = std::make_shared<SolverFlags>();
    auto s = std::make_shared<double>(0.5);
    auto q = std::make_shared<double>(4.0);
    auto eps_grid = std::make_shared<std::string>("auto");
    auto out = std::make_shared<std::string>("bifurcation.csv");
    auto man = std::make_shared<std::string>();
    add_domain_flags(c, *dom);
    sf->add(c);
    c->add_option("--s", *s, "Fractional order in (0,1]")->required();
    c->add_option("--q", *q, "Target exponent")->required();
    c->add_option("--eps-grid", *eps_grid, "lo:hi:count or auto");
    c->add_option("--out", *out, "CSV path");
    c->add_option("--manifest", *man, "Manifest path");
    c->callback([&chosen, dom, sf, s, q, eps_grid, out, man]() {
      chosen = [=]() {
        return cmd_bifurcation(*dom, *sf, *s, *q, *eps_grid, *out, *man);
      };
    });
  }

  // phase
  {
    auto* c = app.add_subcommand("phase", "(q, eps) constancy sweep");
    c->configurable();
    auto dom = std::make_shared<DomainOpts>();
    auto sf = std::make_shared<SolverFlags>();
    auto s = std::make_shared<double>(0.5);
    auto q_grid = std::make_shared<std::string>("2.5:6:8");
    auto eps_grid = std::make_shared<std::string>("auto");
    auto out = std::make_shared<std::string>("phase.csv");
    auto man = std::make_shared<std::string>();
    add_domain_flags(c, *dom);
    sf->add(c);
    c->add_option("--s", *s, "Fractional order in (0,1]")->required();
    c->add_option("--q-grid", *q_grid, "lo:hi:count");
    c->add_option("--eps-grid", *eps_grid, "lo:hi:count or auto");
    c->add_option("--out", *out, "CSV path");
    c->add_option("--manifest", *man, "Manifest path");
    c->callback([&chosen, dom, sf, s, q_grid, eps_grid, out,
                                man]() {
      chosen = [=]() {
        return cmd_phase(*dom, *sf, *s, *q_grid, *eps_grid, *out, *man);
      };
    });
  }

  // big-e
  {
    auto* c = app.add_subcommand("big-e",
                                 "Bisection estimate of the constancy threshold");
    c->configurable();
    auto dom = std::make_shared<DomainOpts>();
    auto sf = std::make_shared<SolverFlags>();
    auto s = std::make_shared<double>(0.5);
    auto q_grid = std::make_shared<std::string>("3:6:4");
    auto tol_frac = std::make_shared<double>(0.02);
    auto eps_max = std::make_shared<double>(0.0);
    auto out = std::make_shared<std::string>("big_e.csv");
    auto man = std::make_shared<std::string>();
    add_domain_flags(c, *dom);
    sf->add(c);
    c->add_option("--s", *s, "Fractional order in (0,1]")->required();
    c->add_option("--q-grid", *q_grid, "lo:hi:count");
    c->add_option("--tol-frac", *tol_frac,
                  "Bracket tolerance as a fraction of the local threshold");
    c->add_option("--eps-max", *eps_max,
                  "Bracket cap (0 = 10x local threshold)");
    c->add_option("--out", *out, "CSV path");
    c->add_option("--manifest", *man, "Manifest path");
    c->callback([&chosen, dom, sf, s, q_grid, tol_frac, eps_max,
                                out, man]() {
      chosen = [=]() {
        return cmd_big_e(*dom, *sf, *s, *q_grid, *tol_frac, *eps_max, *out,
                         *man);
      };
    });
  }

  // bubble
  {
    auto* c = app.add_subcommand("bubble",
                                 "Quotient along a shrinking peaked family");
    c->configurable();
    auto s = std::make_shared<double>(0.25);
    auto dim = std::make_shared<int>(1);
    auto a_list = std::make_shared<std::vector<double>>(
        std::vector<double>{0.4, 0.2, 0.1, 0.05});
    auto center = std::make_shared<std::vector<double>>();
    auto modes = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>("bubble.csv");
    auto man = std::make_shared<std::string>();
    c->add_option("--s", *s, "Fractional order, needs dimension > 2s")
        ->required();
    c->add_option("--n", *dim, "Box dimension")->check(CLI::Range(1, 3));
    c->add_option("--a", *a_list, "Peak widths (descending ladder)");
    c->add_option("--center", *center, "Peak center (default: corner)");
    c->add_option("--modes", *modes,
                  "Modes per axis override (0 = auto from width)");
    c->add_option("--out", *out, "CSV path");
    c->add_option("--manifest", *man, "Manifest path");
    c->callback([&chosen, s, dim, a_list, center, modes, out,
                                man]() {
      chosen = [=]() {
        return cmd_bubble(*s, *dim, *a_list, *center, *modes, *out, *man);
      };
    });
  }

  // verify-ineq
  {
    auto* c = app.add_subcommand("verify-ineq",
                                 "Check the whole Gamma-inequality chain");
    c->configurable();
    auto n_max = std::make_shared<int>(20);
    auto s_step = std::make_shared<double>(0.01);
    c->add_option("--n-max", *n_max, "Largest dimension for the ratio steps")
        ->check(CLI::Range(3, 100000));
    c->add_option("--s-step", *s_step, "Grid step in s");
    c->callback([&chosen, n_max, s_step]() {
      chosen = [=]() { return cmd_verify_ineq(*n_max, *s_step); };
    });
  }

  // make-domain
  {
    auto* c = app.add_subcommand("make-domain", "Write a spectral data file");
    c->configurable();
    auto kind = std::make_shared<std::string>("box");
    auto dim = std::make_shared<int>(1);
    auto modes = std::make_shared<int>(8);
    auto quad = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>("domain.json");
    c->add_option("--kind", *kind, "box or asymmetric-interval");
    c->add_option("--n", *dim, "Box dimension")->check(CLI::Range(1, 4));
    c->add_option("--modes", *modes, "Modes per axis (box)");
    c->add_option("--quad", *quad,
                  "Quadrature nodes per axis (0 = 4 * modes + 8)");
    c->add_option("--out", *out, "Output path")->required();
    c->callback([&chosen, kind, dim, modes, quad, out]() {
      chosen = [=]() {
        return cmd_make_domain(*kind, *dim, *modes, *quad, *out);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!chosen) {
    std::cerr << app.help();
    return 2;
  }
  try {
    return chosen();
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
