#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

#include "fracmin/spectral.hpp"

namespace {

namespace fs = std::filesystem;

const std::string kCli = FRACMIN_CLI_PATH;
const fs::path kDir = "cli_artifacts";

struct CliResult {
  int code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::create_directories(kDir);
  const fs::path capture = kDir / ("stdout_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      kCli + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult res;
  if (WIFEXITED(raw)) res.code = WEXITSTATUS(raw);
  std::ifstream in(capture);
  std::ostringstream os;
  os << in.rdbuf();
  res.output = os.str();
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string art(const char* name) { return (kDir / name).string(); }

}  // namespace

TEST_CASE("version and usage") {
  CHECK(run_cli("--version").code == 0);
  CHECK(run_cli("--version").output.find("fracmin") != std::string::npos);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("minimize --definitely-not-a-flag 3").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("minimize --help").code == 0);
}

TEST_CASE("minimize writes a result and a manifest") {
  const std::string out = art("min_super.json");
  const std::string man = art("min_super.manifest.json");
  const CliResult r = run_cli(
      "minimize --n 1 --s 0.5 --q 4 --eps 2.0 --modes 16 --seed 77 --out " +
      out + " --manifest " + man);
  REQUIRE(r.code == 0);

  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("is_constant").get<bool>() == false);  // eps 2.0 > pi/2
  CHECK(j.at("value").get<double>() < 2.0);
  CHECK(j.at("converged").get<bool>());
  CHECK(j.at("minimizer").size() == 17);

  const nlohmann::json m = nlohmann::json::parse(slurp(man));
  CHECK(m.at("command") == "minimize");
  CHECK(m.at("inputs").at("solver").at("seed").get<int>() == 77);
  CHECK(m.at("inputs").at("eps").get<double>() == 2.0);
  CHECK(m.contains("wall_time_s"));
  CHECK(m.at("results").at("value").get<double>() ==
        j.at("value").get<double>());
}

TEST_CASE("minimize below threshold returns the constant") {
  const std::string out = art("min_sub.json");
  const CliResult r = run_cli(
      "minimize --n 1 --s 0.5 --q 4 --eps 0.6 --modes 8 --out " + out);
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("is_constant").get<bool>() == true);
}

TEST_CASE("bad parameters exit with the usage code") {
  CHECK(run_cli("minimize --n 1 --s 0.5 --q 4 --eps -1 --out " +
                art("junk.json"))
            .code == 2);
  CHECK(run_cli("minimize --n 1 --s 1.5 --q 4 --eps 1 --out " +
                art("junk.json"))
            .code == 2);
  CHECK(run_cli("phase --s 0.5 --q-grid 1:2:x --out " + art("junk.csv"))
            .code == 2);
  CHECK(run_cli("bubble --s 0.75 --n 1 --out " + art("junk.csv")).code == 2);
  CHECK(run_cli("make-domain --kind bogus --out " + art("junk.json")).code ==
        2);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string a = art("bif_a.csv");
  const std::string b = art("bif_b.csv");
  const std::string flags =
      "bifurcation --n 1 --s 0.5 --q 4 --modes 8 --eps-grid auto --seed 4321 "
      "--out ";
  REQUIRE(run_cli(flags + a + " --manifest " + art("bif_a.man.json")).code ==
          0);
  REQUIRE(run_cli(flags + b + " --manifest " + art("bif_b.man.json")).code ==
          0);
  const std::string body_a = slurp(a);
  const std::string body_b = slurp(b);
  CHECK(body_a == body_b);
  CHECK(body_a.rfind("eps,min_value,is_constant,local_verdict,d2_first_mode",
                     0) == 0);
  // six auto rungs plus the header
  CHECK(std::count(body_a.begin(), body_a.end(), '\n') == 7);
}

TEST_CASE("phase sweep obeys the staircase and reports it") {
  const std::string out = art("phase_small.csv");
  const CliResult r = run_cli(
      "phase --n 1 --s 0.5 --modes 4 --q-grid 3:5:3 --eps-grid 0.5:2.5:3 "
      "--random-starts 2 --out " +
      out + " --manifest " + art("phase_small.man.json"));
  REQUIRE(r.code == 0);
  CHECK(r.output.find("staircase=ok") != std::string::npos);
  const std::string body = slurp(out);
  CHECK(body.rfind("q,eps,constant_global,min_value,eps_threshold_local", 0) ==
        0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 10);

  const nlohmann::json m =
      nlohmann::json::parse(slurp(art("phase_small.man.json")));
  CHECK(m.at("results").at("staircase_ok").get<bool>());
  CHECK(m.at("results").at("cells").get<int>() == 9);
}

TEST_CASE("big-e respects the cap and writes rows") {
  const std::string out = art("bige_small.csv");
  const CliResult r = run_cli(
      "big-e --n 1 --s 0.5 --modes 4 --q-grid 4:5:2 --tol-frac 0.05 "
      "--random-starts 2 --out " +
      out);
  REQUIRE(r.code == 0);
  const std::string body = slurp(out);
  CHECK(body.rfind("q,big_e,at_upper_bound,upper_seed,probes,"
                   "eps_threshold_local",
                   0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 3);
}

TEST_CASE("verify-ineq prints one line per link") {
  const CliResult r = run_cli("verify-ineq --n-max 3 --s-step 0.05");
  REQUIRE(r.code == 0);
  CHECK(r.output.find("a_below_pi_s") != std::string::npos);
  CHECK(r.output.find("poly_certificate") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("make-domain writes loadable spectral data") {
  const std::string boxmdl = art("box.json");
  REQUIRE(run_cli("make-domain --kind box --n 2 --modes 2 --out " + boxmdl)
              .code == 0);
  const fracmin::SpectralData box = fracmin::load_spectral_data(boxmdl);
  CHECK(box.dimension == 2);
  CHECK(box.modes() == 9);

  const std::string asym = art("asym.json");
  REQUIRE(run_cli("make-domain --kind asymmetric-interval --out " + asym)
              .code == 0);
  const fracmin::SpectralData a = fracmin::load_spectral_data(asym);
  CHECK(a.modes() == 3);
  const nlohmann::json j = nlohmann::json::parse(slurp(asym));
  CHECK(j.at("meta").at("phi1_cubed").get<double>() ==
        doctest::Approx(0.679171).epsilon(1e-5));
}

TEST_CASE("config file supplies options and flags override it") {
  const fs::path cfg = kDir / "min.ini";
  fs::create_directories(kDir);
  {
    std::ofstream out(cfg);
    out << "[minimize]\n"
        << "n=1\nmodes=8\ns=0.5\nq=4\neps=0.6\n"
        << "out=" << art("cfg_run.json") << "\n";
  }
  const CliResult r =
      run_cli("--config " + cfg.string() + " minimize");
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(art("cfg_run.json")));
  CHECK(j.at("is_constant").get<bool>() == true);

  const CliResult r2 = run_cli("--config " + cfg.string() +
                               " minimize --eps 2.0 --out " +
                               art("cfg_run2.json"));
  REQUIRE(r2.code == 0);
  j = nlohmann::json::parse(slurp(art("cfg_run2.json")));
  CHECK(j.at("is_constant").get<bool>() == false);
}

TEST_CASE("bubble command produces the descending ladder") {
  const std::string out = art("bubble_small.csv");
  const CliResult r = run_cli(
      "bubble --s 0.25 --n 1 --a 0.4 --a 0.2 --a 0.1 --out " + out);
  REQUIRE(r.code == 0);
  const std::string body = slurp(out);
  CHECK(body.rfind("a,modes_per_axis,quad_per_axis,quotient,constant_value,"
                   "limit_value",
                   0) == 0);
  REQUIRE(std::count(body.begin(), body.end(), '\n') == 4);

  // quotients descend strictly; the wide rungs sit just above the constant
  // level, so only the last one is required to dip below it
  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);  // header
  double last = 0.0, constant = 0.0;
  int row = 0;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 6);
    if (row > 0) CHECK(vals[3] < last);
    last = vals[3];
    constant = vals[4];
    ++row;
  }
  CHECK(last < constant);
}
