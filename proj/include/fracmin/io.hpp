#pragma once

#include <string>
#include <vector>

#include "fracmin/analysis.hpp"

namespace fracmin {

// "lo:hi:count" -> inclusive uniform grid; a bare number is a 1-point grid.
// Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& text);

// Shortest round-trippable decimal (17 significant digits).
std::string format_full(double x);

// CSV bodies are the reproducibility contract: same config + seed must give
// the same bytes, so all formatting goes through format_full.
std::string phase_csv(const std::vector<PhaseCell>& cells);

struct BigERow {
  double q = 0.0;
  BigEResult result;
  double eps_s = 0.0;
};
std::string big_e_csv(const std::vector<BigERow>& rows);

struct BifurcationRow {
  double eps = 0.0;
  double value = 0.0;
  bool is_constant = false;
  LocalVerdict verdict = LocalVerdict::Degenerate;
  double d2_first = 0.0;
};
std::string bifurcation_csv(const std::vector<BifurcationRow>& rows);

struct BubbleRow {
  double a = 0.0;
  int modes_per_axis = 0;
  int quad_per_axis = 0;
  double quotient = 0.0;
};
std::string bubble_csv(const std::vector<BubbleRow>& rows,
                       double constant_value, double limit_value);

std::string verdict_name(LocalVerdict v);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace fracmin
