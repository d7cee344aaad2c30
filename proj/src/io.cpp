#include "fracmin/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracmin {

std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    try {
      size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("");
      return {v};
    } catch (...) {
      throw std::invalid_argument("bad grid '" + text +
                                  "': expected lo:hi:count or a number");
    }
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("bad grid '" + text +
                                "': expected lo:hi:count");
  try {
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const int count = std::stoi(text.substr(c2 + 1));
    if (count < 1) throw std::invalid_argument("");
    if (count == 1) return {lo};
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
      g[i] = lo + (hi - lo) * i / double(count - 1);
    return g;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad grid '" + text + "'");
  }
}

std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string phase_csv(const std::vector<PhaseCell>& cells) {
  std::ostringstream os;
  os << "q,eps,constant_global,min_value,eps_threshold_local\n";
  for (const PhaseCell& c : cells)
    os << format_full(c.q) << ',' << format_full(c.eps) << ','
       << (c.constant_global ? 1 : 0) << ',' << format_full(c.min_value) << ','
       << format_full(c.eps_threshold_local) << '\n';
  return os.str();
}

std::string big_e_csv(const std::vector<BigERow>& rows) {
  std::ostringstream os;
  os << "q,big_e,at_upper_bound,upper_seed,probes,eps_threshold_local\n";
  for (const BigERow& r : rows)
    os << format_full(r.q) << ',' << format_full(r.result.value) << ','
       << (r.result.at_upper_bound ? 1 : 0) << ','
       << format_full(r.result.upper_seed) << ',' << r.result.probes << ','
       << format_full(r.eps_s) << '\n';
  return os.str();
}

std::string verdict_name(LocalVerdict v) {
  switch (v) {
    case LocalVerdict::LocalMin: return "LocalMin";
    case LocalVerdict::Saddle: return "Saddle";
    case LocalVerdict::Degenerate: return "Degenerate";
  }
  return "?";
}

std::string bifurcation_csv(const std::vector<BifurcationRow>& rows) {
  std::ostringstream os;
  os << "eps,min_value,is_constant,local_verdict,d2_first_mode\n";
  for (const BifurcationRow& r : rows)
    os << format_full(r.eps) << ',' << format_full(r.value) << ','
       << (r.is_constant ? 1 : 0) << ',' << verdict_name(r.verdict) << ','
       << format_full(r.d2_first) << '\n';
  return os.str();
}

std::string bubble_csv(const std::vector<BubbleRow>& rows,
                       double constant_value, double limit_value) {
  std::ostringstream os;
  os << "a,modes_per_axis,quad_per_axis,quotient,constant_value,limit_value\n";
  for (const BubbleRow& r : rows)
    os << format_full(r.a) << ',' << r.modes_per_axis << ',' << r.quad_per_axis
       << ',' << format_full(r.quotient) << ',' << format_full(constant_value)
       << ',' << format_full(limit_value) << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
}

}  // namespace fracmin
