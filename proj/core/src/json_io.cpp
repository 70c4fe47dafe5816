#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nlslab/error.hpp"

namespace nlslab::io {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

json to_json(const MonotonicityReport& r) {
  return {
      {"t_samples", numbers(r.times)},
      {"M_a", numbers(r.action)},
      {"interior_times", numbers(r.interior_times)},
      {"derivative", numbers(r.derivative)},
      {"defects", numbers(r.defects)},
      {"min_defect", number(r.min_defect)},
      {"tol_mono", number(r.tol_mono)},
      {"third_derivative_scale", number(r.third_derivative_scale)},
      {"quadrature_error", number(r.quadrature_error)},
      {"empirical_constant", r.empirical_constant ? number(*r.empirical_constant) : json(nullptr)},
      {"action_increment", number(r.action_increment)},
      {"integrated_bound", number(r.integrated_bound)},
      {"integrated_tolerance", number(r.integrated_tolerance)},
      {"pointwise_passed", r.pointwise_passed()},
      {"integrated_passed", r.integrated_passed()},
  };
}

json to_json(const ScatteringReport& r) {
  json d = json::array();
  for (const auto& row : r.distance_matrix) d.push_back(numbers(row));
  return {
      {"s", r.s},
      {"times", numbers(r.times)},
      {"distance_matrix", d},
      {"residuals", numbers(r.residuals)},
      {"decay_ratio", number(r.decay_ratio)},
      {"cauchy_trend", r.cauchy_trend},
      {"residual_nonincreasing", r.residual_nonincreasing},
      {"conclusive", r.conclusive},
      {"exploratory", r.exploratory},
  };
}

json to_json(const IncrementSweep& s) {
  json pts = json::array();
  for (const auto& p : s.points) {
    pts.push_back({{"N", p.N},
                   {"lambda", p.lambda},
                   {"E0", number(p.e0)},
                   {"sup_E", number(p.sup_e)},
                   {"increment", number(p.increment)},
                   {"noise_floor", number(p.noise_floor)},
                   {"l8_norm", number(p.l8_norm)},
                   {"included_in_fit", p.included}});
  }
  return {{"slope", number(s.slope)},
          {"slope_stderr", number(s.slope_stderr)},
          {"fitted_points", s.fitted},
          {"noise_factor", s.noise_factor},
          {"eta", s.eta},
          {"points", pts}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_plot(const std::filesystem::path& path, const std::string& x_label,
                const std::string& y_label, const std::vector<double>& x,
                const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("write_plot: column length mismatch for " + path.string());
  std::string text = "# " + x_label + " " + y_label + "\n";
  for (std::size_t i = 0; i < x.size(); ++i) text += format_double(x[i]) + " " + format_double(y[i]) + "\n";
  write_text(path, text);
}

std::string sweep_csv(const IncrementSweep& s) {
  std::string text = std::string(kSweepCsvHeader) + "\n";
  for (const auto& p : s.points) {
    text += format_double(p.N) + "," + format_double(p.lambda) + "," + format_double(p.e0) + "," +
            format_double(p.sup_e) + "," + format_double(p.increment) + "," +
            format_double(p.noise_floor) + "," + (p.included ? "1" : "0") + "\n";
  }
  return text;
}

}  // namespace nlslab::io
