#include "nlslab/trajectory.hpp"

#include <cmath>
#include <cstdio>

namespace nlslab {
namespace {

void put(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_csv_header(std::ostream& os) { os << kDiagnosticsCsvHeader << '\n'; }

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
  put(os, r.t);
  os << ',';
  put(os, r.mass);
  os << ',';
  put(os, r.energy);
  os << ',';
  put(os, r.hhalf);
  os << ',';
  put(os, r.l8_density);
  os << ',';
  if (r.morawetz_action) put(os, *r.morawetz_action);
  os << ',';
  if (r.modified_energy) put(os, *r.modified_energy);
  os << ',';
  put(os, r.tail);
  os << '\n';
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  write_csv_header(os);
  for (const auto& r : traj.records) write_csv_row(os, r);
}

const ComplexField* Trajectory::snapshot_at(double t) const {
  for (const auto& s : snapshots) {
    if (std::abs(s.time() - t) <= 1e-9 * std::max(1.0, std::abs(t))) return &s;
  }
  return nullptr;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> ts;
  ts.reserve(records.size());
  for (const auto& r : records) ts.push_back(r.t);
  return ts;
}

}  // namespace nlslab
