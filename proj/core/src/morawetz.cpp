#include "nlslab/morawetz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

Vec4 RotationMatrix::apply(const Vec4& x) noexcept {
  Vec4 z{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) z[i] += entry(i, j) * x[j];
  }
  return z;
}

Vec4 RotationMatrix::apply_transpose(const Vec4& z) noexcept {
  Vec4 x{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) x[i] += entry(j, i) * z[j];
  }
  return x;
}

Vec4 weight_gradient(const Vec4& z) noexcept {
  const double r = std::sqrt(z[1] * z[1] + z[2] * z[2] + z[3] * z[3]);
  if (r == 0.0) return {0.0, 0.0, 0.0, 0.0};
  return {0.0, z[1] / r, z[2] / r, z[3] / r};
}

void MorawetzConfig::validate() const {
  if (n_sub < 8) throw ConfigError("morawetz.n_sub: must be at least 8");
  const double pts = std::pow(static_cast<double>(n_sub), 4.0);
  if (pts > static_cast<double>(max_points)) {
    throw ConfigError("morawetz.n_sub: n_sub^4 = " + std::to_string(static_cast<long long>(pts)) +
                      " exceeds the point budget " + std::to_string(max_points));
  }
  if (window < 0.0) throw ConfigError("morawetz.window: must be non-negative");
  if (!(max_sampling_loss > 0.0)) throw ConfigError("morawetz.max_sampling_loss: must be positive");
}

namespace {

double centroid(const ComplexField& f) {
  double m = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a2 = std::norm(f[i]);
    m += a2;
    mx += a2 * f.grid().x(i);
  }
  return m > 0.0 ? mx / m : 0.0;
}

// Smallest half-width about c leaving at most `fraction` of the mass outside.
double auto_window(const ComplexField& f, double c, double fraction) {
  const auto& g = f.grid();
  std::vector<std::pair<double, double>> dist;
  dist.reserve(f.size());
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a2 = std::norm(f[i]);
    total += a2;
    dist.emplace_back(std::abs(g.x(i) - c), a2);
  }
  std::sort(dist.begin(), dist.end());
  double outside = total;
  for (const auto& [d, a2] : dist) {
    outside -= a2;
    if (outside <= fraction * total) return std::min(d + g.dx(), 0.5 * g.length());
  }
  return 0.5 * g.length();
}

// Sum over b, c, d of the integrand for a fixed first index a, in units where the
// direction z'/|z'| is computed from exact integer offsets.
double slab_sum(std::size_t a, std::size_t n, const std::vector<double>& rho,
                const std::vector<double>& cur) {
  const long ia = static_cast<long>(a);
  const double ra = rho[a], ja = cur[a];
  double acc = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    const long ib = static_cast<long>(b);
    const double rb = rho[b], jb = cur[b];
    const double rab = ra * rb;
    double acc_b = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const long ic = static_cast<long>(c);
      const double rc = rho[c], jc = cur[c];
      const double rabc = rab * rc;
      const long p2 = ia + ib - ic, p3 = ia - ib + ic, p4 = -ia + ib + ic;
      const double t1c = ja * rb * rc, t2c = jb * ra * rc, t3c = jc * rab;
      double acc_c = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        const long id = static_cast<long>(d);
        const double z2 = static_cast<double>(p2 - id);
        const double z3 = static_cast<double>(p3 - id);
        const double z4 = static_cast<double>(p4 - id);
        const double r2 = z2 * z2 + z3 * z3 + z4 * z4;
        if (r2 == 0.0) continue;  // diagonal x1 = x2 = x3 = x4
        const double inv = 0.5 / std::sqrt(r2);
        const double g1 = (z2 + z3 - z4) * inv;
        const double g2 = (z2 - z3 + z4) * inv;
        const double g3 = (-z2 + z3 + z4) * inv;
        const double g4 = (-z2 - z3 - z4) * inv;
        const double rd = rho[d];
        acc_c += (g1 * t1c + g2 * t2c + g3 * t3c) * rd + g4 * cur[d] * rabc;
      }
      acc_b += acc_c;
    }
    acc += acc_b;
  }
  return acc;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

ActionEvaluation evaluate_interaction_action(const ComplexField& field,
                                             const MorawetzConfig& cfg) {
  cfg.validate();
  const auto& grid = field.grid();
  if (cfg.n_sub > grid.size()) throw ConfigError("morawetz.n_sub: exceeds the grid size");

  ActionEvaluation ev;
  ev.points = cfg.n_sub * cfg.n_sub * cfg.n_sub * cfg.n_sub;
  const double m0 = mass(field);
  if (m0 == 0.0) return ev;

  ev.center = cfg.center.value_or(centroid(field));
  ev.window = cfg.window > 0.0 ? cfg.window : auto_window(field, ev.center, 1e-12);
  const std::size_t n = cfg.n_sub;
  const double h = 2.0 * ev.window / static_cast<double>(n);
  std::vector<double> xs(n);
  for (std::size_t m = 0; m < n; ++m) xs[m] = ev.center - ev.window + static_cast<double>(m) * h;

  const auto pv = fft::evaluate_at(field, xs);
  std::vector<double> rho(n), cur(n);
  double m_sub = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    rho[m] = std::norm(pv.value[m]);
    cur[m] = std::imag(std::conj(pv.value[m]) * pv.derivative[m]);
    m_sub += rho[m] * h;
  }
  ev.sampling_loss = std::abs(1.0 - std::sqrt(m_sub / m0));
  if (ev.sampling_loss > cfg.max_sampling_loss) {
    throw NumericalError("interaction_action: resampling onto n_sub = " + std::to_string(n) +
                         " points over half-width " + std::to_string(ev.window) +
                         " loses " + std::to_string(ev.sampling_loss) +
                         " of the L2 norm (limit " + std::to_string(cfg.max_sampling_loss) + ")");
  }

  std::vector<double> partial(n, 0.0);
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(n));
  if (workers == 1) {
    for (std::size_t a = 0; a < n; ++a) partial[a] = slab_sum(a, n, rho, cur);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t a = w; a < n; a += workers) partial[a] = slab_sum(a, n, rho, cur);
      });
    }
  }
  // Fixed pairwise reduction order keeps the result independent of the worker count.
  const double h4 = h * h * h * h;
  ev.value = 2.0 * h4 * pairwise_sum(partial, 0, n);
  return ev;
}

double interaction_action(const ComplexField& field, const MorawetzConfig& cfg) {
  return evaluate_interaction_action(field, cfg).value;
}

double action_bound_ratio(const ComplexField& field, const MorawetzConfig& cfg) {
  const double m = mass(field);
  if (m == 0.0) return 0.0;
  const double hh = sobolev_norm(field, 0.5, Homogeneity::homogeneous);
  const double den = 4.0 * hh * hh * m * m * m;
  if (den == 0.0) return 0.0;
  return std::abs(interaction_action(field, cfg)) / den;
}

double action_quadrature_error(const ComplexField& field, const MorawetzConfig& cfg) {
  const auto fine = evaluate_interaction_action(field, cfg);
  MorawetzConfig coarse = cfg;
  coarse.n_sub = std::max<std::size_t>(8, (cfg.n_sub * 3) / 4);
  coarse.window = fine.window;
  coarse.center = fine.center;
  coarse.max_sampling_loss = std::max(cfg.max_sampling_loss, 1e-2);
  return std::abs(fine.value - evaluate_interaction_action(field, coarse).value);
}

std::function<double(const ComplexField&)> action_hook(MorawetzConfig cfg) {
  cfg.validate();
  return [cfg](const ComplexField& f) { return interaction_action(f, cfg); };
}

MonotonicityReport monotonicity_audit(const Trajectory& traj, double quadrature_error) {
  MonotonicityReport rep;
  std::vector<double> l8;
  for (const auto& r : traj.records) {
    if (!r.morawetz_action) {
      throw ConfigError("monotonicity_audit: record at t = " + std::to_string(r.t) +
                        " has no Morawetz action sample");
    }
    rep.times.push_back(r.t);
    rep.action.push_back(*r.morawetz_action);
    l8.push_back(r.l8_density);
  }
  const std::size_t n = rep.times.size();
  if (n < 3) throw ConfigError("monotonicity_audit: need at least 3 Morawetz samples");
  rep.quadrature_error = quadrature_error;

  double dt_max = 0.0;
  for (std::size_t i = 1; i < n; ++i) dt_max = std::max(dt_max, rep.times[i] - rep.times[i - 1]);

  // Third-derivative scale from third differences on consecutive samples.
  for (std::size_t i = 0; i + 3 < n; ++i) {
    const double h = (rep.times[i + 3] - rep.times[i]) / 3.0;
    const double d3 = rep.action[i + 3] - 3.0 * rep.action[i + 2] + 3.0 * rep.action[i + 1] -
                      rep.action[i];
    rep.third_derivative_scale = std::max(rep.third_derivative_scale, std::abs(d3) / (h * h * h));
  }
  double dt_min = dt_max;
  for (std::size_t i = 1; i < n; ++i) dt_min = std::min(dt_min, rep.times[i] - rep.times[i - 1]);
  rep.tol_mono = 5.0 * dt_max * dt_max * rep.third_derivative_scale + 2.0 * quadrature_error / dt_min;

  rep.min_defect = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = (rep.action[i + 1] - rep.action[i - 1]) / (rep.times[i + 1] - rep.times[i - 1]);
    const double defect = d - kMorawetzConstant * l8[i];
    rep.interior_times.push_back(rep.times[i]);
    rep.derivative.push_back(d);
    rep.defects.push_back(defect);
    rep.min_defect = std::min(rep.min_defect, defect);
    if (l8[i] > 0.0) {
      const double c = d / l8[i];
      rep.empirical_constant = rep.empirical_constant ? std::min(*rep.empirical_constant, c) : c;
    }
  }

  // Integrated form with a Richardson estimate of the time-quadrature error.
  double trap = 0.0;
  for (std::size_t i = 1; i < n; ++i) trap += 0.5 * (rep.times[i] - rep.times[i - 1]) * (l8[i] + l8[i - 1]);
  double coarse = 0.0;
  std::size_t prev = 0;
  for (std::size_t i = 2; i < n; i += 2) {
    coarse += 0.5 * (rep.times[i] - rep.times[prev]) * (l8[i] + l8[prev]);
    prev = i;
  }
  if (prev != n - 1) coarse += 0.5 * (rep.times[n - 1] - rep.times[prev]) * (l8[n - 1] + l8[prev]);
  rep.action_increment = rep.action.back() - rep.action.front();
  rep.integrated_bound = kMorawetzConstant * trap;
  rep.integrated_tolerance =
      2.0 * quadrature_error + kMorawetzConstant * std::abs(coarse - trap) / 3.0;
  return rep;
}

double integrated_audit(const Trajectory& traj) {
  const auto& recs = traj.records;
  if (recs.empty()) return 0.0;
  double integral = 0.0;
  double sup_h = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    sup_h = std::max(sup_h, recs[i].hhalf);
    if (i > 0) integral += 0.5 * (recs[i].t - recs[i - 1].t) * (recs[i].l8_density + recs[i - 1].l8_density);
  }
  const double m0 = recs.front().mass;
  const double den = sup_h * sup_h * m0 * m0 * m0;
  return den > 0.0 ? integral / den : 0.0;
}

}  // namespace nlslab
