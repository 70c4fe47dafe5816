#include "nlslab/imethod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "nlslab/error.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/littlewood_paley.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {
namespace {

// F_s(tau) = tau - delta (1 - e^{-tau/delta}) + a tau^2 + b tau^3 with the cubic fixing
// F_s(1) = F_s'(1) = 1. max F_s' <= 1 + 1.5 delta <= 1/(1-s) by the choice of delta.
double transition_profile(double tau, double s) {
  const double delta = std::min(0.25, s / (4.0 * (1.0 - s)));
  const double e1 = std::exp(-1.0 / delta);
  const double A = delta * (1.0 - e1);
  const double B = e1;
  const double a = 3.0 * A - B;
  const double b = B - 2.0 * A;
  return tau - delta * (1.0 - std::exp(-tau / delta)) + a * tau * tau + b * tau * tau * tau;
}

}  // namespace

double m_symbol(double xi, double N, double s) {
  const double rho = std::abs(xi) / N;
  if (rho <= 1.0) return 1.0;
  if (rho >= 2.0) return std::pow(rho, s - 1.0);
  const double tau = std::log2(rho);
  return std::min(1.0, std::exp((s - 1.0) * std::numbers::ln2 * transition_profile(tau, s)));
}

IMultiplier::IMultiplier(double N, double s) : N_(N), s_(s) {
  if (!(N > 1.0)) throw ConfigError("I-multiplier: threshold N must exceed 1");
  if (!(s > 0.0 && s < 1.0)) throw ConfigError("I-multiplier: regularity s must lie in (0, 1)");
}

SymbolSpec IMultiplier::symbol() const {
  return SymbolSpec::real([N = N_, s = s_](double k) { return m_symbol(k, N, s); }, "m_N");
}

ComplexField apply_I(const ComplexField& field, const IMultiplier& im) {
  return apply_symbol(field, im.symbol());
}

IPropertyReport i_property_audit(const ComplexField& field, const IMultiplier& im, double sigma) {
  const double s = im.s();
  const double N = im.N();
  if (!(sigma >= 0.0 && sigma <= s)) throw ConfigError("i_property_audit: need 0 <= sigma <= s");
  IPropertyReport rep;
  rep.N = N;
  rep.s = s;
  rep.sigma = sigma;

  const double f2 = lebesgue_norm(field, 2.0);
  if (f2 == 0.0) return rep;
  auto ratio = [](double num, double den) -> std::optional<double> {
    if (den <= 0.0) return std::nullopt;
    return num / den;
  };

  // Termwise m|u_hat| <= |u_hat| and monotone rounding make this ratio <= 1 in floating point.
  {
    const auto coeffs = fft::spectrum(field);
    const auto& g = field.grid();
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const double a = std::abs(coeffs[j]);
      const double ma = im(g.wavenumber(j)) * a;
      num += ma * ma;
      den += a * a;
    }
    rep.i1 = ratio(std::sqrt(num), std::sqrt(den));
  }

  const auto If = apply_I(field, im);

  const auto hi = lp_project(field, N, LpMode::gt);
  const double grad_If = sobolev_norm(If, 1.0, Homogeneity::homogeneous);
  const double lhs2 = sobolev_norm(hi, sigma, Homogeneity::homogeneous);
  if (lhs2 > 1e-12 * f2) rep.i2 = ratio(lhs2, std::pow(N, sigma - 1.0) * grad_If);

  const double fs = sobolev_norm(field, s, Homogeneity::inhomogeneous);
  const double If1 = sobolev_norm(If, 1.0, Homogeneity::inhomogeneous);
  rep.i3_lower = ratio(fs, If1);
  rep.i3_upper = ratio(If1, std::pow(N, 1.0 - s) * fs);

  const double fs_dot = sobolev_norm(field, s, Homogeneity::homogeneous);
  if (fs_dot > 1e-12 * f2) rep.i4 = ratio(grad_If, std::pow(N, 1.0 - s) * fs_dot);
  return rep;
}

double modified_energy(const ComplexField& field, const IMultiplier& im, double exponent) {
  return energy(apply_I(field, im), exponent);
}

std::function<double(const ComplexField&)> modified_energy_hook(IMultiplier im, double exponent) {
  return [im, exponent](const ComplexField& f) { return modified_energy(f, im, exponent); };
}

ComplexField rescale(const ComplexField& field, const RescaleParams& rp) {
  if (!(rp.lambda >= 1.0)) throw ConfigError("rescale: lambda must be >= 1");
  if (!(rp.exponent > 0.0)) throw ConfigError("rescale: exponent must be positive");
  const auto& g = field.grid();
  const double want = std::ceil(rp.lambda * static_cast<double>(g.size()) - 1e-9);
  if (want > static_cast<double>(rp.max_points)) {
    throw NumericalError("rescale: enlarged grid needs " + std::to_string(static_cast<long long>(want)) +
                         " points, over the budget of " + std::to_string(rp.max_points));
  }
  std::size_t n_out = g.size();
  while (static_cast<double>(n_out) < want) n_out *= 2;
  if (n_out > rp.max_points) throw NumericalError("rescale: enlarged grid exceeds the point budget");

  auto samples = fft::upsample(field.samples(), n_out);
  const double amp = std::pow(rp.lambda, -1.0 / rp.exponent);
  for (auto& z : samples) z *= amp;
  return ComplexField(Grid1D(rp.lambda * g.length(), n_out), std::move(samples),
                      field.time() * rp.lambda * rp.lambda);
}

LambdaConstraints lambda_constraints(double lambda, double hs_norm, double N, double s,
                                     double exponent) {
  return {std::pow(N, 1.0 - s) * std::pow(lambda, critical_regularity(exponent) - s) * hs_norm,
          std::pow(lambda, 1.0 / (2.0 * exponent + 2.0) - 1.0 / exponent) * hs_norm};
}

double lambda_for_small_energy(double hs_norm, double N, double s, double exponent, double eta) {
  if (!(s > critical_regularity(exponent))) {
    throw ConfigError("lambda_for_small_energy: infeasible, need s > 1/2 - 1/p");
  }
  if (!(eta > 0.0)) throw ConfigError("lambda_for_small_energy: eta must be positive");
  double lambda = 1.0;
  for (int j = 0; j <= 200; ++j, lambda *= 2.0) {
    const auto c = lambda_constraints(lambda, hs_norm, N, s, exponent);
    if (c.energy_term <= eta && c.potential_term <= eta) return lambda;
  }
  throw NumericalError("lambda_for_small_energy: no lambda <= 2^200 satisfies the constraints");
}

namespace {

IncrementPoint sweep_point(const ComplexField& u0, double N, const SolverConfig& cfg,
                           const SweepOptions& opts) {
  IncrementPoint pt;
  pt.N = N;
  const IMultiplier im(N, opts.s);

  ComplexField data = u0;
  for (double lambda = 1.0;; lambda *= 2.0) {
    data = lambda == 1.0 ? u0
                         : rescale(u0, {lambda, cfg.exponent, opts.max_points});
    pt.lambda = lambda;
    if (modified_energy(data, im, cfg.exponent) <= opts.energy_target) break;
  }

  DiagnosticsRequest req;
  req.modified_energy = modified_energy_hook(im, cfg.exponent);
  const auto traj = evolve(data, cfg, req);
  pt.e0 = *traj.records.front().modified_energy;
  pt.sup_e = pt.e0;
  double drift = 0.0;
  for (const auto& r : traj.records) {
    pt.sup_e = std::max(pt.sup_e, *r.modified_energy);
    pt.increment = std::max(pt.increment, std::abs(*r.modified_energy - pt.e0));
    drift = std::max(drift, std::abs(r.energy - traj.records.front().energy));
  }
  double l8 = 0.0;
  for (std::size_t i = 1; i < traj.records.size(); ++i) {
    l8 += 0.5 * (traj.records[i].t - traj.records[i - 1].t) *
          (traj.records[i].l8_density + traj.records[i - 1].l8_density);
  }
  pt.l8_norm = std::pow(l8, 0.125);

  // Under the free flow only the kinetic part of E(I u) is conserved.
  SolverConfig linear = cfg;
  linear.nonlinear = false;
  DiagnosticsRequest control_req;
  control_req.modified_energy = [im](const ComplexField& f) {
    return energy_parts(apply_I(f, im), 2.0).kinetic;
  };
  const auto control = evolve(data, linear, control_req);
  const double k0 = *control.records.front().modified_energy;
  double control_inc = 0.0;
  for (const auto& r : control.records) control_inc = std::max(control_inc, std::abs(*r.modified_energy - k0));

  pt.noise_floor = std::max(std::abs(control_inc), drift);
  pt.included = pt.increment > opts.noise_factor * pt.noise_floor;
  return pt;
}

}  // namespace

IncrementSweep increment_sweep(const ComplexField& u0, const std::vector<double>& Ns,
                               const SolverConfig& cfg, const SweepOptions& opts) {
  cfg.validate();
  if (Ns.empty()) throw ConfigError("increment_sweep: empty N list");
  IncrementSweep out;
  out.noise_factor = opts.noise_factor;
  out.eta = opts.eta;
  out.points.resize(Ns.size());

  const unsigned workers = std::clamp<unsigned>(opts.workers, 1u, static_cast<unsigned>(Ns.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < Ns.size(); ++i) out.points[i] = sweep_point(u0, Ns[i], cfg, opts);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < Ns.size(); i += workers) {
          out.points[i] = sweep_point(u0, Ns[i], cfg, opts);
        }
      });
    }
  }

  std::vector<double> xs, ys;
  for (const auto& p : out.points) {
    if (!p.included) continue;
    xs.push_back(std::log(p.N));
    ys.push_back(std::log(p.increment));
  }
  out.fitted = xs.size();
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    out.slope = sxy / sxx;
    if (xs.size() > 2) {
      double ssr = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (my + out.slope * (xs[i] - mx));
        ssr += r * r;
      }
      out.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
    }
  }
  return out;
}

}  // namespace nlslab
