// Integration cycles deforming R^n into C^n so that e^{ip} decays, the
// fitted super-gaussian envelope constants Im p >= L(|xi|^e - b|xi|^{e-1})
// on a cycle, and the induced quadrature truncation radii.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lieairy/checker.hpp"
#include "lieairy/poly.hpp"

namespace lieairy {

class envelope_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class quadrature_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// xi -> xi + i*t*tau, Jacobian factor 1
struct OddCycle {
  std::vector<double> tau;  // unit vector
  double t = 1.0;           // positive shift
};

// xi_j -> xi_j + i*sigma*theta_j*a(xi_j) with a(x) = clamp(x, -1, 1);
// Jacobian factor per coordinate 1 + i*sigma*theta_j on (-1,1), else 1
struct EvenCycle {
  std::vector<double> theta;  // componentwise in (0,1)
  double sigma = 1.0;         // in (0,1]
};

using Cycle = std::variant<OddCycle, EvenCycle>;

inline int cycle_dim(const Cycle& c) {
  if (const auto* o = std::get_if<OddCycle>(&c)) return static_cast<int>(o->tau.size());
  return static_cast<int>(std::get<EvenCycle>(c).theta.size());
}

namespace detail {
inline double clamp_unit(double x) { return x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x); }
}  // namespace detail

// Maps a real point onto the cycle; returns the product Jacobian factor.
inline cdouble map_point(const OddCycle& c, std::span<const double> xi,
                         std::span<cdouble> zeta) {
  if (xi.size() != c.tau.size() || zeta.size() != xi.size())
    throw std::invalid_argument("map_point: dimension mismatch");
  for (std::size_t j = 0; j < xi.size(); ++j)
    zeta[j] = cdouble(xi[j], c.t * c.tau[j]);
  return cdouble(1.0, 0.0);
}

inline cdouble map_point(const EvenCycle& c, std::span<const double> xi,
                         std::span<cdouble> zeta) {
  if (xi.size() != c.theta.size() || zeta.size() != xi.size())
    throw std::invalid_argument("map_point: dimension mismatch");
  cdouble jac(1.0, 0.0);
  for (std::size_t j = 0; j < xi.size(); ++j) {
    double s = c.sigma * c.theta[j];
    zeta[j] = cdouble(xi[j], s * detail::clamp_unit(xi[j]));
    if (std::fabs(xi[j]) < 1.0) jac *= cdouble(1.0, s);
  }
  return jac;
}

inline cdouble map_point(const Cycle& c, std::span<const double> xi,
                         std::span<cdouble> zeta) {
  return std::visit([&](const auto& k) { return map_point(k, xi, zeta); }, c);
}

struct MajorantConstants {
  enum class Kind { Odd, Even };
  Kind kind = Kind::Odd;
  double leading = 0.0;     // L > 0
  double correction = 0.0;  // b >= 0: envelope(r) = L*(r^e - b*r^{e-1})
  int exponent = 1;         // degree(p) - 1
  double validity_radius = 1.0;
  int dim = 1;
};

struct MajorantProbeConfig {
  double probe_radius = 50.0;  // R_probe
  int radial_samples = 48;
  std::size_t directions_per_var = 32;
};

// Fits the two-term lower envelope of Im p on the cycle from deterministic
// samples over |xi| in [1, R_probe]: the fit satisfies envelope <= sample on
// every probed point by construction, so it is conservative there.
inline MajorantConstants estimate_majorant(const MultiPoly& p, const Cycle& cycle,
                                           const MajorantProbeConfig& pcfg = {}) {
  int n = p.nvars();
  int m = p.degree();
  if (m < 2) throw std::invalid_argument("estimate_majorant: degree must be >= 2");

  std::vector<std::vector<double>> dirs = detail::sign_vectors(n);
  auto alpha = detail::kronecker_alphas(n);
  for (std::size_t k = 0; k < pcfg.directions_per_var * static_cast<std::size_t>(n); ++k)
    dirs.push_back(detail::kronecker_direction(alpha, k));

  std::vector<double> radii(static_cast<std::size_t>(pcfg.radial_samples));
  double lo = std::log(1.0), hi = std::log(pcfg.probe_radius);
  for (int i = 0; i < pcfg.radial_samples; ++i)
    radii[static_cast<std::size_t>(i)] =
        std::exp(lo + (hi - lo) * i / (pcfg.radial_samples - 1));

  std::vector<double> worst(radii.size(), std::numeric_limits<double>::infinity());
  std::vector<double> xi(static_cast<std::size_t>(n));
  std::vector<cdouble> zeta(static_cast<std::size_t>(n));
  for (const auto& u : dirs) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (int j = 0; j < n; ++j)
        xi[static_cast<std::size_t>(j)] = radii[i] * u[static_cast<std::size_t>(j)];
      map_point(cycle, xi, zeta);
      double im = p.eval(std::span<const cdouble>(zeta)).imag();
      worst[i] = std::min(worst[i], im);
    }
  }

  int e = m - 1;
  // leading estimate from the outer third of the probe range
  double L = std::numeric_limits<double>::infinity();
  std::size_t start = radii.size() - radii.size() / 3;
  for (std::size_t i = start; i < radii.size(); ++i)
    L = std::min(L, worst[i] / std::pow(radii[i], e));
  if (!(L > 0.0) || !std::isfinite(L))
    throw envelope_error("estimate_majorant: no positive leading coefficient; cycle unusable");
  double B = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double need = (L * std::pow(radii[i], e) - worst[i]) / std::pow(radii[i], e - 1);
    B = std::max(B, need);
  }

  MajorantConstants mc;
  mc.kind = std::holds_alternative<OddCycle>(cycle) ? MajorantConstants::Kind::Odd
                                                    : MajorantConstants::Kind::Even;
  mc.leading = L;
  mc.correction = B / L;
  mc.exponent = e;
  mc.validity_radius = std::max(1.0, mc.correction);
  mc.dim = n;
  return mc;
}

namespace detail {

inline double sphere_surface(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw std::invalid_argument("sphere_surface: dimension out of range");
  }
}

// integral over |xi| > R of (1+|xi|)^r exp(-envelope(|xi|)), by composite
// Simpson out to where the envelope kills the integrand
inline double majorant_tail(const MajorantConstants& mc, int r, double R) {
  auto env = [&](double rho) {
    return mc.leading * (std::pow(rho, mc.exponent) -
                         mc.correction * std::pow(rho, mc.exponent - 1));
  };
  double U = R;
  while (env(U) < 750.0 && U < 1e7) U = U * 1.3 + 1.0;
  const int steps = 4096;  // even
  double h = (U - R) / steps;
  double surf = sphere_surface(mc.dim);
  auto f = [&](double rho) {
    double ex = env(rho);
    if (ex > 745.0) return 0.0;
    return surf * std::pow(rho, mc.dim - 1) * std::pow(1.0 + rho, r) * std::exp(-ex);
  };
  double acc = f(R) + f(U);
  for (int i = 1; i < steps; ++i)
    acc += f(R + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace detail

// Smallest probed R (geometric grid from the validity radius) whose envelope
// tail bound for a (1+|xi|)^r weighted integrand drops below tol.
inline double truncation_radius(const MajorantConstants& mc, int polyweight, double tol,
                                double hard_cap = 1e4) {
  if (!(tol > 0.0)) throw std::invalid_argument("truncation_radius: tol must be > 0");
  double R = std::max(1.0, mc.validity_radius);
  const double growth = 1.08;
  while (R <= hard_cap) {
    if (detail::majorant_tail(mc, polyweight, R) < tol) return R;
    R *= growth;
  }
  throw quadrature_error("truncation_radius: tolerance unreachable below hard cap");
}

struct CycleSelectConfig {
  double theta_max = 0.9;
};

// Odd degree: R^n + i*t*tau with the classification witness and t = min(1, 1/|x|).
// Even degree: componentwise shift theta = min(1, 1/|x|) * theta_max, sigma = 1.
inline Cycle select_cycle(const MultiPoly& p, const CheckReport& report,
                          std::span<const double> x, const CycleSelectConfig& ccfg = {}) {
  int n = p.nvars();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("select_cycle: dimension mismatch");
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  double t = norm > 1.0 ? 1.0 / norm : 1.0;
  if (p.degree() % 2 == 1) {
    OddCycle c;
    if (report.witness) {
      c.tau = *report.witness;
    } else {
      c.tau.assign(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    }
    c.t = t;
    return c;
  }
  EvenCycle c;
  c.theta.assign(static_cast<std::size_t>(n), t * ccfg.theta_max);
  c.sigma = 1.0;
  return c;
}

}  // namespace lieairy
