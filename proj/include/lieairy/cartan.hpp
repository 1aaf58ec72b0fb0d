// Structural data for U(n) on its Cartan subalgebra (positive roots, Weyl
// group, the discriminant pi) and numerical verification of the classical
// identities behind the spectral reduction: the Weyl integration formula,
// the orbital-integral limit formula, the HCIZ exponential sum, and the
// Fourier self-reproduction of pi * gaussian.
//
// Everything is realized on hermitian matrices with pairing (X,Y) = tr(XY)
// and conjugation action; pi on the diagonal is the real Vandermonde.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "lieairy/linalg.hpp"
#include "lieairy/parallel.hpp"
#include "lieairy/poly.hpp"
#include "lieairy/rng.hpp"

namespace lieairy {

struct CartanData {
  int n = 1;
  std::vector<std::pair<int, int>> positive_pairs;  // (l, k) with l < k
  int r = 0;                                        // n(n-1)/2 positive roots
  std::vector<std::vector<int>> weyl;               // all permutations of 0..n-1
  std::vector<int> weyl_sign;                       // epsilon(s) = det(s)
};

inline CartanData make_cartan(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("make_cartan: n out of range [1,6]");
  CartanData cd;
  cd.n = n;
  for (int l = 0; l < n; ++l)
    for (int k = l + 1; k < n; ++k) cd.positive_pairs.emplace_back(l, k);
  cd.r = static_cast<int>(cd.positive_pairs.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    cd.weyl.push_back(perm);
    cd.weyl_sign.push_back(inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return cd;
}

// pi(y) = prod_{l<k} (y_k - y_l)
inline double pi_eval(const CartanData& cd, std::span<const double> y) {
  if (static_cast<int>(y.size()) != cd.n) throw std::invalid_argument("pi_eval: size mismatch");
  double v = 1.0;
  for (auto [l, k] : cd.positive_pairs)
    v *= y[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(l)];
  return v;
}

namespace detail {

using PiExp = std::array<std::uint8_t, 6>;

// exact integer expansion of prod_{l<k} (y_k - y_l) into monomials
inline std::map<PiExp, long long> expand_pi(int n) {
  std::map<PiExp, long long> poly;
  poly[PiExp{}] = 1;
  for (int l = 0; l < n; ++l)
    for (int k = l + 1; k < n; ++k) {
      std::map<PiExp, long long> next;
      for (const auto& [e, c] : poly) {
        PiExp ek = e;
        ++ek[static_cast<std::size_t>(k)];
        next[ek] += c;
        PiExp el = e;
        ++el[static_cast<std::size_t>(l)];
        next[el] -= c;
      }
      std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
      poly = std::move(next);
    }
  return poly;
}

}  // namespace detail

// (pi, pi) with respect to the pairing (y^a, y^b) = a! delta_{ab}, computed by
// exact integer expansion of the Vandermonde product.
inline long long pi_norm_squared(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("pi_norm_squared: n out of range [1,6]");
  auto poly = detail::expand_pi(n);
  auto fact = [](int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  long long total = 0;
  for (const auto& [e, c] : poly) {
    long long term = c * c;
    for (int j = 0; j < n; ++j) term *= fact(e[static_cast<std::size_t>(j)]);
    total += term;
  }
  return total;
}

struct McReport {
  std::string check;
  int n = 0;
  cdouble lhs{};
  cdouble rhs{};
  double rel_err = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  double stderr_estimate = 0.0;
  bool passed = false;
};

inline double relative_error(cdouble lhs, cdouble rhs) {
  double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / denom;
}

// Haar-distributed unitary: complex gaussian matrix orthonormalized with the
// positive-diagonal convention (see mgs_unitary). Deterministic per stream.
inline CMat haar_sample(int n, RngStream& rng) {
  CMat g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  return mgs_unitary(g);
}

namespace detail {
constexpr std::size_t mc_block = 4096;
}

// Monte Carlo mean of f(u diag(y) u*) over Haar samples; block-deterministic,
// so the result depends only on (seed, samples), not the worker schedule.
inline cdouble orbital_average(const std::function<cdouble(const CMat&)>& f,
                               std::span<const double> y, int n, long long samples,
                               std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("orbital_average: samples must be >= 1");
  CMat d = CMat::diag(y);
  std::size_t nblocks =
      (static_cast<std::size_t>(samples) + detail::mc_block - 1) / detail::mc_block;
  auto partials = run_blocks<cdouble>(nblocks, [&](std::size_t b) {
    RngStream rng(seed, b);
    std::size_t lo = b * detail::mc_block;
    std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(samples),
                                           lo + detail::mc_block);
    cdouble acc{};
    for (std::size_t s = lo; s < hi; ++s) {
      CMat u = haar_sample(n, rng);
      acc += f(u * d * u.adjoint());
    }
    return acc;
  });
  cdouble total{};
  for (const auto& p : partials) total += p;
  return total / static_cast<double>(samples);
}

// Weyl integration formula specialized to the standard gaussian E, whose
// full-space self-dual integral is exactly 1:
//   1  =?=  (pi,pi)^{-1} * int_h pi(H)^2 E(H) d0H
// evaluated by deterministic tensor quadrature on [-8, 8]^n.
inline McReport weyl_integration_check(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("weyl_integration_check: n in {1,2,3}");
  CartanData cd = make_cartan(n);
  constexpr int pts = 257;
  const double lo = -8.0, hi = 8.0;
  const double h = (hi - lo) / (pts - 1);

  std::vector<double> axis(pts), gauss(pts);
  for (int i = 0; i < pts; ++i) {
    axis[static_cast<std::size_t>(i)] = lo + i * h;
    gauss[static_cast<std::size_t>(i)] =
        std::exp(-0.5 * axis[static_cast<std::size_t>(i)] * axis[static_cast<std::size_t>(i)]);
  }
  // trapezoid weights are immaterial at the boundary: the gaussian is ~1e-14
  double integral = 0.0;
  std::size_t total_pts = 1;
  for (int j = 0; j < n; ++j) total_pts *= pts;
  auto partial_sums = run_blocks<double>(static_cast<std::size_t>(pts), [&](std::size_t i0) {
    std::vector<double> yy(static_cast<std::size_t>(n));
    yy[0] = axis[i0];
    double acc = 0.0;
    std::size_t inner = total_pts / pts;
    for (std::size_t rest = 0; rest < inner; ++rest) {
      std::size_t code = rest;
      double e = gauss[i0];
      for (int j = 1; j < n; ++j) {
        std::size_t ij = code % pts;
        code /= pts;
        yy[static_cast<std::size_t>(j)] = axis[ij];
        e *= gauss[ij];
      }
      double pv = pi_eval(cd, yy);
      acc += pv * pv * e;
    }
    return acc;
  });
  for (double s : partial_sums) integral += s;
  integral *= std::pow(h, n) * std::pow(2.0 * std::numbers::pi, -0.5 * n);

  McReport rpt;
  rpt.check = "weyl_integration";
  rpt.n = n;
  rpt.lhs = 1.0;
  rpt.rhs = integral / static_cast<double>(pi_norm_squared(n));
  rpt.rel_err = relative_error(rpt.lhs, rpt.rhs);
  rpt.samples = static_cast<long long>(total_pts);
  rpt.stderr_estimate = 0.0;
  rpt.passed = rpt.rel_err <= 1e-6;
  return rpt;
}

// HCIZ: pi(y) pi(y') int_G exp(tr(u diag(y) u* diag(y'))) du against the
// signed exponential sum  |W|^{-1} (pi,pi) sum_s eps(s) exp(sum y_{s(i)} y'_i).
inline McReport hciz_check(int n, std::span<const double> y, std::span<const double> yp,
                           long long samples, std::uint64_t seed) {
  if (n < 2 || n > 3) throw std::invalid_argument("hciz_check: n in {2,3}");
  if (static_cast<int>(y.size()) != n || static_cast<int>(yp.size()) != n)
    throw std::invalid_argument("hciz_check: size mismatch");
  CartanData cd = make_cartan(n);
  double py = pi_eval(cd, y), pyp = pi_eval(cd, yp);
  if (py == 0.0 || pyp == 0.0)
    throw std::invalid_argument("hciz_check: eigenvalues must be distinct");

  // the orbit mean depends only on the eigenvalue sets; sample on the sorted
  // representatives so permuted inputs flip sign exactly through the pi factors
  std::vector<double> ys(y.begin(), y.end()), yps(yp.begin(), yp.end());
  std::sort(ys.begin(), ys.end());
  std::sort(yps.begin(), yps.end());
  double orientation = ((py < 0) != (pyp < 0)) ? -1.0 : 1.0;

  CMat d = CMat::diag(ys);
  CMat dp = CMat::diag(yps);
  struct Moments {
    double sum = 0.0, sumsq = 0.0;
  };
  std::size_t nblocks =
      (static_cast<std::size_t>(samples) + detail::mc_block - 1) / detail::mc_block;
  auto partials = run_blocks<Moments>(nblocks, [&](std::size_t b) {
    RngStream rng(seed, b);
    std::size_t lo = b * detail::mc_block;
    std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(samples),
                                           lo + detail::mc_block);
    Moments m;
    for (std::size_t s = lo; s < hi; ++s) {
      CMat u = haar_sample(n, rng);
      double w = std::exp((u * d * u.adjoint() * dp).trace().real());
      m.sum += w;
      m.sumsq += w * w;
    }
    return m;
  });
  double sum = 0.0, sumsq = 0.0;
  for (const auto& m : partials) {
    sum += m.sum;
    sumsq += m.sumsq;
  }
  double mean = sum / static_cast<double>(samples);
  double var = std::max(0.0, sumsq / static_cast<double>(samples) - mean * mean);
  double se = std::sqrt(var / static_cast<double>(samples));

  double rhs = 0.0;
  for (std::size_t s = 0; s < cd.weyl.size(); ++s) {
    double dot = 0.0;
    for (int i = 0; i < n; ++i)
      dot += ys[static_cast<std::size_t>(cd.weyl[s][static_cast<std::size_t>(i)])] *
             yps[static_cast<std::size_t>(i)];
    rhs += cd.weyl_sign[s] * std::exp(dot);
  }
  rhs *= orientation * static_cast<double>(pi_norm_squared(n)) /
         static_cast<double>(cd.weyl.size());

  McReport rpt;
  rpt.check = "hciz";
  rpt.n = n;
  rpt.lhs = py * pyp * mean;
  rpt.rhs = rhs;
  rpt.rel_err = relative_error(rpt.lhs, rpt.rhs);
  rpt.samples = samples;
  rpt.seed = seed;
  rpt.stderr_estimate = std::fabs(py * pyp) * se;
  rpt.passed = std::abs(rpt.lhs - rpt.rhs) <= 3.0 * rpt.stderr_estimate;
  return rpt;
}

namespace detail {

// composed central differences for prod_{l<k} (d_k - d_l) applied at y0
inline double apply_pi_derivative(const CartanData& cd,
                                  const std::function<double(std::span<const double>)>& f,
                                  std::span<const double> y0, double h) {
  std::function<double(std::vector<double>&, std::size_t)> rec =
      [&](std::vector<double>& y, std::size_t pair_idx) -> double {
    if (pair_idx == cd.positive_pairs.size()) return f(y);
    auto [l, k] = cd.positive_pairs[pair_idx];
    y[static_cast<std::size_t>(k)] += 0.5 * h;
    y[static_cast<std::size_t>(l)] -= 0.5 * h;
    double up = rec(y, pair_idx + 1);
    y[static_cast<std::size_t>(k)] -= h;
    y[static_cast<std::size_t>(l)] += h;
    double dn = rec(y, pair_idx + 1);
    y[static_cast<std::size_t>(k)] += 0.5 * h;
    y[static_cast<std::size_t>(l)] -= 0.5 * h;
    return (up - dn) / h;
  };
  std::vector<double> y(y0.begin(), y0.end());
  return rec(y, 0);
}

inline double gaussian_E(std::span<const double> y) {
  double q = 0.0;
  for (double v : y) q += v * v;
  return std::exp(-0.5 * q);
}

}  // namespace detail

// Limit formula with the invariant gaussian: the orbital average is exact by
// invariance, so phi_f = pi * E and (d(pi) phi_f)(0) should equal (pi,pi).
inline McReport limit_formula_check(int n, double h) {
  if (n < 1 || n > 3) throw std::invalid_argument("limit_formula_check: n in {1,2,3}");
  CartanData cd = make_cartan(n);
  auto phi = [&](std::span<const double> y) {
    return pi_eval(cd, y) * detail::gaussian_E(y);
  };
  std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
  double lhs = detail::apply_pi_derivative(cd, phi, origin, h);

  McReport rpt;
  rpt.check = "limit_formula";
  rpt.n = n;
  rpt.lhs = lhs;
  rpt.rhs = static_cast<double>(pi_norm_squared(n));
  rpt.rel_err = relative_error(rpt.lhs, rpt.rhs);
  rpt.samples = 1LL << cd.r;  // stencil evaluations of phi
  rpt.stderr_estimate = 0.0;
  rpt.passed = rpt.rel_err <= 1e-3;
  return rpt;
}

// Fourier transform of pi*E on [-8,8]^n (self-dual normalization, tensor
// trapezoid) compared with (-i)^r pi E on an output grid; rel_err reports the
// sup-norm of the difference. The tensor quadrature is organized through the
// exact monomial expansion of pi, so each term factorizes into per-axis sums.
inline McReport gaussian_pi_ft_check(int n, int grid_points_per_axis = 9,
                                     double kmax = 2.0) {
  if (n < 1 || n > 3) throw std::invalid_argument("gaussian_pi_ft_check: n in {1,2,3}");
  if (grid_points_per_axis < 2) throw std::invalid_argument("gaussian_pi_ft_check: grid too small");
  CartanData cd = make_cartan(n);
  constexpr int pts = 257;
  const double lo = -8.0, hi = 8.0;
  const double h = (hi - lo) / (pts - 1);
  std::vector<double> axis(pts);
  for (int i = 0; i < pts; ++i) axis[static_cast<std::size_t>(i)] = lo + i * h;

  auto monomials = detail::expand_pi(n);
  int max_deg = n - 1;

  std::vector<double> kgrid(static_cast<std::size_t>(grid_points_per_axis));
  double dk = 2.0 * kmax / (grid_points_per_axis - 1);
  for (int i = 0; i < grid_points_per_axis; ++i)
    kgrid[static_cast<std::size_t>(i)] = -kmax + dk * i;

  // per-axis moments F_d(k) = (2pi)^{-1/2} h sum_i axis_i^d E(axis_i) e^{-i k axis_i}
  std::vector<std::vector<cdouble>> moment(
      static_cast<std::size_t>(max_deg) + 1,
      std::vector<cdouble>(kgrid.size(), cdouble{}));
  const double norm1d = h / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t ki = 0; ki < kgrid.size(); ++ki) {
    double kv = kgrid[ki];
    for (int i = 0; i < pts; ++i) {
      double y = axis[static_cast<std::size_t>(i)];
      cdouble base = std::exp(cdouble(-0.5 * y * y, -kv * y));
      double yp = 1.0;
      for (int d = 0; d <= max_deg; ++d) {
        moment[static_cast<std::size_t>(d)][ki] += yp * base;
        yp *= y;
      }
    }
    for (int d = 0; d <= max_deg; ++d) moment[static_cast<std::size_t>(d)][ki] *= norm1d;
  }

  cdouble mir(1.0, 0.0);  // (-i)^r
  for (int i = 0; i < cd.r; ++i) mir *= cdouble(0.0, -1.0);

  std::size_t out_total = 1;
  for (int j = 0; j < n; ++j) out_total *= kgrid.size();

  double sup_err = 0.0;
  cdouble worst_lhs{}, worst_rhs{};
  std::vector<double> k(static_cast<std::size_t>(n));
  std::vector<std::size_t> kidx(static_cast<std::size_t>(n));
  for (std::size_t oi = 0; oi < out_total; ++oi) {
    std::size_t code = oi;
    for (int j = 0; j < n; ++j) {
      kidx[static_cast<std::size_t>(j)] = code % kgrid.size();
      k[static_cast<std::size_t>(j)] = kgrid[kidx[static_cast<std::size_t>(j)]];
      code /= kgrid.size();
    }
    cdouble acc{};
    for (const auto& [e, c] : monomials) {
      cdouble term(static_cast<double>(c), 0.0);
      for (int j = 0; j < n; ++j)
        term *= moment[e[static_cast<std::size_t>(j)]][kidx[static_cast<std::size_t>(j)]];
      acc += term;
    }
    cdouble target = mir * pi_eval(cd, k) * detail::gaussian_E(k);
    double err = std::abs(acc - target);
    if (err > sup_err) {
      sup_err = err;
      worst_lhs = acc;
      worst_rhs = target;
    }
  }

  McReport rpt;
  rpt.check = "gaussian_pi_fourier";
  rpt.n = n;
  rpt.lhs = worst_lhs;
  rpt.rhs = worst_rhs;
  rpt.rel_err = sup_err;
  rpt.samples = static_cast<long long>(out_total) * pts;
  rpt.stderr_estimate = 0.0;
  rpt.passed = sup_err <= 1e-6;
  return rpt;
}

// Stencil check of d(pi)E = (-1)^r pi E at a fixed sample of points.
inline McReport gaussian_pi_derivative_check(int n, double h = 1e-3) {
  if (n < 1 || n > 3) throw std::invalid_argument("gaussian_pi_derivative_check: n in {1,2,3}");
  CartanData cd = make_cartan(n);
  double sign = (cd.r % 2 == 0) ? 1.0 : -1.0;
  std::vector<std::vector<double>> pts;
  if (n == 1) {
    pts = {{0.0}, {0.7}, {-1.3}};
  } else if (n == 2) {
    pts = {{0.3, -0.4}, {1.0, 0.25}, {-0.8, 0.6}, {0.0, 0.0}};
  } else {
    pts = {{0.3, -0.4, 0.9}, {0.5, 0.0, -0.5}, {0.0, 0.0, 0.0}};
  }
  double sup_err = 0.0;
  cdouble worst_lhs{}, worst_rhs{};
  for (const auto& y : pts) {
    double lhs = detail::apply_pi_derivative(
        cd, [&](std::span<const double> z) { return detail::gaussian_E(z); }, y, h);
    double rhs = sign * pi_eval(cd, y) * detail::gaussian_E(y);
    double err = std::fabs(lhs - rhs);
    if (err > sup_err) {
      sup_err = err;
      worst_lhs = lhs;
      worst_rhs = rhs;
    }
  }
  McReport rpt;
  rpt.check = "gaussian_pi_derivative";
  rpt.n = n;
  rpt.lhs = worst_lhs;
  rpt.rhs = worst_rhs;
  rpt.rel_err = sup_err;
  rpt.samples = static_cast<long long>(pts.size());
  rpt.stderr_estimate = 0.0;
  rpt.passed = sup_err <= 1e-4;
  return rpt;
}

}  // namespace lieairy
