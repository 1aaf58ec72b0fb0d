// The matrix Airy function on hermitian arguments, evaluated through its
// restriction to eigenvalues: for p(X) = c*tr(X^m),
//
//   A_p(diag(y)) * prod_{k>l}(y_k - y_l) = det( A_q^{(j-1)}(y_i) ),
//
// with q(t) = c*t^m the one-variable polynomial. Coincident eigenvalues are
// handled by the divided-difference (confluent) limit of both sides. The
// identity above holds in the self-dual normalization; the Lebesgue variant
// carries an extra (2*pi)^{n(n-1)/2}.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "lieairy/linalg.hpp"
#include "lieairy/oscillatory.hpp"

namespace lieairy {

struct SpectralPoint {
  std::vector<double> eigenvalues;  // any order; sorted internally
};

struct MatrixAiryConfig {
  int n = 1;
  int m = 3;
  double c = 1.0 / 3.0;  // p(X) = c * tr(X^m)
  Measure measure = Measure::Lebesgue;
  double coincidence_tol = 1e-8;
  QuadConfig quad{};
};

// Kontsevich normalization: c = 1/3 when m = 3, else 1.
inline MatrixAiryConfig make_matrix_airy_config(int n, int m) {
  MatrixAiryConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.c = (m == 3) ? 1.0 / 3.0 : 1.0;
  if (n < 1) throw std::invalid_argument("matrix airy: n must be >= 1");
  if (m < 3) throw std::invalid_argument("matrix airy: m must be >= 3");
  return cfg;
}

inline double vandermonde(std::span<const double> y) {
  double v = 1.0;
  for (std::size_t k = 1; k < y.size(); ++k)
    for (std::size_t l = 0; l < k; ++l) v *= (y[k] - y[l]);
  return v;
}

// (d^j A_q)(y) for q(t) = c*t^m and j = 0..max_order, in the configured measure
inline std::vector<cdouble> one_dim_derivatives(const MatrixAiryConfig& cfg, double y,
                                                int max_order) {
  if (max_order > cfg.n + 1)
    throw std::invalid_argument("one_dim_derivatives: order exceeds n+1");
  MultiPoly q = MultiPoly::power(1, 0, cfg.m, cfg.c);
  Prepared pq = prepare(q);
  QuadConfig qc = cfg.quad;
  qc.measure = cfg.measure;
  std::vector<cdouble> out;
  out.reserve(static_cast<std::size_t>(max_order) + 1);
  for (int j = 0; j <= max_order; ++j) out.push_back(airy_1d(pq, y, j, qc).value);
  return out;
}

namespace detail {

struct Cluster {
  double rep = 0.0;  // mean of the clustered eigenvalues
  int size = 0;
};

inline std::vector<Cluster> cluster_eigenvalues(std::vector<double> y, double tol) {
  std::sort(y.begin(), y.end());
  std::vector<Cluster> clusters;
  std::size_t i = 0;
  while (i < y.size()) {
    std::size_t j = i + 1;
    double sum = y[i];
    while (j < y.size() && std::fabs(y[j] - y[j - 1]) < tol) {
      sum += y[j];
      ++j;
    }
    clusters.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
    i = j;
  }
  return clusters;
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

// Index groups of coincident eigenvalues (positions in the ascending order).
inline std::vector<std::vector<int>> confluent_clusters(const MatrixAiryConfig& cfg,
                                                        const SpectralPoint& pt) {
  auto clusters = detail::cluster_eigenvalues(pt.eigenvalues, cfg.coincidence_tol);
  std::vector<std::vector<int>> out;
  int at = 0;
  for (const auto& c : clusters) {
    std::vector<int> idx;
    for (int k = 0; k < c.size; ++k) idx.push_back(at++);
    out.push_back(std::move(idx));
  }
  return out;
}

inline cdouble matrix_airy_diag(const MatrixAiryConfig& cfg, const SpectralPoint& pt) {
  int n = cfg.n;
  if (static_cast<int>(pt.eigenvalues.size()) != n)
    throw std::invalid_argument("matrix_airy_diag: eigenvalue count mismatch");
  for (double v : pt.eigenvalues)
    if (!std::isfinite(v)) throw std::invalid_argument("matrix_airy_diag: non-finite eigenvalue");

  auto clusters = detail::cluster_eigenvalues(pt.eigenvalues, cfg.coincidence_tol);

  // rows: cluster c contributes rows A^{(j-1+i)}(rep_c)/i! for i = 0..size-1
  CMat mat(n);
  int row = 0;
  for (const auto& cl : clusters) {
    int max_order = (n - 1) + (cl.size - 1);
    auto derivs = one_dim_derivatives(cfg, cl.rep, max_order);
    for (int i = 0; i < cl.size; ++i) {
      double scale = 1.0 / detail::factorial(i);
      for (int j = 0; j < n; ++j)
        mat(row, j) = derivs[static_cast<std::size_t>(j + i)] * scale;
      ++row;
    }
  }

  cdouble det = determinant(mat);

  // generic rows use the actual sorted eigenvalues; once clustered, the
  // denominator keeps only inter-cluster factors with multiplicities
  double denom = 1.0;
  if (static_cast<int>(clusters.size()) == n) {
    std::vector<double> ys = pt.eigenvalues;
    std::sort(ys.begin(), ys.end());
    denom = vandermonde(ys);
  } else {
    for (std::size_t b = 1; b < clusters.size(); ++b)
      for (std::size_t a = 0; a < b; ++a)
        denom *= std::pow(clusters[b].rep - clusters[a].rep,
                          clusters[a].size * clusters[b].size);
  }

  cdouble value = det / denom;
  if (cfg.measure == Measure::Lebesgue)
    value *= std::pow(2.0 * std::numbers::pi, 0.5 * n * (n - 1));
  return value;
}

// Eigenvalues are extracted by the internal Jacobi sweep; conjugation
// invariance of the integral then reduces everything to the diagonal case.
inline cdouble matrix_airy_hermitian(const MatrixAiryConfig& cfg, const CMat& h) {
  if (h.n != cfg.n) throw std::invalid_argument("matrix_airy_hermitian: size mismatch");
  if (hermiticity_defect(h) > 1e-12)
    throw std::invalid_argument("matrix_airy_hermitian: input is not hermitian");
  SpectralPoint pt{jacobi_eigenvalues(h)};
  return matrix_airy_diag(cfg, pt);
}

// Residual of the matrix Airy differential equation, restricted to the
// diagonal through the radial form of the Laplacian:
//   pi(y)^{-1} * Lap_h[ pi * A ](y) + (sum y_i) * A(y)  ~  0,
// with Lap_h the central second-difference Laplacian of step h.
inline double kontsevich_pde_residual(const MatrixAiryConfig& cfg, const SpectralPoint& pt,
                                      double h) {
  if (cfg.m != 3 || std::fabs(cfg.c - 1.0 / 3.0) > 1e-12)
    throw std::invalid_argument("kontsevich_pde_residual: requires m = 3, c = 1/3");
  if (cfg.n > 3) throw std::invalid_argument("kontsevich_pde_residual: n must be <= 3");
  const auto& y = pt.eigenvalues;
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = a + 1; b < y.size(); ++b)
      if (std::fabs(y[a] - y[b]) <= 10.0 * h)
        throw std::invalid_argument("kontsevich_pde_residual: eigenvalue gap too small for the stencil");

  auto piA = [&](const std::vector<double>& z) {
    return vandermonde(z) * matrix_airy_diag(cfg, SpectralPoint{z});
  };

  cdouble center_A = matrix_airy_diag(cfg, pt);
  cdouble lap{};
  cdouble f0 = piA(y);
  for (std::size_t j = 0; j < y.size(); ++j) {
    std::vector<double> up = y, dn = y;
    up[j] += h;
    dn[j] -= h;
    lap += (piA(up) - 2.0 * f0 + piA(dn)) / (h * h);
  }
  double trace = 0.0;
  for (double v : y) trace += v;
  cdouble residual = lap / vandermonde(y) + trace * center_A;
  return std::abs(residual);
}

}  // namespace lieairy
