// Minimal dense complex linear algebra for small matrices: products,
// a cyclic Jacobi eigensolver for hermitian matrices, LU determinants, and
// Gram-Schmidt orthonormalization with the positive-diagonal convention.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "lieairy/poly.hpp"  // cdouble

namespace lieairy {

struct CMat {
  int n = 0;
  std::vector<cdouble> a;  // row-major

  CMat() = default;
  explicit CMat(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

  cdouble& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const cdouble& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }

  static CMat identity(int size) {
    CMat m(size);
    for (int i = 0; i < size; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMat diag(std::span<const double> d) {
    CMat m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  CMat adjoint() const {
    CMat m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  friend CMat operator*(const CMat& x, const CMat& y) {
    if (x.n != y.n) throw std::invalid_argument("CMat: size mismatch");
    CMat z(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        cdouble v = x(i, k);
        if (v == cdouble{}) continue;
        for (int j = 0; j < x.n; ++j) z(i, j) += v * y(k, j);
      }
    return z;
  }

  cdouble trace() const {
    cdouble t{};
    for (int i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

inline double hermiticity_defect(const CMat& h) {
  double d = 0.0;
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j) d = std::max(d, std::abs(h(i, j) - std::conj(h(j, i))));
  return d;
}

// Eigenvalues of a hermitian matrix by cyclic Jacobi sweeps, ascending.
inline std::vector<double> jacobi_eigenvalues(CMat h, double tol = 1e-13) {
  int n = h.n;
  if (n == 1) return {h(0, 0).real()};
  double scale = std::max(h.max_abs(), 1.0);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
    if (off < tol * scale) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        cdouble hpq = h(p, q);
        double b = std::abs(hpq);
        if (b < 1e-300) continue;
        // peel the phase so the 2x2 block becomes the real symmetric
        // [[a, b], [b, d]], then rotate with the classical angle choice
        cdouble phase = hpq / b;  // e^{i phi}
        double app = h(p, p).real(), aqq = h(q, q).real();
        double tau = (aqq - app) / (2.0 * b);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(tau * tau + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        // U = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on the (p, q) plane
        for (int k = 0; k < n; ++k) {  // H <- H U
          cdouble hkp = h(k, p), hkq = h(k, q);
          h(k, p) = c * hkp - s * std::conj(phase) * hkq;
          h(k, q) = s * phase * hkp + c * hkq;
        }
        for (int k = 0; k < n; ++k) {  // H <- U* H
          cdouble hpk = h(p, k), hqk = h(q, k);
          h(p, k) = c * hpk - s * phase * hqk;
          h(q, k) = s * std::conj(phase) * hpk + c * hqk;
        }
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = h(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Determinant by LU with partial pivoting.
inline cdouble determinant(CMat m) {
  int n = m.n;
  cdouble det(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (std::abs(m(piv, k)) == 0.0) return cdouble{};
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      cdouble f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

// Modified Gram-Schmidt with re-orthogonalization. Normalization constants
// are real and positive, i.e. this computes the unique QR factor with a
// positive-diagonal R, which is the convention that makes a gaussian input
// matrix land exactly on the uniform (Haar) distribution.
inline CMat mgs_unitary(const CMat& input) {
  int n = input.n;
  CMat q = input;
  auto col_dot = [&](int ci, int cj) {  // <q_ci, q_cj>
    cdouble s{};
    for (int k = 0; k < n; ++k) s += std::conj(q(k, ci)) * q(k, cj);
    return s;
  };
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) {
        cdouble r = col_dot(i, j);
        for (int k = 0; k < n; ++k) q(k, j) -= r * q(k, i);
      }
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += std::norm(q(k, j));
    norm = std::sqrt(norm);
    if (norm < 1e-300) throw std::runtime_error("mgs_unitary: rank deficient input");
    for (int k = 0; k < n; ++k) q(k, j) /= norm;
  }
  return q;
}

}  // namespace lieairy
