#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "lieairy/spectral.hpp"

using namespace lieairy;
using Catch::Approx;

namespace {
MatrixAiryConfig kontsevich(int n, double tol = 1e-9) {
  auto cfg = make_matrix_airy_config(n, 3);
  cfg.quad.tol = tol;
  return cfg;
}
}  // namespace

TEST_CASE("vandermonde products") {
  std::vector<double> a{1.0, 3.0};
  CHECK(vandermonde(a) == Approx(2.0));
  std::vector<double> b{0.0, 1.0, 2.0};
  CHECK(vandermonde(b) == Approx(2.0));
  std::vector<double> c{1.0, 1.0, 5.0};
  CHECK(vandermonde(c) == 0.0);
}

TEST_CASE("jacobi eigenvalues: invariants and conjugation") {
  CMat h(3);
  h(0, 0) = 1.0;
  h(1, 1) = -0.5;
  h(2, 2) = 2.0;
  h(0, 1) = cdouble(0.3, 0.4);
  h(1, 0) = std::conj(h(0, 1));
  h(0, 2) = cdouble(-0.2, 0.1);
  h(2, 0) = std::conj(h(0, 2));
  h(1, 2) = cdouble(0.05, -0.6);
  h(2, 1) = std::conj(h(1, 2));
  auto ev = jacobi_eigenvalues(h);
  REQUIRE(ev.size() == 3);
  CHECK(std::is_sorted(ev.begin(), ev.end()));
  double tr = ev[0] + ev[1] + ev[2];
  CHECK(tr == Approx(2.5).margin(1e-12));
  double det_ev = ev[0] * ev[1] * ev[2];
  CHECK(det_ev == Approx(determinant(h).real()).margin(1e-10));
}

TEST_CASE("jacobi eigenvalues recover a known spectrum under conjugation") {
  // u diag(0,1) u* for a fixed unitary must give back exactly {0, 1}
  CMat u(2);
  double c = std::cos(0.6), s = std::sin(0.6);
  u(0, 0) = c;
  u(0, 1) = cdouble(0.0, s);
  u(1, 0) = cdouble(0.0, s);
  u(1, 1) = c;
  CMat d(2);
  d(1, 1) = 1.0;
  auto ev = jacobi_eigenvalues(u * d * u.adjoint());
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == Approx(0.0).margin(1e-12));
  CHECK(ev[1] == Approx(1.0).margin(1e-12));
}

TEST_CASE("mgs_unitary produces a unitary matrix") {
  CMat g(3);
  int k = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = cdouble(std::sin(1.7 * k), std::cos(0.9 * k)), ++k;
  auto q = mgs_unitary(g);
  auto qt = q.adjoint() * q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(qt(i, j) - (i == j ? cdouble(1.0) : cdouble(0.0))) <= 1e-12);
}

TEST_CASE("one-dimensional derivative stack") {
  auto cfg = kontsevich(2);
  auto d = one_dim_derivatives(cfg, 0.0, 2);
  REQUIRE(d.size() == 3);
  CHECK(d[0].real() == Approx(2.0 * std::numbers::pi * 0.35502805388781724).epsilon(1e-6));
  // A(y) = 2 pi Ai(-y): A'(0) = -2 pi Ai'(0) > 0
  CHECK(d[1].real() == Approx(2.0 * std::numbers::pi * 0.25881940379280680).epsilon(1e-6));
  // ODE: A''(y) = -y A(y) = 0 at the origin
  CHECK(std::abs(d[2]) <= 1e-6);
  CHECK_THROWS_AS(one_dim_derivatives(cfg, 0.0, cfg.n + 2), std::invalid_argument);

  // and at a nonzero argument: A''(y) + y A(y) = 0
  auto dy = one_dim_derivatives(cfg, 0.7, 2);
  CHECK(std::abs(dy[2] + 0.7 * dy[0]) <= 1e-6);
}

TEST_CASE("n = 1 reduces to the one-dimensional integral exactly") {
  auto cfg = kontsevich(1);
  SpectralPoint pt{{0.37}};
  auto direct = airy_1d(prepare(MultiPoly::power(1, 0, 3, 1.0 / 3.0)), 0.37, 0, cfg.quad);
  auto viamat = matrix_airy_diag(cfg, pt);
  CHECK(viamat == direct.value);  // same code path, bitwise
}

TEST_CASE("2x2 determinant identity against its own entries") {
  auto cfg = kontsevich(2);
  auto d0 = one_dim_derivatives(cfg, 0.0, 1);
  auto d1 = one_dim_derivatives(cfg, 1.0, 1);
  cdouble expected = (d0[0] * d1[1] - d0[1] * d1[0]) / (1.0 - 0.0);
  // Lebesgue bookkeeping: one factor of 2 pi for n = 2
  expected *= 2.0 * std::numbers::pi;
  SpectralPoint pt{{0.0, 1.0}};
  auto got = matrix_airy_diag(cfg, pt);
  CHECK(std::abs(got - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("permutation invariance is exact") {
  auto cfg = kontsevich(2);
  auto a = matrix_airy_diag(cfg, SpectralPoint{{0.0, 1.0}});
  auto b = matrix_airy_diag(cfg, SpectralPoint{{1.0, 0.0}});
  CHECK(a == b);
  auto cfg3 = kontsevich(3);
  auto c = matrix_airy_diag(cfg3, SpectralPoint{{0.3, -0.9, 1.4}});
  auto d = matrix_airy_diag(cfg3, SpectralPoint{{1.4, 0.3, -0.9}});
  CHECK(c == d);
}

TEST_CASE("confluent limit of the 2x2 ratio") {
  auto cfg = kontsevich(2, 1e-10);
  const double a = 0.3;
  // confluent branch: A(a) A''(a) - A'(a)^2
  auto conf = matrix_airy_diag(cfg, SpectralPoint{{a, a}});
  auto d = one_dim_derivatives(cfg, a, 2);
  cdouble lhopital = (d[0] * d[2] - d[1] * d[1]) * (2.0 * std::numbers::pi);
  CHECK(std::abs(conf - lhopital) <= 1e-9 * std::max(1.0, std::abs(lhopital)));

  // generic evaluation at gap 1e-3 against the confluent branch forced onto
  // the same input (the symmetric divided difference is even in the gap, so
  // the branches agree to O(gap^2))
  auto generic = matrix_airy_diag(cfg, SpectralPoint{{a, a + 1e-3}});
  auto wide = cfg;
  wide.coincidence_tol = 1e-2;
  auto clustered = matrix_airy_diag(wide, SpectralPoint{{a, a + 1e-3}});
  CHECK(std::abs(generic - clustered) / std::max(1.0, std::abs(clustered)) <= 1e-4);

  // the symmetric approach to (a, a) converges to the confluent limit too
  auto symmetric = matrix_airy_diag(cfg, SpectralPoint{{a - 5e-4, a + 5e-4}});
  CHECK(std::abs(symmetric - conf) / std::max(1.0, std::abs(conf)) <= 1e-4);
}

TEST_CASE("mixed confluent clusters for n = 3") {
  auto cfg = kontsevich(3, 1e-10);
  // cluster sizes 2 + 1: rows at the pair take derivative orders 0..1 and
  // the denominator keeps (b - a)^{2*1}
  auto conf = matrix_airy_diag(cfg, SpectralPoint{{0.3, 0.3, 1.0}});
  auto symmetric = matrix_airy_diag(cfg, SpectralPoint{{0.3 - 5e-4, 0.3 + 5e-4, 1.0}});
  CHECK(std::abs(symmetric - conf) / std::max(1.0, std::abs(conf)) <= 1e-4);

  // the clustered branch on the same slightly-split input agrees too
  auto wide = cfg;
  wide.coincidence_tol = 1e-2;
  auto generic = matrix_airy_diag(cfg, SpectralPoint{{0.3, 0.3 + 1e-3, 1.0}});
  auto clustered = matrix_airy_diag(wide, SpectralPoint{{0.3, 0.3 + 1e-3, 1.0}});
  CHECK(std::abs(generic - clustered) / std::max(1.0, std::abs(clustered)) <= 1e-4);

  // full triple cluster at the origin stays finite and permutation-stable
  auto full = matrix_airy_diag(cfg, SpectralPoint{{0.0, 0.0, 0.0}});
  CHECK(std::isfinite(full.real()));
  CHECK(std::isfinite(full.imag()));
}

TEST_CASE("confluent cluster reporting") {
  auto cfg = kontsevich(2);
  auto clusters = confluent_clusters(cfg, SpectralPoint{{0.5, 0.5}});
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0] == (std::vector<int>{0, 1}));
  auto separate = confluent_clusters(cfg, SpectralPoint{{0.0, 1.0}});
  CHECK(separate.size() == 2);
}

TEST_CASE("measure bookkeeping on the matrix function") {
  for (int n : {1, 2}) {
    auto leb = kontsevich(n);
    auto sd = kontsevich(n);
    sd.measure = Measure::SelfDual;
    SpectralPoint pt{n == 1 ? std::vector<double>{0.4} : std::vector<double>{0.0, 1.0}};
    auto a = matrix_airy_diag(leb, pt);
    auto b = matrix_airy_diag(sd, pt);
    double factor = std::pow(2.0 * std::numbers::pi, 0.5 * n * n);
    CHECK(std::abs(a - b * factor) <= 1e-12 * std::abs(a));
  }
}

TEST_CASE("hermitian entry point") {
  auto cfg = kontsevich(2);
  CMat h(2);
  h(0, 0) = 0.0;
  h(1, 1) = 1.0;
  auto viah = matrix_airy_hermitian(cfg, h);
  auto viad = matrix_airy_diag(cfg, SpectralPoint{{0.0, 1.0}});
  CHECK(std::abs(viah - viad) <= 1e-10);

  // conjugate by a fixed unitary: same value to 1e-8
  CMat u(2);
  double c = std::cos(0.6), s = std::sin(0.6);
  u(0, 0) = c;
  u(0, 1) = cdouble(0.0, s);
  u(1, 0) = cdouble(0.0, s);
  u(1, 1) = c;
  auto conj_h = u * h * u.adjoint();
  CHECK(hermiticity_defect(conj_h) <= 1e-12);
  auto viac = matrix_airy_hermitian(cfg, conj_h);
  CHECK(std::abs(viac - viad) <= 1e-8);

  // H = 0 lands on the confluent branch at the origin
  CMat zero(2);
  auto v0 = matrix_airy_hermitian(cfg, zero);
  auto conf0 = matrix_airy_diag(cfg, SpectralPoint{{0.0, 0.0}});
  CHECK(std::abs(v0 - conf0) <= 1e-12);

  CMat bad(2);
  bad(0, 1) = cdouble(1.0, 0.0);
  bad(1, 0) = cdouble(0.5, 0.0);
  CHECK_THROWS_AS(matrix_airy_hermitian(cfg, bad), std::invalid_argument);
}

TEST_CASE("kontsevich pde residual") {
  auto cfg = kontsevich(2, 1e-10);
  double resid = kontsevich_pde_residual(cfg, SpectralPoint{{0.5, -0.7}}, 1e-2);
  CHECK(resid <= 1e-3);

  // n = 1 reduction is the ODE residual
  auto cfg1 = kontsevich(1, 1e-10);
  double r1 = kontsevich_pde_residual(cfg1, SpectralPoint{{0.8}}, 1e-2);
  CHECK(r1 <= 1e-3);

  // stencil order: halving h shrinks the residual roughly fourfold
  double rh = kontsevich_pde_residual(cfg, SpectralPoint{{0.9, -0.8}}, 4e-2);
  double rh2 = kontsevich_pde_residual(cfg, SpectralPoint{{0.9, -0.8}}, 2e-2);
  CHECK(rh2 <= rh / 2.0);

  auto bad = make_matrix_airy_config(2, 4);
  CHECK_THROWS_AS(kontsevich_pde_residual(bad, SpectralPoint{{0.5, -0.7}}, 1e-2),
                  std::invalid_argument);
  CHECK_THROWS_AS(kontsevich_pde_residual(cfg, SpectralPoint{{0.5, 0.5001}}, 1e-2),
                  std::invalid_argument);
}
