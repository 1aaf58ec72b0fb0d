#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "lieairy/cartan.hpp"

using namespace lieairy;
using Catch::Approx;

TEST_CASE("cartan data for U(n)") {
  auto cd = make_cartan(3);
  CHECK(cd.r == 3);
  CHECK(cd.positive_pairs.size() == 3);
  CHECK(cd.weyl.size() == 6);
  int sign_sum = 0;
  for (int s : cd.weyl_sign) sign_sum += s;
  CHECK(sign_sum == 0);  // half even, half odd
  CHECK_THROWS_AS(make_cartan(7), std::invalid_argument);
}

TEST_CASE("pi evaluation and skew-symmetry") {
  auto cd2 = make_cartan(2);
  std::vector<double> y{0.0, 1.0};
  CHECK(pi_eval(cd2, y) == Approx(1.0));
  auto cd3 = make_cartan(3);
  std::vector<double> y3{0.0, 1.0, 2.0};
  CHECK(pi_eval(cd3, y3) == Approx(2.0));

  std::vector<double> pt{0.4, -1.2, 0.9};
  double base = pi_eval(cd3, pt);
  for (std::size_t s = 0; s < cd3.weyl.size(); ++s) {
    std::vector<double> perm(3);
    for (int i = 0; i < 3; ++i)
      perm[static_cast<std::size_t>(i)] =
          pt[static_cast<std::size_t>(cd3.weyl[s][static_cast<std::size_t>(i)])];
    CHECK(pi_eval(cd3, perm) == Approx(cd3.weyl_sign[s] * base));
  }
}

TEST_CASE("pi norm squared matches the factorial formula") {
  // symbolic-pairing computation cross-checked against n! prod_{j<n} j!
  long long expect[] = {1, 2, 12, 288, 34560, 24883200};
  for (int n = 1; n <= 6; ++n) {
    long long formula = 1;
    for (int j = 1; j <= n; ++j) formula *= j;
    for (int j = 1; j < n; ++j) {
      long long f = 1;
      for (int i = 2; i <= j; ++i) f *= i;
      formula *= f;
    }
    CHECK(pi_norm_squared(n) == expect[n - 1]);
    CHECK(pi_norm_squared(n) == formula);
  }
  CHECK_THROWS_AS(pi_norm_squared(7), std::invalid_argument);
}

TEST_CASE("haar samples are unitary and have the right low moments") {
  const int n = 2;
  const long long samples = 100000;
  RngStream rng(42, 0);
  for (int k = 0; k < 20; ++k) {
    auto u = haar_sample(n, rng);
    auto ut = u.adjoint() * u;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(ut(i, j) - (i == j ? cdouble(1.0) : cdouble(0.0))) <= 1e-12);
  }

  // moments: E u11 = 0 and E |u11|^2 = 1/n, each within 3 standard errors
  cdouble mean{};
  double mean_sq = 0.0, var_sq = 0.0;
  RngStream rng2(42, 1);
  std::vector<double> absvals;
  absvals.reserve(samples);
  for (long long s = 0; s < samples; ++s) {
    auto u = haar_sample(n, rng2);
    mean += u(0, 0);
    absvals.push_back(std::norm(u(0, 0)));
    mean_sq += absvals.back();
  }
  mean /= static_cast<double>(samples);
  mean_sq /= static_cast<double>(samples);
  for (double v : absvals) var_sq += (v - mean_sq) * (v - mean_sq);
  var_sq /= static_cast<double>(samples);
  // |u11| <= 1, so the component variances are bounded by 1
  double se = 1.0 / std::sqrt(static_cast<double>(samples));
  CHECK(std::abs(mean) <= 3.0 * se);
  CHECK(std::fabs(mean_sq - 1.0 / n) <= 3.0 * std::sqrt(var_sq / samples));
}

TEST_CASE("orbital average of an invariant function is exact") {
  std::vector<double> y{0.7, -0.4};
  auto f = [](const CMat& x) {
    return cdouble(std::exp(-0.5 * (x * x).trace().real()), 0.0);
  };
  auto avg = orbital_average(f, y, 2, 64, 5);
  double expect = std::exp(-0.5 * (0.49 + 0.16));
  CHECK(std::abs(avg - cdouble(expect, 0.0)) <= 1e-12);
}

TEST_CASE("orbital average of the (1,1) entry sees the normalized trace") {
  std::vector<double> y{1.0, -0.3};
  auto f = [](const CMat& x) { return x(0, 0); };
  auto avg = orbital_average(f, y, 2, 200000, 11);
  CHECK(std::abs(avg - cdouble(0.35, 0.0)) <= 0.01);
}

TEST_CASE("orbital average is reproducible and schedule-independent") {
  std::vector<double> y{0.3, 1.1};
  auto f = [](const CMat& x) { return x(0, 1); };
  auto a = orbital_average(f, y, 2, 10000, 7);
  auto b = orbital_average(f, y, 2, 10000, 7);
  CHECK(a == b);
  auto c = orbital_average(f, y, 2, 10000, 8);
  CHECK(a != c);

  setenv("LIE_AIRY_THREADS", "1", 1);
  auto serial = orbital_average(f, y, 2, 10000, 7);
  unsetenv("LIE_AIRY_THREADS");
  CHECK(serial == a);
}

TEST_CASE("weyl integration formula via the gaussian") {
  auto r1 = weyl_integration_check(1);
  CHECK(r1.passed);
  CHECK(r1.rel_err <= 1e-6);

  auto r2 = weyl_integration_check(2);
  CHECK(r2.passed);
  // the h-side integral itself is (pi, pi) = 2
  CHECK((r2.rhs * 2.0).real() == Approx(2.0).epsilon(1e-6));

  auto r3 = weyl_integration_check(3);
  CHECK(r3.passed);
  CHECK((r3.rhs * 12.0).real() == Approx(12.0).epsilon(1e-6));
}

TEST_CASE("hciz closed form at the symmetric 2x2 point") {
  std::vector<double> y{1.0, -1.0};
  auto rpt = hciz_check(2, y, y, 200000, 7);
  CHECK(rpt.rhs.real() == Approx(7.2537208156940375).epsilon(1e-12));
  CHECK(rpt.passed);  // |lhs - rhs| <= 3 stderr
  CHECK(rpt.rel_err <= 0.02);
  CHECK(rpt.stderr_estimate > 0.0);

  // reproducible from (seed, samples)
  auto again = hciz_check(2, y, y, 200000, 7);
  CHECK(again.lhs == rpt.lhs);

  // swapping the entries flips both sides consistently
  std::vector<double> ys{-1.0, 1.0};
  auto swapped = hciz_check(2, ys, y, 200000, 7);
  CHECK(swapped.lhs.real() == Approx(-rpt.lhs.real()).epsilon(1e-12));
  CHECK(swapped.rhs.real() == Approx(-rpt.rhs.real()).epsilon(1e-12));
  CHECK(swapped.rel_err == Approx(rpt.rel_err).margin(1e-12));

  std::vector<double> degenerate{0.0, 0.0};
  CHECK_THROWS_AS(hciz_check(2, degenerate, y, 10, 1), std::invalid_argument);
}

TEST_CASE("hciz at asymmetric arguments") {
  std::vector<double> y{0.6, -0.2}, yp{1.0, 0.3};
  auto rpt = hciz_check(2, y, yp, 200000, 11);
  // closed form: (1/2)(pi,pi)[e^{y1 y1' + y2 y2'} - e^{y2 y1' + y1 y2'}]
  double expect = std::exp(0.6 * 1.0 + (-0.2) * 0.3) - std::exp((-0.2) * 1.0 + 0.6 * 0.3);
  CHECK(rpt.rhs.real() == Approx(expect).epsilon(1e-12));
  CHECK(rpt.passed);

  auto r3 = hciz_check(3, std::vector<double>{1.0, 0.0, -1.0},
                       std::vector<double>{0.5, -0.1, -0.9}, 200000, 3);
  CHECK(r3.passed);
  CHECK(r3.rel_err <= 0.1);
}

TEST_CASE("limit formula for the gaussian") {
  auto r1 = limit_formula_check(1, 1e-3);
  CHECK(r1.lhs.real() == Approx(1.0).margin(1e-12));

  auto r2 = limit_formula_check(2, 1e-3);
  CHECK(r2.passed);
  CHECK(r2.lhs.real() == Approx(2.0).epsilon(1e-3));

  // second-order stencil: quartering the error when h halves
  auto e1 = std::abs(limit_formula_check(2, 2e-2).lhs - cdouble(2.0, 0.0));
  auto e2 = std::abs(limit_formula_check(2, 1e-2).lhs - cdouble(2.0, 0.0));
  CHECK(e2 <= e1 / 2.0);

  auto r3 = limit_formula_check(3, 1e-3);
  CHECK(r3.rel_err <= 1e-2);
}

TEST_CASE("fourier transform of pi times gaussian") {
  auto r1 = gaussian_pi_ft_check(1);
  CHECK(r1.passed);  // gaussian self-duality
  auto r2 = gaussian_pi_ft_check(2);
  CHECK(r2.passed);
  CHECK(r2.rel_err <= 1e-6);
  auto r3 = gaussian_pi_ft_check(3);
  CHECK(r3.passed);
}

TEST_CASE("derivative identity d(pi)E = (-1)^r pi E") {
  auto r2 = gaussian_pi_derivative_check(2);
  CHECK(r2.passed);
  CHECK(r2.rel_err <= 1e-4);
  auto r3 = gaussian_pi_derivative_check(3);
  CHECK(r3.rel_err <= 1e-3);
}

TEST_CASE("mc report relative error convention") {
  CHECK(relative_error(cdouble(2.0, 0.0), cdouble(1.0, 0.0)) == Approx(0.5));
  CHECK(relative_error(cdouble(0.0, 0.0), cdouble(0.0, 0.0)) == 0.0);
}
