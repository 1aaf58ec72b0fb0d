#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lieairy/contour.hpp"

using namespace lieairy;
using Catch::Approx;

TEST_CASE("map_point on the shifted-line cycle") {
  OddCycle c{{1.0}, 0.5};
  std::vector<double> xi{2.0};
  std::vector<cdouble> z(1);
  auto jac = map_point(c, xi, z);
  CHECK(z[0] == cdouble(2.0, 0.5));
  CHECK(jac == cdouble(1.0, 0.0));
}

TEST_CASE("map_point on the clamped even cycle") {
  EvenCycle c{{0.5}, 1.0};
  std::vector<double> xi{2.0};
  std::vector<cdouble> z(1);
  auto jac = map_point(c, xi, z);
  CHECK(z[0] == cdouble(2.0, 0.5));  // |xi| > 1: full shift, no slope
  CHECK(jac == cdouble(1.0, 0.0));

  xi[0] = 0.4;
  jac = map_point(c, xi, z);
  CHECK(z[0].real() == Approx(0.4));
  CHECK(z[0].imag() == Approx(0.2));  // a(0.4) = 0.4
  CHECK(jac == cdouble(1.0, 0.5));
}

TEST_CASE("jacobian bound and cycle sandwich") {
  EvenCycle c{{0.7, 0.3}, 0.9};
  std::vector<cdouble> z(2);
  for (double a : {-2.0, -0.9, -0.2, 0.0, 0.4, 1.3})
    for (double b : {-1.5, -0.5, 0.1, 0.8, 2.2}) {
      std::vector<double> xi{a, b};
      auto jac = map_point(c, xi, z);
      CHECK(std::abs(jac) <= 4.0);  // 2^n
      double nxi = std::sqrt(a * a + b * b);
      double nz = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
      CHECK(nz >= nxi);
      CHECK(nz <= nxi + 2.0);
    }
}

TEST_CASE("majorant for the cubic on its shifted line") {
  // Im p(xi + it) = t xi^2 - t^3/3: leading ~ t, only a small correction
  auto p = parse_poly("y1^3/3");
  for (double t : {0.5, 0.2}) {
    Cycle c = OddCycle{{1.0}, t};
    auto mc = estimate_majorant(p, c);
    CHECK(mc.kind == MajorantConstants::Kind::Odd);
    CHECK(mc.exponent == 2);
    CHECK(mc.leading == Approx(t).epsilon(0.02));
    CHECK(mc.correction >= 0.0);
    CHECK(mc.correction < 0.5);
  }
}

TEST_CASE("majorant for the quartic on the even cycle") {
  // Im p(xi + i sgn(xi) t) = t|xi|^3 - t^3|xi| for |xi| > 1: leading ~ t
  auto p = parse_poly("y1^4/4");
  Cycle c = EvenCycle{{0.5}, 1.0};
  auto mc = estimate_majorant(p, c);
  CHECK(mc.kind == MajorantConstants::Kind::Even);
  CHECK(mc.exponent == 3);
  CHECK(mc.leading == Approx(0.5).epsilon(0.02));
}

TEST_CASE("majorant for a quadratic on the even cycle") {
  // Im (xi + i a(xi) t)^2 = 2 t a(xi) xi = 2t|xi| for |xi| >= 1:
  // envelope exponent 1 with leading ~ 2t times the coefficient
  auto p = parse_poly("y1^2");
  Cycle c = EvenCycle{{0.5}, 1.0};
  auto mc = estimate_majorant(p, c);
  CHECK(mc.exponent == 1);
  CHECK(mc.leading == Approx(1.0).epsilon(0.02));
}

TEST_CASE("majorant fit fails when the cycle cannot tame the integrand") {
  // on the plain shifted line, Im (xi + it)^2 = 2 t xi is negative for xi < 0
  auto p = parse_poly("y1^2");
  Cycle c = OddCycle{{1.0}, 0.5};
  CHECK_THROWS_AS(estimate_majorant(p, c), envelope_error);
}

TEST_CASE("majorant envelope is conservative on every probed sample") {
  auto check_conservative = [](const MultiPoly& p, const Cycle& c) {
    auto mc = estimate_majorant(p, c);
    MajorantProbeConfig pcfg;
    int n = p.nvars();
    auto dirs = detail::sign_vectors(n);
    auto alpha = detail::kronecker_alphas(n);
    for (std::size_t k = 0; k < pcfg.directions_per_var * static_cast<std::size_t>(n); ++k)
      dirs.push_back(detail::kronecker_direction(alpha, k));
    std::vector<double> xi(static_cast<std::size_t>(n));
    std::vector<cdouble> z(static_cast<std::size_t>(n));
    for (int i = 0; i < pcfg.radial_samples; ++i) {
      double r = std::exp(std::log(pcfg.probe_radius) * i / (pcfg.radial_samples - 1));
      double env = mc.leading * (std::pow(r, mc.exponent) -
                                 mc.correction * std::pow(r, mc.exponent - 1));
      for (const auto& u : dirs) {
        for (int j = 0; j < n; ++j)
          xi[static_cast<std::size_t>(j)] = r * u[static_cast<std::size_t>(j)];
        map_point(c, xi, z);
        double im = p.eval(std::span<const cdouble>(z)).imag();
        CHECK(im >= env - 1e-9 * std::max(1.0, std::fabs(env)));
      }
    }
  };
  check_conservative(parse_poly("y1^3/3 + y1"), OddCycle{{1.0}, 0.3});
  check_conservative(parse_poly("y1^4 + y2^4 + y1^2*y2^2"), EvenCycle{{0.4, 0.4}, 1.0});
  check_conservative(parse_poly("y1^3 + y2^3"),
                     OddCycle{{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, 0.5});
}

TEST_CASE("gaussian truncation radius against the erfc anchor") {
  MajorantConstants mc;
  mc.leading = 1.0;
  mc.correction = 0.0;
  mc.exponent = 2;
  mc.validity_radius = 1.0;
  mc.dim = 1;
  double R = truncation_radius(mc, 0, 1e-12);
  // exact threshold for sqrt(pi) erfc(R) = 1e-12 is R ~ 5.0974
  CHECK(std::sqrt(std::numbers::pi) * std::erfc(R) < 1e-12);
  CHECK(R >= 5.0);
  CHECK(R <= 5.6);
  // the previous grid point must fail, so R is the smallest probed
  CHECK(std::sqrt(std::numbers::pi) * std::erfc(R / 1.08) > 0.9e-12);
}

TEST_CASE("truncation radius monotonicity") {
  MajorantConstants mc;
  mc.leading = 1.0;
  mc.correction = 0.0;
  mc.exponent = 2;
  mc.validity_radius = 1.0;
  mc.dim = 1;
  double r_loose = truncation_radius(mc, 0, 2e-12);
  double r_tight = truncation_radius(mc, 0, 1e-12);
  CHECK(r_loose <= r_tight);

  MajorantConstants weak = mc;
  weak.leading = 0.01;
  CHECK(truncation_radius(weak, 0, 1e-8) > truncation_radius(mc, 0, 1e-8));
}

TEST_CASE("truncation radius hard cap signals unreachable tolerance") {
  MajorantConstants mc;
  mc.leading = 1e-12;
  mc.correction = 0.0;
  mc.exponent = 1;
  mc.validity_radius = 1.0;
  mc.dim = 1;
  CHECK_THROWS_AS(truncation_radius(mc, 0, 1e-300), quadrature_error);
}

TEST_CASE("select_cycle follows the 1/|x| shift rule") {
  auto p3 = parse_poly("y1^3/3");
  CheckReport rpt;
  rpt.verdict = Verdict::HoldsOdd;
  rpt.witness = std::vector<double>{1.0};
  {
    std::vector<double> x{5.0};
    auto c = select_cycle(p3, rpt, x);
    auto& oc = std::get<OddCycle>(c);
    CHECK(oc.t == Approx(0.2));
    CHECK(oc.tau[0] == Approx(1.0));
  }
  {
    std::vector<double> x{0.5};
    auto c = select_cycle(p3, rpt, x);
    CHECK(std::get<OddCycle>(c).t == Approx(1.0));  // clamped
  }
  auto p4 = parse_poly("y1^4/4");
  CheckReport rpt4;
  rpt4.verdict = Verdict::HoldsEven;
  {
    std::vector<double> x{10.0};
    auto c = select_cycle(p4, rpt4, x);
    auto& ec = std::get<EvenCycle>(c);
    CHECK(ec.theta[0] == Approx(0.1 * 0.9));
    CHECK(ec.sigma == 1.0);
  }
}
