// Adaptive panel quadrature for complex-valued integrands on a real interval:
// a nested 7/15 Gauss-Kronrod rule per panel, panels pre-split at breakpoints
// and sized so no panel spans more than ~2*pi of the local phase, then
// bisection of the worst panel until the summed nested differences meet tol.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <queue>
#include <vector>

#include "lieairy/contour.hpp"  // quadrature_error
#include "lieairy/poly.hpp"     // cdouble

namespace lieairy {

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cdouble value;
  double err;
};

template <typename F>
Panel gk15(const F& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cdouble fc = f(c);
  cdouble kron = fc * gk_wk[7];
  cdouble gauss = fc * gk_wg[3];
  for (int i = 0; i < 7; ++i) {
    double dx = h * gk_nodes[i];
    cdouble lo = f(c - dx), hi = f(c + dx);
    kron += (lo + hi) * gk_wk[i];
    if (i % 2 == 1) gauss += (lo + hi) * gk_wg[i / 2];
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kron * h;
  p.err = std::abs((kron - gauss) * h);
  return p;
}

}  // namespace detail

struct AdaptiveResult {
  cdouble value{};
  double err = 0.0;
  int panels = 0;
};

// phase_rate(xi) estimates |d(phase)/dxi|; pass nullptr to skip phase capping.
template <typename F>
AdaptiveResult integrate_adaptive(const F& f, double a, double b,
                                  std::vector<double> breakpoints, double tol,
                                  int max_panels,
                                  const std::function<double(double)>& phase_rate = {}) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: empty interval");
  if (max_panels < 1) throw std::invalid_argument("integrate_adaptive: max_panels < 1");

  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> edges;
  for (double x : breakpoints)
    if (x >= a && x <= b && (edges.empty() || x > edges.back())) edges.push_back(x);

  // seed segments, splitting until each spans at most ~2*pi of phase
  std::vector<std::pair<double, double>> segs;
  auto push_phase_limited = [&](double lo, double hi, auto&& self) -> void {
    if (phase_rate && static_cast<int>(segs.size()) < max_panels) {
      double w = hi - lo;
      double rate = std::max({phase_rate(lo), phase_rate(0.5 * (lo + hi)), phase_rate(hi)});
      if (w * rate > 2.0 * std::numbers::pi && w > 1e-12) {
        double mid = 0.5 * (lo + hi);
        self(lo, mid, self);
        self(mid, hi, self);
        return;
      }
    }
    segs.emplace_back(lo, hi);
  };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    push_phase_limited(edges[i], edges[i + 1], push_phase_limited);

  auto cmp = [](const detail::Panel& x, const detail::Panel& y) {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;  // deterministic tie-break
  };
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(cmp)> heap(cmp);

  cdouble total{};
  double total_err = 0.0;
  int panels = 0;
  for (auto& [lo, hi] : segs) {
    auto p = detail::gk15(f, lo, hi);
    total += p.value;
    total_err += p.err;
    heap.push(p);
    ++panels;
  }

  while (total_err > tol && panels < max_panels && !heap.empty()) {
    detail::Panel worst = heap.top();
    heap.pop();
    if (worst.b - worst.a < 1e-300) break;
    double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  if (total_err > tol)
    throw quadrature_error("integrate_adaptive: tolerance unreachable within max_panels");
  return {total, total_err, panels};
}

}  // namespace lieairy
