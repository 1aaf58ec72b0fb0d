// Numerical checker for the sufficient conditions under which a polynomial's
// oscillatory Fourier integral is a moderate-growth function.
//
// Odd degree m: some direction tau makes tau.grad(p_m) strictly positive on
// the unit sphere. Even degree m: p_m is elliptic positive, invariant under
// sign changes, and all d(p_m)/dy_j are non-negative on the positive part of
// the sphere. Verdicts are "sufficient condition verified numerically", never
// proofs; Inconclusive is never "fails".

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lieairy/parallel.hpp"
#include "lieairy/poly.hpp"

namespace lieairy {

enum class Verdict { HoldsOdd, HoldsEven, HoldsByNegation, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsOdd: return "HoldsOdd";
    case Verdict::HoldsEven: return "HoldsEven";
    case Verdict::HoldsByNegation: return "HoldsByNegation";
    default: return "Inconclusive";
  }
}

struct MinRecord {
  double value = 0.0;
  std::vector<double> location;
};

struct CheckReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::vector<double>> witness;  // unit direction, odd case
  std::map<std::string, MinRecord> min_values;
  std::string notes;

  bool holds() const { return verdict != Verdict::Inconclusive; }
};

struct CheckConfig {
  std::size_t sphere_points = 0;  // 0 -> 4096 * 2^{n-1}, capped at 2^17
  int refine_steps = 20;
  double margin = 1e-9;
  std::size_t tau_directions_per_var = 64;
};

namespace detail {

// Acklam's rational approximation to the inverse normal CDF; plenty for
// turning a low-discrepancy sequence into sphere directions.
inline double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  if (p <= 0.0) p = 1e-300;
  if (p >= 1.0) p = 1 - 1e-16;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > phigh) {
    double q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

inline void normalize(std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s == 0) {
    v.assign(v.size(), 0.0);
    v[0] = 1.0;
    return;
  }
  for (double& x : v) x /= s;
}

// Kronecker (R_d) low-discrepancy sequence in [0,1)^n.
inline std::vector<double> kronecker_alphas(int n) {
  double phi = 1.5;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (n + 1));
  std::vector<double> alpha(static_cast<std::size_t>(n));
  double ip = 1.0;
  for (int j = 0; j < n; ++j) {
    ip /= phi;
    alpha[static_cast<std::size_t>(j)] = ip;
  }
  return alpha;
}

inline std::vector<double> kronecker_direction(const std::vector<double>& alpha,
                                               std::size_t k) {
  std::vector<double> v(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    double u = 0.5 + static_cast<double>(k + 1) * alpha[j];
    u -= std::floor(u);
    v[j] = inverse_normal_cdf(u);
  }
  normalize(v);
  return v;
}

inline std::vector<std::vector<double>> sign_vectors(int n) {
  std::vector<std::vector<double>> out;
  double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> v(static_cast<std::size_t>(n), inv);
    for (int j = 0; j < n; ++j)
      if (mask & (std::size_t{1} << j)) v[static_cast<std::size_t>(j)] = -inv;
    out.push_back(std::move(v));
  }
  return out;
}

struct SphereMin {
  double value;
  std::vector<double> location;
};

// Deterministic quasi-uniform sphere sampling followed by a shrinking pattern
// search around the sampled minimizer. positive_orthant folds points into
// S_n^+ by taking absolute values.
inline SphereMin min_on_sphere(const MultiPoly& q, const CheckConfig& cfg,
                               bool positive_orthant) {
  int n = q.nvars();
  auto value_at = [&](const std::vector<double>& y) {
    return q.eval(std::span<const double>(y));
  };

  std::vector<std::vector<double>> seeds;
  if (n == 1) {
    seeds.push_back({1.0});
    if (!positive_orthant) seeds.push_back({-1.0});
  } else {
    for (auto& v : sign_vectors(n)) seeds.push_back(std::move(v));
    for (int j = 0; j < n; ++j) {
      std::vector<double> e(static_cast<std::size_t>(n), 0.0);
      e[static_cast<std::size_t>(j)] = 1.0;
      seeds.push_back(e);
      e[static_cast<std::size_t>(j)] = -1.0;
      seeds.push_back(e);
    }
  }

  std::size_t npoints = cfg.sphere_points;
  if (npoints == 0)
    npoints = std::min<std::size_t>(std::size_t{4096} << (n - 1), std::size_t{1} << 17);
  if (n == 1) npoints = 0;  // the sphere is {-1, +1}; seeds cover it

  auto fold = [&](std::vector<double> v) {
    if (positive_orthant)
      for (double& x : v) x = std::fabs(x);
    return v;
  };

  SphereMin best{std::numeric_limits<double>::infinity(), {}};
  auto consider = [&](const std::vector<double>& v) {
    double val = value_at(v);
    if (val < best.value) best = {val, v};
  };
  for (const auto& s : seeds) consider(fold(s));

  if (npoints > 0) {
    auto alpha = kronecker_alphas(n);
    constexpr std::size_t block = 8192;
    std::size_t nblocks = (npoints + block - 1) / block;
    auto partials = run_blocks<SphereMin>(nblocks, [&](std::size_t b) {
      SphereMin local{std::numeric_limits<double>::infinity(), {}};
      std::size_t lo = b * block, hi = std::min(npoints, lo + block);
      for (std::size_t k = lo; k < hi; ++k) {
        auto v = fold(kronecker_direction(alpha, k));
        double val = value_at(v);
        if (val < local.value) local = {val, std::move(v)};
      }
      return local;
    });
    for (auto& p : partials)
      if (p.value < best.value) best = std::move(p);
  }

  // local refinement: shrinking coordinate pattern search on the sphere
  double step = 0.15;
  for (int it = 0; it < cfg.refine_steps; ++it) {
    SphereMin cand = best;
    for (int j = 0; j < n; ++j) {
      for (double s : {step, -step}) {
        std::vector<double> v = best.location;
        v[static_cast<std::size_t>(j)] += s;
        normalize(v);
        v = fold(v);
        double val = value_at(v);
        if (val < cand.value) cand = {val, std::move(v)};
      }
    }
    best = std::move(cand);
    step *= 0.7;
  }
  return best;
}

inline std::string block_name(const std::vector<int>& block) {
  std::string s = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) s += ",";
    s += "y" + std::to_string(block[i] + 1);
  }
  return s + "}";
}

}  // namespace detail

// tau.grad(p_m) as a polynomial
inline MultiPoly directional_gradient(const MultiPoly& pm, std::span<const double> tau) {
  MultiPoly q(pm.nvars());
  for (int j = 0; j < pm.nvars(); ++j) q += pm.partial(j) * tau[static_cast<std::size_t>(j)];
  return q;
}

// Odd-degree sufficient condition. If tau is absent, the 2^n normalized sign
// vectors and a batch of sampled directions are tried before giving up.
inline CheckReport check_airy_odd(const MultiPoly& p,
                                  std::optional<std::vector<double>> tau = std::nullopt,
                                  const CheckConfig& cfg = {}) {
  int m = p.degree();
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("check_airy_odd: degree must be odd and >= 3");
  MultiPoly pm = p.homogeneous_component(m);
  int n = p.nvars();

  std::vector<std::vector<double>> candidates;
  if (tau) {
    auto t = *tau;
    if (static_cast<int>(t.size()) != n)
      throw std::invalid_argument("check_airy_odd: tau dimension mismatch");
    detail::normalize(t);
    candidates.push_back(std::move(t));
  } else {
    for (auto& v : detail::sign_vectors(n)) candidates.push_back(std::move(v));
    auto alpha = detail::kronecker_alphas(n);
    for (std::size_t k = 0; k < cfg.tau_directions_per_var * static_cast<std::size_t>(n); ++k)
      candidates.push_back(detail::kronecker_direction(alpha, k));
  }

  CheckReport rpt;
  detail::SphereMin best_overall{-std::numeric_limits<double>::infinity(), {}};
  std::vector<double> best_tau;
  for (const auto& t : candidates) {
    auto q = directional_gradient(pm, t);
    auto mn = detail::min_on_sphere(q, cfg, false);
    if (mn.value > best_overall.value) {
      best_overall = mn;
      best_tau = t;
    }
    if (mn.value > cfg.margin) {
      rpt.verdict = Verdict::HoldsOdd;
      rpt.witness = t;
      rpt.min_values["tau_grad_pm_min_on_sphere"] = {mn.value, mn.location};
      return rpt;
    }
  }
  rpt.verdict = Verdict::Inconclusive;
  if (!best_tau.empty()) {
    rpt.witness = best_tau;  // best attempt, for diagnostics
    rpt.min_values["tau_grad_pm_min_on_sphere"] = {best_overall.value,
                                                   best_overall.location};
    rpt.notes = "no sampled direction gave a positive margin";
  }
  return rpt;
}

// Even-degree sufficient condition.
inline CheckReport check_airy_even(const MultiPoly& p, const CheckConfig& cfg = {}) {
  int m = p.degree();
  if (m < 4 || m % 2 != 0)
    throw std::invalid_argument("check_airy_even: degree must be even and >= 4");
  MultiPoly pm = p.homogeneous_component(m);

  CheckReport rpt;
  auto mn = detail::min_on_sphere(pm, cfg, false);
  rpt.min_values["pm_min_on_sphere"] = {mn.value, mn.location};
  bool ok = mn.value > cfg.margin;

  bool invariant = pm.is_sign_change_invariant();
  if (!invariant) rpt.notes += "pm is not sign-change invariant; ";
  ok = ok && invariant;

  for (int j = 0; j < p.nvars(); ++j) {
    auto dj = detail::min_on_sphere(pm.partial(j), cfg, true);
    rpt.min_values["dpm_dy" + std::to_string(j + 1) + "_min_on_plus_sphere"] = {
        dj.value, dj.location};
    ok = ok && dj.value >= -cfg.margin;
  }

  rpt.verdict = ok ? Verdict::HoldsEven : Verdict::Inconclusive;
  return rpt;
}

namespace detail {

// Exact sufficient-family recognizer: every coefficient of p_m non-negative,
// the pure powers y_j^m strictly positive, and (even case) all exponents
// even. The even case is rigorous; the odd witness tau = (1,..,1)/sqrt(n) is
// confirmed numerically by the caller since mixed terms can defeat it.
inline bool nonnegative_family_recognizer(const MultiPoly& p, std::vector<double>& tau_out) {
  int m = p.degree();
  if (m < 3) return false;
  MultiPoly pm = p.homogeneous_component(m);
  if (pm.is_zero()) return false;
  int n = p.nvars();
  bool even = (m % 2 == 0);
  std::vector<bool> pure_positive(static_cast<std::size_t>(n), false);
  for (const auto& [mon, c] : pm.terms()) {
    if (c < 0) return false;
    if (even) {
      for (int j = 0; j < n; ++j)
        if (mon.e[static_cast<std::size_t>(j)] % 2 != 0) return false;
    }
    for (int j = 0; j < n; ++j)
      if (mon.e[static_cast<std::size_t>(j)] == m && c > 0)
        pure_positive[static_cast<std::size_t>(j)] = true;
  }
  for (int j = 0; j < n; ++j)
    if (!pure_positive[static_cast<std::size_t>(j)]) return false;
  tau_out.assign(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
  return true;
}

enum class BlockStatus { DirectOdd, DirectEven, Quadratic, Inconclusive };

struct BlockResult {
  BlockStatus status = BlockStatus::Inconclusive;
  CheckReport report;
};

// recognizer first, then the sampled checks, on a single co-occurrence block
inline BlockResult classify_direct(const MultiPoly& q, const CheckConfig& cfg) {
  BlockResult res;
  int m = q.degree();
  if (m == 2) {
    if (q.nvars() == 1) {
      res.status = BlockStatus::Quadratic;
      res.report.verdict = Verdict::HoldsEven;
      res.report.notes = "non-degenerate quadratic (closed form)";
    }
    return res;
  }
  if (m < 3) return res;

  std::vector<double> tau;
  if (nonnegative_family_recognizer(q, tau)) {
    if (m % 2 == 1) {
      auto rpt = check_airy_odd(q, tau, cfg);
      if (rpt.holds()) {
        rpt.notes = "recognized non-negative-coefficient family; " + rpt.notes;
        res.status = BlockStatus::DirectOdd;
        res.report = std::move(rpt);
        return res;
      }
    } else {
      auto rpt = check_airy_even(q, cfg);
      if (rpt.holds()) {
        rpt.notes = "recognized non-negative-coefficient family; " + rpt.notes;
        res.status = BlockStatus::DirectEven;
        res.report = std::move(rpt);
        return res;
      }
    }
  }
  if (m % 2 == 1) {
    auto rpt = check_airy_odd(q, std::nullopt, cfg);
    if (rpt.holds()) {
      res.status = BlockStatus::DirectOdd;
      res.report = std::move(rpt);
    } else {
      res.report = std::move(rpt);
    }
  } else {
    auto rpt = check_airy_even(q, cfg);
    if (rpt.holds()) {
      res.status = BlockStatus::DirectEven;
      res.report = std::move(rpt);
    } else {
      res.report = std::move(rpt);
    }
  }
  return res;
}

}  // namespace detail

// Full classification: recognizer on p, then on -p, then sampled checks on p
// and -p, then blockwise over the separability partition. HoldsByNegation
// means only -p passed; separable polynomials hold only if every block holds.
inline CheckReport classify(const MultiPoly& p, const CheckConfig& cfg = {}) {
  if (p.degree() < 3) throw std::invalid_argument("classify: degree must be >= 3");

  // fast path: the recognizer on p, then on -p (this ordering makes -p of a
  // recognized polynomial classify as HoldsByNegation, not via a flipped tau)
  {
    std::vector<double> tau;
    if (detail::nonnegative_family_recognizer(p, tau)) {
      auto res = detail::classify_direct(p, cfg);
      if (res.status == detail::BlockStatus::DirectOdd ||
          res.status == detail::BlockStatus::DirectEven)
        return res.report;
    }
    MultiPoly np = -p;
    if (detail::nonnegative_family_recognizer(np, tau)) {
      auto res = detail::classify_direct(np, cfg);
      if (res.status == detail::BlockStatus::DirectOdd ||
          res.status == detail::BlockStatus::DirectEven) {
        CheckReport rpt = std::move(res.report);
        rpt.verdict = Verdict::HoldsByNegation;
        rpt.notes = "negation " + std::string(rpt.notes.empty() ? "passed" : "passed; ") + rpt.notes;
        return rpt;
      }
    }
  }

  auto blocks = p.partition_separable();

  // single block: sampled checks on p, then on -p
  if (blocks.size() == 1) {
    auto res = detail::classify_direct(p, cfg);
    if (res.status != detail::BlockStatus::Inconclusive) return res.report;
    auto neg = detail::classify_direct(-p, cfg);
    if (neg.status != detail::BlockStatus::Inconclusive) {
      CheckReport rpt = std::move(neg.report);
      rpt.verdict = Verdict::HoldsByNegation;
      return rpt;
    }
    return res.report;  // Inconclusive, with the diagnostics gathered on p
  }

  // separable: classify each block (allowing per-block negation, which does
  // not change the Airy property of the block)
  CheckReport rpt;
  bool all_hold = true;
  bool any_negated = false;
  std::string notes = "separable blocks: ";
  std::vector<double> witness(static_cast<std::size_t>(p.nvars()), 0.0);
  bool witness_complete = (p.degree() % 2 == 1);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& block = blocks[bi];
    MultiPoly q = p.extract_block(block);
    std::string bname = detail::block_name(block);
    if (q.is_zero() || q.degree() < 2 ||
        (q.degree() == 2 && static_cast<int>(block.size()) > 1)) {
      // unused variables or low-degree blocks leave the integral supported on
      // a proper subspace (or outside this checker's scope)
      all_hold = false;
      notes += bname + ":Inconclusive ";
      continue;
    }
    auto res = detail::classify_direct(q, cfg);
    std::string verdict_name;
    if (res.status == detail::BlockStatus::Inconclusive) {
      auto neg = detail::classify_direct(-q, cfg);
      if (neg.status != detail::BlockStatus::Inconclusive) {
        any_negated = true;
        verdict_name = "HoldsByNegation";
        res = std::move(neg);
      } else {
        all_hold = false;
        verdict_name = "Inconclusive";
      }
    } else {
      verdict_name = to_string(res.report.verdict);
    }
    notes += bname + ":" + verdict_name + " ";
    for (const auto& [k, v] : res.report.min_values)
      rpt.min_values[bname + " " + k] = v;
    if (res.report.witness && verdict_name == "HoldsOdd") {
      for (std::size_t i = 0; i < block.size(); ++i)
        witness[static_cast<std::size_t>(block[i])] = (*res.report.witness)[i];
    } else {
      witness_complete = false;
    }
  }
  rpt.notes = notes;
  if (!all_hold) {
    rpt.verdict = Verdict::Inconclusive;
    return rpt;
  }
  (void)any_negated;
  // A concatenated witness is only meaningful when every block held directly
  // with its own odd witness; mixed parities hold via the tensor product and
  // are labeled by the even verdict.
  if (p.degree() % 2 == 1 && witness_complete) {
    detail::normalize(witness);
    rpt.witness = witness;
    rpt.verdict = Verdict::HoldsOdd;
  } else {
    rpt.verdict = Verdict::HoldsEven;
  }
  return rpt;
}

}  // namespace lieairy
