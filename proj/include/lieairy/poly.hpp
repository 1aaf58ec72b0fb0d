// Sparse real multivariate polynomials: the integrands and the objects of
// every ellipticity/positivity check in this library.
//
// Representation: a sorted map from exponent vectors to nonzero coefficients.
// Bounds are deliberately small (nvars <= 8, total degree <= 32); everything
// here is desk scale.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieairy {

using cdouble = std::complex<double>;

class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Monomial {
  static constexpr int max_vars = 8;
  std::array<std::uint8_t, max_vars> e{};

  int total_degree() const {
    int s = 0;
    for (auto v : e) s += v;
    return s;
  }
  auto operator<=>(const Monomial&) const = default;
};

class MultiPoly {
public:
  static constexpr int max_vars = Monomial::max_vars;
  static constexpr int max_degree = 32;

  explicit MultiPoly(int nvars = 1) : nvars_(nvars) {
    if (nvars < 1 || nvars > max_vars)
      throw std::invalid_argument("MultiPoly: nvars out of range");
  }

  static MultiPoly constant(int nvars, double c) {
    MultiPoly p(nvars);
    p.add_term(Monomial{}, c);
    return p;
  }

  // c * y_{var}^k  (var is 0-based)
  static MultiPoly power(int nvars, int var, int k, double c = 1.0) {
    MultiPoly p(nvars);
    Monomial m;
    if (var < 0 || var >= nvars) throw std::invalid_argument("power: bad var");
    if (k < 0 || k > max_degree) throw std::invalid_argument("power: bad exponent");
    m.e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(k);
    p.add_term(m, c);
    return p;
  }

  int nvars() const { return nvars_; }
  std::size_t nterms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, double>& terms() const { return terms_; }

  // max total degree over stored terms; -1 for the zero polynomial
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  void add_term(const Monomial& m, double c) {
    if (c == 0.0) return;
    if (m.total_degree() > max_degree)
      throw std::invalid_argument("MultiPoly: term degree exceeds bound");
    for (int j = nvars_; j < max_vars; ++j)
      if (m.e[static_cast<std::size_t>(j)] != 0)
        throw std::invalid_argument("MultiPoly: exponent on variable beyond nvars");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, double s) { return a *= s; }
  friend MultiPoly operator*(double s, MultiPoly a) { return a *= s; }
  MultiPoly operator-() const {
    MultiPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same_vars(b);
    MultiPoly out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        for (int j = 0; j < Monomial::max_vars; ++j) {
          auto js = static_cast<std::size_t>(j);
          m.e[js] = static_cast<std::uint8_t>(ma.e[js] + mb.e[js]);
        }
        out.add_term(m, ca * cb);
      }
    return out;
  }

  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  template <typename T>
  T eval_impl(std::span<const T> z) const {
    if (static_cast<int>(z.size()) != nvars_)
      throw std::invalid_argument("eval: dimension mismatch");
    // small power tables; term counts are tiny so this dominates nothing
    std::array<std::array<T, max_degree + 1>, max_vars> pw;
    std::array<int, max_vars> built{};
    for (int j = 0; j < nvars_; ++j) {
      pw[static_cast<std::size_t>(j)][0] = T(1);
      built[static_cast<std::size_t>(j)] = 0;
    }
    T acc{};
    for (const auto& [m, c] : terms_) {
      T t(c);
      for (int j = 0; j < nvars_; ++j) {
        auto js = static_cast<std::size_t>(j);
        int k = m.e[js];
        while (built[js] < k) {
          pw[js][static_cast<std::size_t>(built[js] + 1)] =
              pw[js][static_cast<std::size_t>(built[js])] * z[js];
          ++built[js];
        }
        t *= pw[js][static_cast<std::size_t>(k)];
      }
      acc += t;
    }
    return acc;
  }

  cdouble eval(std::span<const cdouble> z) const { return eval_impl<cdouble>(z); }
  double eval(std::span<const double> y) const { return eval_impl<double>(y); }

  // sum of terms of total degree exactly m
  MultiPoly homogeneous_component(int m) const {
    if (m < 0) throw std::invalid_argument("homogeneous_component: m < 0");
    MultiPoly out(nvars_);
    for (const auto& [mon, c] : terms_)
      if (mon.total_degree() == m) out.add_term(mon, c);
    return out;
  }

  MultiPoly partial(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("partial: bad var");
    MultiPoly out(nvars_);
    auto vs = static_cast<std::size_t>(var);
    for (const auto& [mon, c] : terms_) {
      int k = mon.e[vs];
      if (k == 0) continue;
      Monomial m = mon;
      m.e[vs] = static_cast<std::uint8_t>(k - 1);
      out.add_term(m, c * k);
    }
    return out;
  }

  std::vector<MultiPoly> gradient() const {
    std::vector<MultiPoly> g;
    g.reserve(static_cast<std::size_t>(nvars_));
    for (int j = 0; j < nvars_; ++j) g.push_back(partial(j));
    return g;
  }

  // true iff every stored exponent vector has all entries even; equivalent to
  // invariance under arbitrary sign changes of the variables
  bool is_sign_change_invariant() const {
    for (const auto& [mon, c] : terms_)
      for (int j = 0; j < nvars_; ++j)
        if (mon.e[static_cast<std::size_t>(j)] % 2 != 0) return false;
    return true;
  }

  double constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? 0.0 : it->second;
  }

  // finest partition of {0..nvars-1} such that the polynomial splits as a sum
  // over blocks, from the co-occurrence graph of its monomials
  std::vector<std::vector<int>> partition_separable() const {
    std::vector<int> parent(static_cast<std::size_t>(nvars_));
    for (int j = 0; j < nvars_; ++j) parent[static_cast<std::size_t>(j)] = j;
    auto find = [&](int a) {
      while (parent[static_cast<std::size_t>(a)] != a) {
        parent[static_cast<std::size_t>(a)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        a = parent[static_cast<std::size_t>(a)];
      }
      return a;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };
    for (const auto& [mon, c] : terms_) {
      int first = -1;
      for (int j = 0; j < nvars_; ++j)
        if (mon.e[static_cast<std::size_t>(j)] > 0) {
          if (first < 0)
            first = j;
          else
            unite(first, j);
        }
    }
    std::map<int, std::vector<int>> groups;
    for (int j = 0; j < nvars_; ++j) groups[find(j)].push_back(j);
    std::vector<std::vector<int>> blocks;
    for (auto& [root, vars] : groups) blocks.push_back(std::move(vars));
    return blocks;
  }

  // terms whose (nonempty) support lies inside `block`, remapped to a poly in
  // block.size() variables; the constant term is excluded
  MultiPoly extract_block(const std::vector<int>& block) const {
    MultiPoly out(static_cast<int>(block.size()));
    std::array<int, max_vars> pos;
    pos.fill(-1);
    for (std::size_t i = 0; i < block.size(); ++i)
      pos[static_cast<std::size_t>(block[i])] = static_cast<int>(i);
    for (const auto& [mon, c] : terms_) {
      if (mon.total_degree() == 0) continue;
      bool inside = true;
      Monomial m;
      for (int j = 0; j < nvars_; ++j) {
        auto js = static_cast<std::size_t>(j);
        if (mon.e[js] == 0) continue;
        if (pos[js] < 0) {
          inside = false;
          break;
        }
        m.e[static_cast<std::size_t>(pos[js])] = mon.e[js];
      }
      if (inside) out.add_term(m, c);
    }
    return out;
  }

private:
  void check_same_vars(const MultiPoly& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("MultiPoly: mixed variable counts");
  }

  int nvars_;
  std::map<Monomial, double> terms_;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Canonical text form: terms joined by " + ", each "c*y1^a1*y2^a2" with the
// coefficient first. Round-trips exactly through parse_poly.
inline std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mon, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += detail::format_double(c);
    for (int j = 0; j < p.nvars(); ++j) {
      int k = mon.e[static_cast<std::size_t>(j)];
      if (k == 0) continue;
      out += "*y" + std::to_string(j + 1);
      if (k != 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

// Parses sums of terms like "2.5*y1^3*y2", "y1^3/3", "-y2". '*' and '/' bind
// within a term; '/' only by a numeric literal. Variables are y1..yn; the
// variable count is the largest index seen unless nvars_hint is larger.
inline MultiPoly parse_poly(std::string_view text, int nvars_hint = 0) {
  struct Term {
    double coeff = 1.0;
    std::array<int, Monomial::max_vars> exps{};
  };
  std::vector<Term> parsed;
  int max_var = 0;

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_number = [&]() -> double {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    bool digits = false;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
      digits = digits || std::isdigit(static_cast<unsigned char>(text[i]));
      ++i;
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      std::size_t save = i;
      ++i;
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      } else {
        i = save;
      }
    }
    if (!digits) throw parse_error("expected number at position " + std::to_string(start));
    return std::stod(std::string(text.substr(start, i - start)));
  };
  auto parse_int = [&]() -> int {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw parse_error("expected integer at position " + std::to_string(start));
    return std::stoi(std::string(text.substr(start, i - start)));
  };

  skip_ws();
  if (i >= text.size()) throw parse_error("empty polynomial");
  bool expect_term = true;
  int sign = 1;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (expect_term && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      ++i;
      continue;
    }
    if (!expect_term) {
      if (text[i] == '+' || text[i] == '-') {
        sign = (text[i] == '-') ? -1 : 1;
        ++i;
        expect_term = true;
        continue;
      }
      throw parse_error(std::string("unexpected character '") + text[i] + "'");
    }
    // one term: factors joined by '*' or '/'
    Term t;
    t.coeff = sign;
    sign = 1;
    bool more = true;
    bool divide = false;
    while (more) {
      skip_ws();
      if (i < text.size() && (text[i] == 'y' || text[i] == 'Y')) {
        ++i;
        int var = parse_int();
        if (var < 1 || var > Monomial::max_vars)
          throw parse_error("variable index out of range: y" + std::to_string(var));
        int k = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip_ws();
          k = parse_int();
        }
        if (divide) throw parse_error("division by a variable is not supported");
        t.exps[static_cast<std::size_t>(var - 1)] += k;
        max_var = std::max(max_var, var);
      } else {
        double v = parse_number();
        if (divide) {
          if (v == 0.0) throw parse_error("division by zero");
          t.coeff /= v;
        } else {
          t.coeff *= v;
        }
      }
      skip_ws();
      if (i < text.size() && (text[i] == '*' || text[i] == '/')) {
        divide = (text[i] == '/');
        ++i;
      } else {
        more = false;
      }
    }
    parsed.push_back(t);
    expect_term = false;
  }
  if (expect_term) throw parse_error("dangling sign at end of input");

  int nvars = std::max(std::max(max_var, nvars_hint), 1);
  MultiPoly p(nvars);
  for (const auto& t : parsed) {
    Monomial m;
    for (int j = 0; j < nvars; ++j) {
      int k = t.exps[static_cast<std::size_t>(j)];
      if (k > MultiPoly::max_degree) throw parse_error("exponent exceeds bound");
      m.e[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(k);
    }
    p.add_term(m, t.coeff);
  }
  return p;
}

}  // namespace lieairy
