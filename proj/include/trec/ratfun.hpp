#pragma once

#include <string>
#include <vector>

#include "trec/series.hpp"

namespace trec {

// Dense univariate polynomial over Sym, coefficients low-to-high degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Sym> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Sym& c) { return Poly({c}); }
  static Poly monomial(const Sym& c, int deg) {
    std::vector<Sym> v((size_t)deg + 1, Sym());
    v[(size_t)deg] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return (int)c_.size() - 1; }  // -1 for zero
  Sym coeff(int i) const {
    return (i >= 0 && i < (int)c_.size()) ? c_[(size_t)i] : Sym();
  }
  const std::vector<Sym>& coeffs() const { return c_; }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly derivative() const;
  Sym evaluate(const Sym& x) const;
  // exact polynomial as a Series in `var` (optionally recentered: p(a + t))
  Series to_series(const std::string& var) const;
  Series shifted_series(const std::string& var, const Sym& center) const;

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Sym> c_;
};

// Reduced fraction of polynomials. Reduction (gcd) is performed over the
// rationals; symbolic coefficients are carried through unreduced (all catalog
// data that reaches this type has rational coefficients).
class RatFun {
 public:
  RatFun() : num_(), den_(Poly::constant(Sym(1))) {}
  RatFun(Poly num, Poly den);
  static RatFun from_poly(Poly p) { return RatFun(std::move(p), Poly::constant(Sym(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  RatFun derivative() const;
  Sym evaluate(const Sym& x) const;  // throws on a pole

  // Laurent expansion of f(center + t) to the given order.
  Series expand_at(const std::string& var, const Sym& center,
                   long order) const;

  std::string to_string(const std::string& var = "z") const;

 private:
  Poly num_, den_;
};

}  // namespace trec
