#pragma once

#include <string>
#include <vector>

#include "trec/symbolic.hpp"

namespace trec {

// Truncated Laurent series in one local variable: finitely many known
// coefficients for exponents in [low, order), everything at exponent >= order
// unknown. `order == kExact` marks exact (polynomial / Laurent-polynomial)
// data, for which no information is lost by arithmetic.
//
// Canonical form: zero coefficients stripped at the low end; a series that is
// identically zero on its window has an empty coefficient list and low ==
// order. Arithmetic tracks truncation pessimistically (min of the operand
// windows shifted by valuations).
class Series {
 public:
  static constexpr long kExact = 1L << 40;

  Series() : var_("t"), low_(kExact), order_(kExact) {}
  explicit Series(std::string var, long order = kExact)
      : var_(std::move(var)), low_(order), order_(order) {}

  static Series zero(const std::string& var, long order = kExact) {
    return Series(var, order);
  }
  static Series monomial(const std::string& var, const Sym& c, long exp,
                         long order = kExact);
  // coefficients for exponents low, low+1, ...
  static Series from_coeffs(const std::string& var, long low,
                            std::vector<Sym> coeffs, long order = kExact);

  const std::string& var() const { return var_; }
  long order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }
  bool known_zero() const { return coeffs_.empty(); }
  // valuation: exponent of the lowest nonzero coefficient; for a series with
  // no known nonzero terms this is the truncation order (a lower bound).
  long valuation() const { return low_; }

  Sym coeff(long exp) const;
  // all known coefficients as (exponent, value), low to high, zeros skipped
  std::vector<std::pair<long, Sym>> items() const;

  Series truncated(long new_order) const;
  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Sym& c, const Series& a);
  // a / b; b must have a known nonzero lowest coefficient (invertible as a
  // scalar). Throws EngineError on an identically-zero divisor.
  friend Series operator/(const Series& a, const Series& b);

  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  bool operator==(const Series& o) const {
    return var_ == o.var_ && low_ == o.low_ && order_ == o.order_ &&
           coeffs_ == o.coeffs_;
  }

  // multiply by var^k
  Series shifted(long k) const;
  // substitute var -> -var
  Series negated_variable() const;
  Series derivative() const;
  // term-wise antiderivative; requires a vanishing coefficient at exponent -1
  // (callers must check the residue first). Truncation order increases by 1.
  Series antiderivative(const Sym& constant = Sym()) const;
  // coefficient of exponent -1, treating the series as the density of a
  // one-form f(t) dt. Throws TruncationError if -1 is outside the window.
  Sym residue() const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::string var_;
  long low_;                // exponent of coeffs_[0]
  std::vector<Sym> coeffs_;  // exponents low_ .. low_+size-1, all < order_
  long order_;
};

// f(g) for g with positive valuation, or exact-polynomial f with arbitrary g.
Series compose(const Series& f, const Series& g);
// inverse under composition of a series with valuation exactly 1 and an
// invertible leading coefficient.
Series reversion(const Series& f);
// square root: f must have even valuation; `branch` must square to the
// leading coefficient of f and becomes the leading coefficient of the root.
Series series_sqrt(const Series& f, const Sym& branch);

// exp / sin t / (t e^{-t})-style exact Taylor data used by the curve catalog
Series exp_series(const std::string& var, long order);

}  // namespace trec
