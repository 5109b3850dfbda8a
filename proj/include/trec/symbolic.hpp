#pragma once

#include <map>
#include <string>
#include <vector>

#include "trec/common.hpp"

namespace trec {

// Exact scalar: a polynomial in a (possibly empty) set of formal symbols with
// arbitrary-precision rational coefficients. Equality is canonical: reduced
// fractions, zero terms stripped, monomials ordered lexicographically by
// symbol name. "pi2" stands for pi^2; "g1", "g2", ... are formal couplings.
class Sym {
 public:
  // symbol name -> exponent (> 0); empty map is the constant monomial
  using Monomial = std::map<std::string, int>;

  Sym() = default;
  Sym(long v) : Sym(Rational(v)) {}  // NOLINT: implicit by design
  Sym(const Rational& v) {           // NOLINT
    if (v != 0) terms_[Monomial{}] = v;
  }
  static Sym symbol(const std::string& name, int exp = 1) {
    Sym s;
    if (exp != 0)
      s.terms_[Monomial{{name, exp}}] = 1;
    else
      s.terms_[Monomial{}] = 1;
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  // Value of a symbol-free scalar; throws on symbolic input.
  Rational rational_value() const {
    if (terms_.empty()) return 0;
    if (!is_rational())
      throw EngineError("symbolic scalar used where a rational is required: " +
                        to_string());
    return terms_.begin()->second;
  }

  Sym operator-() const {
    Sym r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Sym& operator+=(const Sym& o) {
    for (const auto& [m, c] : o.terms_) {
      auto it = terms_.find(m);
      if (it == terms_.end()) {
        terms_.emplace(m, c);
      } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  Sym& operator-=(const Sym& o) { return *this += -o; }
  friend Sym operator+(Sym a, const Sym& b) { return a += b; }
  friend Sym operator-(Sym a, const Sym& b) { return a -= b; }
  friend Sym operator*(const Sym& a, const Sym& b) {
    Sym r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [name, e] : mb) m[name] += e;
        auto it = r.terms_.find(m);
        if (it == r.terms_.end()) {
          r.terms_.emplace(std::move(m), ca * cb);
        } else {
          it->second += ca * cb;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    return r;
  }
  Sym& operator*=(const Sym& o) { return *this = *this * o; }

  // Multiplicative inverse; defined for nonzero symbol-free scalars only.
  Sym inverse() const {
    if (is_zero()) throw EngineError("division by zero scalar");
    if (!is_rational())
      throw EngineError("cannot invert symbolic scalar " + to_string());
    return Sym(Rational(1) / rational_value());
  }
  friend Sym operator/(const Sym& a, const Sym& b) { return a * b.inverse(); }

  bool operator==(const Sym& o) const { return terms_ == o.terms_; }
  bool operator!=(const Sym& o) const { return !(*this == o); }
  // total order (for use as map key / deterministic sorting)
  bool operator<(const Sym& o) const { return terms_ < o.terms_; }

  // "p/q" for plain rationals (q omitted when 1); symbolic values as sums of
  // "c*sym^k" monomial terms in canonical order.
  std::string to_string() const;

  const std::map<Monomial, Rational>& terms() const { return terms_; }

 private:
  std::map<Monomial, Rational> terms_;
};

// Parses a plain rational "p/q" or "p" (used by curve files and the CLI).
Sym sym_from_rational_string(const std::string& s);

}  // namespace trec
