#pragma once

#include <map>
#include <vector>

#include "trec/tensor.hpp"

namespace trec {

// Monomial in finitely many indexed variables: index -> exponent (> 0).
using VarMono = std::map<int, int>;

// Multivariate polynomial in x_a graded by integer hbar powers. Used both for
// operators' coefficient data and for constraint residuals (P Z)/Z.
class XPoly {
 public:
  // key: (hbar grade, monomial)
  using Key = std::pair<int, VarMono>;

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, Sym>& terms() const { return terms_; }
  Sym coefficient(int grade, const VarMono& m) const;

  void add(int grade, const VarMono& m, const Sym& c);
  XPoly& operator+=(const XPoly& o);
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  XPoly derivative(int index) const;
  XPoly truncated(int max_grade) const;
  XPoly shifted_grade(int delta) const;

  bool operator==(const XPoly& o) const { return terms_ == o.terms_; }
  std::string to_string() const;

 private:
  std::map<Key, Sym> terms_;
};

// Normal-ordered differential operator in the hbar-graded Weyl algebra:
// sum of terms hbar^grade * coeff * x^alpha * del^beta (derivatives right).
// The grade of every term must dominate the Bernstein degree |alpha|+|beta|;
// conjugation by translations can lower grades, validity is re-checked by
// airy_leading_form_check.
class WeylOp {
 public:
  struct TermKey {
    int grade;
    VarMono xs;
    VarMono dels;
    friend bool operator<(const TermKey& a, const TermKey& b) {
      if (a.grade != b.grade) return a.grade < b.grade;
      if (a.xs != b.xs) return a.xs < b.xs;
      return a.dels < b.dels;
    }
  };

  static WeylOp zero() { return WeylOp(); }
  static WeylOp term(int grade, VarMono xs, VarMono dels, const Sym& c);
  // modes: J_m = del_m, J_{-m} = m x_m for m >= 1; J_0 = 0
  static WeylOp J(int m, int grade);

  bool is_zero() const { return terms_.empty(); }
  const std::map<TermKey, Sym>& terms() const { return terms_; }

  WeylOp operator-() const;
  friend WeylOp operator+(const WeylOp& a, const WeylOp& b);
  friend WeylOp operator-(const WeylOp& a, const WeylOp& b);
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b);  // normal-orders
  friend WeylOp operator*(const Sym& c, const WeylOp& a);
  bool operator==(const WeylOp& o) const { return terms_ == o.terms_; }

  WeylOp commutator(const WeylOp& o) const { return *this * o - o * *this; }

  // substitution x_l -> x_l + c_l / hbar (conjugation by translation ops)
  WeylOp substitute_x_shift(const std::map<int, Sym>& shifts) const;
  // drop all terms touching an even x or derivative index
  WeylOp restricted_to_odd() const;

  // apply to a plain polynomial in x (grade ignored on input; output carries
  // the operator's grades)
  XPoly apply_to(const XPoly& p) const;

  std::string to_string() const;

 private:
  std::map<TermKey, Sym> terms_;
  void add_term(const TermKey& k, const Sym& c);
};

// --- Virasoro families ----------------------------------------------------

// L_k of the psi-class (KW) family: hbar J_{2k+3} - hbar^2 ( (1/2) sum_{m1+m2
// = 2k, odd} :J_{m1} J_{m2}: + delta_{k,0}/8 ), indices cut off at |m| <=
// window.
WeylOp kw_generator(int k, int window);
// BGW family: hbar J_{2k+1} - hbar^2 (...), k >= 0
WeylOp bgw_generator(int k, int window);
// W^2_k of the two-boson representation (all integer m1+m2 = 2k, J_0 = 0)
WeylOp w2_generator(int k, int window);
WeylOp w1_generator(int k, int window);  // hbar J_{2k}

// [L_m, L_n] == hbar^2 (m-n) L_{m+n} tested on all monomials with indices
// <= index_window and degree <= degree_window.
bool virasoro_commutator_check(const std::function<WeylOp(int)>& L, int m,
                               int n, int index_window, int degree_window);

// family conjugated by exp((1/hbar) sum_l t_l J_l / l): x_l -> x_l - t_l/(l
// hbar). Verifies the Airy leading form hbar del_a + O(hbar^2) for the given
// expected leading index; throws EngineError otherwise.
WeylOp conjugate_by_translation(const WeylOp& op, const std::map<int, Sym>& t);
void airy_leading_form_check(const WeylOp& op, int leading_index);

// --- constraint residuals --------------------------------------------------

// log Z as an XPoly from the coefficient tensors (index set: k of Idx{0,k}).
class PartitionData {
 public:
  explicit PartitionData(const std::map<std::pair<int, int>, SymTensor>& f,
                         int chi_max);
  const XPoly& logZ() const { return logz_; }
  int chi_max() const { return chi_max_; }

 private:
  XPoly logz_;
  int chi_max_;
};

// graded coefficients of (op Z)/Z up to hbar^order; requires order <=
// chi_max + 1 for exactness.
XPoly weyl_apply(const WeylOp& op, const PartitionData& z, int order);

}  // namespace trec
