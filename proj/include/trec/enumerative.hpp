#pragma once

#include "trec/tr_engine.hpp"

namespace trec {

struct IntersectionRecord {
  int g = 0, n = 0;
  std::vector<int> exponents;  // psi exponents m_i
  std::string cls;             // "psi", "theta*psi", "kappa1^{k0}*psi"
  int kappa_power = 0;
  Sym value;          // rational after normalization
  bool flagged_even = false;  // even xi index requested: provably zero
};

struct HurwitzRecord {
  int g = 0;
  std::vector<int> profile;
  Sym value;
};

// psi-class numbers from the correlators of the curve with x = z^2/2 and
// omega01 = z^2 dz: value = F[2m_i+1]/prod (2m_i+1)!!
IntersectionRecord psi_intersections(const CorrelatorStore& airy_store, int g,
                                     const std::vector<int>& exponents);
// theta(psi) numbers from omega01 = dz
IntersectionRecord theta_intersections(const CorrelatorStore& bessel_store,
                                       int g, const std::vector<int>& exps);
// kappa1^{k0} psi numbers: one record per power of the pi2 symbol
std::vector<IntersectionRecord> kappa_psi_intersections(
    const CorrelatorStore& mirzakhani_store, int g,
    const std::vector<int>& exponents);

// Hurwitz numbers from the x = z e^{-z} curve: expansion of omega_{g,n} at
// x = 0 (a regular point), coefficient of prod x_i^{k_i-1}, divided by prod
// k_i, renormalized by b! = (2g-2+n+d)! to the fixed-branch-point count the
// oracle produces. Supports the unstable rows (0,1) and (0,2) through the
// closed-form expansions.
HurwitzRecord hurwitz_from_tr(const CorrelatorStore& lambert_store, int g,
                              const std::vector<int>& profile);

// ground truth by exhaustive monodromy enumeration: tuples of b
// transpositions and a numbered-cycle permutation of type `profile` with
// product one and transitive image, weighted by 1/d!
Sym hurwitz_oracle(int g, const std::vector<int>& profile, int max_degree = 6);

}  // namespace trec
