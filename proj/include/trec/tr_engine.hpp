#pragma once

#include <map>
#include <memory>

#include "trec/curve.hpp"
#include "trec/tensor.hpp"

namespace trec {

// Local input data of the recursion at one ramification point.
struct UnstableLocal {
  Series w1;                // omega01 density in zeta
  std::map<long, Sym> tau;  // omega01 = (sum_k tau_k zeta^k) dzeta/zeta
  Series kernel_den;        // omega01(sigma(z)) - omega01(z), density in zeta
  Series w02_diag;          // omega02(z, sigma(z)) density (dzeta^2)
};

// Correlator tensors of one curve, built level-by-level in 2g-2+n, plus the
// chart/xi caches every consumer (checks, enumerative, wave function) needs.
class CorrelatorStore {
 public:
  CorrelatorStore(SpectralCurve curve, int chi_max);

  const SpectralCurve& curve() const { return curve_; }
  int chi_max() const { return chi_max_; }
  long series_order() const { return order_; }

  // computes all levels up to chi_max (idempotent)
  void build();

  bool has(int g, int n) const;
  const SymTensor& tensor(int g, int n) const;
  std::map<std::pair<int, int>, SymTensor>& mutable_tensors() {
    return tensors_;
  }

  const std::vector<LocalChart>& charts() const { return charts_; }
  const std::vector<RamificationProfile>& profiles() const {
    return profiles_;
  }
  const UnstableLocal& unstable(int point_index) const;

  // density of xi^{(form.a)}_{-form.k} expanded in the chart at point_index
  const Series& xi_density(int point_index, Idx form) const;
  const XiForm& xi(Idx form) const;

  // dx density in the chart at point_index (normalized chart scale)
  Series dx_density(int point_index) const;

  // Res_{z=a} Phi(z) xi^{(a)}_{-k}(z) with Phi the local antiderivative of
  // omega01 with the given constant (residueless pairings make the constant
  // irrelevant; exposed for the invariance test).
  Sym dilaton_pairing(int point_index, int k, const Sym& constant) const;

  static int pole_order_bound(int g, int n) { return 6 * g - 4 + 2 * n; }

 private:
  SymTensor compute_level(int g, int n);
  SpectralCurve curve_;
  int chi_max_;
  long order_;
  bool built_ = false;
  std::vector<LocalChart> charts_;
  std::vector<RamificationProfile> profiles_;
  std::vector<UnstableLocal> unstable_;
  std::map<std::pair<int, int>, SymTensor> tensors_;
  mutable std::map<std::pair<int, std::pair<int, int>>, Series> xi_cache_;
  mutable std::map<std::pair<int, int>, XiForm> xi_forms_;
};

// The combination entering the recursion at `a` for fixed assignments of the
// remaining variables: rest-multiset -> density series in zeta. Exposed for
// the loop-equation checkers.
//
// With `include_w1_cross = false` this is the primed numerator of the
// recursion (no omega01 factors); `tilde` additionally divides by the kernel
// denominator.
std::map<Tuple, Series> recursion_numerator(const CorrelatorStore& store,
                                            int g, int n, int point_index);
std::map<Tuple, Series> tilde_omega(const CorrelatorStore& store, int g,
                                    int n, int point_index);

// one recursion step; raw-symmetry violations throw EngineError
SymTensor compute_correlator(CorrelatorStore& store, int g, int n);

// dilaton equation check: omega_{g,n} == 1/(2g-2+n) sum_a Res Phi omega_{g,n+1}
bool check_dilaton(const CorrelatorStore& store, int g, int n,
                   const Sym& constant, std::string* message = nullptr);

// free energy F_g, g >= 2
Sym free_energy(const CorrelatorStore& store, int g, const Sym& constant);

// local expansion (density in the chart at point_index) of omega_{g,n} in its
// first variable with the remaining variables fixed to the tensor directions
// `rest`; used by the checkers.
Series omega_local_density(const CorrelatorStore& store, int g, int n,
                           int point_index, const Tuple& rest, bool at_sigma);

}  // namespace trec
