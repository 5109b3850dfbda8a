#include "trec/tr_engine.hpp"

#include <sstream>

namespace trec {

namespace {
const char* kZeta = "zeta";

// distinct value selections from a sorted multiset
std::vector<std::pair<Idx, Tuple>> value_selections(const Tuple& t) {
  std::vector<std::pair<Idx, Tuple>> out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i > 0 && t[i] == t[i - 1]) continue;
    Tuple rest = t;
    rest.erase(rest.begin() + (long)i);
    out.emplace_back(t[i], std::move(rest));
  }
  return out;
}

// distinct unordered value-pair selections: ({w1,w2}, remainder)
std::vector<std::tuple<Idx, Idx, Tuple>> pair_selections(const Tuple& t) {
  std::vector<std::tuple<Idx, Idx, Tuple>> out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i > 0 && t[i] == t[i - 1]) continue;
    for (size_t j = i + 1; j < t.size(); ++j) {
      if (j > i + 1 && t[j] == t[j - 1]) continue;
      Tuple rest;
      for (size_t m = 0; m < t.size(); ++m)
        if (m != i && m != j) rest.push_back(t[m]);
      out.emplace_back(t[i], t[j], std::move(rest));
    }
  }
  return out;
}

Integer split_multiplicity(const Tuple& whole, const Tuple& part) {
  // product over values of C(m_whole, m_part)
  Integer mult = 1;
  size_t i = 0, j = 0;
  while (i < whole.size()) {
    size_t i2 = i;
    while (i2 < whole.size() && whole[i2] == whole[i]) ++i2;
    long mw = (long)(i2 - i);
    long mp = 0;
    while (j < part.size() && part[j] < whole[i]) ++j;  // defensive
    size_t j2 = j;
    while (j2 < part.size() && part[j2] == whole[i]) ++j2;
    mp = (long)(j2 - j);
    mult *= binomial(mw, mp);
    i = i2;
    j = j2;
  }
  return mult;
}
}  // namespace

CorrelatorStore::CorrelatorStore(SpectralCurve curve, int chi_max)
    : curve_(std::move(curve)), chi_max_(chi_max) {
  if (chi_max_ < 1) throw ConfigError("chi_max must be >= 1");
  order_ = 3 * (long)chi_max_ + 14;
  for (size_t i = 0; i < curve_.ram.size(); ++i) {
    RamificationProfile p =
        ramification_profile(curve_, curve_.ram[i], order_);
    Admissibility adm = is_admissible(p);
    if (!adm.admissible)
      throw ConfigError("curve " + curve_.name +
                        " is not admissible at point " +
                        curve_.ram[i].to_string() + ": " + adm.reason);
    profiles_.push_back(p);
    charts_.push_back(local_chart(curve_, curve_.ram[i], order_));
  }
  for (size_t i = 0; i < charts_.size(); ++i) {
    const LocalChart& ch = charts_[i];
    UnstableLocal u;
    Series w_t = curve_.w1_shifted(curve_.ram[i], order_);
    // rename to the chart variable and substitute t = t(zeta)
    Series w_t_in_zeta = [&] {
      std::vector<Sym> cs;
      if (w_t.known_zero()) return Series::zero(kZeta, w_t.order());
      long hi = w_t.valuation();
      for (const auto& [e, c] : w_t.items()) hi = e;
      for (long e = w_t.valuation(); e <= hi; ++e) cs.push_back(w_t.coeff(e));
      return Series::from_coeffs(kZeta, w_t.valuation(), std::move(cs),
                                 w_t.order());
    }();
    u.w1 = compose(w_t_in_zeta, ch.t_of_zeta) * ch.t_of_zeta.derivative();
    for (const auto& [e, c] : u.w1.items()) u.tau[e + 1] = c;
    // omega01(sigma(z)) - omega01(z): density -W(-zeta) - W(zeta)
    u.kernel_den = -(u.w1.negated_variable() + u.w1);
    if (u.kernel_den.known_zero())
      throw EngineError("kernel denominator vanishes at " +
                        curve_.ram[i].to_string());
    // omega02(z, sigma(z)) density: -t'(zeta) t'(-zeta) / (t(zeta)-t(-zeta))^2
    const Series& t = ch.t_of_zeta;
    Series tneg = t.negated_variable();
    Series dt = t.derivative();
    Series diff = t - tneg;
    u.w02_diag = -(dt * dt.negated_variable()) / (diff * diff);
    unstable_.push_back(std::move(u));
  }
}

const UnstableLocal& CorrelatorStore::unstable(int point_index) const {
  return unstable_.at((size_t)point_index);
}

const XiForm& CorrelatorStore::xi(Idx form) const {
  auto key = std::make_pair(form.a, form.k);
  auto it = xi_forms_.find(key);
  if (it == xi_forms_.end())
    it = xi_forms_
             .emplace(key, xi_form(curve_, charts_.at((size_t)form.a), form.k))
             .first;
  return it->second;
}

const Series& CorrelatorStore::xi_density(int point_index, Idx form) const {
  auto key = std::make_pair(point_index, std::make_pair(form.a, form.k));
  auto it = xi_cache_.find(key);
  if (it == xi_cache_.end()) {
    Series dens = xi_local_expansion(
        xi(form), charts_.at((size_t)point_index), order_ - 4);
    it = xi_cache_.emplace(key, std::move(dens)).first;
  }
  return it->second;
}

Series CorrelatorStore::dx_density(int point_index) const {
  // d of the normalized x: x_norm = zeta^2 exactly in the chart scale
  return Series::monomial(kZeta, Sym(2), 1, order_);
}

bool CorrelatorStore::has(int g, int n) const {
  return tensors_.count({g, n}) != 0;
}

const SymTensor& CorrelatorStore::tensor(int g, int n) const {
  auto it = tensors_.find({g, n});
  if (it == tensors_.end())
    throw EngineError("correlator (" + std::to_string(g) + "," +
                      std::to_string(n) + ") not computed");
  return it->second;
}

void CorrelatorStore::build() {
  if (built_) return;
  for (int chi = 1; chi <= chi_max_; ++chi)
    for (int g = 0; 2 * g <= chi + 1; ++g) {
      int n = chi + 2 - 2 * g;
      if (n < 1) continue;
      if (!has(g, n)) compute_correlator(*this, g, n);
    }
  built_ = true;
}

std::map<Tuple, Series> recursion_numerator(const CorrelatorStore& store,
                                            int g, int n, int point_index) {
  const long ord = store.series_order();
  const int a = point_index;
  const int kcap = CorrelatorStore::pole_order_bound(g, n) + 4;
  std::map<Tuple, Series> num;
  auto add = [&](const Tuple& rest, const Series& s) {
    Tuple key = sorted_tuple(rest);
    auto it = num.find(key);
    if (it == num.end())
      num.emplace(std::move(key), s);
    else
      it->second += s;
  };

  // --- omega_{g-1, n+1}(z, sigma(z), rest) ---
  if (g >= 1) {
    if (g == 1 && n == 1) {
      add({}, store.unstable(a).w02_diag);
    } else {
      const SymTensor& prev = store.tensor(g - 1, n + 1);
      for (const auto& [tup, v] : prev.entries()) {
        for (const auto& [w1, w2, rest] : pair_selections(tup)) {
          const Series& x1 = store.xi_density(a, w1);
          const Series& x2 = store.xi_density(a, w2);
          Series x1s = -x1.negated_variable();  // pullback through sigma
          Series x2s = -x2.negated_variable();
          Series contrib = w1 == w2 ? x1 * x1s : x1 * x2s + x2 * x1s;
          add(rest, v * contrib);
        }
      }
    }
  }

  // --- sum over stable/unstable splittings (omega01 factors excluded) ---
  // halves: for genus gp and free-variable count s, a map S -> series giving
  // the density of omega_{gp, s+1} with the first slot at z (or sigma(z)).
  auto half = [&](int gp, int s, bool sigma) {
    std::map<Tuple, Series> h;
    if (gp == 0 && s == 0) return h;  // omega01: primed out
    if (gp == 0 && s == 1) {
      // omega02(z, z_i) germ: index (a,k) with density k zeta^{k-1} at z,
      // and k(-1)^k zeta^{k-1} at sigma(z)
      for (int k = 1; k <= kcap; ++k) {
        Sym c = Sym(Rational(k));
        if (sigma && k % 2 != 0) c = -c;
        h[{Idx{a, k}}] = Series::monomial(kZeta, c, k - 1, ord);
      }
      return h;
    }
    const SymTensor& t = store.tensor(gp, s + 1);
    for (const auto& [tup, v] : t.entries())
      for (const auto& [w, rest] : value_selections(tup)) {
        const Series& x = store.xi_density(a, w);
        Series xs = sigma ? -x.negated_variable() : x;
        auto it = h.find(rest);
        if (it == h.end())
          h.emplace(rest, v * xs);
        else
          it->second += v * xs;
      }
    return h;
  };

  for (int g1 = 0; g1 <= g; ++g1) {
    int g2 = g - g1;
    for (int sL = 0; sL <= n - 1; ++sL) {
      int sR = n - 1 - sL;
      if (g1 == 0 && sL == 0) continue;
      if (g2 == 0 && sR == 0) continue;
      auto hl = half(g1, sL, false);
      auto hr = half(g2, sR, true);
      for (const auto& [SL, seriesL] : hl)
        for (const auto& [SR, seriesR] : hr) {
          Tuple rest = SL;
          rest.insert(rest.end(), SR.begin(), SR.end());
          rest = sorted_tuple(rest);
          Integer mult = split_multiplicity(rest, sorted_tuple(SL));
          add(rest, Sym(Rational(mult)) * (seriesL * seriesR));
        }
    }
  }
  return num;
}

std::map<Tuple, Series> tilde_omega(const CorrelatorStore& store, int g, int n,
                                    int point_index) {
  std::map<Tuple, Series> num = recursion_numerator(store, g, n, point_index);
  const Series& den = store.unstable(point_index).kernel_den;
  std::map<Tuple, Series> out;
  for (auto& [rest, s] : num) out.emplace(rest, s / den);
  return out;
}

SymTensor compute_correlator(CorrelatorStore& store, int g, int n) {
  if (2 * g - 2 + n <= 0) throw EngineError("unstable (g,n) requested");
  if (store.has(g, n)) return store.tensor(g, n);
  // downward closure
  for (int chi = 1; chi < 2 * g - 2 + n; ++chi)
    for (int gp = 0; 2 * gp <= chi + 1; ++gp) {
      int np = chi + 2 - 2 * gp;
      if (np >= 1 && !store.has(gp, np)) compute_correlator(store, gp, np);
    }
  SymTensor result(g, n);
  const int bound = CorrelatorStore::pole_order_bound(g, n);
  for (int a = 0; a < (int)store.curve().ram.size(); ++a) {
    auto tilde = tilde_omega(store, g, n, a);
    for (const auto& [rest, s] : tilde) {
      if (!s.coeff(-1).is_zero())
        throw EngineError("recursion output has a residue at point " +
                          std::to_string(a) + " for rest " +
                          tuple_to_string(rest));
      for (int k = 1; -k - 1 >= s.valuation(); ++k) {
        Sym c = s.coeff(-k - 1);
        if (c.is_zero()) continue;
        if (k + 1 > bound)
          throw EngineError("pole order bound exceeded at (" +
                            std::to_string(g) + "," + std::to_string(n) + ")");
        Tuple key = rest;
        key.push_back(Idx{a, k});
        if (!result.define(key, c))
          throw EngineError("raw symmetry violation at (" + std::to_string(g) +
                            "," + std::to_string(n) + ") entry " +
                            tuple_to_string(sorted_tuple(key)));
      }
    }
  }
  store.mutable_tensors().emplace(std::make_pair(g, n), result);
  return result;
}

Series omega_local_density(const CorrelatorStore& store, int g, int n,
                           int point_index, const Tuple& rest, bool at_sigma) {
  const SymTensor& t = store.tensor(g, n);
  Series acc = Series::zero(kZeta, store.series_order() - 8);
  Tuple sorted_rest = sorted_tuple(rest);
  for (const auto& [tup, v] : t.entries())
    for (const auto& [w, r] : value_selections(tup)) {
      if (!(r == sorted_rest)) continue;
      const Series& x = store.xi_density(point_index, w);
      acc += v * (at_sigma ? -x.negated_variable() : x);
    }
  return acc;
}

bool check_dilaton(const CorrelatorStore& store, int g, int n,
                   const Sym& constant, std::string* message) {
  const SymTensor& target = store.tensor(g, n);
  const SymTensor& next = store.tensor(g, n + 1);
  Sym chi = Sym(Rational(2 * g - 2 + n));
  // residueless input: every xi pairing below uses only the pole part
  SymTensor rhs(g, n);
  std::map<std::pair<int, int>, Sym> pairing;
  auto pair_value = [&](Idx w) {
    auto key = std::make_pair(w.a, w.k);
    auto it = pairing.find(key);
    if (it == pairing.end())
      it = pairing.emplace(key, store.dilaton_pairing(w.a, w.k, constant))
               .first;
    return it->second;
  };
  for (const auto& [tup, v] : next.entries())
    for (const auto& [w, rest] : value_selections(tup)) {
      Sym p = pair_value(w);
      if (p.is_zero()) continue;
      rhs.set(rest, rhs.get(rest) + chi.inverse() * v * p);
    }
  bool ok = rhs == target;
  if (!ok && message) {
    for (const auto& [tup, v] : target.entries())
      if (!(rhs.get(tup) == v)) {
        *message = "dilaton mismatch at " + tuple_to_string(tup) + ": " +
                   rhs.get(tup).to_string() + " vs " + v.to_string();
        return false;
      }
    for (const auto& [tup, v] : rhs.entries())
      if (!(target.get(tup) == v)) {
        *message = "dilaton spurious entry at " + tuple_to_string(tup) +
                   ": " + v.to_string();
        return false;
      }
  }
  return ok;
}

Sym CorrelatorStore::dilaton_pairing(int point_index, int k,
                                     const Sym& constant) const {
  const UnstableLocal& u = unstable_.at((size_t)point_index);
  if (!u.w1.coeff(-1).is_zero())
    throw EngineError("omega01 has a residue at the ramification point; no "
                      "single-valued antiderivative");
  Series phi = u.w1.antiderivative(constant);
  const Series& xi = xi_density(point_index, Idx{point_index, k});
  return (phi * xi).residue();
}

Sym free_energy(const CorrelatorStore& store, int g, const Sym& constant) {
  if (g < 2)
    throw ConfigError("free energies are defined here for g >= 2 only");
  const SymTensor& t = store.tensor(g, 1);
  Sym acc;
  for (const auto& [tup, v] : t.entries())
    acc += v * store.dilaton_pairing(tup[0].a, tup[0].k, constant);
  return Sym(Rational(1, 2 * g - 2)) * acc;
}

}  // namespace trec
