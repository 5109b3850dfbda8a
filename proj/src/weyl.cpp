#include "trec/weyl.hpp"

#include <functional>
#include <sstream>

namespace trec {

namespace {
Integer factorial(long n) {
  Integer f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}
}  // namespace

// --- XPoly -----------------------------------------------------------------

Sym XPoly::coefficient(int grade, const VarMono& m) const {
  auto it = terms_.find({grade, m});
  return it == terms_.end() ? Sym() : it->second;
}

void XPoly::add(int grade, const VarMono& m, const Sym& c) {
  if (c.is_zero()) return;
  Key k{grade, m};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

XPoly& XPoly::operator+=(const XPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  XPoly r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      VarMono m = ka.second;
      for (const auto& [i, e] : kb.second) m[i] += e;
      r.add(ka.first + kb.first, m, ca * cb);
    }
  return r;
}

XPoly XPoly::derivative(int index) const {
  XPoly r;
  for (const auto& [k, c] : terms_) {
    auto it = k.second.find(index);
    if (it == k.second.end()) continue;
    VarMono m = k.second;
    int e = it->second;
    if (e == 1)
      m.erase(index);
    else
      m[index] = e - 1;
    r.add(k.first, m, Sym(Rational(e)) * c);
  }
  return r;
}

XPoly XPoly::truncated(int max_grade) const {
  XPoly r;
  for (const auto& [k, c] : terms_)
    if (k.first <= max_grade) r.add(k.first, k.second, c);
  return r;
}

XPoly XPoly::shifted_grade(int delta) const {
  XPoly r;
  for (const auto& [k, c] : terms_) r.add(k.first + delta, k.second, c);
  return r;
}

std::string XPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*h^" << k.first;
    for (const auto& [i, e] : k.second) {
      os << "*x" << i;
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

// --- WeylOp ----------------------------------------------------------------

void WeylOp::add_term(const TermKey& k, const Sym& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylOp WeylOp::term(int grade, VarMono xs, VarMono dels, const Sym& c) {
  WeylOp op;
  op.add_term(TermKey{grade, std::move(xs), std::move(dels)}, c);
  return op;
}

WeylOp WeylOp::J(int m, int grade) {
  if (m == 0) return WeylOp();
  if (m > 0) return term(grade, {}, {{m, 1}}, Sym(1));
  return term(grade, {{-m, 1}}, {}, Sym(Rational(-m)));
}

WeylOp WeylOp::operator-() const {
  WeylOp r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

WeylOp operator+(const WeylOp& a, const WeylOp& b) {
  WeylOp r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

WeylOp operator-(const WeylOp& a, const WeylOp& b) { return a + (-b); }

WeylOp operator*(const Sym& c, const WeylOp& a) {
  WeylOp r;
  for (const auto& [k, v] : a.terms()) r.add_term(k, c * v);
  return r;
}

WeylOp operator*(const WeylOp& a, const WeylOp& b) {
  // normal-order del^alpha x^beta per index:
  // del^p x^q = sum_j j! C(p,j) C(q,j) x^{q-j} del^{p-j}
  WeylOp r;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      // indices where a's dels meet b's xs
      std::vector<int> clash;
      for (const auto& [i, p] : ka.dels)
        if (kb.xs.count(i)) clash.push_back(i);
      // iterate over contraction counts j_i in 0..min(p_i, q_i)
      std::vector<int> jmax;
      for (int i : clash)
        jmax.push_back(std::min(ka.dels.at(i), kb.xs.at(i)));
      std::vector<int> j(clash.size(), 0);
      while (true) {
        Sym factor = ca * cb;
        VarMono xs = ka.xs, dels = kb.dels;
        VarMono amid = ka.dels, bmid = kb.xs;
        for (size_t t = 0; t < clash.size(); ++t) {
          int i = clash[t];
          int p = ka.dels.at(i), q = kb.xs.at(i), jj = j[t];
          factor = factor * Sym(Rational(factorial(jj) * binomial(p, jj) *
                                         binomial(q, jj)));
          amid[i] = p - jj;
          bmid[i] = q - jj;
          if (amid[i] == 0) amid.erase(i);
          if (bmid[i] == 0) bmid.erase(i);
        }
        // assemble: xs(a) * xs(b-remaining) on the left, dels(a-remaining) *
        // dels(b) on the right
        for (const auto& [i, e] : bmid) xs[i] += e;
        for (const auto& [i, e] : amid) dels[i] += e;
        r.add_term(WeylOp::TermKey{ka.grade + kb.grade, xs, dels}, factor);
        // increment multi-index
        size_t t = 0;
        for (; t < j.size(); ++t) {
          if (j[t] < jmax[t]) {
            ++j[t];
            break;
          }
          j[t] = 0;
        }
        if (t == j.size()) break;
      }
    }
  }
  return r;
}

WeylOp WeylOp::substitute_x_shift(const std::map<int, Sym>& shifts) const {
  WeylOp r;
  for (const auto& [k, c] : terms_) {
    // expand prod_l (x_l + c_l h^{-1})^{e_l}
    std::vector<std::pair<int, int>> shifted;  // (index, exponent)
    VarMono fixed;
    for (const auto& [i, e] : k.xs) {
      if (shifts.count(i))
        shifted.emplace_back(i, e);
      else
        fixed[i] = e;
    }
    std::vector<int> pick(shifted.size(), 0);
    while (true) {
      Sym coeff = c;
      VarMono xs = fixed;
      int grade = k.grade;
      for (size_t t = 0; t < shifted.size(); ++t) {
        auto [i, e] = shifted[t];
        int p = pick[t];  // how many factors are replaced by c_i/hbar
        coeff = coeff * Sym(Rational(binomial(e, p)));
        Sym ci = shifts.at(i);
        for (int q = 0; q < p; ++q) coeff = coeff * ci;
        grade -= p;
        if (e - p > 0) xs[i] = e - p;
      }
      r.add_term(TermKey{grade, xs, k.dels}, coeff);
      size_t t = 0;
      for (; t < pick.size(); ++t) {
        if (pick[t] < shifted[t].second) {
          ++pick[t];
          break;
        }
        pick[t] = 0;
      }
      if (t == pick.size()) break;
    }
  }
  return r;
}

WeylOp WeylOp::restricted_to_odd() const {
  WeylOp r;
  for (const auto& [k, c] : terms_) {
    bool even = false;
    for (const auto& [i, e] : k.xs) even = even || (i % 2 == 0);
    for (const auto& [i, e] : k.dels) even = even || (i % 2 == 0);
    if (!even) r.add_term(k, c);
  }
  return r;
}

XPoly WeylOp::apply_to(const XPoly& p) const {
  XPoly out;
  for (const auto& [k, c] : terms_) {
    for (const auto& [pk, pc] : p.terms()) {
      // del^beta applied to the monomial
      VarMono m = pk.second;
      Sym factor = c * pc;
      bool killed = false;
      for (const auto& [i, e] : k.dels) {
        for (int q = 0; q < e; ++q) {
          auto it = m.find(i);
          if (it == m.end() || it->second == 0) {
            killed = true;
            break;
          }
          factor = factor * Sym(Rational(it->second));
          if (--it->second == 0) m.erase(it);
        }
        if (killed) break;
      }
      if (killed) continue;
      for (const auto& [i, e] : k.xs) m[i] += e;
      out.add(k.grade + pk.first, m, factor);
    }
  }
  return out;
}

std::string WeylOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*h^" << k.grade;
    for (const auto& [i, e] : k.xs) {
      os << "*x" << i;
      if (e > 1) os << "^" << e;
    }
    for (const auto& [i, e] : k.dels) {
      os << "*d" << i;
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

// --- families ---------------------------------------------------------------

namespace {
// (1/2) sum over ordered pairs (m1, m2) with m1 + m2 = 2k of :J_{m1} J_{m2}:,
// restricted by an index filter, plus delta_{k,0}/8, all times -hbar^2.
WeylOp quadratic_part(int k, int window,
                      const std::function<bool(int)>& keep) {
  WeylOp acc;
  const Sym half(Rational(1, 2));
  for (int m1 = -window; m1 <= window; ++m1) {
    if (m1 == 0 || !keep(m1)) continue;
    int m2 = 2 * k - m1;
    if (m2 == 0 || std::abs(m2) > window || !keep(m2)) continue;
    // normal ordering: negative modes (x's) left, positive modes right; for
    // our terms the product J_{m1} J_{m2} with distinct |m| never needs a
    // commutator, and :J_m J_{-m}: means x-part left by definition.
    int neg = std::min(m1, m2), pos = std::max(m1, m2);
    VarMono xs, dels;
    Sym coeff = half;
    if (pos < 0) {
      xs[-neg] += 1;
      xs[-pos] += 1;
      coeff = coeff * Sym(Rational(-neg)) * Sym(Rational(-pos));
    } else if (neg > 0) {
      dels[neg] += 1;
      dels[pos] += 1;
    } else {
      xs[-neg] += 1;
      dels[pos] += 1;
      coeff = coeff * Sym(Rational(-neg));
    }
    acc = acc + WeylOp::term(2, std::move(xs), std::move(dels), coeff);
  }
  if (k == 0) acc = acc + WeylOp::term(2, {}, {}, Sym(Rational(1, 8)));
  return -acc;
}
}  // namespace

WeylOp kw_generator(int k, int window) {
  if (k < -1) throw EngineError("KW generators need k >= -1");
  auto odd = [](int m) { return ((m % 2) + 2) % 2 == 1; };
  return WeylOp::J(2 * k + 3, 1) + quadratic_part(k, window, odd);
}

WeylOp bgw_generator(int k, int window) {
  if (k < 0) throw EngineError("BGW generators need k >= 0");
  auto odd = [](int m) { return ((m % 2) + 2) % 2 == 1; };
  return WeylOp::J(2 * k + 1, 1) + quadratic_part(k, window, odd);
}

WeylOp w2_generator(int k, int window) {
  auto all = [](int) { return true; };
  return quadratic_part(k, window, all);
}

WeylOp w1_generator(int k, int window) {
  (void)window;
  return WeylOp::J(2 * k, 1);
}

bool virasoro_commutator_check(const std::function<WeylOp(int)>& L, int m,
                               int n, int index_window, int degree_window) {
  WeylOp lhs = L(m).commutator(L(n));
  WeylOp rhs = WeylOp::term(2, {}, {}, Sym(Rational(m - n))) * L(m + n);
  WeylOp diff = lhs - rhs;
  // compare as operators restricted to the monomial window
  std::vector<VarMono> monos;
  std::function<void(int, int, VarMono&)> gen = [&](int start, int deg,
                                                    VarMono& cur) {
    monos.push_back(cur);
    if (deg == 0) return;
    for (int i = start; i <= index_window; ++i) {
      cur[i] += 1;
      gen(i, deg - 1, cur);
      if (--cur[i] == 0) cur.erase(i);
    }
  };
  VarMono cur;
  gen(1, degree_window, cur);
  for (const auto& m0 : monos) {
    XPoly p;
    p.add(0, m0, Sym(1));
    if (!diff.apply_to(p).is_zero()) return false;
  }
  return true;
}

WeylOp conjugate_by_translation(const WeylOp& op, const std::map<int, Sym>& t) {
  std::map<int, Sym> shifts;
  for (const auto& [l, tl] : t) {
    if (l < 1) throw EngineError("translation indices must be positive");
    if (!tl.is_zero())
      shifts[l] = -(tl * Sym(Rational(1, l)));  // x_l -> x_l - t_l/(l hbar)
  }
  if (shifts.empty()) return op;
  return op.substitute_x_shift(shifts);
}

void airy_leading_form_check(const WeylOp& op, int leading_index) {
  // required: grade-1 part exactly del_{leading_index}, nothing below grade 1
  for (const auto& [k, c] : op.terms()) {
    if (k.grade < 1)
      throw EngineError("operator has a term below hbar^1: not of Airy form");
    if (k.grade == 1) {
      VarMono want{{leading_index, 1}};
      if (!k.xs.empty() || !(k.dels == want) || !(c == Sym(1)))
        throw EngineError("hbar^1 part is not the expected derivative d_" +
                          std::to_string(leading_index));
    }
  }
  bool found = false;
  for (const auto& [k, c] : op.terms())
    if (k.grade == 1) found = true;
  if (!found)
    throw EngineError("operator is missing its hbar^1 leading derivative");
}

// --- partition data ----------------------------------------------------------

PartitionData::PartitionData(const std::map<std::pair<int, int>, SymTensor>& f,
                             int chi_max)
    : chi_max_(chi_max) {
  for (const auto& [gn, tensor] : f) {
    int chi = 2 * gn.first - 2 + gn.second;
    if (chi > chi_max) continue;
    for (const auto& [tup, v] : tensor.entries()) {
      // S coefficient of the monomial x^tup is F/prod(mult!)
      VarMono m;
      for (const auto& idx : tup) m[idx.k] += 1;
      Integer denom = 1;
      for (const auto& [i, e] : m) denom *= factorial(e);
      logz_.add(chi, m, v * Sym(Rational(Integer(1), denom)));
    }
  }
}

XPoly weyl_apply(const WeylOp& op, const PartitionData& z, int order) {
  if (order > z.chi_max() + 1)
    throw TruncationError(
        "constraint grade exceeds the partition function's truncation");
  const XPoly& S = z.logZ();
  XPoly out;
  for (const auto& [k, c] : op.terms()) {
    // e^{-S} x^alpha del^beta e^S = x^alpha * prod-of-Bell structure; build
    // iteratively: G <- dG/dx_i + G * dS/dx_i per derivative factor.
    XPoly G;
    G.add(0, {}, Sym(1));
    for (const auto& [i, e] : k.dels)
      for (int q = 0; q < e; ++q) {
        XPoly next = G.derivative(i);
        next += G * S.derivative(i);
        G = next.truncated(order);  // grades only grow later
      }
    XPoly xa;
    xa.add(k.grade, k.xs, c);
    out += (xa * G).truncated(order);
  }
  return out;
}

}  // namespace trec
