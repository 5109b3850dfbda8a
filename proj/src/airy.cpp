#include "trec/airy.hpp"

#include <set>

namespace trec {

namespace {

Tuple to_tuple(const std::vector<int>& ks) {
  Tuple t;
  for (int k : ks) t.push_back(Idx{0, k});
  return sorted_tuple(t);
}

Sym value_or_zero(const std::map<std::pair<int, int>, SymTensor>& f, int g,
                  int n, const Tuple& t) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) return Sym();
  auto it = f.find({g, n});
  if (it == f.end())
    throw EngineError("airy recursion requested a missing lower level (" +
                      std::to_string(g) + "," + std::to_string(n) + ")");
  return it->second.get(t);
}

}  // namespace

AiryTensors kw_tensors() {
  AiryTensors t;
  t.name = "kw";
  t.A[{1, 1, 1}] = Sym(1);
  t.D[3] = Sym(Rational(1, 8));
  t.B_forward = [](int a, int p) {
    std::vector<std::pair<int, Sym>> out;
    int q = p + a - 3;
    if (q >= 1) out.emplace_back(q, Sym(Rational(p)));
    return out;
  };
  t.B_reach = [](int q) {
    std::vector<std::tuple<int, int, Sym>> out;
    for (int a = 1; a <= q + 2; a += 2) {
      int p = q - a + 3;
      if (p >= 1) out.emplace_back(a, p, Sym(Rational(p)));
    }
    return out;
  };
  t.C_list = [](int a) {
    std::vector<std::tuple<int, int, Sym>> out;
    for (int b = 1; b <= a - 4; b += 2) {
      int c = a - 3 - b;
      if (c >= 1) out.emplace_back(b, c, Sym(1));
    }
    return out;
  };
  t.C_reach = [](int bc_sum) {
    // all a with some C_{a b c} != 0 and b + c == bc_sum
    std::vector<int> out;
    if (bc_sum >= 2) out.push_back(bc_sum + 3);
    return out;
  };
  return t;
}

AiryTensors bgw_tensors() {
  AiryTensors t;
  t.name = "bgw";
  t.D[1] = Sym(Rational(1, 8));
  t.B_forward = [](int a, int p) {
    std::vector<std::pair<int, Sym>> out;
    int q = p + a - 1;
    if (q >= 1) out.emplace_back(q, Sym(Rational(p)));
    return out;
  };
  t.B_reach = [](int q) {
    std::vector<std::tuple<int, int, Sym>> out;
    for (int a = 1; a <= q; a += 2) {
      int p = q - a + 1;
      if (p >= 1) out.emplace_back(a, p, Sym(Rational(p)));
    }
    return out;
  };
  t.C_list = [](int a) {
    std::vector<std::tuple<int, int, Sym>> out;
    for (int b = 1; b <= a - 2; b += 2) {
      int c = a - 1 - b;
      if (c >= 1) out.emplace_back(b, c, Sym(1));
    }
    return out;
  };
  t.C_reach = [](int bc_sum) {
    std::vector<int> out;
    if (bc_sum >= 2) out.push_back(bc_sum + 1);
    return out;
  };
  return t;
}

std::map<std::pair<int, int>, SymTensor> airy_recursion(const AiryTensors& t,
                                                        int chi_max) {
  std::map<std::pair<int, int>, SymTensor> f;
  // seeds
  {
    SymTensor f03(0, 3);
    for (const auto& [abc, v] : t.A)
      f03.set(to_tuple({abc[0], abc[1], abc[2]}), v);
    SymTensor f11(1, 1);
    for (const auto& [a, v] : t.D) f11.set(to_tuple({a}), v);
    f.emplace(std::make_pair(0, 3), std::move(f03));
    f.emplace(std::make_pair(1, 1), std::move(f11));
  }
  if (chi_max < 1)
    throw ConfigError("airy recursion needs chi_max >= 1");

  auto evaluate = [&](int g, int n, int k1, const Tuple& rest) {
    Sym acc;
    // B-term: sum over the labeled positions of the remaining variables
    for (size_t i = 0; i < rest.size(); ++i) {
      if (i > 0 && rest[i] == rest[i - 1]) continue;
      long mult = 0;
      for (const auto& idx : rest) mult += (idx == rest[i]) ? 1 : 0;
      Tuple others;
      bool removed = false;
      for (const auto& idx : rest) {
        if (!removed && idx == rest[i]) {
          removed = true;
          continue;
        }
        others.push_back(idx);
      }
      for (const auto& [q, val] : t.B_forward(k1, rest[i].k)) {
        Tuple key = others;
        key.push_back(Idx{0, q});
        Sym fv = value_or_zero(f, g, n - 1, sorted_tuple(key));
        if (!fv.is_zero()) acc += Sym(Rational(mult)) * val * fv;
      }
    }
    // C-term
    const Sym half(Rational(1, 2));
    for (const auto& [b, c, val] : t.C_list(k1)) {
      Sym bracket;
      Tuple joined = rest;
      joined.push_back(Idx{0, b});
      joined.push_back(Idx{0, c});
      bracket += value_or_zero(f, g - 1, n + 1, sorted_tuple(joined));
      for (int g1 = 0; g1 <= g; ++g1) {
        int g2 = g - g1;
        for (const auto& split : multiset_splits(rest)) {
          Tuple left = split.left;
          left.push_back(Idx{0, b});
          Tuple right = split.right;
          right.push_back(Idx{0, c});
          int m1 = (int)left.size(), m2 = (int)right.size();
          // unstable factors (0,1), (0,2) vanish in the partition function
          if (2 * g1 - 2 + m1 <= 0 || 2 * g2 - 2 + m2 <= 0) continue;
          Sym fl = value_or_zero(f, g1, m1, sorted_tuple(left));
          if (fl.is_zero()) continue;
          Sym fr = value_or_zero(f, g2, m2, sorted_tuple(right));
          if (fr.is_zero()) continue;
          bracket += Sym(Rational(split.multiplicity)) * fl * fr;
        }
      }
      acc += half * val * bracket;
    }
    return acc;
  };

  for (int chi = 2; chi <= chi_max; ++chi) {
    for (int g = 0; 2 * g <= chi + 1; ++g) {
      int n = chi + 2 - 2 * g;
      if (n < 1) continue;
      // candidate support from the lower levels
      std::set<Tuple> candidates;
      if (auto it = f.find({g, n - 1}); it != f.end()) {
        for (const auto& [tup, v] : it->second.entries())
          for (size_t i = 0; i < tup.size(); ++i) {
            if (i > 0 && tup[i] == tup[i - 1]) continue;
            Tuple others;
            bool removed = false;
            for (const auto& idx : tup) {
              if (!removed && idx == tup[i]) {
                removed = true;
                continue;
              }
              others.push_back(idx);
            }
            for (const auto& [a, p, val] : t.B_reach(tup[i].k)) {
              Tuple cand = others;
              cand.push_back(Idx{0, a});
              cand.push_back(Idx{0, p});
              candidates.insert(sorted_tuple(cand));
            }
          }
      }
      auto c_candidates_from = [&](const Tuple& withBC, int b, int c) {
        for (int a : t.C_reach(b + c)) {
          // verify (b, c) really appears for this a
          bool hit = false;
          for (const auto& [bb, cc, val] : t.C_list(a))
            hit = hit || (bb == b && cc == c);
          if (!hit) continue;
          Tuple cand = withBC;
          cand.push_back(Idx{0, a});
          candidates.insert(sorted_tuple(cand));
        }
      };
      if (g >= 1) {
        if (auto it = f.find({g - 1, n + 1}); it != f.end())
          for (const auto& [tup, v] : it->second.entries())
            for (size_t i = 0; i < tup.size(); ++i)
              for (size_t j = i + 1; j < tup.size(); ++j) {
                Tuple others;
                for (size_t m = 0; m < tup.size(); ++m)
                  if (m != i && m != j) others.push_back(tup[m]);
                c_candidates_from(others, tup[i].k, tup[j].k);
                c_candidates_from(others, tup[j].k, tup[i].k);
              }
      }
      for (int g1 = 0; g1 <= g; ++g1)
        for (int m1 = 1; m1 <= n; ++m1) {
          int g2 = g - g1, m2 = n + 1 - m1;
          auto it1 = f.find({g1, m1});
          auto it2 = f.find({g2, m2});
          if (it1 == f.end() || it2 == f.end()) continue;
          for (const auto& [e1, v1] : it1->second.entries())
            for (const auto& [e2, v2] : it2->second.entries())
              for (size_t i = 0; i < e1.size(); ++i) {
                if (i > 0 && e1[i] == e1[i - 1]) continue;
                for (size_t j = 0; j < e2.size(); ++j) {
                  if (j > 0 && e2[j] == e2[j - 1]) continue;
                  Tuple others;
                  for (size_t m = 0; m < e1.size(); ++m)
                    if (m != i) others.push_back(e1[m]);
                  for (size_t m = 0; m < e2.size(); ++m)
                    if (m != j) others.push_back(e2[m]);
                  c_candidates_from(others, e1[i].k, e2[j].k);
                }
              }
        }

      SymTensor result(g, n);
      for (const Tuple& cand : candidates) {
        for (size_t i = 0; i < cand.size(); ++i) {
          if (i > 0 && cand[i] == cand[i - 1]) continue;
          Tuple rest;
          bool removed = false;
          for (const auto& idx : cand) {
            if (!removed && idx == cand[i]) {
              removed = true;
              continue;
            }
            rest.push_back(idx);
          }
          Sym v = evaluate(g, n, cand[i].k, rest);
          if (!result.define(cand, v))
            throw EngineError("airy recursion raw-symmetry violation at (" +
                              std::to_string(g) + "," + std::to_string(n) +
                              ") " + tuple_to_string(cand));
        }
      }
      f.emplace(std::make_pair(g, n), std::move(result));
    }
  }
  return f;
}

}  // namespace trec
