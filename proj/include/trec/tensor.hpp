#pragma once

#include <map>
#include <utility>
#include <vector>

#include "trec/symbolic.hpp"

namespace trec {

// One tensor index: ramification-point id and pole index k >= 1.
struct Idx {
  int a = 0;
  int k = 0;
  friend bool operator<(const Idx& x, const Idx& y) {
    return x.a != y.a ? x.a < y.a : x.k < y.k;
  }
  friend bool operator==(const Idx& x, const Idx& y) {
    return x.a == y.a && x.k == y.k;
  }
};

using Tuple = std::vector<Idx>;

Tuple sorted_tuple(Tuple t);
std::string tuple_to_string(const Tuple& t);

// Fully symmetric sparse tensor of exact scalars; keys stored sorted.
class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(int g, int n) : g_(g), n_(n) {}

  int g() const { return g_; }
  int n() const { return n_; }

  Sym get(const Tuple& t) const;
  void set(const Tuple& t, const Sym& v);
  // Insert or cross-check: a second definition of the same entry must agree
  // (raw symmetry of the recursion). Returns false on disagreement.
  bool define(const Tuple& t, const Sym& v);

  const std::map<Tuple, Sym>& entries() const { return entries_; }
  bool operator==(const SymTensor& o) const {
    return g_ == o.g_ && n_ == o.n_ && entries_ == o.entries_;
  }
  int max_k() const;

 private:
  int g_ = 0, n_ = 0;
  std::map<Tuple, Sym> entries_;
};

// All ways of splitting the multiset `rest` into an ordered pair of
// sub-multisets (I, J), together with the number of labeled-variable subsets
// realizing each split.
struct Split {
  Tuple left, right;
  Integer multiplicity;
};
std::vector<Split> multiset_splits(const Tuple& rest);

Integer binomial(long n, long k);
Integer double_factorial_odd(long k);  // (2k+1)!!

}  // namespace trec
