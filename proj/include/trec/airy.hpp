#pragma once

#include <functional>

#include "trec/tensor.hpp"

namespace trec {

// Tensor data (A, B, C, D) of a family of quadratic constraints
//   H_a = hbar d_a - hbar^2 ( (1/2) A_{abc} x_b x_c + B_{abc} x_b d_c
//                             + (1/2) C_{abc} d_b d_c + D_a ).
// A is totally symmetric, C symmetric in its last two slots. The maps are
// exposed as finite-support queries so countably-infinite families (the
// Virasoro ones) fit; boundedness of each query is what makes the recursion
// terminate.
struct AiryTensors {
  std::string name;
  // full support of A as sorted triples, and of D
  std::map<std::array<int, 3>, Sym> A;
  std::map<int, Sym> D;
  // B_{a p q} for fixed (a, p): list of (q, value); finite
  std::function<std::vector<std::pair<int, Sym>>(int, int)> B_forward;
  // all (a, p, value) with B_{a p q} != 0 for fixed q; finite (boundedness)
  std::function<std::vector<std::tuple<int, int, Sym>>(int)> B_reach;
  // ordered pairs ((b, c), value) with C_{a b c} != 0 for fixed a; finite
  std::function<std::vector<std::tuple<int, int, Sym>>(int)> C_list;
  // all a with C_{a b c} != 0 for some (b, c) meeting the index bound; finite
  std::function<std::vector<int>(int)> C_reach;
};

AiryTensors kw_tensors();
AiryTensors bgw_tensors();

// F_{g,n} for all 2g-2+n <= chi_max by recursion on 2g-2+n, with the raw
// output of every special-slot choice cross-checked for symmetry.
std::map<std::pair<int, int>, SymTensor> airy_recursion(const AiryTensors& t,
                                                        int chi_max);

}  // namespace trec
