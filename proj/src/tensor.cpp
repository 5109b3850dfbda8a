#include "trec/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace trec {

Tuple sorted_tuple(Tuple t) {
  std::sort(t.begin(), t.end());
  return t;
}

std::string tuple_to_string(const Tuple& t) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) os << ",";
    os << "(" << t[i].a << "," << t[i].k << ")";
  }
  os << "]";
  return os.str();
}

Sym SymTensor::get(const Tuple& t) const {
  auto it = entries_.find(sorted_tuple(t));
  return it == entries_.end() ? Sym() : it->second;
}

void SymTensor::set(const Tuple& t, const Sym& v) {
  Tuple key = sorted_tuple(t);
  if (v.is_zero())
    entries_.erase(key);
  else
    entries_[key] = v;
}

bool SymTensor::define(const Tuple& t, const Sym& v) {
  Tuple key = sorted_tuple(t);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    if (!v.is_zero()) entries_.emplace(std::move(key), v);
    return true;
  }
  return it->second == v;
}

int SymTensor::max_k() const {
  int m = 0;
  for (const auto& [t, v] : entries_)
    for (const auto& i : t) m = std::max(m, i.k);
  return m;
}

Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

Integer double_factorial_odd(long k) {
  Integer r = 1;
  for (long m = 2 * k + 1; m >= 1; m -= 2) r *= m;
  return r;
}

std::vector<Split> multiset_splits(const Tuple& rest) {
  // group by value
  std::vector<std::pair<Idx, long>> groups;
  for (const auto& v : sorted_tuple(rest)) {
    if (!groups.empty() && groups.back().first == v)
      ++groups.back().second;
    else
      groups.emplace_back(v, 1);
  }
  std::vector<Split> out;
  std::vector<long> take(groups.size(), 0);
  while (true) {
    Split s;
    s.multiplicity = 1;
    for (size_t i = 0; i < groups.size(); ++i) {
      for (long j = 0; j < take[i]; ++j) s.left.push_back(groups[i].first);
      for (long j = take[i]; j < groups[i].second; ++j)
        s.right.push_back(groups[i].first);
      s.multiplicity *= binomial(groups[i].second, take[i]);
    }
    out.push_back(std::move(s));
    size_t i = 0;
    for (; i < groups.size(); ++i) {
      if (take[i] < groups[i].second) {
        ++take[i];
        break;
      }
      take[i] = 0;
    }
    if (i == groups.size()) break;
  }
  return out;
}

}  // namespace trec
