#include "trec/series.hpp"

#include <algorithm>
#include <sstream>

namespace trec {

namespace {
void check_same_var(const Series& a, const Series& b) {
  if (a.var() != b.var())
    throw EngineError("series variable mismatch: '" + a.var() + "' vs '" +
                      b.var() + "'");
}
}  // namespace

void Series::canonicalize() {
  if (order_ > kExact) order_ = kExact;
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
    low_ += static_cast<long>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) low_ = order_;
  if (low_ > order_) low_ = order_;
}

Series Series::monomial(const std::string& var, const Sym& c, long exp,
                        long order) {
  Series s(var, order);
  if (!c.is_zero() && exp < s.order_) {
    s.low_ = exp;
    s.coeffs_ = {c};
  }
  return s;
}

Series Series::from_coeffs(const std::string& var, long low,
                           std::vector<Sym> coeffs, long order) {
  Series s(var, order);
  s.low_ = low;
  s.coeffs_ = std::move(coeffs);
  if (s.order_ < kExact && low + static_cast<long>(s.coeffs_.size()) > s.order_)
    s.coeffs_.resize(static_cast<size_t>(std::max(0L, s.order_ - low)));
  s.canonicalize();
  return s;
}

Sym Series::coeff(long exp) const {
  if (exp >= order_)
    throw TruncationError("coefficient of " + var_ + "^" +
                          std::to_string(exp) + " is beyond truncation order " +
                          std::to_string(order_));
  long i = exp - low_;
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) return Sym();
  return coeffs_[static_cast<size_t>(i)];
}

std::vector<std::pair<long, Sym>> Series::items() const {
  std::vector<std::pair<long, Sym>> out;
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) out.emplace_back(low_ + (long)i, coeffs_[i]);
  return out;
}

Series Series::truncated(long new_order) const {
  if (new_order >= order_) return *this;
  Series s(var_, new_order);
  s.low_ = low_;
  for (long e = low_; e < new_order; ++e) {
    long i = e - low_;
    s.coeffs_.push_back(i >= 0 && i < (long)coeffs_.size() ? coeffs_[(size_t)i]
                                                           : Sym());
  }
  s.canonicalize();
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

Series operator+(const Series& a, const Series& b) {
  check_same_var(a, b);
  long order = std::min(a.order_, b.order_);
  long low = std::min(a.low_, b.low_);
  Series s(a.var_, order);
  if (low < order) {
    s.low_ = low;
    long width = 0;
    for (const auto& [e, c] : a.items())
      if (e < order) width = std::max(width, e - low + 1);
    for (const auto& [e, c] : b.items())
      if (e < order) width = std::max(width, e - low + 1);
    s.coeffs_.assign(static_cast<size_t>(width), Sym());
    for (const auto& [e, c] : a.items())
      if (e < order) s.coeffs_[(size_t)(e - low)] += c;
    for (const auto& [e, c] : b.items())
      if (e < order) s.coeffs_[(size_t)(e - low)] += c;
  }
  s.canonicalize();
  return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  check_same_var(a, b);
  long order;
  if (a.is_exact() && b.is_exact())
    order = Series::kExact;
  else if (a.is_exact())
    order = a.coeffs_.empty() ? Series::kExact : b.order_ + a.low_;
  else if (b.is_exact())
    order = b.coeffs_.empty() ? Series::kExact : a.order_ + b.low_;
  else
    order = std::min(a.order_ + b.low_, b.order_ + a.low_);
  Series s(a.var_, std::min(order, (long)Series::kExact));
  if (!a.coeffs_.empty() && !b.coeffs_.empty()) {
    long low = a.low_ + b.low_;
    s.low_ = low;
    long width = (long)(a.coeffs_.size() + b.coeffs_.size()) - 1;
    if (s.order_ < Series::kExact) width = std::min(width, s.order_ - low);
    if (width > 0) {
      s.coeffs_.assign(static_cast<size_t>(width), Sym());
      for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
          if (b.coeffs_[j].is_zero()) continue;
          long k = (long)i + (long)j;
          if (k >= width) break;
          s.coeffs_[(size_t)k] += a.coeffs_[i] * b.coeffs_[j];
        }
      }
    }
  }
  s.canonicalize();
  return s;
}

Series operator*(const Sym& c, const Series& a) {
  Series s = a;
  for (auto& x : s.coeffs_) x = c * x;
  s.canonicalize();
  return s;
}

Series operator/(const Series& a, const Series& b) {
  check_same_var(a, b);
  if (b.known_zero())
    throw EngineError("series division by an identically-zero divisor");
  const long vb = b.low_;
  const Sym lead_inv = b.coeffs_.front().inverse();

  if (a.is_exact() && b.is_exact()) {
    // classical exact division; must terminate, otherwise the caller has to
    // truncate an operand first
    if (a.coeffs_.empty()) return Series::zero(a.var_, Series::kExact);
    const long qlen = (long)a.coeffs_.size() - (long)b.coeffs_.size() + 1;
    if (qlen >= 1) {
      std::vector<Sym> q((size_t)qlen, Sym());
      std::vector<Sym> rem = a.coeffs_;
      for (long i = 0; i < qlen; ++i) {
        Sym qi = lead_inv * rem[(size_t)i];
        q[(size_t)i] = qi;
        if (qi.is_zero()) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
          rem[(size_t)i + j] -= qi * b.coeffs_[j];
      }
      bool ok = true;
      for (const auto& r : rem) ok = ok && r.is_zero();
      if (ok)
        return Series::from_coeffs(a.var_, a.low_ - vb, std::move(q),
                                   Series::kExact);
    }
    throw EngineError(
        "exact series division does not terminate; truncate an operand");
  }

  // relative precision of the result = min of the operands' relative windows
  long rel_a = a.is_exact() ? Series::kExact
                            : a.order_ - (a.coeffs_.empty() ? a.order_ : a.low_);
  long rel_b = b.is_exact() ? Series::kExact : b.order_ - vb;
  long rel = std::min(rel_a, rel_b);
  long va = a.coeffs_.empty() ? a.order_ : a.low_;
  if (rel <= 0 || a.coeffs_.empty())
    return Series::zero(a.var_, va - vb + std::max(rel, 0L));

  const long terms = rel;
  std::vector<Sym> u((size_t)terms, Sym());
  for (size_t i = 0; i < b.coeffs_.size() && (long)i < terms; ++i)
    u[i] = lead_inv * b.coeffs_[i];  // u[0] == 1
  std::vector<Sym> w((size_t)terms, Sym());
  w[0] = lead_inv;
  for (long m = 1; m < terms; ++m) {
    Sym acc;
    for (long i = 1; i <= m; ++i)
      if (!u[(size_t)i].is_zero() && !w[(size_t)(m - i)].is_zero())
        acc += u[(size_t)i] * w[(size_t)(m - i)];
    w[(size_t)m] = -acc;
  }
  Series binv = Series::from_coeffs(a.var_, -vb, std::move(w), -vb + terms);
  return a * binv;
}

Series Series::shifted(long k) const {
  Series s = *this;
  s.low_ += k;
  if (s.order_ < kExact) s.order_ += k;
  s.canonicalize();
  return s;
}

Series Series::negated_variable() const {
  Series s = *this;
  for (size_t i = 0; i < s.coeffs_.size(); ++i) {
    long e = s.low_ + (long)i;
    if (((e % 2) + 2) % 2 == 1) s.coeffs_[i] = -s.coeffs_[i];
  }
  return s;
}

Series Series::derivative() const {
  Series s(var_, order_ >= kExact ? kExact : order_ - 1);
  std::vector<std::pair<long, Sym>> out;
  for (const auto& [e, c] : items()) {
    if (e == 0 || e - 1 >= s.order_) continue;
    out.emplace_back(e - 1, Sym(Rational(e)) * c);
  }
  if (!out.empty()) {
    long low = out.front().first;
    std::vector<Sym> cs((size_t)(out.back().first - low + 1), Sym());
    for (auto& [e, c] : out) cs[(size_t)(e - low)] = c;
    return Series::from_coeffs(var_, low, std::move(cs), s.order_);
  }
  return s;
}

Series Series::antiderivative(const Sym& constant) const {
  if (!coeff(-1).is_zero())
    throw EngineError(
        "antiderivative requires a vanishing residue (log term would appear)");
  long order = order_ >= kExact ? kExact : order_ + 1;
  Series s = Series::monomial(var_, constant, 0, order);
  for (const auto& [e, c] : items()) {
    if (e + 1 >= order) continue;
    s = s + Series::monomial(var_, Sym(Rational(1) / Rational(e + 1)) * c,
                             e + 1, order);
  }
  return s;
}

Sym Series::residue() const {
  if (order_ <= -1)
    throw TruncationError("residue outside the known window (order " +
                          std::to_string(order_) + ")");
  long i = -1 - low_;
  if (i < 0 || i >= (long)coeffs_.size()) return Sym();
  return coeffs_[(size_t)i];
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : items()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*" << var_ << "^" << e;
  }
  if (first) os << "0";
  if (order_ < kExact) os << " + O(" << var_ << "^" << order_ << ")";
  return os.str();
}

Series compose(const Series& f, const Series& g) {
  check_same_var(f, g);
  const long vg = g.valuation();
  if (vg < 1 && !f.is_exact())
    throw EngineError(
        "composition requires positive valuation of the inner series (or an "
        "exact outer polynomial)");
  Series acc = Series::zero(f.var(), Series::kExact);
  const auto terms = f.items();
  long maxe = 0, mine = 0;
  for (const auto& [e, c] : terms) {
    maxe = std::max(maxe, e);
    mine = std::min(mine, e);
  }
  // nonnegative exponents by Horner (order propagation is automatic)
  Series pos = Series::zero(f.var(), Series::kExact);
  for (long e = maxe; e >= 0; --e) {
    if (!pos.known_zero() || !pos.is_exact()) pos = pos * g;
    Sym c;
    for (const auto& [fe, fc] : terms)
      if (fe == e) c = fc;
    if (!c.is_zero()) pos = pos + Series::monomial(f.var(), c, 0, pos.order());
  }
  acc = acc + pos;
  if (mine < 0) {
    Series ginv = Series::monomial(f.var(), Sym(1), 0, Series::kExact) / g;
    Series p = Series::monomial(f.var(), Sym(1), 0, Series::kExact);
    for (long e = -1; e >= mine; --e) {
      p = p * ginv;
      Sym c;
      for (const auto& [fe, fc] : terms)
        if (fe == e) c = fc;
      if (!c.is_zero()) acc = acc + c * p;
    }
  }
  // the unknown tail of f enters at g^{order_f}
  if (!f.is_exact()) acc = acc.truncated(std::min(acc.order(), f.order() * vg));
  return acc;
}

Series reversion(const Series& f) {
  if (f.valuation() != 1)
    throw EngineError("reversion requires valuation exactly 1");
  const Sym a1inv = f.coeff(1).inverse();
  long order = f.order();
  if (order >= Series::kExact)
    throw EngineError(
        "reversion of exact data needs a finite target order; truncate first");
  const std::string& v = f.var();
  Series g = Series::monomial(v, a1inv, 1, order);
  for (long m = 2; m < order; ++m) {
    Series h = compose(f, g);
    Sym em = h.coeff(m);
    if (!em.is_zero()) g = g + Series::monomial(v, -(a1inv * em), m, order);
  }
  return g;
}

Series series_sqrt(const Series& f, const Sym& branch) {
  if (f.known_zero()) throw EngineError("sqrt of an identically-zero window");
  const long vf = f.valuation();
  if (((vf % 2) + 2) % 2 != 0)
    throw EngineError("sqrt requires even valuation, got " +
                      std::to_string(vf));
  const Sym lead = f.coeff(vf);
  if (!(branch * branch == lead))
    throw EngineError(
        "sqrt branch does not square to the leading coefficient");
  long terms;
  if (f.is_exact()) {
    long maxe = vf;
    for (const auto& [e, c] : f.items()) maxe = std::max(maxe, e);
    terms = maxe - vf + 2;
  } else {
    terms = f.order() - vf;
  }
  const Sym lead_inv = lead.inverse();
  std::vector<Sym> h((size_t)terms, Sym());
  for (const auto& [e, c] : f.items()) {
    long i = e - vf;
    if (i > 0 && i < terms) h[(size_t)i] = lead_inv * c;
  }
  std::vector<Sym> s((size_t)terms, Sym());
  s[0] = Sym(1);
  const Sym half(Rational(1, 2));
  for (long m = 1; m < terms; ++m) {
    Sym acc = h[(size_t)m];
    for (long i = 1; i < m; ++i) acc -= s[(size_t)i] * s[(size_t)(m - i)];
    s[(size_t)m] = half * acc;
  }
  Series root = branch * Series::from_coeffs(
                             f.var(), vf / 2, std::move(s),
                             f.is_exact() ? Series::kExact
                                          : f.order() - vf / 2);
  if (f.is_exact()) {
    // exactness claim holds only if the square recovers f on the nose
    if (((root * root) - f).known_zero()) return root;
    throw EngineError(
        "exact series sqrt does not terminate; truncate the input");
  }
  return root;
}

Series exp_series(const std::string& var, long order) {
  Series s(var, order);
  Rational fact = 1;
  std::vector<Sym> cs;
  for (long k = 0; k < order; ++k) {
    if (k > 0) fact *= k;
    cs.push_back(Sym(Rational(1) / fact));
  }
  return Series::from_coeffs(var, 0, std::move(cs), order);
}

}  // namespace trec
