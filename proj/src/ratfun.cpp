#include "trec/ratfun.hpp"

#include <sstream>

namespace trec {

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Sym> c(std::max(a.c_.size(), b.c_.size()), Sym());
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Sym> c(a.c_.size() + b.c_.size() - 1, Sym());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Sym> d(c_.size() - 1, Sym());
  for (size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = Sym(Rational((long)i)) * c_[i];
  return Poly(std::move(d));
}

Sym Poly::evaluate(const Sym& x) const {
  Sym acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Series Poly::to_series(const std::string& var) const {
  std::vector<Sym> cs = c_;
  return Series::from_coeffs(var, 0, std::move(cs), Series::kExact);
}

Series Poly::shifted_series(const std::string& var, const Sym& center) const {
  // p(center + t), exact, via composition with the exact inner polynomial
  Series inner = Series::from_coeffs(var, 0, {center, Sym(1)}, Series::kExact);
  return compose(to_series(var), inner);
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")";
    if (i > 0) os << "*" << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

namespace {

bool all_rational(const Poly& p) {
  for (const auto& c : p.coeffs())
    if (!c.is_rational()) return false;
  return true;
}

// polynomial gcd over Q (Euclid); inputs assumed rational-coefficient
Poly gcd_q(Poly a, Poly b) {
  auto degree_pos = [](const Poly& p) { return p.degree(); };
  while (!b.is_zero()) {
    // remainder of a by b
    Poly r = a;
    while (!r.is_zero() && degree_pos(r) >= degree_pos(b)) {
      Sym f = r.coeff(r.degree()) * b.coeff(b.degree()).inverse();
      r = r - Poly::monomial(f, r.degree() - b.degree()) * b;
    }
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    Sym lead_inv = a.coeff(a.degree()).inverse();
    a = Poly::monomial(lead_inv, 0) * a;
  }
  return a;
}

Poly divide_exact(const Poly& a, const Poly& b) {
  Poly r = a;
  Poly q;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Sym f = r.coeff(r.degree()) * b.coeff(b.degree()).inverse();
    Poly t = Poly::monomial(f, r.degree() - b.degree());
    q = q + t;
    r = r - t * b;
  }
  if (!r.is_zero()) throw EngineError("non-exact polynomial division");
  return q;
}

}  // namespace

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw EngineError("rational function with zero denominator");
  if (all_rational(num_) && all_rational(den_) && !num_.is_zero()) {
    Poly g = gcd_q(num_, den_);
    if (g.degree() > 0) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
    // normalize: monic denominator
    Sym lead_inv = den_.coeff(den_.degree()).inverse();
    num_ = Poly::monomial(lead_inv, 0) * num_;
    den_ = Poly::monomial(lead_inv, 0) * den_;
  }
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun RatFun::derivative() const {
  return RatFun(num_.derivative() * den_ - num_ * den_.derivative(),
                den_ * den_);
}

Sym RatFun::evaluate(const Sym& x) const {
  Sym d = den_.evaluate(x);
  if (d.is_zero()) throw EngineError("rational function evaluated at a pole");
  return num_.evaluate(x) * d.inverse();
}

Series RatFun::expand_at(const std::string& var, const Sym& center,
                         long order) const {
  Series n = num_.shifted_series(var, center);
  Series d = den_.shifted_series(var, center);
  if (d.known_zero()) throw EngineError("zero denominator in expansion");
  long vd = d.valuation();
  long t = order + 2 * vd + 2;
  return (n.truncated(t) / d.truncated(t)).truncated(order);
}

std::string RatFun::to_string(const std::string& var) const {
  std::string s = "(" + num_.to_string(var) + ")";
  if (den_.degree() > 0 || !(den_.coeff(0) == Sym(1)))
    s += " / (" + den_.to_string(var) + ")";
  return s;
}

}  // namespace trec
