#include "trec/symbolic.hpp"

#include <sstream>

namespace trec {

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rational rational_from_string(const std::string& s) {
  auto bad = [&]() { throw ConfigError("bad rational literal: '" + s + "'"); };
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) bad();
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(t));
    Integer num(t.substr(0, slash));
    Integer den(t.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::exception&) {
    bad();
  }
  return 0;  // unreachable
}

std::string Sym::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    Rational c = coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    std::vector<std::string> factors;
    if (c != 1 || mono.empty()) factors.push_back(rational_to_string(c));
    for (const auto& [name, e] : mono) {
      std::string f = name;
      if (e != 1) f += "^" + std::to_string(e);
      factors.push_back(f);
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

Sym sym_from_rational_string(const std::string& s) {
  return Sym(rational_from_string(s));
}

}  // namespace trec
