#include "trec/curve.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace trec {

namespace {
const char* kVar = "t";      // z - a, curve-side local variable
const char* kZeta = "zeta";  // chart variable

Series rename_var(const Series& s, const std::string& var) {
  if (s.known_zero()) return Series::zero(var, s.order());
  long hi = s.valuation();
  for (const auto& [e, c] : s.items()) hi = e;
  std::vector<Sym> cs;
  for (long e = s.valuation(); e <= hi; ++e) cs.push_back(s.coeff(e));
  return Series::from_coeffs(var, s.valuation(), std::move(cs), s.order());
}
}  // namespace

int SpectralCurve::ram_index(const Sym& a) const {
  for (size_t i = 0; i < ram.size(); ++i)
    if (ram[i] == a) return (int)i;
  throw ConfigError("point " + a.to_string() +
                    " is not a listed ramification point of curve " + name);
}

RatFun XiForm::as_ratfun() const {
  Poly za = Poly({-center, Sym(1)});
  std::vector<Poly> powers;  // (z-a)^j, j = 0..k+1
  Poly pw = Poly::constant(Sym(1));
  for (int j = 0; j <= k + 1; ++j) {
    powers.push_back(pw);
    pw = pw * za;
  }
  Poly num;
  for (int m = 0; m <= k; ++m)
    if (!c[(size_t)m].is_zero())
      num = num + Poly::monomial(c[(size_t)m], 0) * powers[(size_t)(k - m)];
  return RatFun(num, powers[(size_t)(k + 1)]);
}

RamificationProfile ramification_profile(const SpectralCurve& curve,
                                         const Sym& a, long order) {
  curve.ram_index(a);
  Series xs = curve.x_shifted_normalized(a, std::max<long>(order, 6));
  if (xs.known_zero() || xs.valuation() < 2)
    throw EngineError("dx does not vanish at " + a.to_string());
  if (xs.valuation() != 2)
    throw EngineError("ramification of order " +
                      std::to_string(xs.valuation()) + " at " + a.to_string() +
                      " is unsupported (only simple ramification)");
  RamificationProfile p;
  p.point = a;
  p.r = 2;
  LocalChart chart = local_chart(curve, a, std::max<long>(order, 6));
  Series w = curve.w1_shifted(a, chart.order);
  Series dens = compose(rename_var(w, kZeta), chart.t_of_zeta) *
                chart.t_of_zeta.derivative();
  if (dens.known_zero())
    throw EngineError("omega01 vanishes identically at " + a.to_string() +
                      " within order " + std::to_string(order));
  p.s_bar = dens.valuation() + 1;
  std::optional<long> s;
  for (const auto& [e, c] : dens.items()) {
    long k = e + 1;
    if (((k % 2) + 2) % 2 == 1) {
      s = k;
      break;
    }
  }
  if (!s)
    throw TruncationError("local exponent s not determinable within order " +
                          std::to_string(order) + " at " + a.to_string());
  p.s = *s;
  p.kind = p.s == 1 ? RamificationProfile::Kind::Bessel
                    : RamificationProfile::Kind::Airy;
  return p;
}

Admissibility is_admissible(const RamificationProfile& p) {
  if (std::gcd((long)p.r, p.s) != 1) return {false, "r,s not coprime"};
  bool clause2 = p.s <= -1;
  if (!clause2 && p.s >= 1 && p.s <= p.r + 1) {
    long m = ((p.r % p.s) + p.s) % p.s;
    clause2 = (m == 1 % p.s) || (m == (p.s - 1) % p.s);
  }
  if (!clause2) return {false, "s outside the allowed set"};
  if (!(p.s_bar == p.s || p.s_bar == p.s - 1))
    return {false, "s_bar not in {s, s-1}"};
  return {true, ""};
}

LocalChart local_chart(const SpectralCurve& curve, const Sym& a, long order,
                       const Sym& branch) {
  LocalChart ch;
  ch.point_index = curve.ram_index(a);
  ch.center = a;
  ch.order = order;
  const long work = order + 4;
  Series xs_norm = curve.x_shifted_normalized(a, work);
  if (xs_norm.valuation() != 2)
    throw EngineError(
        "chart requested at a point that is not a simple ramification point");
  Sym scale(1);
  if (!branch.is_zero()) {
    auto exact =
        curve.x_shifted ? curve.x_shifted(a, work) : std::optional<Series>{};
    if (!exact)
      throw ConfigError(
          "explicit branch requires exact x data at this point; use the "
          "normalized chart");
    Sym gamma = exact->coeff(2);
    if (!(branch * branch == gamma))
      throw EngineError(
          "branch does not square to the leading coefficient of x(z) - x(a)");
    scale = branch;
    ch.normalized = false;
  }
  ch.branch = scale;
  ch.zeta = scale * series_sqrt(xs_norm, Sym(1));
  ch.t_of_zeta = reversion(rename_var(ch.zeta, kZeta).truncated(work));

  // deck involution: Newton on x(a + sigma) = x(a + t), seed sigma = -t
  Series xt = xs_norm.truncated(work);
  Series sig = Series::monomial(kVar, Sym(-1), 1, work);
  for (int iter = 0; iter < 20; ++iter) {
    Series fx = compose(xt, sig) - xt;
    if (fx.known_zero()) break;
    Series dfx = compose(xt.derivative(), sig);
    sig = (sig - fx / dfx).truncated(work);
  }
  if (!(compose(xt, sig) - xt).known_zero())
    throw EngineError("deck involution iteration did not converge at " +
                      a.to_string());
  if (!(compose(sig, sig) - Series::monomial(kVar, Sym(1), 1, work))
           .known_zero())
    throw EngineError("deck map is not an involution at " + a.to_string());
  if (!(compose(ch.zeta.truncated(work), sig) + ch.zeta.truncated(work))
           .known_zero())
    throw EngineError("deck involution is not zeta -> -zeta at " +
                      a.to_string());
  ch.sigma = sig.truncated(order);
  ch.zeta = ch.zeta.truncated(order);
  ch.t_of_zeta = ch.t_of_zeta.truncated(order);
  return ch;
}

XiForm xi_form(const SpectralCurve& curve, const LocalChart& chart, int k) {
  (void)curve;
  if (k < 1) throw EngineError("xi index must be >= 1");
  if (chart.order < k + 4)
    throw TruncationError("chart order insufficient for xi_{-" +
                          std::to_string(k) + "}");
  XiForm xi;
  xi.point_index = chart.point_index;
  xi.center = chart.center;
  xi.k = k;
  Series dzeta = chart.zeta.derivative();
  Series zp = Series::monomial(kVar, Sym(1), 0, Series::kExact);
  for (int i = 0; i < k + 1; ++i) zp = zp * chart.zeta;
  Series base = dzeta / zp;  // dzeta/zeta^{k+1} as density in t
  xi.c.resize((size_t)k + 1);
  for (int m = 0; m <= k; ++m) xi.c[(size_t)m] = base.shifted(m).residue();
  if (!xi.c[0].is_zero())
    throw EngineError("xi form acquired a residue part");
  return xi;
}

Series xi_local_expansion(const XiForm& xi, const LocalChart& chart,
                          long order) {
  Series t = chart.t_of_zeta;
  if (t.order() < order)
    throw TruncationError("chart order insufficient for xi expansion");
  Series dt = t.derivative();
  Sym shift = chart.center - xi.center;
  Series zdiff = t + Series::monomial(kZeta, shift, 0, t.order());
  Series inv = Series::monomial(kZeta, Sym(1), 0, Series::kExact) / zdiff;
  Series acc = Series::zero(kZeta, order);
  Series p = Series::monomial(kZeta, Sym(1), 0, Series::kExact);
  for (int m = 0; m <= xi.k; ++m) {
    p = p * inv;  // (z - xi.center)^{-(m+1)} in the chart
    if (!xi.c[(size_t)m].is_zero()) acc = acc + xi.c[(size_t)m] * (p * dt);
  }
  return acc.truncated(order);
}

// --- catalog -------------------------------------------------------------

namespace {

// curves with x = z^2/2 and a single ramification point at the origin; the
// normalized chart at 0 is exactly zeta = z.
SpectralCurve half_square_curve(const std::string& name,
                                std::function<Series(long)> w1_at0,
                                std::vector<std::string> symbols) {
  SpectralCurve c;
  c.name = name;
  c.symbols = std::move(symbols);
  c.ram = {Sym(0)};
  c.x_rat =
      RatFun(Poly({Sym(), Sym(), Sym(Rational(1, 2))}), Poly::constant(Sym(1)));
  c.x_shifted = [](const Sym& a, long) -> std::optional<Series> {
    return Series::from_coeffs(kVar, 1, {a, Sym(Rational(1, 2))},
                               Series::kExact);
  };
  c.x_shifted_normalized = [](const Sym& a, long) {
    if (a.is_zero()) return Series::monomial(kVar, Sym(1), 2, Series::kExact);
    return Series::from_coeffs(
        kVar, 1, {Sym(1), Sym(Rational(1, 2)) * a.inverse()}, Series::kExact);
  };
  c.w1_shifted = [w1_at0](const Sym& a, long order) {
    Series w0 = w1_at0(order + 8);
    if (a.is_zero()) return w0.is_exact() ? w0 : w0.truncated(order);
    if (!w0.is_exact())
      throw EngineError(
          "omega01 expansion away from the origin is unavailable for this "
          "curve");
    Series inner = Series::from_coeffs(kVar, 0, {a, Sym(1)}, Series::kExact);
    return compose(w0, inner);
  };
  return c;
}

}  // namespace

SpectralCurve make_airy_curve() {
  SpectralCurve c = half_square_curve(
      "airy",
      [](long) { return Series::monomial(kVar, Sym(1), 2, Series::kExact); },
      {});
  c.y_rat = RatFun(Poly({Sym(), Sym(1)}), Poly::constant(Sym(1)));
  return c;
}

SpectralCurve make_bessel_curve() {
  SpectralCurve c = half_square_curve(
      "bessel",
      [](long) { return Series::monomial(kVar, Sym(1), 0, Series::kExact); },
      {});
  c.y_rat = RatFun(Poly::constant(Sym(1)), Poly({Sym(), Sym(1)}));
  return c;
}

SpectralCurve make_mirzakhani_curve() {
  // omega01 = z sin(2 pi z)/(2 pi) dz = (z^2 - (2/3) pi2 z^4 + ...) dz,
  // with pi^2 kept as the formal symbol pi2
  auto w1 = [](long order) {
    Series s(kVar, order);
    const Sym pi2 = Sym::symbol("pi2");
    Rational fact = 1;  // (2j+1)!
    Sym pw(1);          // (-4 pi2)^j
    for (long j = 0; 2 * j + 2 < order; ++j) {
      if (j > 0) {
        fact *= Rational((2 * j) * (2 * j + 1));
        pw = pw * (Sym(Rational(-4)) * pi2);
      }
      s += Series::monomial(kVar, Sym(Rational(1) / fact) * pw, 2 * j + 2,
                            order);
    }
    return s;
  };
  return half_square_curve("mirzakhani", w1, {"pi2"});
}

SpectralCurve make_kappa_curve(int num_couplings) {
  if (num_couplings < 1)
    throw ConfigError("kappa curve needs at least one coupling");
  std::vector<std::string> syms;
  for (int k = 1; k <= num_couplings; ++k)
    syms.push_back("g" + std::to_string(k));
  auto w1 = [num_couplings](long) {
    Series s = Series::monomial(kVar, Sym(1), 2, Series::kExact);
    for (int k = 1; k <= num_couplings; ++k)
      s += Series::monomial(kVar, Sym::symbol("g" + std::to_string(k)),
                            2 * k + 2, Series::kExact);
    return s;
  };
  return half_square_curve("kappa" + std::to_string(num_couplings), w1,
                           std::move(syms));
}

SpectralCurve make_lambert_curve() {
  SpectralCurve c;
  c.name = "lambert";
  c.ram = {Sym(1)};
  c.x_shifted = [](const Sym& a, long order) -> std::optional<Series> {
    if (!a.is_zero()) return std::nullopt;  // e^{-a} is not in the scalar ring
    Series e = compose(exp_series(kVar, order),
                       Series::monomial(kVar, Sym(-1), 1, Series::kExact));
    return e.truncated(order - 1).shifted(1);  // z e^{-z}
  };
  c.x_shifted_normalized = [](const Sym& a, long order) {
    // x(a+t)-x(a) = e^{-a}[(a+t)e^{-t} - a]; the transcendental prefactor
    // cancels in the normalization
    Series e = compose(exp_series(kVar, order + 4),
                       Series::monomial(kVar, Sym(-1), 1, Series::kExact));
    Series at = Series::from_coeffs(kVar, 0, {a, Sym(1)}, Series::kExact);
    Series f = at * e - Series::monomial(kVar, a, 0, e.order());
    if (f.known_zero()) throw EngineError("degenerate x data");
    return (f.coeff(f.valuation()).inverse() * f).truncated(order);
  };
  c.w1_shifted = [](const Sym& a, long order) {
    Series s = Series::from_coeffs(kVar, 0, {Sym(1) - a, Sym(-1)},
                                   Series::kExact);
    (void)order;
    return s;  // omega01 = (1 - z) dz
  };
  return c;
}

namespace {
std::vector<Sym> parse_rational_list(const std::string& v) {
  std::vector<Sym> out;
  std::string cur;
  std::istringstream is(v);
  while (std::getline(is, cur, ',')) {
    std::string trimmed;
    for (char ch : cur)
      if (!isspace((unsigned char)ch)) trimmed += ch;
    if (!trimmed.empty()) out.push_back(sym_from_rational_string(trimmed));
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& v) {
  std::vector<std::string> names;
  std::istringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string t;
    for (char ch : tok)
      if (!isspace((unsigned char)ch)) t += ch;
    if (!t.empty()) names.push_back(t);
  }
  return names;
}
}  // namespace

SpectralCurve curve_from_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  for (const char* key : {"x_num", "x_den", "y_num", "y_den", "ram"})
    if (!kv.count(key))
      throw ConfigError(std::string("curve file is missing key '") + key + "'");
  SpectralCurve c;
  c.name = kv.count("name") ? kv["name"] : "user";
  if (kv.count("symbols")) c.symbols = parse_name_list(kv["symbols"]);
  RatFun x(Poly(parse_rational_list(kv["x_num"])),
           Poly(parse_rational_list(kv["x_den"])));
  RatFun y(Poly(parse_rational_list(kv["y_num"])),
           Poly(parse_rational_list(kv["y_den"])));
  c.x_rat = x;
  c.y_rat = y;
  c.ram = parse_rational_list(kv["ram"]);
  if (c.ram.empty())
    throw ConfigError("curve file lists no ramification points");
  c.x_shifted = [x](const Sym& a, long order) -> std::optional<Series> {
    Series s = x.expand_at(kVar, a, order);
    if (s.valuation() < 0) return std::nullopt;  // pole of x
    return s - Series::monomial(kVar, s.coeff(0), 0, s.order());
  };
  c.x_shifted_normalized = [x](const Sym& a, long order) {
    Series s = x.expand_at(kVar, a, order + 2);
    if (s.valuation() < 0)
      throw EngineError("x has a pole at " + a.to_string());
    s = s - Series::monomial(kVar, s.coeff(0), 0, s.order());
    if (s.known_zero()) throw EngineError("x is locally constant");
    return (s.coeff(s.valuation()).inverse() * s).truncated(order);
  };
  RatFun w1 = y * x.derivative();
  c.w1_shifted = [w1](const Sym& a, long order) {
    return w1.expand_at(kVar, a, order);
  };
  return c;
}

SpectralCurve curve_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open curve file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return curve_from_config_text(ss.str());
}

std::vector<std::string> catalog_names() {
  return {"airy", "bessel", "mirzakhani", "kappa<M>", "lambert"};
}

SpectralCurve make_catalog_curve(const std::string& name) {
  if (name == "airy") return make_airy_curve();
  if (name == "bessel") return make_bessel_curve();
  if (name == "mirzakhani") return make_mirzakhani_curve();
  if (name == "lambert") return make_lambert_curve();
  if (name.rfind("kappa", 0) == 0) {
    std::string suffix = name.substr(5);
    int m = 3;
    if (!suffix.empty()) {
      try {
        m = std::stoi(suffix);
      } catch (const std::exception&) {
        throw ConfigError("bad kappa curve name '" + name + "'");
      }
    }
    return make_kappa_curve(m);
  }
  throw ConfigError("unknown catalog curve '" + name + "'");
}

}  // namespace trec
