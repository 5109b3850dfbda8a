#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trec/ratfun.hpp"

namespace trec {

// Local data of a spectral curve at a simple ramification point.
// kind: Airy iff s == 3, Bessel iff s == 1 (r == 2 throughout).
struct RamificationProfile {
  Sym point;
  int r = 2;
  long s = 0;
  long s_bar = 0;
  enum class Kind { Airy, Bessel } kind = Kind::Airy;
};

struct Admissibility {
  bool admissible = true;
  std::string reason;  // first failing clause when not admissible
};

// Local chart at a ramification point a: a local coordinate zeta(t),
// t = z - a, with x(z) = x(a) + branch_scale^2 * zeta_hat(t)^2 where
// zeta_hat is the stored unit-lead series. For catalog curves with
// x = z^2/2 the normalized chart is exactly zeta = t. The deck involution
// sigma is stored as a series in t for sigma(a + t) - a.
struct LocalChart {
  int point_index = 0;
  Sym center;
  long order = 0;
  Series zeta;       // zeta(t), valuation 1, leading coefficient = branch
  Series t_of_zeta;  // inverse: t as a series in zeta
  Series sigma;      // sigma(a+t) - a as a series in t (Newton-computed)
  Sym branch;        // leading coefficient of zeta; 1 for normalized charts
  bool normalized = true;  // zeta^2 = (x - x(a)) / gamma_a
};

// Global one-form with a single pole at `center` of order <= k+1:
// xi_{-k}(z) = sum_m c[m] dz/(z-center)^{m+1}. Principal part in the chart
// at `center` is d(zeta)/zeta^{k+1}.
struct XiForm {
  int point_index = 0;
  Sym center;
  int k = 1;
  std::vector<Sym> c;  // m = 0..k
  RatFun as_ratfun() const;
};

// Genus-zero spectral curve with simple ramification. x and omega01 may be
// given as global rational functions or as exact local-series providers
// (catalog-analytic data); omega02 is always dz1 dz2/(z1-z2)^2.
class SpectralCurve {
 public:
  std::string name;
  std::vector<std::string> symbols;
  std::vector<Sym> ram;

  std::optional<RatFun> x_rat;  // global x when rational
  std::optional<RatFun> y_rat;  // global y (omega01 = y dx) when rational

  // (x(a+t) - x(a)) exactly, when representable in the scalar ring; the
  // normalized provider returns (x(a+t)-x(a))/gamma_a with unit t^2 lead at
  // ramification points (unit t lead elsewhere) and is always available.
  std::function<std::optional<Series>(const Sym&, long)> x_shifted;
  std::function<Series(const Sym&, long)> x_shifted_normalized;
  // density of omega01 = W(z) dz expanded at a: W(a+t) in t
  std::function<Series(const Sym&, long)> w1_shifted;

  bool has_exact_x_at(const Sym& a) const {
    return x_shifted && x_shifted(a, 4).has_value();
  }

  int ram_index(const Sym& a) const;
};

// --- operations ---------------------------------------------------------

// (r, s, s_bar, kind) at a listed ramification point; errors if dx does not
// vanish at a, if r != 2, or if s is not visible within `order`.
RamificationProfile ramification_profile(const SpectralCurve& curve,
                                         const Sym& a, long order);

// the three admissibility clauses; reason names the first failing one
Admissibility is_admissible(const RamificationProfile& p);

// Chart at a; `branch` empty (zero) selects the normalized chart. A nonzero
// branch must square to the leading coefficient of x(z)-x(a) in (z-a).
LocalChart local_chart(const SpectralCurve& curve, const Sym& a, long order,
                       const Sym& branch = Sym());

// xi basis one-form via finite residue extraction at the chart center
XiForm xi_form(const SpectralCurve& curve, const LocalChart& chart, int k);

// density of the one-form in the zeta variable of `chart` (pole part
// included when the chart is centered at the form's own center)
Series xi_local_expansion(const XiForm& xi, const LocalChart& chart,
                          long order);

// --- catalog -------------------------------------------------------------

SpectralCurve make_airy_curve();
SpectralCurve make_bessel_curve();
SpectralCurve make_mirzakhani_curve();
// x = z^2/2, omega01 = (z^2 + sum_{k=1..M} g_k z^{2k+2}) dz with formal g_k
SpectralCurve make_kappa_curve(int num_couplings);
SpectralCurve make_lambert_curve();
// line-oriented "key = value" text; keys x_num, x_den, y_num, y_den
// (coefficient lists, low degree first, "p/q" entries), ram, name, symbols
SpectralCurve curve_from_file(const std::string& path);
SpectralCurve curve_from_config_text(const std::string& text);

std::vector<std::string> catalog_names();
SpectralCurve make_catalog_curve(const std::string& name);

}  // namespace trec
