#pragma once

#include <limits>
#include <variant>

#include "sfherald/heralding.hpp"

namespace sfherald {

/// Beam-splitter setup: two squeezed vacua (squeezing r1, r2, orthogonal
/// orientation so r1 r2 <= 0, with 0 allowed for a vacuum input) interfere
/// at a beam splitter of power transmission t in (0, 1).
struct BsSetup {
  double r1 = 0.0;
  double r2 = 0.0;
  double t = 0.5;
};

/// CZ-gate setup: two squeezed vacua with parallel squeezing pass through
/// exp(i g x1 x2), g != 0.
struct CzSetup {
  double r1 = 0.0;
  double r2 = 0.0;
  double g = 1.0;
};

enum class SetupKind { Bs, Cz };

enum class DesignRegime { Universal, FirstSfGeneral, VacuumOneChannel };

/// The set of a values maximizing the universal-regime probability for a
/// given n: a circle in the complex plane through the two real roots
/// 1/(2n+1) and 1+2n.
struct OptimalA {
  int n = 1;
  double a_real_small = 0.0;  // 1/(2n+1)
  double a_real_large = 0.0;  // 1+2n
  double circle_center = 0.0;
  double circle_radius = 0.0;
};

struct DesignResult {
  std::variant<BsSetup, CzSetup> setup;
  TmegParams tmeg;
  double probability = 0.0;
  DesignRegime regime = DesignRegime::Universal;
  int n = 1;
  double target_r = 0.0;
};

/// Maximum achievable probability of heralding the n-th SF state,
/// n^n/(n+1)^{n+1}.
double max_probability(int n);

/// Both real probability-maximizing a values and the circle of complex
/// optimizers they lie on.
OptimalA optimal_a(int n);

/// TMEG coefficients produced by the setup; always a valid state.
TmegParams bs_forward(const BsSetup& s);
TmegParams cz_forward(const CzSetup& s);

/// Universal-regime beam-splitter design for SF(n, r) at the given a > 1
/// (NaN selects the probability maximum a = 1+2n). The input squeezings
/// satisfy r1 + r2 = r.
DesignResult design_bs_universal(int n, double r, double a = std::numeric_limits<double>::quiet_NaN());

/// Universal-regime CZ design for SF(n, r) at the given a in (0, 1)
/// (NaN selects a = 1/(2n+1)). The input squeezings satisfy r2 - r1 = r.
DesignResult design_cz_universal(int n, double r, double a = std::numeric_limits<double>::quiet_NaN());

/// Best beam-splitter design with vacuum in input 1 (r1 = 0), heralding
/// SF(1, r): maximizes the generation probability over (r2, t) subject to
/// the output squeezing being exactly r. Derivative-free 1-D search along
/// the constraint manifold, restarted from a coarse grid.
DesignResult design_bs_vacuum_channel(double r);

/// Setup realizing SF(1, r) from a chosen point (a, d) of the general
/// two-parameter family, b^2 = (a+1)(d - e^{2r}). BS requires b^2 > 0,
/// CZ requires b^2 < 0; a sign mismatch raises InfeasibleDesignError naming
/// the feasible kind.
DesignResult design_first_sf_general(double a, double d, double r, SetupKind kind);

/// Maximizer of first_sf_probability over the real (a, d) family, found by
/// Nelder-Mead with restarts plus a coordinate polish. The maximum is 1/4
/// and sits on the universal manifold (a = 3, d = 3 e^{2r}).
struct FirstSfMaximum {
  double a = 0.0;
  double d = 0.0;
  double probability = 0.0;
};
FirstSfMaximum maximize_first_sf_probability(double r);

}  // namespace sfherald
