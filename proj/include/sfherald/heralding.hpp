#pragma once

#include <variant>

#include "sfherald/states.hpp"

namespace sfherald {

/// Default relative tolerance on each residual of the universal condition.
constexpr double kUniversalTolerance = 1e-9;

/// Result of testing the universal-solution condition
///   Re[d - b^2/(a+1)] = b^2/(a^2-1),   Im[d - b^2/(a+1)] = 0.
/// residual is the larger relative residual of the two equalities; when the
/// condition holds, implied_r is the squeezing of the heralded SF state,
/// r = ln(b^2/(a^2-1))/2 interpreted as real. implied_r is NaN otherwise.
struct UniversalCheck {
  double residual = 0.0;
  bool satisfied = false;
  double implied_r = 0.0;
};

/// Heralding on n photons yields exactly the squeezed Fock state SF(n, r).
struct ExactSf {
  double r;
};

/// Heralding yields a squeezed Fock state rotated in the quadrature plane:
/// exponent -(e^{2 r_theta} + i w) x^2/2, rotation angle theta (principal
/// branch of tan(2 theta) = 2w/(e^{4 r_theta} + w^2 - 1)), effective
/// squeezing magnitude r_eff from
/// cosh r_eff = e^{-r_theta} sqrt(2 e^{2 r_theta} + e^{4 r_theta} + w^2 + 1)/2.
struct RotatedSf {
  double r_theta;
  double w;
  double theta;
  double r_eff;
};

/// Heralded state is not a (rotated) squeezed Fock state. Only possible for
/// n >= 2.
struct Generic {};

using Classification = std::variant<ExactSf, RotatedSf, Generic>;

/// Closed-form conditional wavefunction of mode 2 after detecting n photons
/// in mode 1. Normalized; callable on arbitrary x.
class HeraldedWavefunction {
 public:
  HeraldedWavefunction(const TmegParams& p, int n, double probability);

  Complex operator()(double x) const;

  int photon_number() const { return n_; }

  /// Real part of the Gaussian exponent coefficient; the envelope of the
  /// wavefunction is exp(-Re[c] x^2 / 2).
  double envelope_exponent() const { return exponent_.real(); }

 private:
  int n_;
  Complex exponent_;   // d - b^2/(a+1)
  Complex hermite_arg_;  // b/sqrt(a^2-1), 0 for n = 0
  Complex prefactor_;
};

struct HeraldOutcome {
  int n = 0;
  double probability = 0.0;
  HeraldedWavefunction wavefunction;
  Classification classification;
};

/// Probability of detecting n photons in mode 1, in closed form (terminating
/// hypergeometric sum); equals the Born-rule double integral.
double herald_probability(const TmegParams& p, int n);

/// Probability in the universal-solution regime as a function of a alone;
/// independent of the squeezing r of the generated state.
double herald_probability_universal(Complex a, int n);

/// Probability of generating the first SF state with squeezing r from the
/// two-parameter family (a, d), with b^2 = (a+1)(d - e^{2r}). Never exceeds
/// 1/4; the bound is reached exactly on the universal manifold.
double first_sf_probability(Complex a, Complex d, double r);

UniversalCheck universal_check(const TmegParams& p, double tol = kUniversalTolerance);

/// Classifies the state heralded by an n-photon detection. For n <= 1 the
/// result is never Generic: one-photon subtraction from any valid TMEG state
/// yields a (possibly rotated) squeezed Fock state.
Classification classify_outcome(const TmegParams& p, int n, double tol = kUniversalTolerance);

HeraldedWavefunction heralded_wavefunction(const TmegParams& p, int n);

/// Full conditional-state computation: probability, wavefunction and
/// classification in one call.
HeraldOutcome herald(const TmegParams& p, int n, double tol = kUniversalTolerance);

/// TMEG state on the universal manifold for the given a: b = sqrt(a^2-1) e^r,
/// d = a e^{2r}. Detecting n photons in mode 1 then heralds SF(n, r) for
/// every n.
TmegParams make_universal_tmeg(Complex a, double r);

/// TMEG state whose n-photon heralded output is the rotated squeezed Fock
/// state S(|r|e^{i phi})|n>:
///   b = sqrt(a^2-1)/sqrt(cosh 2|r| - sinh 2|r| cos phi),
///   d = (a + i sinh 2|r| sin phi)/(cosh 2|r| - sinh 2|r| cos phi).
TmegParams make_rotated_sf_tmeg(double a, const RotatedSfSpec& s);

}  // namespace sfherald
