#pragma once

#include <functional>
#include <vector>

#include "sfherald/numerics.hpp"

namespace sfherald {

/// A complex-valued wavefunction of one coordinate-quadrature variable,
/// in units where x = (a + a^dag)/sqrt(2).
using Wavefunction = std::function<Complex(double)>;

/// Gaussian exponent coefficients of a non-displaced two-mode entangled
/// Gaussian state
///   Psi(x1,x2) = (Re[a]Re[d]-Re[b]^2)^{1/4}/sqrt(pi)
///                * exp(-(a x1^2 + 2 b x1 x2 + d x2^2)/2).
/// Normalizability requires Re[a] > 0, Re[d] > 0 and
/// Re[a]Re[d] - Re[b]^2 > 0.
struct TmegParams {
  Complex a;
  Complex b;
  Complex d;
};

/// Target squeezed Fock state: n photons, real squeezing parameter r
/// (positive r squeezes the x quadrature).
struct SqueezedFockSpec {
  int n = 0;
  double r = 0.0;
};

/// Squeezed Fock state with complex squeezing xi = |r| e^{i phi}; its
/// squeezing ellipse is rotated in the quadrature plane.
struct RotatedSfSpec {
  int n = 0;
  double r_mag = 0.0;
  double phi = 0.0;
};

/// One point of a sampled wavefunction.
struct WaveSample {
  double x = 0.0;
  Complex value;
};

/// Returns p unchanged when all three normalizability inequalities hold
/// strictly (margin 1e-12); otherwise throws InvalidInputError naming each
/// violated inequality.
TmegParams validate_tmeg(const TmegParams& p);

/// Re[a]Re[d] - Re[b]^2 of a validated state.
double tmeg_determinant(const TmegParams& p);

Complex tmeg_wavefunction(const TmegParams& p, double x1, double x2);

/// n-photon Fock state, e^{-x^2/2} H_n(x)/sqrt(2^n n! sqrt(pi)).
double fock_wavefunction(int n, double x);

/// Squeezed Fock state, e^{-e^{2r}x^2/2} H_n(e^r x)/sqrt(A_n e^{-r}).
double sf_wavefunction(const SqueezedFockSpec& s, double x);

/// Rotated squeezed Fock state S(|r|e^{i phi})|n> in the coordinate
/// representation.
Complex rotated_sf_wavefunction(const RotatedSfSpec& s, double x);

/// Recovers (|r|, phi) of the rotated SF state whose coordinate wavefunction
/// carries exponent -(e^{2 r_theta} + i w) x^2 / 2. Inverse of the exponent
/// produced by rotated_sf_wavefunction; phi in (-pi, pi], |r| >= 0.
RotatedSfSpec rotated_sf_from_exponent(int n, double r_theta, double w);

/// |<f|g>|^2 for normalizable wavefunctions, evaluated by quadrature and
/// normalized, so it is invariant under scaling or a global phase of either
/// argument. Result clamped to [0, 1].
double fidelity(const Wavefunction& f, const Wavefunction& g, const QuadratureGrid& grid);

/// Evaluates f on a uniform grid of the given size over [xmin, xmax].
std::vector<WaveSample> sample_wavefunction(const Wavefunction& f, double xmin, double xmax,
                                            int points);

}  // namespace sfherald
