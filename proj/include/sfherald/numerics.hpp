#pragma once

#include <complex>
#include <functional>

#include "sfherald/errors.hpp"

namespace sfherald {

using Complex = std::complex<double>;

/// Configuration for line integrals over the real axis. The integrand is
/// sampled on a uniform grid covering [-half_width, half_width]; the grid is
/// widened automatically (keeping the point density) until the estimated
/// tail contribution drops below tail_tolerance relative to the integral.
struct QuadratureGrid {
  double half_width = 12.0;
  int points = 2048;
  double tail_tolerance = 1e-12;
};

/// Default grid for an integrand bounded by exp(-c_min x^2): wide enough
/// that the truncated tails are far below double precision.
QuadratureGrid default_grid_for_exponent(double c_min);

/// Physicists' Hermite polynomial H_n(z) via the three-term recurrence
/// H_{k+1}(z) = 2z H_k(z) - 2k H_{k-1}(z). Stable for the |z|, n used here.
Complex hermite(int n, Complex z);
double hermite(int n, double x);

/// Terminating hypergeometric-type sum
///   sum_{l=0}^{floor(n/2)} n! z^l / ((n-2l)! (l!)^2),
/// a polynomial in z of degree floor(n/2) with integer coefficients
/// (equal to 2F1((1-n)/2, -n/2; 1; 4z); note the argument scaling).
double hyp2f1_terminating(int n, double z);

/// Integral of f over the whole real line, for integrands with at least
/// Gaussian decay. Deterministic for a fixed grid; throws ConvergenceError
/// if the tail estimate stays above tolerance after widening the grid.
Complex integrate_line(const std::function<Complex(double)>& f,
                       const QuadratureGrid& grid);

/// Squeezing parameter r expressed in dB: 10 log10 e^{2r}.
double db_from_r(double r);

}  // namespace sfherald
