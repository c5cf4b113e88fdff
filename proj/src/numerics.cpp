#include "sfherald/numerics.hpp"

#include <cmath>
#include <vector>

namespace sfherald {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename T>
T hermite_impl(int n, T z) {
  if (n == 0) return T(1);
  T hkm1 = T(1);
  T hk = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    T next = 2.0 * z * hk - 2.0 * static_cast<double>(k) * hkm1;
    hkm1 = hk;
    hk = next;
  }
  return hk;
}

}  // namespace

Complex hermite(int n, Complex z) {
  if (n < 0) throw InvalidInputError("hermite: order must be non-negative");
  if (!finite(z)) throw InvalidInputError("hermite: argument must be finite");
  return hermite_impl(n, z);
}

double hermite(int n, double x) {
  if (n < 0) throw InvalidInputError("hermite: order must be non-negative");
  if (!std::isfinite(x)) throw InvalidInputError("hermite: argument must be finite");
  return hermite_impl(n, x);
}

double hyp2f1_terminating(int n, double z) {
  if (n < 0) throw InvalidInputError("hyp2f1_terminating: order must be non-negative");
  if (!(z >= 0.0)) throw InvalidInputError("hyp2f1_terminating: argument must be real >= 0");
  // Coefficients c_l = n!/((n-2l)! (l!)^2) are integers; the ratio recurrence
  // keeps them exact in double up to n ~ 33.
  double sum = 0.0;
  double c = 1.0;
  double zp = 1.0;
  for (int l = 0; 2 * l <= n; ++l) {
    sum += c * zp;
    c *= static_cast<double>(n - 2 * l) * static_cast<double>(n - 2 * l - 1) /
         (static_cast<double>(l + 1) * static_cast<double>(l + 1));
    zp *= z;
  }
  return sum;
}

QuadratureGrid default_grid_for_exponent(double c_min) {
  if (!(c_min > 0.0)) throw InvalidInputError("default_grid_for_exponent: exponent must be positive");
  return QuadratureGrid{12.0 / std::sqrt(c_min), 2048, 1e-12};
}

Complex integrate_line(const std::function<Complex(double)>& f, const QuadratureGrid& grid) {
  if (!(grid.half_width > 0.0)) throw InvalidInputError("integrate_line: half_width must be positive");
  if (grid.points < 64) throw InvalidInputError("integrate_line: need at least 64 points");
  if (!(grid.tail_tolerance > 0.0)) throw InvalidInputError("integrate_line: tail_tolerance must be positive");

  double width = grid.half_width;
  int points = grid.points;
  const int max_refinements = 6;

  for (int pass = 0;; ++pass) {
    // Composite Simpson; force an even interval count.
    int intervals = points - 1;
    if (intervals % 2 != 0) ++intervals;
    const int m = intervals;
    const double h = 2.0 * width / m;

    Complex sum = 0.0;
    double abs_sum = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double x = -width + h * i;
      Complex v = f(x);
      if (!finite(v)) throw InvalidInputError("integrate_line: integrand is not finite");
      double wgt = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += wgt * v;
      abs_sum += wgt * std::abs(v);
    }
    sum *= h / 3.0;
    abs_sum *= h / 3.0;

    // Tail estimate from the decay rate seen between 0.9*width and width.
    const double edge = std::max(std::abs(f(width)), std::abs(f(-width)));
    const double inner = std::max(std::abs(f(0.9 * width)), std::abs(f(-0.9 * width)));
    double tail = 0.0;
    bool decaying = true;
    if (edge > 0.0) {
      if (edge >= inner || inner == 0.0) {
        decaying = false;
      } else {
        const double rate = std::log(inner / edge) / (0.1 * width);
        tail = 2.0 * edge / rate;
      }
    }
    const double scale = std::max(abs_sum, 1e-300);
    if (decaying && tail <= grid.tail_tolerance * scale) return sum;

    if (pass == max_refinements) {
      throw ConvergenceError(
          "integrate_line: integrand tail above tolerance after maximum grid widening "
          "(non-decaying integrand?)");
    }
    width *= 2.0;
    points = 2 * points - 1;
  }
}

double db_from_r(double r) {
  if (!std::isfinite(r)) throw InvalidInputError("db_from_r: squeezing parameter must be finite");
  return 20.0 * r / std::log(10.0);
}

}  // namespace sfherald
