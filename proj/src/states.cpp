#include "sfherald/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sfherald {

namespace {

constexpr double kStrictMargin = 1e-12;
const double kPi = std::acos(-1.0);

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// sqrt(2^n n! sqrt(pi)), kept in log space to stay finite for large n.
double sqrt_an(int n) {
  const double log_an = n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(kPi);
  return std::exp(0.5 * log_an);
}

}  // namespace

TmegParams validate_tmeg(const TmegParams& p) {
  if (!finite(p.a) || !finite(p.b) || !finite(p.d))
    throw InvalidInputError("TMEG parameters must be finite");
  std::ostringstream msg;
  bool ok = true;
  if (!(p.a.real() > kStrictMargin)) {
    msg << "Re[a] > 0 violated (Re[a] = " << p.a.real() << "); ";
    ok = false;
  }
  if (!(p.d.real() > kStrictMargin)) {
    msg << "Re[d] > 0 violated (Re[d] = " << p.d.real() << "); ";
    ok = false;
  }
  const double det = p.a.real() * p.d.real() - p.b.real() * p.b.real();
  if (!(det > kStrictMargin)) {
    msg << "Re[a]Re[d] - Re[b]^2 > 0 violated (value = " << det << "); ";
    ok = false;
  }
  if (!ok) throw InvalidInputError("non-normalizable TMEG state: " + msg.str());
  return p;
}

double tmeg_determinant(const TmegParams& p) {
  return p.a.real() * p.d.real() - p.b.real() * p.b.real();
}

Complex tmeg_wavefunction(const TmegParams& p, double x1, double x2) {
  validate_tmeg(p);
  const double pref = std::pow(tmeg_determinant(p), 0.25) / std::sqrt(kPi);
  const Complex quad = p.a * x1 * x1 + 2.0 * p.b * x1 * x2 + p.d * x2 * x2;
  return pref * std::exp(-0.5 * quad);
}

double fock_wavefunction(int n, double x) {
  if (n < 0) throw InvalidInputError("fock_wavefunction: photon number must be non-negative");
  return std::exp(-0.5 * x * x) * hermite(n, x) / sqrt_an(n);
}

double sf_wavefunction(const SqueezedFockSpec& s, double x) {
  if (s.n < 0) throw InvalidInputError("sf_wavefunction: photon number must be non-negative");
  if (!std::isfinite(s.r)) throw InvalidInputError("sf_wavefunction: squeezing must be finite");
  const double er = std::exp(s.r);
  return std::exp(-0.5 * er * er * x * x) * hermite(s.n, er * x) /
         (sqrt_an(s.n) * std::exp(-0.5 * s.r));
}

Complex rotated_sf_wavefunction(const RotatedSfSpec& s, double x) {
  if (s.n < 0) throw InvalidInputError("rotated_sf_wavefunction: photon number must be non-negative");
  if (!(s.r_mag >= 0.0) || !std::isfinite(s.phi))
    throw InvalidInputError("rotated_sf_wavefunction: invalid squeezing parameter");
  const double c2r = std::cosh(2.0 * s.r_mag);
  const double s2r = std::sinh(2.0 * s.r_mag);
  const double denom = c2r - std::cos(s.phi) * s2r;  // > 0 always
  const Complex expo = -x * x * Complex(1.0, std::sin(s.phi) * s2r) / (2.0 * denom);
  return std::exp(expo) * hermite(s.n, Complex(x / std::sqrt(denom), 0.0)) /
         (sqrt_an(s.n) * std::pow(denom, 0.25));
}

RotatedSfSpec rotated_sf_from_exponent(int n, double r_theta, double w) {
  if (!std::isfinite(r_theta) || !std::isfinite(w))
    throw InvalidInputError("rotated_sf_from_exponent: arguments must be finite");
  // With C = e^{-2 r_theta}: cosh 2|r| - sinh 2|r| cos(phi) = C and
  // sinh 2|r| sin(phi) = w C; solve via cosh^2 - sinh^2 = 1.
  const double C = std::exp(-2.0 * r_theta);
  const double v = w * C;
  const double u = (1.0 - C * C + v * v) / (2.0 * C);
  const double sinh2r = std::hypot(u, v);
  RotatedSfSpec s;
  s.n = n;
  s.r_mag = 0.5 * std::asinh(sinh2r);
  s.phi = (sinh2r == 0.0) ? 0.0 : std::atan2(v, u);
  return s;
}

std::vector<WaveSample> sample_wavefunction(const Wavefunction& f, double xmin, double xmax,
                                            int points) {
  if (points < 1 || !(xmin <= xmax))
    throw InvalidInputError("sample_wavefunction: invalid grid");
  std::vector<WaveSample> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double x = points == 1 ? xmin : xmin + (xmax - xmin) * i / (points - 1);
    out.push_back({x, f(x)});
  }
  return out;
}

double fidelity(const Wavefunction& f, const Wavefunction& g, const QuadratureGrid& grid) {
  const Complex overlap = integrate_line([&](double x) { return std::conj(f(x)) * g(x); }, grid);
  const Complex nf = integrate_line([&](double x) { return Complex(std::norm(f(x)), 0.0); }, grid);
  const Complex ng = integrate_line([&](double x) { return Complex(std::norm(g(x)), 0.0); }, grid);
  if (!(nf.real() > 0.0) || !(ng.real() > 0.0))
    throw InvalidInputError("fidelity: wavefunction has zero norm");
  const double val = std::norm(overlap) / (nf.real() * ng.real());
  return std::clamp(val, 0.0, 1.0);
}

}  // namespace sfherald
