#include "sfherald/heralding.hpp"

#include <cmath>
#include <limits>

namespace sfherald {

namespace {

const double kPi = std::acos(-1.0);
constexpr double kSingularA = 1e-10;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// d - b^2/(a+1); its real part is the Gaussian exponent of the heralded
// state and is positive for every valid TMEG state.
Complex output_exponent(const TmegParams& p) { return p.d - p.b * p.b / (p.a + 1.0); }

double sqrt_an(int n) {
  const double log_an = n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(kPi);
  return std::exp(0.5 * log_an);
}

double rotation_angle(double e2rt, double w) {
  const double den = e2rt * e2rt + w * w - 1.0;
  if (den == 0.0) return (w >= 0.0 ? 0.25 : -0.25) * kPi;
  return 0.5 * std::atan(2.0 * w / den);
}

double effective_squeezing(double e2rt, double w) {
  const double arg =
      0.5 * std::sqrt(2.0 * e2rt + e2rt * e2rt + w * w + 1.0) / std::sqrt(e2rt);
  return std::acosh(std::max(arg, 1.0));
}

}  // namespace

double herald_probability(const TmegParams& p, int n) {
  validate_tmeg(p);
  if (n < 0) throw InvalidInputError("herald_probability: photon number must be non-negative");
  const double alpha = output_exponent(p).real();
  const double det = tmeg_determinant(p);
  // Stable form of the terminating hypergeometric sum: the l-th term of
  // |b|^{2n} 2F1[(1-n)/2, -n/2; 1; |1-(a^2-1) alpha/b^2|^2] is
  // c_l |b|^{2(n-2l)} (|G|/2)^{2l} with G = b^2 - (a^2-1) alpha, which stays
  // finite as b -> 0 (detection of even n from a squeezed single mode).
  const double babs = std::abs(p.b);
  const double ghalf = 0.5 * std::abs(p.b * p.b - (p.a * p.a - 1.0) * alpha);
  double sum = 0.0;
  double c = 1.0;
  for (int l = 0; 2 * l <= n; ++l) {
    sum += c * std::pow(babs, 2.0 * (n - 2 * l)) * std::pow(ghalf, 2.0 * l);
    c *= static_cast<double>(n - 2 * l) * static_cast<double>(n - 2 * l - 1) /
         (static_cast<double>(l + 1) * static_cast<double>(l + 1));
  }
  const double denom = std::norm(1.0 + p.a) * alpha;
  const double prob = 2.0 * std::sqrt(det) * sum / std::pow(denom, n + 0.5);
  if (!std::isfinite(prob))
    throw InvalidInputError(
        "herald_probability: intermediate overflow (photon number too large for "
        "double-precision evaluation of these parameters)");
  return prob;
}

double herald_probability_universal(Complex a, int n) {
  if (!finite(a)) throw InvalidInputError("herald_probability_universal: a must be finite");
  if (n < 0) throw InvalidInputError("herald_probability_universal: photon number must be non-negative");
  if (!(a.real() > 0.0))
    throw InvalidInputError("herald_probability_universal: Re[a] must be positive");
  if (std::abs(a - 1.0) < kSingularA || std::abs(a + 1.0) < kSingularA)
    throw SingularParameterError("herald_probability_universal: a within 1e-10 of +-1");
  const Complex s = std::sqrt(a * a - 1.0);
  const double under = a.real() * a.real() - s.real() * s.real();  // > 0 for Re[a] > 0
  return 2.0 * std::pow(std::abs(a * a - 1.0), n) * std::sqrt(std::max(under, 0.0)) /
         std::pow(std::abs(1.0 + a), 2 * n + 1);
}

double first_sf_probability(Complex a, Complex d, double r) {
  if (!std::isfinite(r)) throw InvalidInputError("first_sf_probability: r must be finite");
  const double e2r = std::exp(2.0 * r);
  const Complex b = std::sqrt((a + 1.0) * (d - e2r));
  const TmegParams p = validate_tmeg({a, b, d});
  const double det = tmeg_determinant(p);
  return 2.0 * std::norm(b) * std::sqrt(det) / std::pow(std::norm(1.0 + a) * e2r, 1.5);
}

UniversalCheck universal_check(const TmegParams& p, double tol) {
  validate_tmeg(p);
  if (!(tol > 0.0)) throw InvalidInputError("universal_check: tolerance must be positive");
  UniversalCheck out;
  const Complex e = output_exponent(p);
  if (std::abs(p.a - 1.0) < kSingularA || std::abs(p.a + 1.0) < kSingularA) {
    out.residual = std::numeric_limits<double>::infinity();
    out.satisfied = false;
    out.implied_r = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const Complex c = p.b * p.b / (p.a * p.a - 1.0);
  const double scale = std::max({1.0, std::abs(e), std::abs(c)});
  const double res_cond = std::abs(Complex(e.real(), 0.0) - c) / scale;
  const double res_imag = std::abs(e.imag()) / scale;
  out.residual = std::max(res_cond, res_imag);
  out.satisfied = out.residual <= tol;
  out.implied_r = out.satisfied ? 0.5 * std::log(c.real())
                                : std::numeric_limits<double>::quiet_NaN();
  return out;
}

Classification classify_outcome(const TmegParams& p, int n, double tol) {
  validate_tmeg(p);
  if (n < 0) throw InvalidInputError("classify_outcome: photon number must be non-negative");
  const Complex e = output_exponent(p);
  const double e2rt = e.real();
  const double w = e.imag();
  const bool w_zero = std::abs(w) <= tol * std::max(1.0, std::abs(e));

  if (n <= 1) {
    // H_0 and H_1 are monomials, so the Hermite-argument condition is
    // redundant and the exponent alone fixes the output state.
    if (w_zero) return ExactSf{0.5 * std::log(e2rt)};
    return RotatedSf{0.5 * std::log(e2rt), w, rotation_angle(e2rt, w),
                     effective_squeezing(e2rt, w)};
  }

  UniversalCheck uc = universal_check(p, tol);
  if (uc.satisfied && w_zero) return ExactSf{uc.implied_r};

  // Rotated SF needs b^2/(a^2-1) real and equal to Re[d - b^2/(a+1)]; the
  // same residual as the universal check minus the Im[...] = 0 part.
  if (std::abs(p.a - 1.0) >= kSingularA && std::abs(p.a + 1.0) >= kSingularA) {
    const Complex c = p.b * p.b / (p.a * p.a - 1.0);
    const double scale = std::max({1.0, std::abs(e), std::abs(c)});
    if (std::abs(Complex(e2rt, 0.0) - c) / scale <= tol) {
      if (w_zero) return ExactSf{0.5 * std::log(e2rt)};  // ties resolve to ExactSf
      return RotatedSf{0.5 * std::log(e2rt), w, rotation_angle(e2rt, w),
                       effective_squeezing(e2rt, w)};
    }
  }
  return Generic{};
}

HeraldedWavefunction::HeraldedWavefunction(const TmegParams& p, int n, double probability)
    : n_(n), exponent_(output_exponent(p)) {
  // 2(a-1)^n/(a+1)^{n+1} computed as a ratio power to avoid overflow.
  const Complex ratio = (p.a - 1.0) / (p.a + 1.0);
  const Complex pref2 = std::sqrt(2.0 * std::pow(ratio, n) / (p.a + 1.0));
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  prefactor_ = sign * std::pow(tmeg_determinant(p), 0.25) * pref2 /
               (sqrt_an(n) * std::sqrt(probability));
  hermite_arg_ = (n >= 1) ? p.b / std::sqrt(p.a * p.a - 1.0) : Complex(0.0);
}

Complex HeraldedWavefunction::operator()(double x) const {
  return prefactor_ * std::exp(-0.5 * exponent_ * x * x) * hermite(n_, hermite_arg_ * x);
}

HeraldedWavefunction heralded_wavefunction(const TmegParams& p, int n) {
  validate_tmeg(p);
  if (n < 0) throw InvalidInputError("heralded_wavefunction: photon number must be non-negative");
  if (n >= 1 &&
      (std::abs(p.a - 1.0) < kSingularA || std::abs(p.a + 1.0) < kSingularA))
    throw SingularParameterError("heralded_wavefunction: closed form degenerates for a near +-1");
  const double prob = herald_probability(p, n);
  if (!(prob > 1e-300))
    throw InvalidInputError("heralded_wavefunction: outcome has zero probability (impossible herald)");
  return HeraldedWavefunction(p, n, prob);
}

HeraldOutcome herald(const TmegParams& p, int n, double tol) {
  HeraldedWavefunction wf = heralded_wavefunction(p, n);
  return HeraldOutcome{n, herald_probability(p, n), wf, classify_outcome(p, n, tol)};
}

TmegParams make_universal_tmeg(Complex a, double r) {
  if (!finite(a) || !std::isfinite(r))
    throw InvalidInputError("make_universal_tmeg: arguments must be finite");
  if (std::abs(a - 1.0) < kSingularA || std::abs(a + 1.0) < kSingularA)
    throw SingularParameterError("make_universal_tmeg: a within 1e-10 of +-1");
  const double e2r = std::exp(2.0 * r);
  return validate_tmeg({a, std::sqrt(a * a - 1.0) * std::exp(r), a * e2r});
}

TmegParams make_rotated_sf_tmeg(double a, const RotatedSfSpec& s) {
  if (!std::isfinite(a) || !(s.r_mag >= 0.0) || !std::isfinite(s.phi))
    throw InvalidInputError("make_rotated_sf_tmeg: invalid arguments");
  if (std::abs(a - 1.0) < kSingularA || std::abs(a + 1.0) < kSingularA)
    throw SingularParameterError("make_rotated_sf_tmeg: a within 1e-10 of +-1");
  const double denom = std::cosh(2.0 * s.r_mag) - std::sinh(2.0 * s.r_mag) * std::cos(s.phi);
  const Complex b = std::sqrt(Complex(a * a - 1.0)) / std::sqrt(denom);
  const Complex d = Complex(a, std::sinh(2.0 * s.r_mag) * std::sin(s.phi)) / denom;
  return validate_tmeg({Complex(a), b, d});
}

}  // namespace sfherald
