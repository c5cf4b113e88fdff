#include "sfherald/design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace sfherald {

namespace {

// ---------------------------------------------------------------------------
// Derivative-free maximization: Nelder-Mead plus a coordinate-wise parabolic
// polish to tighten the optimum well below the simplex resolution.
// ---------------------------------------------------------------------------

using Objective = std::function<double(const std::vector<double>&)>;

struct NmOutcome {
  std::vector<double> x;
  double f = -std::numeric_limits<double>::infinity();
  bool converged = false;
};

NmOutcome nelder_mead_max(const Objective& f, std::vector<double> x0, double step,
                          double ftol, int max_iter) {
  const size_t dim = x0.size();
  struct Vertex {
    std::vector<double> x;
    double f;
  };
  std::vector<Vertex> simplex;
  simplex.push_back({x0, f(x0)});
  for (size_t i = 0; i < dim; ++i) {
    std::vector<double> x = x0;
    x[i] += step;
    simplex.push_back({x, f(x)});
  }
  auto by_worst = [](const Vertex& u, const Vertex& v) { return u.f > v.f; };

  NmOutcome out;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_worst);
    const Vertex& best = simplex.front();
    Vertex& worst = simplex.back();
    if (std::abs(best.f - worst.f) < ftol) {
      out.x = best.x;
      out.f = best.f;
      out.converged = true;
      return out;
    }
    std::vector<double> centroid(dim, 0.0);
    for (size_t v = 0; v + 1 < simplex.size(); ++v)
      for (size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i] / dim;

    auto along = [&](double coef) {
      std::vector<double> x(dim);
      for (size_t i = 0; i < dim; ++i) x[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
      return x;
    };
    std::vector<double> xr = along(1.0);
    const double fr = f(xr);
    if (fr > best.f) {
      std::vector<double> xe = along(2.0);
      const double fe = f(xe);
      if (fe > fr)
        worst = {xe, fe};
      else
        worst = {xr, fr};
    } else if (fr > simplex[simplex.size() - 2].f) {
      worst = {xr, fr};
    } else {
      std::vector<double> xc = along(-0.5);
      const double fc = f(xc);
      if (fc > worst.f) {
        worst = {xc, fc};
      } else {
        for (size_t v = 1; v < simplex.size(); ++v) {
          for (size_t i = 0; i < dim; ++i)
            simplex[v].x[i] = best.x[i] + 0.5 * (simplex[v].x[i] - best.x[i]);
          simplex[v].f = f(simplex[v].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_worst);
  out.x = simplex.front().x;
  out.f = simplex.front().f;
  out.converged = false;
  return out;
}

// One pass of three-point parabolic refinement per coordinate, with the probe
// width shrinking geometrically. Pushes the maximizer to ~1e-9 accuracy on
// smooth objectives.
void parabolic_polish(const Objective& f, std::vector<double>& x, double& fx) {
  for (double h = 1e-2; h > 1e-8; h *= 0.25) {
    for (size_t i = 0; i < x.size(); ++i) {
      std::vector<double> xm = x, xp = x;
      xm[i] -= h;
      xp[i] += h;
      const double fm = f(xm), fp = f(xp);
      const double denom = fm - 2.0 * fx + fp;
      if (!(denom < 0.0)) continue;  // not locally concave at this scale
      double shift = 0.5 * h * (fm - fp) / denom;
      shift = std::clamp(shift, -h, h);
      std::vector<double> xn = x;
      xn[i] += shift;
      const double fn = f(xn);
      if (fn > fx) {
        x = xn;
        fx = fn;
      }
    }
  }
}

TmegParams checked_bs_params(double r1, double r2, double t) {
  const double e1 = std::exp(2.0 * r1);
  const double e2 = std::exp(2.0 * r2);
  return {Complex(e1 * (1.0 - t) + e2 * t),
          Complex(std::sqrt((1.0 - t) * t) * (e1 - e2)),
          Complex(e1 * t + e2 * (1.0 - t))};
}

}  // namespace

double max_probability(int n) {
  if (n < 1)
    throw InvalidInputError("max_probability: n must be >= 1 (zero-photon detection is not SF generation)");
  return std::pow(static_cast<double>(n), n) / std::pow(n + 1.0, n + 1.0);
}

OptimalA optimal_a(int n) {
  if (n < 1) throw InvalidInputError("optimal_a: n must be >= 1");
  OptimalA o;
  o.n = n;
  o.a_real_small = 1.0 / (2.0 * n + 1.0);
  o.a_real_large = 1.0 + 2.0 * n;
  o.circle_center = n + 1.0 / (4.0 * n + 2.0) + 0.5;
  o.circle_radius = 2.0 * n * (n + 1.0) / (2.0 * n + 1.0);
  return o;
}

TmegParams bs_forward(const BsSetup& s) {
  if (!std::isfinite(s.r1) || !std::isfinite(s.r2) || !std::isfinite(s.t))
    throw InvalidInputError("bs_forward: setup parameters must be finite");
  if (!(s.t > 0.0 && s.t < 1.0)) throw InvalidInputError("bs_forward: t must lie in (0, 1)");
  if (s.r1 * s.r2 > 0.0)
    throw InvalidInputError("bs_forward: input squeezings must be orthogonal (r1 r2 <= 0)");
  return validate_tmeg(checked_bs_params(s.r1, s.r2, s.t));
}

TmegParams cz_forward(const CzSetup& s) {
  if (!std::isfinite(s.r1) || !std::isfinite(s.r2) || !std::isfinite(s.g))
    throw InvalidInputError("cz_forward: setup parameters must be finite");
  if (s.g == 0.0) throw InvalidInputError("cz_forward: g must be nonzero");
  return validate_tmeg({Complex(std::exp(2.0 * s.r1)), Complex(0.0, s.g),
                        Complex(std::exp(2.0 * s.r2))});
}

DesignResult design_bs_universal(int n, double r, double a) {
  if (n < 1) throw InvalidInputError("design_bs_universal: n must be >= 1");
  if (!std::isfinite(r)) throw InvalidInputError("design_bs_universal: r must be finite");
  if (std::isnan(a)) a = 1.0 + 2.0 * n;
  if (!std::isfinite(a) || !(a > 1.0 + 1e-12))
    throw InfeasibleDesignError("design_bs_universal: BS universal regime requires real a > 1");

  // a = cosh(r1 - r2)/cosh(r1 + r2) with r1 + r2 = r; of the two branches,
  // take the one with the smaller |r2|.
  const double delta = std::acosh(a * std::cosh(r));
  const double ds = (r >= 0.0) ? delta : -delta;
  const double r1 = 0.5 * (r + ds);
  const double r2 = 0.5 * (r - ds);
  const double s1 = std::sinh(r1) * std::cosh(r1);
  const double s2 = std::sinh(r2) * std::cosh(r2);
  const double t = s1 / (s1 - s2);

  DesignResult res;
  res.setup = BsSetup{r1, r2, t};
  res.tmeg = bs_forward(BsSetup{r1, r2, t});
  res.probability = herald_probability_universal(Complex(a), n);
  res.regime = DesignRegime::Universal;
  res.n = n;
  res.target_r = r;
  return res;
}

DesignResult design_cz_universal(int n, double r, double a) {
  if (n < 1) throw InvalidInputError("design_cz_universal: n must be >= 1");
  if (!std::isfinite(r)) throw InvalidInputError("design_cz_universal: r must be finite");
  if (std::isnan(a)) a = 1.0 / (2.0 * n + 1.0);
  if (!std::isfinite(a) || !(a > 0.0) || !(a < 1.0 - 1e-12))
    throw InfeasibleDesignError("design_cz_universal: CZ universal regime requires real a in (0, 1)");

  const double r1 = 0.5 * std::log(a);
  const double r2 = r + r1;
  const double g = std::exp(r) * std::sqrt(1.0 - a * a);

  DesignResult res;
  res.setup = CzSetup{r1, r2, g};
  res.tmeg = cz_forward(CzSetup{r1, r2, g});
  res.probability = herald_probability_universal(Complex(a), n);
  res.regime = DesignRegime::Universal;
  res.n = n;
  res.target_r = r;
  return res;
}

DesignResult design_bs_vacuum_channel(double r) {
  if (!std::isfinite(r)) throw InvalidInputError("design_bs_vacuum_channel: r must be finite");
  const double S = std::exp(2.0 * r);

  // With r1 = 0 the output-squeezing constraint fixes t for each r2:
  // t = 2(1 + E - S)/(E (1 + S)), E = e^{2 r2} - 1, leaving a 1-D search.
  auto t_of = [&](double r2) {
    const double E = std::exp(2.0 * r2) - 1.0;
    return 2.0 * (1.0 + E - S) / (E * (1.0 + S));
  };
  auto objective = [&](const std::vector<double>& v) {
    const double r2 = v[0];
    const double t = t_of(r2);
    if (!(t > 0.0 && t < 1.0)) return -1.0;
    const TmegParams p = checked_bs_params(0.0, r2, t);
    return first_sf_probability(p.a, p.d, r);
  };

  const double lo = std::max(0.0, r) + 1e-6;
  NmOutcome best;
  for (int k = 0; k < 10; ++k) {
    const double start = lo + 0.4 * (k + 1);
    NmOutcome o = nelder_mead_max(objective, {start}, 0.2, 1e-12, 400);
    if (o.f > best.f) best = o;
  }
  if (!(best.f > 0.0))
    throw ConvergenceError(
        "design_bs_vacuum_channel: optimizer found no feasible point (target r = " +
        std::to_string(r) + ")");
  parabolic_polish(objective, best.x, best.f);

  const double r2 = best.x[0];
  const double t = t_of(r2);
  DesignResult res;
  res.setup = BsSetup{0.0, r2, t};
  res.tmeg = bs_forward(BsSetup{0.0, r2, t});
  res.probability = best.f;
  res.regime = DesignRegime::VacuumOneChannel;
  res.n = 1;
  res.target_r = r;
  return res;
}

DesignResult design_first_sf_general(double a, double d, double r, SetupKind kind) {
  if (!std::isfinite(a) || !std::isfinite(d) || !std::isfinite(r))
    throw InvalidInputError("design_first_sf_general: arguments must be finite");
  if (!(a > 0.0) || !(d > 0.0))
    throw InvalidInputError("design_first_sf_general: a and d must be positive");
  const double e2r = std::exp(2.0 * r);
  const double b2 = (a + 1.0) * (d - e2r);
  if (b2 == 0.0)
    throw InfeasibleDesignError("design_first_sf_general: d = e^{2r} gives b = 0 (zero herald probability)");

  DesignResult res;
  res.regime = DesignRegime::FirstSfGeneral;
  res.n = 1;
  res.target_r = r;
  res.probability = first_sf_probability(Complex(a), Complex(d), r);

  if (kind == SetupKind::Bs) {
    if (b2 < 0.0)
      throw InfeasibleDesignError(
          "design_first_sf_general: b^2 < 0 has no BS realization; this target is feasible with a CZ setup");
    const double b = std::sqrt(b2);
    validate_tmeg({Complex(a), Complex(b), Complex(d)});
    // e^{2 r1}, e^{2 r2} are the roots of z^2 - (a+d) z + (ad - b^2).
    const double sum = a + d;
    const double disc = std::sqrt(sum * sum - 4.0 * (a * d - b2));
    const double X = 0.5 * (sum + disc);
    const double Y = 0.5 * (sum - disc);
    const double r1 = 0.5 * std::log(X);
    const double r2 = 0.5 * std::log(Y);
    if (r1 * r2 > 0.0)
      throw InfeasibleDesignError(
          "design_first_sf_general: target needs same-sign input squeezings, outside the orthogonal-input BS model");
    const double t = (a - X) / (Y - X);
    res.setup = BsSetup{r1, r2, t};
    res.tmeg = bs_forward(BsSetup{r1, r2, t});
  } else {
    if (b2 > 0.0)
      throw InfeasibleDesignError(
          "design_first_sf_general: b^2 > 0 has no CZ realization; this target is feasible with a BS setup");
    const double g = std::sqrt(-b2);
    res.setup = CzSetup{0.5 * std::log(a), 0.5 * std::log(d), g};
    res.tmeg = cz_forward(std::get<CzSetup>(res.setup));
  }
  return res;
}

FirstSfMaximum maximize_first_sf_probability(double r) {
  if (!std::isfinite(r)) throw InvalidInputError("maximize_first_sf_probability: r must be finite");
  const double e2r = std::exp(2.0 * r);

  // Validity of the real family means 0 < d < (a+1) e^{2r}; optimize in
  // (log a, logit of d/((a+1) e^{2r})) so every probe point is admissible.
  auto objective = [&](const std::vector<double>& v) {
    const double a = std::exp(v[0]);
    const double frac = 1.0 / (1.0 + std::exp(-v[1]));
    const double d = (a + 1.0) * e2r * frac;
    if (!(a > 0.0) || !(d > 0.0)) return -1.0;
    return first_sf_probability(Complex(a), Complex(d), r);
  };

  NmOutcome best;
  const double starts_a[] = {-1.5, -0.5, 0.5, 1.1, 2.0};
  const double starts_q[] = {-0.5, 1.0};
  for (double sa : starts_a)
    for (double sq : starts_q) {
      NmOutcome o = nelder_mead_max(objective, {sa, sq}, 0.5, 1e-12, 600);
      if (o.f > best.f) best = o;
    }
  if (!(best.f > 0.0))
    throw ConvergenceError("maximize_first_sf_probability: no feasible point found");
  parabolic_polish(objective, best.x, best.f);

  FirstSfMaximum m;
  m.a = std::exp(best.x[0]);
  m.d = (m.a + 1.0) * e2r / (1.0 + std::exp(-best.x[1]));
  m.probability = best.f;
  return m;
}

}  // namespace sfherald
