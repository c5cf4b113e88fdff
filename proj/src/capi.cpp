#include "sfherald/sfherald.h"

#include <cmath>
#include <string>

#include "sfherald/design.hpp"

namespace {

using namespace sfherald;

thread_local std::string g_last_error;

template <typename F>
int wrap(F&& fn) noexcept {
  try {
    fn();
    return SFH_OK;
  } catch (const SingularParameterError& e) {
    g_last_error = e.what();
    return SFH_ERR_SINGULAR;
  } catch (const InfeasibleDesignError& e) {
    g_last_error = e.what();
    return SFH_ERR_INFEASIBLE;
  } catch (const ConvergenceError& e) {
    g_last_error = e.what();
    return SFH_ERR_NO_CONVERGENCE;
  } catch (const InvalidInputError& e) {
    g_last_error = e.what();
    return SFH_ERR_INVALID_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SFH_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SFH_ERR_INTERNAL;
  }
}

int null_arg() {
  g_last_error = "null pointer argument";
  return SFH_ERR_NULL_POINTER;
}

Complex in(sfh_complex z) { return Complex(z.re, z.im); }
sfh_complex out_c(Complex z) { return {z.real(), z.imag()}; }
TmegParams in_tmeg(sfh_complex a, sfh_complex b, sfh_complex d) {
  return {in(a), in(b), in(d)};
}

sfh_classification to_capi(const Classification& c) {
  sfh_classification o{};
  if (const ExactSf* e = std::get_if<ExactSf>(&c)) {
    o.kind = SFH_CLASS_EXACT_SF;
    o.r = e->r;
  } else if (const RotatedSf* rs = std::get_if<RotatedSf>(&c)) {
    o.kind = SFH_CLASS_ROTATED_SF;
    o.r_theta = rs->r_theta;
    o.w = rs->w;
    o.theta = rs->theta;
    o.r_eff = rs->r_eff;
    const RotatedSfSpec eq = rotated_sf_from_exponent(0, rs->r_theta, rs->w);
    o.equiv_r_mag = eq.r_mag;
    o.equiv_phi = eq.phi;
  } else {
    o.kind = SFH_CLASS_GENERIC;
  }
  return o;
}

QuadratureGrid resolve_grid(const sfh_quad_opts* quad, double auto_exponent) {
  QuadratureGrid g = default_grid_for_exponent(auto_exponent);
  if (quad) {
    if (quad->half_width > 0.0) g.half_width = quad->half_width;
    if (quad->points > 0) g.points = quad->points;
    if (quad->tail_tolerance > 0.0) g.tail_tolerance = quad->tail_tolerance;
  }
  return g;
}

void fill_design(const DesignResult& res, sfh_design* out) {
  sfh_design o{};
  if (const BsSetup* bs = std::get_if<BsSetup>(&res.setup)) {
    o.kind = SFH_SETUP_BS;
    o.r1 = bs->r1;
    o.r2 = bs->r2;
    o.t_or_g = bs->t;
  } else {
    const CzSetup& cz = std::get<CzSetup>(res.setup);
    o.kind = SFH_SETUP_CZ;
    o.r1 = cz.r1;
    o.r2 = cz.r2;
    o.t_or_g = cz.g;
  }
  switch (res.regime) {
    case DesignRegime::Universal: o.regime = SFH_REGIME_UNIVERSAL; break;
    case DesignRegime::FirstSfGeneral: o.regime = SFH_REGIME_FIRST_SF_GENERAL; break;
    case DesignRegime::VacuumOneChannel: o.regime = SFH_REGIME_VACUUM_ONE_CHANNEL; break;
  }
  o.n = res.n;
  o.target_r = res.target_r;
  o.a = out_c(res.tmeg.a);
  o.b = out_c(res.tmeg.b);
  o.d = out_c(res.tmeg.d);
  o.probability = res.probability;
  *out = o;
}

double auto_maybe(double a) {
  return a <= 0.0 ? std::numeric_limits<double>::quiet_NaN() : a;
}

}  // namespace

struct sfh_outcome {
  sfherald::TmegParams params;
  sfherald::HeraldOutcome value;
};

extern "C" {

const char* sfh_version(void) { return "0.1.0"; }

const char* sfh_last_error(void) { return g_last_error.c_str(); }

int sfh_hermite(int n, sfh_complex z, sfh_complex* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = out_c(hermite(n, in(z))); });
}

int sfh_hyp2f1_terminating(int n, double z, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = hyp2f1_terminating(n, z); });
}

int sfh_db_from_r(double r, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = db_from_r(r); });
}

int sfh_tmeg_validate(sfh_complex a, sfh_complex b, sfh_complex d) {
  return wrap([&] { validate_tmeg(in_tmeg(a, b, d)); });
}

int sfh_tmeg_wavefunction(sfh_complex a, sfh_complex b, sfh_complex d, double x1,
                          double x2, sfh_complex* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = out_c(tmeg_wavefunction(in_tmeg(a, b, d), x1, x2)); });
}

int sfh_fock_wavefunction(int n, double x, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = fock_wavefunction(n, x); });
}

int sfh_sf_wavefunction(int n, double r, double x, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = sf_wavefunction({n, r}, x); });
}

int sfh_rotated_sf_wavefunction(int n, double r_mag, double phi, double x, sfh_complex* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = out_c(rotated_sf_wavefunction({n, r_mag, phi}, x)); });
}

int sfh_rotated_sf_from_exponent(double r_theta, double w, double* r_mag, double* phi) {
  if (!r_mag || !phi) return null_arg();
  return wrap([&] {
    const RotatedSfSpec s = rotated_sf_from_exponent(0, r_theta, w);
    *r_mag = s.r_mag;
    *phi = s.phi;
  });
}

int sfh_make_universal_tmeg(sfh_complex a, double r, sfh_complex* b, sfh_complex* d) {
  if (!b || !d) return null_arg();
  return wrap([&] {
    const TmegParams p = make_universal_tmeg(in(a), r);
    *b = out_c(p.b);
    *d = out_c(p.d);
  });
}

int sfh_herald_probability(sfh_complex a, sfh_complex b, sfh_complex d, int n, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = herald_probability(in_tmeg(a, b, d), n); });
}

int sfh_herald_probability_universal(sfh_complex a, int n, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = herald_probability_universal(in(a), n); });
}

int sfh_first_sf_probability(sfh_complex a, sfh_complex d, double r, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = first_sf_probability(in(a), in(d), r); });
}

int sfh_universal_check(sfh_complex a, sfh_complex b, sfh_complex d, double tol,
                        double* residual, int* satisfied, double* implied_r) {
  if (!residual || !satisfied || !implied_r) return null_arg();
  return wrap([&] {
    const UniversalCheck uc =
        universal_check(in_tmeg(a, b, d), tol > 0.0 ? tol : kUniversalTolerance);
    *residual = uc.residual;
    *satisfied = uc.satisfied ? 1 : 0;
    *implied_r = uc.implied_r;
  });
}

int sfh_classify(sfh_complex a, sfh_complex b, sfh_complex d, int n, double tol,
                 sfh_classification* out) {
  if (!out) return null_arg();
  return wrap([&] {
    *out = to_capi(classify_outcome(in_tmeg(a, b, d), n, tol > 0.0 ? tol : kUniversalTolerance));
  });
}

int sfh_herald(sfh_complex a, sfh_complex b, sfh_complex d, int n, double tol,
               sfh_outcome** out) {
  if (!out) return null_arg();
  return wrap([&] {
    const TmegParams p = in_tmeg(a, b, d);
    *out = new sfh_outcome{p, herald(p, n, tol > 0.0 ? tol : kUniversalTolerance)};
  });
}

void sfh_outcome_free(sfh_outcome* outcome) { delete outcome; }

int sfh_outcome_probability(const sfh_outcome* outcome, double* out) {
  if (!outcome || !out) return null_arg();
  *out = outcome->value.probability;
  return SFH_OK;
}

int sfh_outcome_classification(const sfh_outcome* outcome, sfh_classification* out) {
  if (!outcome || !out) return null_arg();
  return wrap([&] { *out = to_capi(outcome->value.classification); });
}

int sfh_outcome_eval(const sfh_outcome* outcome, double x, sfh_complex* out) {
  if (!outcome || !out) return null_arg();
  return wrap([&] { *out = out_c(outcome->value.wavefunction(x)); });
}

int sfh_outcome_fidelity_sf(const sfh_outcome* outcome, double r,
                            const sfh_quad_opts* quad, double* out) {
  if (!outcome || !out) return null_arg();
  return wrap([&] {
    const HeraldedWavefunction& wf = outcome->value.wavefunction;
    const int n = outcome->value.n;
    const double cmin =
        std::min({wf.envelope_exponent(), std::exp(2.0 * r), 1.0});
    auto target = [&](double x) { return Complex(sf_wavefunction({n, r}, x), 0.0); };
    *out = fidelity([&](double x) { return wf(x); }, target, resolve_grid(quad, cmin));
  });
}

int sfh_outcome_fidelity_rotated_sf(const sfh_outcome* outcome, double r_mag, double phi,
                                    const sfh_quad_opts* quad, double* out) {
  if (!outcome || !out) return null_arg();
  return wrap([&] {
    const HeraldedWavefunction& wf = outcome->value.wavefunction;
    const RotatedSfSpec spec{outcome->value.n, r_mag, phi};
    const double env =
        1.0 / (std::cosh(2.0 * r_mag) - std::cos(phi) * std::sinh(2.0 * r_mag));
    const double cmin = std::min({wf.envelope_exponent(), env, 1.0});
    auto target = [&](double x) { return rotated_sf_wavefunction(spec, x); };
    *out = fidelity([&](double x) { return wf(x); }, target, resolve_grid(quad, cmin));
  });
}

int sfh_max_probability(int n, double* out) {
  if (!out) return null_arg();
  return wrap([&] { *out = max_probability(n); });
}

int sfh_optimal_a(int n, double* a_small, double* a_large, double* circle_center,
                  double* circle_radius) {
  if (!a_small || !a_large || !circle_center || !circle_radius) return null_arg();
  return wrap([&] {
    const OptimalA o = optimal_a(n);
    *a_small = o.a_real_small;
    *a_large = o.a_real_large;
    *circle_center = o.circle_center;
    *circle_radius = o.circle_radius;
  });
}

int sfh_bs_forward(double r1, double r2, double t, sfh_complex* a, sfh_complex* b,
                   sfh_complex* d) {
  if (!a || !b || !d) return null_arg();
  return wrap([&] {
    const TmegParams p = bs_forward({r1, r2, t});
    *a = out_c(p.a);
    *b = out_c(p.b);
    *d = out_c(p.d);
  });
}

int sfh_cz_forward(double r1, double r2, double g, sfh_complex* a, sfh_complex* b,
                   sfh_complex* d) {
  if (!a || !b || !d) return null_arg();
  return wrap([&] {
    const TmegParams p = cz_forward({r1, r2, g});
    *a = out_c(p.a);
    *b = out_c(p.b);
    *d = out_c(p.d);
  });
}

int sfh_design_bs_universal(int n, double r, double a, sfh_design* out) {
  if (!out) return null_arg();
  return wrap([&] { fill_design(design_bs_universal(n, r, auto_maybe(a)), out); });
}

int sfh_design_cz_universal(int n, double r, double a, sfh_design* out) {
  if (!out) return null_arg();
  return wrap([&] { fill_design(design_cz_universal(n, r, auto_maybe(a)), out); });
}

int sfh_design_bs_vacuum_channel(double r, sfh_design* out) {
  if (!out) return null_arg();
  return wrap([&] { fill_design(design_bs_vacuum_channel(r), out); });
}

int sfh_design_first_sf_general(double a, double d, double r, int setup_kind,
                                sfh_design* out) {
  if (!out) return null_arg();
  return wrap([&] {
    if (setup_kind != SFH_SETUP_BS && setup_kind != SFH_SETUP_CZ)
      throw InvalidInputError("design_first_sf_general: unknown setup kind");
    const SetupKind kind = setup_kind == SFH_SETUP_BS ? SetupKind::Bs : SetupKind::Cz;
    fill_design(design_first_sf_general(a, d, r, kind), out);
  });
}

int sfh_design_verify(const sfh_design* design, const sfh_quad_opts* quad, double* fidelity_out) {
  if (!design || !fidelity_out) return null_arg();
  return wrap([&] {
    const TmegParams p{in(design->a), in(design->b), in(design->d)};
    const HeraldedWavefunction wf = heralded_wavefunction(p, design->n);
    const double cmin =
        std::min({wf.envelope_exponent(), std::exp(2.0 * design->target_r), 1.0});
    auto target = [&](double x) {
      return Complex(sf_wavefunction({design->n, design->target_r}, x), 0.0);
    };
    *fidelity_out =
        fidelity([&](double x) { return wf(x); }, target, resolve_grid(quad, cmin));
  });
}

int sfh_maximize_first_sf(double r, double* a, double* d, double* probability) {
  if (!a || !d || !probability) return null_arg();
  return wrap([&] {
    const FirstSfMaximum m = maximize_first_sf_probability(r);
    *a = m.a;
    *d = m.d;
    *probability = m.probability;
  });
}

}  // extern "C"
