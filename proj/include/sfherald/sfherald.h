/*
 * sfherald C API.
 *
 * Conditional-state computation for two-mode entangled Gaussian (TMEG)
 * states: the state heralded in mode 2 by an n-photon detection in mode 1,
 * its generation probability in closed form, classification as a (rotated)
 * squeezed Fock state, and inverse design of beam-splitter / CZ-gate setups
 * realizing a target squeezed Fock state.
 *
 * Every function returns an sfh status code; on failure sfh_last_error()
 * carries a thread-local description. Out-parameters are written only on
 * SFH_OK.
 */

#ifndef SFHERALD_H
#define SFHERALD_H

#ifdef __cplusplus
extern "C" {
#endif

#define SFH_OK 0
#define SFH_ERR_INVALID_INPUT 1
#define SFH_ERR_SINGULAR 2
#define SFH_ERR_INFEASIBLE 3
#define SFH_ERR_NO_CONVERGENCE 4
#define SFH_ERR_NULL_POINTER 5
#define SFH_ERR_INTERNAL 6

typedef struct {
  double re;
  double im;
} sfh_complex;

/* Classification of the heralded state. */
#define SFH_CLASS_EXACT_SF 0
#define SFH_CLASS_ROTATED_SF 1
#define SFH_CLASS_GENERIC 2

typedef struct {
  int kind; /* SFH_CLASS_* */
  /* kind == SFH_CLASS_EXACT_SF: squeezing of the heralded SF state. */
  double r;
  /* kind == SFH_CLASS_ROTATED_SF: exponent data (e^{2 r_theta} + i w),
   * rotation angle theta, effective squeezing magnitude r_eff, and the
   * equivalent squeezing parameter |r| e^{i phi}. */
  double r_theta;
  double w;
  double theta;
  double r_eff;
  double equiv_r_mag;
  double equiv_phi;
} sfh_classification;

/* Experimental setups and design results. */
#define SFH_SETUP_BS 0
#define SFH_SETUP_CZ 1

#define SFH_REGIME_UNIVERSAL 0
#define SFH_REGIME_FIRST_SF_GENERAL 1
#define SFH_REGIME_VACUUM_ONE_CHANNEL 2

typedef struct {
  int kind;   /* SFH_SETUP_* */
  int regime; /* SFH_REGIME_* */
  int n;
  double target_r;
  double r1;
  double r2;
  double t_or_g; /* power transmission t (BS) or weight g (CZ) */
  sfh_complex a;
  sfh_complex b;
  sfh_complex d;
  double probability;
} sfh_design;

/* Quadrature override for fidelity evaluations; zero fields keep the
 * automatic defaults (half_width from the Gaussian envelope, 2048 points,
 * tail tolerance 1e-12). Pass NULL for all-defaults. */
typedef struct {
  double half_width;
  int points;
  double tail_tolerance;
} sfh_quad_opts;

const char* sfh_version(void);

/* Message describing the most recent failure on this thread. */
const char* sfh_last_error(void);

/* ---- special functions ------------------------------------------------ */

int sfh_hermite(int n, sfh_complex z, sfh_complex* out);
int sfh_hyp2f1_terminating(int n, double z, double* out);
int sfh_db_from_r(double r, double* out);

/* ---- states ------------------------------------------------------------ */

/* SFH_OK when (a, b, d) is a normalizable TMEG state. */
int sfh_tmeg_validate(sfh_complex a, sfh_complex b, sfh_complex d);

int sfh_tmeg_wavefunction(sfh_complex a, sfh_complex b, sfh_complex d, double x1,
                          double x2, sfh_complex* out);
int sfh_fock_wavefunction(int n, double x, double* out);
int sfh_sf_wavefunction(int n, double r, double x, double* out);
int sfh_rotated_sf_wavefunction(int n, double r_mag, double phi, double x, sfh_complex* out);

/* (|r|, phi) of the rotated SF state whose wavefunction exponent is
 * -(e^{2 r_theta} + i w) x^2/2. */
int sfh_rotated_sf_from_exponent(double r_theta, double w, double* r_mag, double* phi);

/* Universal-manifold TMEG coefficients for a given a and target squeezing r:
 * b = sqrt(a^2-1) e^r, d = a e^{2r}. */
int sfh_make_universal_tmeg(sfh_complex a, double r, sfh_complex* b, sfh_complex* d);

/* ---- heralding ---------------------------------------------------------- */

int sfh_herald_probability(sfh_complex a, sfh_complex b, sfh_complex d, int n, double* out);
int sfh_herald_probability_universal(sfh_complex a, int n, double* out);

/* Probability of generating SF(1, r) from the family point (a, d) with
 * b^2 = (a+1)(d - e^{2r}); never exceeds 0.25. */
int sfh_first_sf_probability(sfh_complex a, sfh_complex d, double r, double* out);

/* tol <= 0 selects the default (1e-9 relative). implied_r is NaN when the
 * condition is not satisfied. */
int sfh_universal_check(sfh_complex a, sfh_complex b, sfh_complex d, double tol,
                        double* residual, int* satisfied, double* implied_r);

int sfh_classify(sfh_complex a, sfh_complex b, sfh_complex d, int n, double tol,
                 sfh_classification* out);

/* Full heralded outcome as an opaque handle: probability, classification and
 * an evaluator of the normalized output wavefunction. */
typedef struct sfh_outcome sfh_outcome;

int sfh_herald(sfh_complex a, sfh_complex b, sfh_complex d, int n, double tol,
               sfh_outcome** out);
void sfh_outcome_free(sfh_outcome* outcome);
int sfh_outcome_probability(const sfh_outcome* outcome, double* out);
int sfh_outcome_classification(const sfh_outcome* outcome, sfh_classification* out);
int sfh_outcome_eval(const sfh_outcome* outcome, double x, sfh_complex* out);

/* Fidelity |<target|out>|^2 between the heralded state and SF(n, r) or the
 * rotated SF state S(|r|e^{i phi})|n>, by quadrature. */
int sfh_outcome_fidelity_sf(const sfh_outcome* outcome, double r,
                            const sfh_quad_opts* quad, double* out);
int sfh_outcome_fidelity_rotated_sf(const sfh_outcome* outcome, double r_mag, double phi,
                                    const sfh_quad_opts* quad, double* out);

/* ---- design ------------------------------------------------------------- */

int sfh_max_probability(int n, double* out);
int sfh_optimal_a(int n, double* a_small, double* a_large, double* circle_center,
                  double* circle_radius);

int sfh_bs_forward(double r1, double r2, double t, sfh_complex* a, sfh_complex* b,
                   sfh_complex* d);
int sfh_cz_forward(double r1, double r2, double g, sfh_complex* a, sfh_complex* b,
                   sfh_complex* d);

/* a <= 0 selects the probability-maximizing value (1+2n for BS, 1/(2n+1)
 * for CZ). */
int sfh_design_bs_universal(int n, double r, double a, sfh_design* out);
int sfh_design_cz_universal(int n, double r, double a, sfh_design* out);
int sfh_design_bs_vacuum_channel(double r, sfh_design* out);
int sfh_design_first_sf_general(double a, double d, double r, int setup_kind,
                                sfh_design* out);

/* Round-trip verification: heralds design->n photons from design->tmeg and
 * returns the fidelity with SF(design->n, design->target_r). */
int sfh_design_verify(const sfh_design* design, const sfh_quad_opts* quad, double* fidelity);

/* Maximizer of sfh_first_sf_probability over real (a, d), by derivative-free
 * search. */
int sfh_maximize_first_sf(double r, double* a, double* d, double* probability);

#ifdef __cplusplus
}
#endif

#endif /* SFHERALD_H */
