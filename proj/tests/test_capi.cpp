#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "sfherald/sfherald.h"

namespace {
const double kE = std::exp(1.0);
}

TEST_CASE("capi: version and error text") {
  CHECK(std::strlen(sfh_version()) > 0);
  double p = 0.0;
  CHECK(sfh_herald_probability({1, 0}, {1, 0}, {1, 0}, 0, &p) == SFH_ERR_INVALID_INPUT);
  CHECK(std::string(sfh_last_error()).find("Re[a]Re[d]") != std::string::npos);
}

TEST_CASE("capi: special functions") {
  sfh_complex h{};
  REQUIRE(sfh_hermite(2, {1, 0}, &h) == SFH_OK);
  CHECK(h.re == doctest::Approx(2.0));
  CHECK(sfh_hermite(-1, {0, 0}, &h) == SFH_ERR_INVALID_INPUT);
  CHECK(sfh_hermite(2, {1, 0}, nullptr) == SFH_ERR_NULL_POINTER);

  double v = 0.0;
  REQUIRE(sfh_hyp2f1_terminating(4, 0.3, &v) == SFH_OK);
  CHECK(v == doctest::Approx(1.0 + 3.6 + 0.54));
  REQUIRE(sfh_db_from_r(0.5, &v) == SFH_OK);
  CHECK(v == doctest::Approx(4.3).epsilon(0.02));
}

TEST_CASE("capi: validation and wavefunctions") {
  CHECK(sfh_tmeg_validate({1, 0}, {0, 0}, {1, 0}) == SFH_OK);
  CHECK(sfh_tmeg_validate({1, 0}, {1, 0}, {1, 0}) == SFH_ERR_INVALID_INPUT);

  double f = 0.0;
  REQUIRE(sfh_fock_wavefunction(0, 0.0, &f) == SFH_OK);
  CHECK(f == doctest::Approx(std::pow(std::acos(-1.0), -0.25)));
  REQUIRE(sfh_sf_wavefunction(1, 0.7, 0.0, &f) == SFH_OK);
  CHECK(f == 0.0);

  sfh_complex w{};
  REQUIRE(sfh_rotated_sf_wavefunction(2, 0.6, 0.0, 0.4, &w) == SFH_OK);
  double sf = 0.0;
  REQUIRE(sfh_sf_wavefunction(2, 0.6, 0.4, &sf) == SFH_OK);
  CHECK(w.re == doctest::Approx(sf).epsilon(1e-12));
  CHECK(w.im == doctest::Approx(0.0));

  sfh_complex psi{};
  REQUIRE(sfh_tmeg_wavefunction({1, 0}, {0, 0}, {1, 0}, 0, 0, &psi) == SFH_OK);
  CHECK(psi.re == doctest::Approx(1.0 / std::sqrt(std::acos(-1.0))));
}

TEST_CASE("capi: heralding on the universal point") {
  sfh_complex b{}, d{};
  REQUIRE(sfh_make_universal_tmeg({3, 0}, 0.5, &b, &d) == SFH_OK);
  CHECK(b.re == doctest::Approx(std::sqrt(8.0) * std::exp(0.5)).epsilon(1e-12));
  CHECK(d.re == doctest::Approx(3.0 * kE).epsilon(1e-12));

  double p = 0.0;
  REQUIRE(sfh_herald_probability({3, 0}, b, d, 1, &p) == SFH_OK);
  CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
  REQUIRE(sfh_herald_probability_universal({1.0 / 3.0, 0}, 1, &p) == SFH_OK);
  CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  double residual = 0.0, implied_r = 0.0;
  int satisfied = 0;
  REQUIRE(sfh_universal_check({3, 0}, b, d, 0.0, &residual, &satisfied, &implied_r) == SFH_OK);
  CHECK(satisfied == 1);
  CHECK(implied_r == doctest::Approx(0.5).epsilon(1e-10));

  sfh_outcome* outcome = nullptr;
  REQUIRE(sfh_herald({3, 0}, b, d, 1, 0.0, &outcome) == SFH_OK);
  REQUIRE(outcome != nullptr);
  REQUIRE(sfh_outcome_probability(outcome, &p) == SFH_OK);
  CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  sfh_classification cls{};
  REQUIRE(sfh_outcome_classification(outcome, &cls) == SFH_OK);
  CHECK(cls.kind == SFH_CLASS_EXACT_SF);
  CHECK(cls.r == doctest::Approx(0.5).epsilon(1e-10));

  sfh_complex val{};
  REQUIRE(sfh_outcome_eval(outcome, 0.0, &val) == SFH_OK);
  CHECK(std::abs(val.re) < 1e-12);  // odd state vanishes at the origin

  double fid = 0.0;
  REQUIRE(sfh_outcome_fidelity_sf(outcome, 0.5, nullptr, &fid) == SFH_OK);
  CHECK(fid == doctest::Approx(1.0).epsilon(1e-8));
  sfh_quad_opts quad{0.0, 4096, 0.0};
  REQUIRE(sfh_outcome_fidelity_sf(outcome, 0.5, &quad, &fid) == SFH_OK);
  CHECK(fid == doctest::Approx(1.0).epsilon(1e-8));
  sfh_outcome_free(outcome);
}

TEST_CASE("capi: rotated classification carries the equivalent (|r|, phi)") {
  // Build the rotated-SF generator via bs-like coefficients directly:
  // a = 2.5, |r| = 0.7, phi = 1.1.
  const double a = 2.5, rmag = 0.7, phi = 1.1;
  const double C = std::cosh(2 * rmag) - std::sinh(2 * rmag) * std::cos(phi);
  sfh_complex b{std::sqrt((a * a - 1.0) / C), 0.0};
  sfh_complex d{a / C, std::sinh(2 * rmag) * std::sin(phi) / C};

  sfh_classification cls{};
  REQUIRE(sfh_classify({a, 0}, b, d, 2, 0.0, &cls) == SFH_OK);
  CHECK(cls.kind == SFH_CLASS_ROTATED_SF);
  CHECK(cls.equiv_r_mag == doctest::Approx(rmag).epsilon(1e-9));
  CHECK(cls.equiv_phi == doctest::Approx(phi).epsilon(1e-9));
  CHECK(cls.r_eff == doctest::Approx(rmag).epsilon(1e-9));

  sfh_outcome* outcome = nullptr;
  REQUIRE(sfh_herald({a, 0}, b, d, 2, 0.0, &outcome) == SFH_OK);
  double fid = 0.0;
  REQUIRE(sfh_outcome_fidelity_rotated_sf(outcome, rmag, phi, nullptr, &fid) == SFH_OK);
  CHECK(fid == doctest::Approx(1.0).epsilon(1e-8));
  sfh_outcome_free(outcome);

  double rm = 0.0, ph = 0.0;
  REQUIRE(sfh_rotated_sf_from_exponent(-0.5 * std::log(C),
                                       std::sinh(2 * rmag) * std::sin(phi) / C, &rm, &ph) == SFH_OK);
  CHECK(rm == doctest::Approx(rmag).epsilon(1e-10));
  CHECK(ph == doctest::Approx(phi).epsilon(1e-10));
}

TEST_CASE("capi: singular and impossible outcomes map to distinct codes") {
  sfh_outcome* outcome = nullptr;
  CHECK(sfh_herald({1, 0}, {0.5, 0}, {2, 0}, 1, 0.0, &outcome) == SFH_ERR_SINGULAR);
  CHECK(sfh_herald({2, 0}, {0, 0}, {1, 0}, 1, 0.0, &outcome) == SFH_ERR_INVALID_INPUT);
}

TEST_CASE("capi: design surface") {
  double pmax = 0.0;
  REQUIRE(sfh_max_probability(2, &pmax) == SFH_OK);
  CHECK(pmax == doctest::Approx(4.0 / 27.0));
  CHECK(sfh_max_probability(0, &pmax) == SFH_ERR_INVALID_INPUT);

  double as = 0, al = 0, cc = 0, cr = 0;
  REQUIRE(sfh_optimal_a(1, &as, &al, &cc, &cr) == SFH_OK);
  CHECK(as == doctest::Approx(1.0 / 3.0));
  CHECK(al == doctest::Approx(3.0));

  sfh_design des{};
  REQUIRE(sfh_design_bs_universal(1, 0.5, 0.0, &des) == SFH_OK);
  CHECK(des.kind == SFH_SETUP_BS);
  CHECK(des.regime == SFH_REGIME_UNIVERSAL);
  CHECK(des.r1 == doctest::Approx(1.19).epsilon(0.01));
  CHECK(des.r2 == doctest::Approx(-0.69).epsilon(0.01));
  CHECK(des.t_or_g == doctest::Approx(0.74).epsilon(0.01));
  CHECK(des.probability == doctest::Approx(0.25).epsilon(1e-12));

  double fid = 0.0;
  REQUIRE(sfh_design_verify(&des, nullptr, &fid) == SFH_OK);
  CHECK(fid == doctest::Approx(1.0).epsilon(1e-8));

  REQUIRE(sfh_design_cz_universal(2, 1.0, 0.0, &des) == SFH_OK);
  CHECK(des.kind == SFH_SETUP_CZ);
  CHECK(des.t_or_g == doctest::Approx(2.66).epsilon(0.01));
  REQUIRE(sfh_design_verify(&des, nullptr, &fid) == SFH_OK);
  CHECK(fid == doctest::Approx(1.0).epsilon(1e-8));

  REQUIRE(sfh_design_bs_vacuum_channel(0.5, &des) == SFH_OK);
  CHECK(des.regime == SFH_REGIME_VACUUM_ONE_CHANNEL);
  CHECK(des.r1 == 0.0);
  CHECK(des.probability == doctest::Approx(0.1359655).epsilon(1e-4));

  CHECK(sfh_design_bs_universal(1, 0.5, 0.9, &des) == SFH_ERR_INFEASIBLE);
  CHECK(sfh_design_first_sf_general(2.0, 2.0 * std::exp(1.0), 0.5, SFH_SETUP_CZ, &des) ==
        SFH_ERR_INFEASIBLE);
  REQUIRE(sfh_design_first_sf_general(2.0, 2.0 * std::exp(1.0), 0.5, SFH_SETUP_BS, &des) == SFH_OK);
  CHECK(des.regime == SFH_REGIME_FIRST_SF_GENERAL);

  sfh_complex a{}, b{}, d{};
  REQUIRE(sfh_bs_forward(des.r1, des.r2, des.t_or_g, &a, &b, &d) == SFH_OK);
  CHECK(a.re == doctest::Approx(2.0).epsilon(1e-10));

  double ma = 0, md = 0, mp = 0;
  REQUIRE(sfh_maximize_first_sf(0.5, &ma, &md, &mp) == SFH_OK);
  CHECK(ma == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(mp == doctest::Approx(0.25).epsilon(1e-8));
}
