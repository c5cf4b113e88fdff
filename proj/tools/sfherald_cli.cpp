// sfherald command-line front end.
//
// Exposes validation, heralding, probability evaluation, classification,
// setup design, reference-table regression, parameter sweeps and
// wavefunction sampling on top of the sfherald shared library (C API).
//
// Exit codes: 0 success, 2 invalid input, 3 infeasible design or singular
// parameters, 4 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sfherald/sfherald.h"

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// formatting and parsing helpers
// ---------------------------------------------------------------------------

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_complex(sfh_complex z) {
  if (z.im == 0.0) return fmt12(z.re);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.re, z.im);
  return buf;
}

// Shortest representation that parses back to exactly the same double; used
// for the config echo so that re-running a report's embedded configuration
// reproduces the output byte for byte.
std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  if (std::strtod(buf, nullptr) == v) return buf;
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex_exact(sfh_complex z) {
  if (z.im == 0.0) return fmt_exact(z.re);
  std::string s = fmt_exact(z.re);
  const std::string im = fmt_exact(z.im);
  if (!im.empty() && im[0] != '-') s += "+";
  return s + im + "i";
}

// Accepts "1.5", "-2", "1.5+0.7i", "1.5-0.7i", "0.7i", "-i", "i".
sfh_complex parse_complex(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw CLI::ValidationError("empty complex value");
  if (s.back() == 'i' || s.back() == 'I') {
    s.pop_back();
    // split the imaginary part off at the last sign not part of an exponent
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    auto num = [](const std::string& t) -> double {
      if (t.empty() || t == "+") return 1.0;
      if (t == "-") return -1.0;
      size_t pos = 0;
      double v = std::stod(t, &pos);
      if (pos != t.size()) throw CLI::ValidationError("bad numeric value '" + t + "'");
      return v;
    };
    if (split == std::string::npos) return {0.0, num(s)};
    return {num(s.substr(0, split)), num(s.substr(split))};
  }
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw CLI::ValidationError("bad numeric value '" + s + "'");
  return {v, 0.0};
}

constexpr double kDbPerR = 8.685889638065035;  // 10 log10 e^2

int code_to_exit(int code) {
  switch (code) {
    case SFH_OK: return 0;
    case SFH_ERR_INVALID_INPUT: return 2;
    case SFH_ERR_SINGULAR:
    case SFH_ERR_INFEASIBLE: return 3;
    case SFH_ERR_NO_CONVERGENCE: return 4;
    default: return 4;
  }
}

[[noreturn]] void fail(int code, const std::string& context) {
  std::cerr << "error: " << context << ": " << sfh_last_error() << "\n";
  std::exit(code_to_exit(code));
}

void check(int code, const std::string& context) {
  if (code != SFH_OK) fail(code, context);
}

// ---------------------------------------------------------------------------
// report emission
// ---------------------------------------------------------------------------

struct Options {
  std::string format = "table";
  double quad_half_width = 0.0;
  int quad_points = 0;
  double quad_tail_tol = 0.0;
  double tolerance = 0.0;  // classification / universal-check tolerance
  unsigned long long seed = 0;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "Output format: table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--quad-points", opt.quad_points,
                  "Quadrature points (default 2048; env SF_HERALD_QUAD_POINTS)");
  cmd->add_option("--quad-half-width", opt.quad_half_width, "Quadrature half width override");
  cmd->add_option("--quad-tail-tol", opt.quad_tail_tol, "Quadrature tail tolerance override");
  cmd->add_option("--tolerance", opt.tolerance, "Relative tolerance override");
  cmd->add_option("--seed", opt.seed, "RNG seed (reserved for randomized sweeps)");
}

sfh_quad_opts quad_of(const Options& opt) {
  sfh_quad_opts q{opt.quad_half_width, opt.quad_points, opt.quad_tail_tol};
  if (q.points == 0) {
    if (const char* env = std::getenv("SF_HERALD_QUAD_POINTS")) q.points = std::atoi(env);
  }
  return q;
}

void config_common(json& cfg, const Options& opt) {
  cfg["format"] = opt.format;
  const sfh_quad_opts q = quad_of(opt);
  cfg["quad_points"] = q.points > 0 ? q.points : 2048;
  if (q.half_width > 0.0) cfg["quad_half_width"] = q.half_width;
  if (q.tail_tolerance > 0.0) cfg["quad_tail_tol"] = q.tail_tolerance;
  if (opt.tolerance > 0.0) cfg["tolerance"] = opt.tolerance;
  cfg["seed"] = opt.seed;
}

std::string json_scalar_to_text(const json& v) {
  if (v.is_number_float()) return fmt12(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_table_section(const json& obj, int indent) {
  const std::string pad(indent, ' ');
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (it.value().is_object()) {
      std::cout << pad << it.key() << ":\n";
      print_table_section(it.value(), indent + 2);
    } else if (it.value().is_array()) {
      std::cout << pad << it.key() << ":\n";
      for (const auto& row : it.value()) {
        if (row.is_object()) {
          std::cout << pad << "  -\n";
          print_table_section(row, indent + 4);
        } else {
          std::cout << pad << "  - " << json_scalar_to_text(row) << "\n";
        }
      }
    } else {
      std::cout << pad << it.key() << ": " << json_scalar_to_text(it.value()) << "\n";
    }
  }
}

void flatten_csv(const json& obj, const std::string& prefix,
                 std::vector<std::pair<std::string, std::string>>& out) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) {
      flatten_csv(it.value(), key, out);
    } else if (!it.value().is_array()) {
      out.emplace_back(key, json_scalar_to_text(it.value()));
    }
  }
}

// Every report carries command, config and results; "rows" (an array of
// uniform objects) renders as a CSV body / aligned listing.
void emit(const json& report, const Options& opt) {
  if (opt.format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  if (opt.format == "csv") {
    std::string cfg_line = "# command=" + report["command"].get<std::string>();
    std::vector<std::pair<std::string, std::string>> cfg;
    flatten_csv(report["config"], "", cfg);
    for (const auto& [k, v] : cfg) cfg_line += " " + k + "=" + v;
    std::cout << cfg_line << "\n";
    if (report.contains("results")) {
      std::vector<std::pair<std::string, std::string>> flat;
      flatten_csv(report["results"], "", flat);
      for (const auto& [k, v] : flat) std::cout << k << "," << v << "\n";
    }
    if (report.contains("rows") && !report["rows"].empty()) {
      const json& first = report["rows"].front();
      std::string header;
      for (auto it = first.begin(); it != first.end(); ++it) {
        if (!header.empty()) header += ",";
        header += it.key();
      }
      std::cout << header << "\n";
      for (const auto& row : report["rows"]) {
        std::string line;
        for (auto it = row.begin(); it != row.end(); ++it) {
          if (!line.empty()) line += ",";
          line += json_scalar_to_text(it.value());
        }
        std::cout << line << "\n";
      }
    }
    return;
  }
  std::cout << "command: " << report["command"].get<std::string>() << "\n";
  std::cout << "config:\n";
  print_table_section(report["config"], 2);
  if (report.contains("results")) {
    std::cout << "results:\n";
    print_table_section(report["results"], 2);
  }
  if (report.contains("rows")) {
    std::cout << "rows:\n";
    const json& rows = report["rows"];
    if (!rows.empty()) {
      std::string header;
      for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
        if (!header.empty()) header += "  ";
        header += it.key();
      }
      std::cout << "  " << header << "\n";
      for (const auto& row : rows) {
        std::string line;
        for (auto it = row.begin(); it != row.end(); ++it) {
          if (!line.empty()) line += "  ";
          line += json_scalar_to_text(it.value());
        }
        std::cout << "  " << line << "\n";
      }
    }
  }
}

json classification_json(const sfh_classification& cls) {
  json out;
  if (cls.kind == SFH_CLASS_EXACT_SF) {
    out["kind"] = "ExactSF";
    out["r"] = cls.r;
    double db = 0.0;
    sfh_db_from_r(cls.r, &db);
    out["r_db"] = db;
  } else if (cls.kind == SFH_CLASS_ROTATED_SF) {
    out["kind"] = "RotatedSF";
    out["r_theta"] = cls.r_theta;
    out["w"] = cls.w;
    out["theta"] = cls.theta;
    out["r_eff"] = cls.r_eff;
    double db = 0.0;
    sfh_db_from_r(cls.r_eff, &db);
    out["r_eff_db"] = db;
    out["equiv_r_mag"] = cls.equiv_r_mag;
    out["equiv_phi"] = cls.equiv_phi;
  } else {
    out["kind"] = "Generic";
  }
  return out;
}

// ---------------------------------------------------------------------------
// subcommand payloads
// ---------------------------------------------------------------------------

struct TmegArgs {
  std::string a, b, d;
  sfh_complex ca{}, cb{}, cd{};
  void parse() {
    ca = parse_complex(a);
    cb = parse_complex(b);
    cd = parse_complex(d);
  }
  void echo(json& cfg) const {
    cfg["a"] = format_complex_exact(ca);
    cfg["b"] = format_complex_exact(cb);
    cfg["d"] = format_complex_exact(cd);
  }
};

void add_tmeg(CLI::App* cmd, TmegArgs& args) {
  cmd->add_option("--a", args.a, "TMEG coefficient a (complex, e.g. 3 or 1.2+0.5i)")->required();
  cmd->add_option("--b", args.b, "TMEG coefficient b")->required();
  cmd->add_option("--d", args.d, "TMEG coefficient d")->required();
}

int run_validate(const TmegArgs& args, const Options& opt) {
  json report;
  report["command"] = "validate";
  json cfg;
  args.echo(cfg);
  config_common(cfg, opt);
  report["config"] = cfg;
  const int code = sfh_tmeg_validate(args.ca, args.cb, args.cd);
  json res;
  res["valid"] = (code == SFH_OK);
  if (code != SFH_OK) res["reason"] = sfh_last_error();
  report["results"] = res;
  emit(report, opt);
  return code_to_exit(code);
}

int run_herald(const TmegArgs& args, int n, int samples, double xmin, double xmax,
               const Options& opt) {
  json report;
  report["command"] = "herald";
  json cfg;
  args.echo(cfg);
  cfg["n"] = n;
  if (samples > 0) {
    cfg["samples"] = samples;
    cfg["xmin"] = xmin;
    cfg["xmax"] = xmax;
  }
  config_common(cfg, opt);
  report["config"] = cfg;

  sfh_outcome* outcome = nullptr;
  check(sfh_herald(args.ca, args.cb, args.cd, n, opt.tolerance, &outcome), "herald");

  double p = 0.0;
  sfh_outcome_probability(outcome, &p);
  sfh_classification cls{};
  sfh_outcome_classification(outcome, &cls);

  json res;
  res["probability"] = p;
  res["classification"] = classification_json(cls);
  report["results"] = res;

  if (samples > 0) {
    json rows = json::array();
    for (int i = 0; i < samples; ++i) {
      const double x = samples == 1 ? xmin : xmin + (xmax - xmin) * i / (samples - 1);
      sfh_complex v{};
      check(sfh_outcome_eval(outcome, x, &v), "herald: sample");
      rows.push_back({{"x", x}, {"re", v.re}, {"im", v.im}});
    }
    report["rows"] = rows;
  }
  sfh_outcome_free(outcome);
  emit(report, opt);
  return 0;
}

int run_prob(const TmegArgs& args, bool universal, int n, const Options& opt) {
  json report;
  report["command"] = "prob";
  json cfg;
  double p = 0.0;
  if (universal) {
    const sfh_complex a = parse_complex(args.a);
    cfg["universal_a"] = format_complex_exact(a);
    cfg["n"] = n;
    config_common(cfg, opt);
    report["config"] = cfg;
    check(sfh_herald_probability_universal(a, n, &p), "prob");
  } else {
    args.echo(cfg);
    cfg["n"] = n;
    config_common(cfg, opt);
    report["config"] = cfg;
    check(sfh_herald_probability(args.ca, args.cb, args.cd, n, &p), "prob");
  }
  json res;
  res["probability"] = p;
  report["results"] = res;
  emit(report, opt);
  return 0;
}

int run_classify(const TmegArgs& args, int n, const Options& opt) {
  json report;
  report["command"] = "classify";
  json cfg;
  args.echo(cfg);
  cfg["n"] = n;
  config_common(cfg, opt);
  report["config"] = cfg;

  sfh_classification cls{};
  check(sfh_classify(args.ca, args.cb, args.cd, n, opt.tolerance, &cls), "classify");
  double residual = 0.0, implied_r = 0.0;
  int satisfied = 0;
  check(sfh_universal_check(args.ca, args.cb, args.cd, opt.tolerance, &residual, &satisfied,
                            &implied_r),
        "classify: universal check");

  json res;
  res["classification"] = classification_json(cls);
  json uc;
  uc["satisfied"] = (satisfied != 0);
  uc["residual"] = residual;
  if (satisfied) uc["implied_r"] = implied_r;
  res["universal_check"] = uc;
  report["results"] = res;
  emit(report, opt);
  return 0;
}

json design_json(const sfh_design& des, double fidelity) {
  json out;
  out["setup"] = des.kind == SFH_SETUP_BS ? "bs" : "cz";
  switch (des.regime) {
    case SFH_REGIME_UNIVERSAL: out["regime"] = "universal"; break;
    case SFH_REGIME_FIRST_SF_GENERAL: out["regime"] = "first-sf-general"; break;
    default: out["regime"] = "vacuum-one-channel"; break;
  }
  out["n"] = des.n;
  out["target_r"] = des.target_r;
  double db = 0.0;
  out["r1"] = des.r1;
  sfh_db_from_r(des.r1, &db);
  out["r1_db"] = db;
  out["r2"] = des.r2;
  sfh_db_from_r(des.r2, &db);
  out["r2_db"] = db;
  out[des.kind == SFH_SETUP_BS ? "t" : "g"] = des.t_or_g;
  json tmeg;
  tmeg["a"] = format_complex(des.a);
  tmeg["b"] = format_complex(des.b);
  tmeg["d"] = format_complex(des.d);
  out["tmeg"] = tmeg;
  out["probability"] = des.probability;
  out["probability_percent"] = 100.0 * des.probability;
  out["verification_fidelity"] = fidelity;
  return out;
}

int run_design(const std::string& setup, int n, double r, bool maximize, double a_opt,
               bool vacuum, bool general, double gen_a, double gen_d, const Options& opt) {
  json report;
  report["command"] = "design";
  json cfg;
  cfg["setup"] = setup;
  cfg["n"] = n;
  cfg["r"] = r;
  if (maximize) cfg["maximize"] = true;
  if (a_opt > 0.0) cfg["a"] = a_opt;
  if (vacuum) cfg["vacuum_channel"] = true;
  if (general) {
    cfg["general"] = true;
    cfg["general_a"] = gen_a;
    cfg["general_d"] = gen_d;
  }
  config_common(cfg, opt);
  report["config"] = cfg;

  sfh_design des{};
  int code;
  if (vacuum) {
    if (setup != "bs") {
      std::cerr << "error: design: the vacuum-channel regime applies to the BS setup only\n";
      return 3;
    }
    if (n != 1) {
      std::cerr << "error: design: only the first SF state can be generated with vacuum in "
                   "one channel (n = 1)\n";
      return 3;
    }
    code = sfh_design_bs_vacuum_channel(r, &des);
  } else if (general) {
    code = sfh_design_first_sf_general(gen_a, gen_d, r,
                                       setup == "bs" ? SFH_SETUP_BS : SFH_SETUP_CZ, &des);
  } else if (setup == "bs") {
    code = sfh_design_bs_universal(n, r, maximize ? 0.0 : a_opt, &des);
  } else {
    code = sfh_design_cz_universal(n, r, maximize ? 0.0 : a_opt, &des);
  }
  check(code, "design");

  const sfh_quad_opts quad = quad_of(opt);
  double fidelity = 0.0;
  check(sfh_design_verify(&des, &quad, &fidelity), "design: verification");

  report["results"] = design_json(des, fidelity);
  emit(report, opt);
  return 0;
}

int run_sweep(const std::string& var, double lo, double hi, int steps, int n, double fixed_r,
              const std::string& fixed_a, const Options& opt) {
  json report;
  report["command"] = "sweep";
  json cfg;
  cfg["var"] = var;
  cfg["min"] = lo;
  cfg["max"] = hi;
  cfg["steps"] = steps;
  cfg["n"] = n;
  if (var == "a") cfg["r"] = fixed_r;
  if (var == "r") cfg["a"] = format_complex_exact(parse_complex(fixed_a));
  config_common(cfg, opt);
  report["config"] = cfg;

  if (!(lo < hi) || steps < 2) {
    std::cerr << "error: sweep: invalid interval (need min < max and steps >= 2)\n";
    return 2;
  }

  double pmax = 0.0;
  check(sfh_max_probability(n, &pmax), "sweep");

  json rows = json::array();
  for (int i = 0; i < steps; ++i) {
    const double v = lo + (hi - lo) * i / (steps - 1);
    sfh_complex a = var == "a" ? sfh_complex{v, 0.0} : parse_complex(fixed_a);
    const double r = var == "r" ? v : fixed_r;
    double p = 0.0;
    check(sfh_herald_probability_universal(a, n, &p), "sweep: probability");
    sfh_complex b{}, d{};
    check(sfh_make_universal_tmeg(a, r, &b, &d), "sweep: universal state");
    sfh_classification cls{};
    check(sfh_classify(a, b, d, n, opt.tolerance, &cls), "sweep: classification");
    std::string kind = cls.kind == SFH_CLASS_EXACT_SF
                           ? "ExactSF"
                           : (cls.kind == SFH_CLASS_ROTATED_SF ? "RotatedSF" : "Generic");
    rows.push_back({{var, v}, {"probability", p}, {"classification", kind}, {"p_max", pmax}});
  }
  report["rows"] = rows;
  emit(report, opt);
  return 0;
}

int run_sample(const std::string& state, int n, double r, double r_mag, double phi,
               const TmegArgs& args, bool have_tmeg, double xmin, double xmax, int points,
               const Options& opt) {
  json report;
  report["command"] = "sample";
  json cfg;
  cfg["state"] = state;
  cfg["n"] = n;
  if (state == "sf") cfg["r"] = r;
  if (state == "rsf") {
    cfg["r_mag"] = r_mag;
    cfg["phi"] = phi;
  }
  if (state == "heralded") {
    if (!have_tmeg) {
      std::cerr << "error: sample: --state heralded requires --a --b --d\n";
      return 2;
    }
    args.echo(cfg);
  }
  cfg["xmin"] = xmin;
  cfg["xmax"] = xmax;
  cfg["points"] = points;
  config_common(cfg, opt);
  report["config"] = cfg;

  if (points < 1 || !(xmin < xmax)) {
    std::cerr << "error: sample: invalid grid\n";
    return 2;
  }

  sfh_outcome* outcome = nullptr;
  if (state == "heralded")
    check(sfh_herald(args.ca, args.cb, args.cd, n, opt.tolerance, &outcome), "sample");

  json rows = json::array();
  for (int i = 0; i < points; ++i) {
    const double x = points == 1 ? xmin : xmin + (xmax - xmin) * i / (points - 1);
    sfh_complex v{0.0, 0.0};
    if (state == "fock") {
      check(sfh_fock_wavefunction(n, x, &v.re), "sample");
    } else if (state == "sf") {
      check(sfh_sf_wavefunction(n, r, x, &v.re), "sample");
    } else if (state == "rsf") {
      check(sfh_rotated_sf_wavefunction(n, r_mag, phi, x, &v), "sample");
    } else {
      check(sfh_outcome_eval(outcome, x, &v), "sample");
    }
    rows.push_back({{"x", x}, {"re", v.re}, {"im", v.im}});
  }
  if (outcome) sfh_outcome_free(outcome);
  report["rows"] = rows;
  emit(report, opt);
  return 0;
}

// ---------------------------------------------------------------------------
// reference tables
// ---------------------------------------------------------------------------

// Published reference values (two-decimal rounding) for the BS and CZ
// parameter tables, alongside the inputs that regenerate each cell.
struct RefCell {
  int n;
  double r_label;
  const char* column;  // maximized | non-maximized | vacuum-channel
  double a;            // universal-regime a; 0 = vacuum-channel cell
  double ref_r1, ref_r2, ref_tg, ref_p_percent;
};

// Non-maximized a values are recovered from the published (r1, r2) pairs via
// a = cosh(r1 - r2)/cosh(r).
const RefCell kBsCells[] = {
    {1, 0.5, "maximized", 3.0, 1.19, -0.69, 0.74, 25.0},
    {1, 1.0, "maximized", 3.0, 1.60, -0.60, 0.88, 25.0},
    {1, 0.5, "non-maximized", 1.9434007378, 0.96, -0.46, 0.75, 22.0},
    {1, 1.0, "non-maximized", 1.9760780769, 1.39, -0.39, 0.90, 22.0},
    {2, 0.5, "maximized", 5.0, 1.45, -0.95, 0.73, 14.8},
    {2, 1.0, "maximized", 5.0, 1.86, -0.86, 0.88, 14.8},
    {2, 0.5, "non-maximized", 2.9735461685, 1.19, -0.69, 0.74, 12.5},
    {2, 1.0, "non-maximized", 2.9602525505, 1.60, -0.60, 0.89, 12.5},
    {1, 0.5, "vacuum-channel", 0.0, 0.00, 1.02, 0.67, 9.0},
    {1, 1.0, "vacuum-channel", 0.0, 0.00, 1.19, 0.44, 13.5},
};

const RefCell kCzCells[] = {
    {1, 0.5, "maximized", 1.0 / 3.0, -0.55, -0.05, 1.55, 25.0},
    {1, 1.0, "maximized", 1.0 / 3.0, -0.55, 0.45, 2.56, 25.0},
    {1, 0.5, "non-maximized", 0.2, -0.80, -0.30, 1.62, 22.0},
    {1, 1.0, "non-maximized", 0.2, -0.80, 0.20, 2.66, 22.0},
    {2, 0.5, "maximized", 0.2, -0.80, -0.30, 1.62, 14.8},
    {2, 1.0, "maximized", 0.2, -0.80, 0.20, 2.66, 14.8},
    {2, 0.5, "non-maximized", 1.0 / 3.0, -0.55, -0.05, 1.55, 12.5},
    {2, 1.0, "non-maximized", 1.0 / 3.0, -0.55, 0.45, 2.56, 12.5},
};

// Reference values are rounded to two decimals, so a correctly reproduced
// value may sit up to half a final digit away before the tolerance applies.
bool ref_match(double computed, double reference, double tol) {
  return std::abs(computed - reference) <= tol + 0.005 + 1e-12;
}

json table_cell(const RefCell& cell, bool cz, double tol, double ptol, int& failures) {
  sfh_design des{};
  json out;
  out["n"] = cell.n;
  out["r"] = cell.r_label;
  out["column"] = cell.column;

  if (cell.a == 0.0) {
    // The reference dataset's vacuum-channel column tabulates the optimum
    // whose heralded-state exponent is e^{r_label} rather than e^{2 r_label},
    // i.e. the setup generating SF(1, r_label/2); regenerate accordingly.
    check(sfh_design_bs_vacuum_channel(cell.r_label / 2.0, &des), "tables: vacuum channel");
    out["note"] = "reference column label corresponds to heralded squeezing r/2";
    out["heralded_r"] = cell.r_label / 2.0;
  } else {
    out["a"] = cell.a;
    if (cz)
      check(sfh_design_cz_universal(cell.n, cell.r_label, cell.a, &des), "tables: cz");
    else
      check(sfh_design_bs_universal(cell.n, cell.r_label, cell.a, &des), "tables: bs");
  }

  json computed, reference, checks;
  computed["r1"] = des.r1;
  computed["r2"] = des.r2;
  computed[cz ? "g" : "t"] = des.t_or_g;
  computed["p_percent"] = 100.0 * des.probability;
  double db = 0.0;
  sfh_db_from_r(des.r1, &db);
  computed["r1_db"] = db;
  sfh_db_from_r(des.r2, &db);
  computed["r2_db"] = db;
  reference["r1"] = cell.ref_r1;
  reference["r2"] = cell.ref_r2;
  reference[cz ? "g" : "t"] = cell.ref_tg;
  reference["p_percent"] = cell.ref_p_percent;

  const bool ok_r1 = ref_match(des.r1, cell.ref_r1, tol);
  const bool ok_r2 = ref_match(des.r2, cell.ref_r2, tol);
  const bool ok_tg = ref_match(des.t_or_g, cell.ref_tg, tol);
  const bool ok_p = std::abs(100.0 * des.probability - cell.ref_p_percent) <= ptol + 1e-12;
  checks["r1"] = ok_r1 ? "pass" : "fail";
  checks["r2"] = ok_r2 ? "pass" : "fail";
  checks[cz ? "g" : "t"] = ok_tg ? "pass" : "fail";
  checks["p"] = ok_p ? "pass" : "fail";

  const bool pass = ok_r1 && ok_r2 && ok_tg && ok_p;
  if (!pass) ++failures;
  out["computed"] = computed;
  out["reference"] = reference;
  out["checks"] = checks;
  out["pass"] = pass;
  return out;
}

void print_tables_grid(const json& table, bool cz) {
  std::printf("%s setup\n", cz ? "CZ" : "BS");
  std::printf("  %-2s %-4s %-15s %-8s %-18s %-18s %-18s %-16s %s\n", "n", "r", "column", "a",
              "r1 (ref)", "r2 (ref)", cz ? "g (ref)" : "t (ref)", "P% (ref)", "status");
  for (const auto& cell : table["cells"]) {
    const json& c = cell["computed"];
    const json& f = cell["reference"];
    char a_buf[16];
    if (cell.contains("a"))
      std::snprintf(a_buf, sizeof(a_buf), "%.4g", cell["a"].get<double>());
    else
      std::snprintf(a_buf, sizeof(a_buf), "-");
    auto pair = [](double x, double ref) {
      char b[40];
      std::snprintf(b, sizeof(b), "%.4f (%.2f)", x, ref);
      return std::string(b);
    };
    char p_buf[40];
    std::snprintf(p_buf, sizeof(p_buf), "%.2f (%.1f)", c["p_percent"].get<double>(),
                  f["p_percent"].get<double>());
    const char* key = cz ? "g" : "t";
    std::printf("  %-2d %-4g %-15s %-8s %-18s %-18s %-18s %-16s %s%s\n", cell["n"].get<int>(),
                cell["r"].get<double>(), cell["column"].get<std::string>().c_str(), a_buf,
                pair(c["r1"].get<double>(), f["r1"].get<double>()).c_str(),
                pair(c["r2"].get<double>(), f["r2"].get<double>()).c_str(),
                pair(c[key].get<double>(), f[key].get<double>()).c_str(), p_buf,
                cell["pass"].get<bool>() ? "pass" : "FAIL",
                cell.contains("note") ? " *" : "");
  }
  if (table.contains("infeasible"))
    for (const auto& item : table["infeasible"])
      std::printf("  infeasible: %s\n", item.get<std::string>().c_str());
}

int run_tables(const Options& opt, double ptol) {
  const double tol = opt.tolerance > 0.0 ? opt.tolerance : 0.01;
  json report;
  report["command"] = "tables";
  json cfg;
  cfg["value_tolerance"] = tol;
  cfg["probability_tolerance_pp"] = ptol;
  config_common(cfg, opt);
  report["config"] = cfg;

  int failures = 0;
  json bs = json::array();
  for (const RefCell& cell : kBsCells) bs.push_back(table_cell(cell, false, tol, ptol, failures));
  json bs_table;
  bs_table["setup"] = "bs";
  bs_table["cells"] = bs;
  bs_table["infeasible"] = json::array(
      {"n=2 vacuum-channel (only the first SF state can be generated with vacuum in one channel)"});

  json cz = json::array();
  for (const RefCell& cell : kCzCells) cz.push_back(table_cell(cell, true, tol, ptol, failures));
  json cz_table;
  cz_table["setup"] = "cz";
  cz_table["cells"] = cz;

  json res;
  res["table_bs"] = bs_table;
  res["table_cz"] = cz_table;
  res["cells_total"] = static_cast<int>(bs.size() + cz.size());
  res["cells_failed"] = failures;
  report["results"] = res;

  if (opt.format == "table") {
    std::cout << "command: tables\nconfig:\n";
    print_table_section(cfg, 2);
    print_tables_grid(bs_table, false);
    print_tables_grid(cz_table, true);
    std::printf("cells: %d, failed: %d", static_cast<int>(bs.size() + cz.size()), failures);
    std::printf("  (* vacuum-channel reference labels correspond to heralded squeezing r/2)\n");
  } else {
    emit(report, opt);
  }
  return 0;  // failures are reported, not signalled through the exit code
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded squeezed-Fock-state calculator (library front end)"};
  app.require_subcommand(1);

  Options opt;

  // validate
  TmegArgs v_args;
  CLI::App* validate = app.add_subcommand("validate", "Check TMEG normalizability conditions");
  add_tmeg(validate, v_args);
  add_common(validate, opt);

  // herald
  TmegArgs h_args;
  int h_n = 1, h_samples = 0;
  double h_xmin = -5.0, h_xmax = 5.0;
  CLI::App* herald = app.add_subcommand("herald", "Conditional state after an n-photon detection");
  add_tmeg(herald, h_args);
  herald->add_option("--n", h_n, "Detected photon number")->required();
  herald->add_option("--samples", h_samples, "Emit N wavefunction samples on a uniform grid");
  herald->add_option("--xmin", h_xmin, "Sample grid start")->capture_default_str();
  herald->add_option("--xmax", h_xmax, "Sample grid end")->capture_default_str();
  add_common(herald, opt);

  // prob
  TmegArgs p_args;
  bool p_universal = false;
  int p_n = 1;
  CLI::App* prob = app.add_subcommand("prob", "Closed-form herald probability");
  prob->add_option("--a", p_args.a, "TMEG coefficient a (or universal-regime a)");
  prob->add_option("--b", p_args.b, "TMEG coefficient b");
  prob->add_option("--d", p_args.d, "TMEG coefficient d");
  prob->add_flag("--universal", p_universal, "Universal-regime probability from a alone");
  prob->add_option("--n", p_n, "Detected photon number")->required();
  add_common(prob, opt);

  // classify
  TmegArgs c_args;
  int c_n = 1;
  CLI::App* classify = app.add_subcommand("classify", "Classify the heralded state");
  add_tmeg(classify, c_args);
  classify->add_option("--n", c_n, "Detected photon number")->required();
  add_common(classify, opt);

  // design
  std::string d_setup = "bs";
  int d_n = 1;
  double d_r = 0.5, d_a = 0.0, d_gen_a = 0.0, d_gen_d = 0.0;
  bool d_max = false, d_vacuum = false, d_general = false, d_db = false;
  CLI::App* design = app.add_subcommand("design", "Inverse design of a BS or CZ setup");
  design->add_option("--setup", d_setup, "Setup kind: bs or cz")
      ->check(CLI::IsMember({"bs", "cz"}))
      ->required();
  design->add_option("--n", d_n, "Target photon number")->capture_default_str();
  design->add_option("--r", d_r, "Target squeezing parameter")->required();
  design->add_flag("--db", d_db, "Interpret --r as dB (10 log10 e^{2r})");
  design->add_flag("--maximize", d_max, "Use the probability-maximizing a");
  design->add_option("--a", d_a, "Universal-regime a (BS: a>1, CZ: 0<a<1)");
  design->add_flag("--vacuum-channel", d_vacuum, "Vacuum in input 1 (BS, n=1 only)");
  design->add_flag("--general", d_general, "General first-SF design from (a, d)");
  design->add_option("--general-a", d_gen_a, "a for the general first-SF family");
  design->add_option("--general-d", d_gen_d, "d for the general first-SF family");
  add_common(design, opt);

  // tables
  double t_ptol = 0.3;
  CLI::App* tables = app.add_subcommand("tables", "Regenerate the reference parameter tables");
  tables->add_option("--p-tolerance", t_ptol, "Probability tolerance in percentage points")
      ->capture_default_str();
  add_common(tables, opt);

  // sweep
  std::string s_var = "a", s_fixed_a = "3";
  double s_lo = 1.1, s_hi = 10.0, s_fixed_r = 0.0;
  int s_steps = 50, s_n = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep a or r in the universal regime");
  sweep->add_option("--var", s_var, "Swept variable: a or r")
      ->check(CLI::IsMember({"a", "r"}))
      ->required();
  sweep->add_option("--min", s_lo, "Interval start")->required();
  sweep->add_option("--max", s_hi, "Interval end")->required();
  sweep->add_option("--steps", s_steps, "Grid points")->capture_default_str();
  sweep->add_option("--n", s_n, "Detected photon number")->capture_default_str();
  sweep->add_option("--r", s_fixed_r, "Fixed squeezing when sweeping a")->capture_default_str();
  sweep->add_option("--a", s_fixed_a, "Fixed a when sweeping r")->capture_default_str();
  add_common(sweep, opt);

  // sample
  std::string m_state = "sf";
  TmegArgs m_args;
  int m_n = 0, m_points = 101;
  double m_r = 0.0, m_rmag = 0.0, m_phi = 0.0, m_xmin = -5.0, m_xmax = 5.0;
  bool m_db = false;
  CLI::App* sample = app.add_subcommand("sample", "Sample a wavefunction on a uniform grid");
  sample->add_option("--state", m_state, "State family: fock, sf, rsf or heralded")
      ->check(CLI::IsMember({"fock", "sf", "rsf", "heralded"}))
      ->required();
  sample->add_option("--n", m_n, "Photon number")->capture_default_str();
  sample->add_option("--r", m_r, "Squeezing (sf)")->capture_default_str();
  sample->add_flag("--db", m_db, "Interpret --r as dB");
  sample->add_option("--r-mag", m_rmag, "Squeezing magnitude |r| (rsf)");
  sample->add_option("--phi", m_phi, "Squeezing phase phi (rsf)");
  sample->add_option("--a", m_args.a, "TMEG coefficient a (heralded)");
  sample->add_option("--b", m_args.b, "TMEG coefficient b (heralded)");
  sample->add_option("--d", m_args.d, "TMEG coefficient d (heralded)");
  sample->add_option("--xmin", m_xmin, "Grid start")->capture_default_str();
  sample->add_option("--xmax", m_xmax, "Grid end")->capture_default_str();
  sample->add_option("--points", m_points, "Grid points")->capture_default_str();
  add_common(sample, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) {
      v_args.parse();
      return run_validate(v_args, opt);
    }
    if (app.got_subcommand(herald)) {
      h_args.parse();
      return run_herald(h_args, h_n, h_samples, h_xmin, h_xmax, opt);
    }
    if (app.got_subcommand(prob)) {
      if (p_universal) {
        if (p_args.a.empty()) {
          std::cerr << "error: prob: --universal requires --a\n";
          return 2;
        }
      } else {
        if (p_args.a.empty() || p_args.b.empty() || p_args.d.empty()) {
          std::cerr << "error: prob: need --a --b --d (or --universal with --a)\n";
          return 2;
        }
        p_args.parse();
      }
      return run_prob(p_args, p_universal, p_n, opt);
    }
    if (app.got_subcommand(classify)) {
      c_args.parse();
      return run_classify(c_args, c_n, opt);
    }
    if (app.got_subcommand(design)) {
      if (d_db) d_r /= kDbPerR;
      if (!d_max && d_a <= 0.0 && !d_vacuum && !d_general) {
        std::cerr << "error: design: choose --maximize, --a, --vacuum-channel or --general\n";
        return 2;
      }
      return run_design(d_setup, d_n, d_r, d_max, d_a, d_vacuum, d_general, d_gen_a, d_gen_d,
                        opt);
    }
    if (app.got_subcommand(tables)) return run_tables(opt, t_ptol);
    if (app.got_subcommand(sweep))
      return run_sweep(s_var, s_lo, s_hi, s_steps, s_n, s_fixed_r, s_fixed_a, opt);
    if (app.got_subcommand(sample)) {
      if (m_db) m_r /= kDbPerR;
      const bool have_tmeg = !m_args.a.empty() && !m_args.b.empty() && !m_args.d.empty();
      if (have_tmeg) m_args.parse();
      return run_sample(m_state, m_n, m_r, m_rmag, m_phi, m_args, have_tmeg, m_xmin, m_xmax,
                        m_points, opt);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
