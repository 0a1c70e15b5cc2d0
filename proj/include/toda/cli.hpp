#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toda/gz_representation.hpp"
#include "toda/harish_chandra.hpp"
#include "toda/mellin_barnes.hpp"
#include "toda/report.hpp"
#include "toda/separation.hpp"
#include "toda/toda_oracle.hpp"
#include "toda/weyl_algebra.hpp"

namespace toda::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// TODA_LOG: 0/quiet (default), 1/info, 2/debug. Messages go to the error stream.
class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    if (const char* v = std::getenv("TODA_LOG")) {
      const std::string s = v;
      if (s == "1" || s == "info") level_ = 1;
      else if (s == "2" || s == "debug") level_ = 2;
    }
  }
  void info(const std::string& m) const {
    if (level_ >= 1) err_ << "[toda] " << m << "\n";
  }
  void debug(const std::string& m) const {
    if (level_ >= 2) err_ << "[toda:debug] " << m << "\n";
  }

 private:
  std::ostream& err_;
  int level_ = 0;
};

struct RunConfig {
  int n = 2;
  std::uint64_t seed = 42;
  double tol = 1e-6;
  std::string format = "csv";
  int trials = 20;
  std::vector<double> alpha, lambda, lambda_imag, x, character;
  std::vector<int> weyl;
  std::string method = "direct";
  std::string grid;
  std::string out;
  int axis = 1;
  double from = 0.0, to = 1.0;
  int steps = 10;
  bool refine = false;
  double quad_tol = 1e-11;
};

namespace detail {

inline void require_size(const std::vector<double>& v, int n, const char* flag) {
  if (int(v.size()) != n) throw UsageError(std::string(flag) + " needs exactly N comma-separated values");
}

inline std::string complex_json(cplx v) {
  return "{\"re\":" + json_number(v.real()) + ",\"im\":" + json_number(v.imag()) + "}";
}

inline std::string vector_json(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + json_number(v[k]);
  return s + "]";
}

// "c:h:m,c:h:m,..." per axis: center, step, interior node count
inline std::vector<AxisSpec> parse_grid(const std::string& text, int n) {
  std::vector<AxisSpec> axes;
  if (text.empty()) {
    const double centers[3] = {1.0, 0.0, -1.0};
    for (int k = 0; k < n; ++k) axes.push_back({n == 2 ? centers[2 * k] * 0.5 : centers[k], 0.1, 24});
    return axes;
  }
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    AxisSpec a;
    char c1 = 0, c2 = 0;
    std::istringstream it(item);
    if (!(it >> a.center >> c1 >> a.h >> c2 >> a.interior) || c1 != ':' || c2 != ':' || !(a.h > 0) || a.interior < 1)
      throw UsageError("--grid expects center:step:count per axis, comma separated");
    axes.push_back(a);
  }
  if (int(axes.size()) != n) throw UsageError("--grid needs one axis spec per coordinate");
  return axes;
}

inline void emit_rows(const RunConfig& cfg, const std::vector<GridRow>& rows, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
    os = &file;
  }
  if (cfg.format == "json") *os << grid_json(rows) << "\n";
  else write_csv(*os, rows);
}

inline int run_eval(const RunConfig& cfg, Kernel which, std::ostream& out) {
  const auto& params = which == Kernel::whittaker ? cfg.alpha : cfg.lambda;
  require_size(params, cfg.n, which == Kernel::whittaker ? "--alpha" : "--lambda");
  require_size(cfg.x, cfg.n, "--x");
  QuadratureResult q;
  if (which == Kernel::spherical) q = spherical_eval(cfg.n, params, cfg.x, cfg.tol);
  else if (cfg.method == "recursive") q = whittaker_recursive(cfg.n, params, cfg.x, cfg.tol);
  else q = whittaker_eval(cfg.n, params, cfg.x, cfg.tol);
  emit_rows(cfg, {{cfg.x, q.value, q.error_estimate}}, out);
  return kOk;
}

inline int run_grid(const RunConfig& cfg, Kernel which, std::ostream& out) {
  GridRequest r;
  r.which = which;
  r.N = cfg.n;
  r.params = which == Kernel::whittaker ? cfg.alpha : cfg.lambda;
  require_size(r.params, cfg.n, which == Kernel::whittaker ? "--alpha" : "--lambda");
  r.base = cfg.x.empty() ? std::vector<double>(cfg.n, 0.0) : cfg.x;
  require_size(r.base, cfg.n, "--x");
  r.axis = cfg.axis;
  if (r.axis < 1 || r.axis > cfg.n) throw UsageError("--axis must be between 1 and N");
  r.from = cfg.from;
  r.to = cfg.to;
  r.steps = cfg.steps;
  if (r.steps < 1) throw UsageError("--steps must be positive");
  r.tol = cfg.tol;
  r.recursive = cfg.method == "recursive";
  emit_rows(cfg, grid_scan(r), out);
  return kOk;
}

inline int run_cfunction(const RunConfig& cfg, std::ostream& out) {
  require_size(cfg.lambda, cfg.n, "--lambda");
  std::vector<cplx> lam(cfg.n);
  if (!cfg.lambda_imag.empty()) require_size(cfg.lambda_imag, cfg.n, "--lambda-imag");
  for (int k = 0; k < cfg.n; ++k) lam[k] = cplx(cfg.lambda[k], cfg.lambda_imag.empty() ? 0.0 : cfg.lambda_imag[k]);
  Permutation s = longest_element(cfg.n);
  if (!cfg.weyl.empty()) {
    if (int(cfg.weyl.size()) != cfg.n) throw UsageError("--weyl needs a permutation of 1..N");
    s.clear();
    for (int v : cfg.weyl) s.push_back(v - 1);
    try {
      validate_permutation(s);
    } catch (const std::invalid_argument&) {
      throw UsageError("--weyl needs a permutation of 1..N");
    }
  }
  Character f = Character::unit(cfg.n);
  if (!cfg.character.empty()) {
    if (int(cfg.character.size()) != cfg.n - 1) throw UsageError("--character needs N-1 values");
    f.c = cfg.character;
  }
  const auto sm = scattering_matrices(lam, f);
  out << "{\"n\":" << cfg.n << ",\"weyl\":[";
  for (int k = 0; k < cfg.n; ++k) out << (k ? "," : "") << s[k] + 1;
  out << "],\"c_s\":" << complex_json(c_s(lam, s)) << ",\"c\":" << complex_json(c_function(lam))
      << ",\"M\":" << complex_json(m_function(s, lam, f)) << ",\"S\":" << complex_json(sm.S)
      << ",\"S0\":" << complex_json(sm.S0) << ",\"b\":" << complex_json(b_denominator(lam))
      << ",\"plancherel\":" << json_number(plancherel_density(lam)) << "}\n";
  return kOk;
}

inline int run_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out) {
  VerificationReport rep;
  if (cfg.n < 1) throw UsageError("--n must be positive");
  if (suite == "qism") {
    if (cfg.n > 5) throw UsageError("verify qism supports N <= 5");
    rep = verify_qism(cfg.n);
  } else if (suite == "separation") {
    rep = verify_separation(cfg.n, cfg.trials, cfg.seed);
  } else if (suite == "gz") {
    rep = verify_gz(cfg.n, cfg.trials, cfg.seed, cfg.tol);
  } else if (suite == "hc") {
    if (cfg.n < 2) throw UsageError("verify hc needs N >= 2");
    rep = verify_harish_chandra(cfg.n, std::max(cfg.trials, 1), cfg.seed);
  } else if (suite == "eigen") {
    if (cfg.n < 2 || cfg.n > 3) throw UsageError("verify eigen supports N = 2, 3");
    require_size(cfg.alpha, cfg.n, "--alpha");
    const auto axes = parse_grid(cfg.grid, cfg.n);
    rep = check_eigen(cfg.n, cfg.alpha, axes, cfg.tol, cfg.quad_tol);
    if (cfg.refine) {
      const auto [coarse, fine] = eigen_refinement(cfg.n, cfg.alpha, axes, cfg.quad_tol);
      const double ratio = coarse.residual / fine.residual;
      rep.add("residual refinement ratio in [3.5, 4.5]", ratio >= 3.5 && ratio <= 4.5, std::abs(ratio - 4.0), 0.5,
              "ratio=" + format_double(ratio));
    }
  } else {
    throw UsageError("unknown verify suite " + suite);
  }
  out << rep.to_json() << "\n";
  return rep.passed() ? kOk : kFailure;
}

}  // namespace detail

inline int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err) {
  const Log log(err);
  RunConfig cfg;
  CLI::App app{"Quantum open Toda lattice: Mellin-Barnes wave functions, exact QISM checks, Gelfand-Zetlin "
               "difference operators and Harish-Chandra functions",
               "toda"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for all subcommands");

  auto add_common = [&](CLI::App* s) {
    s->add_option("--n", cfg.n, "Rank N (number of particles)")->required();
    s->add_option("--tol", cfg.tol, "Tolerance (quadrature target or residual threshold)")->capture_default_str();
  };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    s->add_option("--out", cfg.out, "Write output to this file instead of stdout");
  };
  auto add_grid_axis = [&](CLI::App* s) {
    s->add_option("--axis", cfg.axis, "Coordinate index to scan (1-based)")->capture_default_str();
    s->add_option("--from", cfg.from, "Scan start")->capture_default_str();
    s->add_option("--to", cfg.to, "Scan end")->capture_default_str();
    s->add_option("--steps", cfg.steps, "Number of intervals")->capture_default_str();
  };

  auto* wh = app.add_subcommand("whittaker", "Open Toda wave function from the iterated Mellin-Barnes integral");
  wh->require_subcommand(1);
  auto* wh_eval = wh->add_subcommand("eval", "Evaluate psi_alpha(x) at one point (N <= 3)");
  auto* wh_grid = wh->add_subcommand("grid", "Scan psi_alpha along one coordinate axis");
  for (auto* s : {wh_eval, wh_grid}) {
    add_common(s);
    add_format(s);
    s->add_option("--alpha", cfg.alpha, "Spectral parameters a1,..,aN")->delimiter(',')->required();
    s->add_option("--method", cfg.method, "direct: triangular-array integral; recursive: level-by-level integral")
        ->check(CLI::IsMember({"direct", "recursive"}))
        ->capture_default_str();
  }
  wh_eval->add_option("--x", cfg.x, "Point x1,..,xN")->delimiter(',')->required();
  wh_grid->add_option("--x", cfg.x, "Base point (default 0)")->delimiter(',');
  add_grid_axis(wh_grid);

  auto* sp = app.add_subcommand("spherical", "Spherical function on the diagonal subgroup (real-contour integral)");
  sp->require_subcommand(1);
  auto* sp_eval = sp->add_subcommand("eval", "Evaluate phi_lambda(x) at one point (N <= 3)");
  auto* sp_grid = sp->add_subcommand("grid", "Scan phi_lambda along one coordinate axis");
  for (auto* s : {sp_eval, sp_grid}) {
    add_common(s);
    add_format(s);
    s->add_option("--lambda", cfg.lambda, "Spectral parameters l1,..,lN (pairwise distinct)")->delimiter(',')->required();
  }
  sp_eval->add_option("--x", cfg.x, "Point x1,..,xN")->delimiter(',')->required();
  sp_grid->add_option("--x", cfg.x, "Base point (default 0)")->delimiter(',');
  add_grid_axis(sp_grid);

  auto* cf = app.add_subcommand(
      "cfunction", "Gindikin-Karpelevich c-functions, M-function cocycle, scattering matrices, b(lambda), Plancherel "
                   "density 1/|c|^2; JSON output");
  cf->add_option("--n", cfg.n, "Rank N")->required();
  cf->add_option("--lambda", cfg.lambda, "Real parts l1,..,lN")->delimiter(',')->required();
  cf->add_option("--lambda-imag", cfg.lambda_imag, "Imaginary parts (default 0)")->delimiter(',');
  cf->add_option("--weyl", cfg.weyl, "Weyl element as a permutation of 1..N (default longest)")->delimiter(',');
  cf->add_option("--character", cfg.character, "f(e_alpha) per simple root (default all 1)")->delimiter(',');

  auto* vf = app.add_subcommand("verify", "Verification suites; each prints a JSON report");
  vf->require_subcommand(1);
  struct Suite {
    const char* name;
    const char* help;
  };
  const Suite suites[] = {
      {"qism", "Exact Weyl-algebra checks: RLL relation with the rational R-matrix (local and global), commuting "
               "transfer matrices and integrals of motion, A-C exchange relation, recursion for A_N and C_N"},
      {"separation", "Separated wave function difference equation, measure difference equations, Lagrange "
                     "interpolation identity (exact rational arithmetic)"},
      {"gz", "Gelfand-Zetlin difference operators: gl(N) commutation relations and Serre relations (randomized exact "
             "identity testing), Whittaker and spherical vector equations, GZ measure difference equation"},
      {"eigen", "Finite-difference residual of H = -1/2 Delta + sum exp(x_{k+1}-x_k) on the Mellin-Barnes wave "
                "function, E = 1/2 sum alpha^2"},
      {"hc", "Harish-Chandra suite: Gindikin-Karpelevich multiplicativity, M-function cocycle, reduced-word "
             "independence, Plancherel Weyl invariance, normalizer M(s_a)b(l)/b(s_a l) constancy"},
  };
  std::string chosen;
  for (const auto& s : suites) {
    auto* c = vf->add_subcommand(s.name, s.help);
    c->add_option("--n", cfg.n, "Rank N")->required();
    c->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    c->add_option("--trials", cfg.trials, "Random samples per relation")->capture_default_str();
    c->add_option("--tol", cfg.tol, "Residual threshold (gz default 1e-9, eigen default 1e-3)");
    if (std::string(s.name) == "eigen") {
      c->add_option("--alpha", cfg.alpha, "Spectral parameters")->delimiter(',')->required();
      c->add_option("--grid", cfg.grid, "Axis specs center:step:count,... (interior nodes per axis)");
      c->add_flag("--refine", cfg.refine, "Also check the residual ratio against a grid with twice the step");
      c->add_option("--quad-tol", cfg.quad_tol, "Quadrature tolerance for the wave function")->capture_default_str();
    }
    c->callback([&chosen, name = std::string(s.name)] { chosen = name; });
  }

  auto* schema = app.add_subcommand("schema", "Print the JSON schema of verification reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    int rc = kOk;
    if (*schema) {
      out << report_schema() << "\n";
    } else if (*vf) {
      auto* sub = vf->get_subcommands().front();
      if (sub->count("--tol") == 0) cfg.tol = chosen == "eigen" ? 1e-3 : chosen == "gz" ? 1e-9 : cfg.tol;
      log.info("verify " + chosen + " n=" + std::to_string(cfg.n) + " seed=" + std::to_string(cfg.seed));
      rc = detail::run_verify(chosen, cfg, out);
    } else if (*cf) {
      rc = detail::run_cfunction(cfg, out);
    } else if (*wh_eval) {
      rc = detail::run_eval(cfg, Kernel::whittaker, out);
    } else if (*wh_grid) {
      rc = detail::run_grid(cfg, Kernel::whittaker, out);
    } else if (*sp_eval) {
      rc = detail::run_eval(cfg, Kernel::spherical, out);
    } else if (*sp_grid) {
      rc = detail::run_grid(cfg, Kernel::spherical, out);
    }
    log.debug("elapsed " + format_double(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) +
              " s");
    return rc;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace toda::cli
