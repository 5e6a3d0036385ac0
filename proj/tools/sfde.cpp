#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfde/experiment.hpp"
#include "sfde/grunwald.hpp"
#include "sfde/symbols.hpp"

using namespace sfde;

namespace {

struct Overrides {
  std::string config_path;
  std::string problem;
  std::vector<double> alpha;
  std::vector<double> alpha2;
  std::vector<Index> n;
  std::vector<Index> n2;
  std::vector<Index> m;
  double theta = 0.0;
  std::vector<std::string> precond;
  double tol = 0.0;
  std::string out;
  std::vector<CLI::Option*> given;  // theta, tol
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment file");
  cmd->add_option("--problem", o.problem, "const1, xsq_plus1, xsq, const1_2d, radial_plus1_2d, radial_2d");
  cmd->add_option("--alpha", o.alpha, "fractional order(s)")->delimiter(',');
  cmd->add_option("--alpha2", o.alpha2, "second-direction order(s), 2D only")->delimiter(',');
  cmd->add_option("--n", o.n, "space size(s), N1 in 2D")->delimiter(',');
  cmd->add_option("--n2", o.n2, "second-direction size(s), 2D only")->delimiter(',');
  cmd->add_option("--m", o.m, "time step count(s)")->delimiter(',');
  o.given.push_back(cmd->add_option("--theta", o.theta, "theta-method parameter in (0,1]"));
  cmd->add_option("--precond", o.precond, "none, strang, first_column")->delimiter(',');
  o.given.push_back(cmd->add_option("--tol", o.tol, "GMRES relative tolerance"));
  cmd->add_option("--out", o.out, "output CSV path (default stdout)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : config_from_json_text(read_file(o.config_path));
  if (!o.problem.empty()) c.problem = o.problem;
  if (!o.alpha.empty()) c.alpha = o.alpha;
  if (!o.alpha2.empty()) c.alpha2 = o.alpha2;
  if (!o.n.empty()) c.n = o.n;
  if (!o.n2.empty()) c.n2 = o.n2;
  if (!o.m.empty()) c.m = o.m;
  if (o.given[0]->count() > 0) c.theta = o.theta;
  if (o.given[1]->count() > 0) c.tol = o.tol;
  if (!o.precond.empty()) {
    c.precond.clear();
    for (const auto& p : o.precond) c.precond.push_back(parse_preconditioner(p));
  }
  if (!o.out.empty()) c.out = o.out;
  try {
    c.dense_cap = dense_cap_from_env();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  validate(c);
  return c;
}

// Writes to the configured path, or stdout.
template <typename Fn>
bool emit(const ExperimentConfig& c, Fn&& fn) {
  if (c.out.empty()) {
    const bool ok = fn(std::cout);
    std::cout.flush();
    return ok;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output '" + c.out + "'");
  return fn(f);
}

bool write_coeffs(double alpha, Index count, std::ostream& out) {
  const auto g = coefficients(FractionalOrder(alpha), count);
  out << "k,g_k\n";
  for (Index k = 0; k < count; ++k) out << k << ',' << format_real(g[k]) << '\n';
  return true;
}

struct SymbolArgs {
  std::string kind = "falpha";
  Index points = 64;
  Index space_points = 1;
  Index time_points = 0;
};

bool write_symbol(const ExperimentConfig& c, const SymbolArgs& s, std::ostream& out) {
  const double alpha = c.alpha.front(), theta = c.theta;
  const double alpha2 = c.alpha2.empty() ? alpha : c.alpha2.front();
  const Index n = c.n.front(), m = c.m.front();
  const Index n2 = c.n2.empty() ? n : c.n2.front();
  const Index tp = s.time_points > 0 ? s.time_points : m;
  if (s.points < 1 || s.space_points < 1 || tp < 1) throw ConfigError("symbol sample counts must be positive");

  std::vector<GridAxis> axes;
  std::string header;
  SymbolFunction fn;
  const bool two_d = s.kind == "st2d" || s.kind == "ratio2d";
  if ((s.kind == "st1d" || s.kind == "ratio1d") && c.dimension() != 1)
    throw ConfigError("symbol kind " + s.kind + " needs a 1D problem");
  if (two_d && c.dimension() != 2) throw ConfigError("symbol kind " + s.kind + " needs a 2D problem");

  if (s.kind == "falpha") {
    axes = {{AxisKind::frequency, s.points}};
    header = "xi";
    fn = [=](std::span<const double> v) { return f_alpha(alpha, v[0]); };
  } else if (s.kind == "qtheta") {
    axes = {{AxisKind::frequency, s.points}};
    header = "xi";
    fn = [=](std::span<const double> v) { return q_theta(theta, v[0]); };
  } else if (s.kind == "st1d" || s.kind == "ratio1d") {
    axes = {{AxisKind::space, s.space_points}, {AxisKind::frequency, s.points}, {AxisKind::frequency, tp}};
    header = "x,xi1,xi3";
    const auto problem = make_problem_1d(c.problem, alpha, theta);
    const double gamma = discretize(problem, n, m).gamma;
    const double d_hat = mean_coefficient(sample_1d(problem.a, n));
    const Coefficient1D a = problem.a;
    if (s.kind == "st1d")
      fn = [=](std::span<const double> v) {
        return spacetime_symbol_1d(gamma, a(v[0]), alpha, theta, {v[0], v[1], v[2]});
      };
    else
      fn = [=](std::span<const double> v) {
        return precond_ratio_symbol_1d(gamma, a(v[0]), d_hat, alpha, theta, {v[0], v[1], v[2]});
      };
  } else if (two_d) {
    axes = {{AxisKind::space, s.space_points}, {AxisKind::space, s.space_points},
            {AxisKind::frequency, s.points},   {AxisKind::frequency, s.points},
            {AxisKind::frequency, tp}};
    header = "x1,x2,xi1,xi2,xi3";
    const auto problem = make_problem_2d(c.problem, alpha, alpha2, theta);
    const auto d = discretize(problem, n, n2, m);
    const double d_hat = mean_coefficient(sample_2d(problem.a, n, n2));
    const Coefficient2D a = problem.a;
    if (s.kind == "st2d")
      fn = [=](std::span<const double> v) {
        return spacetime_symbol_2d(d.gamma1, d.gamma2, a(v[0], v[1]), alpha, alpha2, theta,
                                   {v[0], v[1], v[2], v[3], v[4]});
      };
    else
      fn = [=](std::span<const double> v) {
        return precond_ratio_symbol_2d(d.gamma1, d.gamma2, a(v[0], v[1]), d_hat, alpha, alpha2,
                                       theta, {v[0], v[1], v[2], v[3], v[4]});
      };
  } else {
    throw ConfigError("unknown symbol kind '" + s.kind +
                      "' (expected falpha, qtheta, st1d, ratio1d, st2d or ratio2d)");
  }

  // pole samples of the time symbol are left out
  const SymbolFunction guarded = [&](std::span<const double> v) {
    try {
      return fn(v);
    } catch (const SymbolPoleError&) {
      return Complex(std::nan(""), 0.0);
    }
  };
  const SymbolCloud cloud = sample_symbol_cloud(guarded, axes);
  out << header << ",re,im\n";
  for (Index i = 0; i < cloud.size(); ++i) {
    const Complex z = cloud.values[i];
    if (std::isnan(z.real())) continue;
    for (Index k = 0; k < cloud.coordinates.cols(); ++k) out << format_real(cloud.coordinates(i, k)) << ',';
    out << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-at-once solver and experiment harness for space-fractional diffusion"};
  app.require_subcommand(1);

  double coeff_alpha = 1.5;
  Index coeff_count = 16;
  std::string coeff_out;
  auto* coeffs = app.add_subcommand("coeffs", "Grunwald coefficients g_0..g_{count-1}");
  coeffs->add_option("--alpha", coeff_alpha, "order in (1,2)");
  coeffs->add_option("--count", coeff_count, "number of coefficients (>= 2)");
  coeffs->add_option("--out", coeff_out, "output CSV path");

  Overrides sym_o, spec_o, cond_o, svd_o, solve_o, table_o;
  SymbolArgs sym_args;
  auto* symbol = app.add_subcommand("symbol", "sampled symbols");
  add_common(symbol, sym_o);
  symbol->add_option("--kind", sym_args.kind, "falpha, qtheta, st1d, ratio1d, st2d, ratio2d");
  symbol->add_option("--points", sym_args.points, "samples per frequency axis");
  symbol->add_option("--space-points", sym_args.space_points, "samples per space axis");
  symbol->add_option("--time-points", sym_args.time_points, "samples on the time frequency axis (default M)");

  SpectrumOptions spec_opts;
  auto* spectrum = app.add_subcommand("spectrum", "dense eigenvalues and optional symbol cloud");
  add_common(spectrum, spec_o);
  spectrum->add_flag("--preconditioned", spec_opts.preconditioned, "eigenvalues of P^{-1} A");
  spectrum->add_flag("--space-only", spec_opts.space_only, "eigenvalues of D(a) Gbar");
  spectrum->add_option("--symbol-points", spec_opts.symbol_points, "frequency samples per axis (0: none)");
  spectrum->add_option("--symbol-space-points", spec_opts.symbol_space_points, "space samples per axis");
  spectrum->add_option("--symbol-time-points", spec_opts.symbol_time_points, "time frequency samples");

  auto* cond = app.add_subcommand("cond", "2-norm condition numbers of A and P^{-1} A");
  add_common(cond, cond_o);
  auto* svdist = app.add_subcommand("svdist", "singular values of D(a) Gbar against its symbol");
  add_common(svdist, svd_o);
  auto* solve = app.add_subcommand("solve", "one solve, solution at the final time");
  add_common(solve, solve_o);

  bool timing = false;
  Index repeats = 0;
  auto* table = app.add_subcommand("table", "GMRES iteration table");
  add_common(table, table_o);
  table->add_flag("--timing", timing, "add a median wall_time column");
  table->add_option("--repeats", repeats, "solves per timing median");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    bool ok = true;
    if (coeffs->parsed()) {
      if (coeff_count < 2) throw ConfigError("count must be at least 2");
      if (!(coeff_alpha > 1.0 && coeff_alpha < 2.0)) throw ConfigError("alpha must lie in (1,2)");
      ExperimentConfig c;
      c.out = coeff_out;
      ok = emit(c, [&](std::ostream& o) { return write_coeffs(coeff_alpha, coeff_count, o); });
    } else if (symbol->parsed()) {
      const auto c = resolve(sym_o);
      ok = emit(c, [&](std::ostream& o) { return write_symbol(c, sym_args, o); });
    } else if (spectrum->parsed()) {
      const auto c = resolve(spec_o);
      ok = emit(c, [&](std::ostream& o) { return run_spectrum(c, spec_opts, o); });
    } else if (cond->parsed()) {
      const auto c = resolve(cond_o);
      ok = emit(c, [&](std::ostream& o) { return run_cond(c, o); });
    } else if (svdist->parsed()) {
      const auto c = resolve(svd_o);
      ok = emit(c, [&](std::ostream& o) { return run_svdist(c, o); });
    } else if (solve->parsed()) {
      const auto c = resolve(solve_o);
      ok = emit(c, [&](std::ostream& o) { return run_solve(c, o); });
    } else if (table->parsed()) {
      auto c = resolve(table_o);
      if (timing) c.timing = true;
      if (repeats != 0) c.repeats = repeats;
      validate(c);
      ok = emit(c, [&](std::ostream& o) { return run_table(c, o); });
    }
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
