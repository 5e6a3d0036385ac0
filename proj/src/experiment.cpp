#include "sfde/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include <Eigen/LU>
#include <json.hpp>

namespace sfde {

std::string to_string(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::none: return "none";
    case PreconditionerKind::strang: return "strang";
    case PreconditionerKind::first_column: return "first_column";
  }
  return "unknown";
}

PreconditionerKind parse_preconditioner(const std::string& name) {
  if (name == "none") return PreconditionerKind::none;
  if (name == "strang") return PreconditionerKind::strang;
  if (name == "first_column") return PreconditionerKind::first_column;
  throw ConfigError("unknown preconditioner '" + name +
                    "' (expected none, strang or first_column)");
}

CirculantKind circulant_kind(PreconditionerKind kind) {
  if (kind == PreconditionerKind::none)
    throw std::invalid_argument("no circulant kind for an unpreconditioned run");
  return kind == PreconditionerKind::strang ? CirculantKind::strang : CirculantKind::first_column;
}

PointProblem::PointProblem(const std::string& problem, const GridPoint& point, double theta)
    : point_(point) {
  if (is_problem_2d(problem)) {
    if (point_.n2 == 0) point_.n2 = point_.n1;
    p2_ = make_problem_2d(problem, point_.alpha1, point_.alpha2, theta);
    const auto d = discretize(*p2_, point_.n1, point_.n2, point_.m);
    gamma1_ = d.gamma1;
    gamma2_ = d.gamma2;
    system_.emplace(build_system(*p2_, point_.n1, point_.n2, point_.m));
  } else {
    if (point_.n2 != 0) throw std::invalid_argument("1D problem given a second space size");
    point_.alpha2 = point_.alpha1;
    p1_ = make_problem_1d(problem, point_.alpha1, theta);
    gamma1_ = discretize(*p1_, point_.n1, point_.m).gamma;
    system_.emplace(build_system(*p1_, point_.n1, point_.m));
  }
}

Eigen::VectorXd PointProblem::rhs() const {
  return p1_ ? assemble_rhs_1d(*p1_, point_.n1, point_.m)
             : assemble_rhs_2d(*p2_, point_.n1, point_.n2, point_.m);
}

CirculantPreconditioner PointProblem::preconditioner(CirculantKind kind) const {
  const auto& sampling = system_->space().sampling();
  const double theta = system_->time().theta();
  if (p1_)
    return build_preconditioner_1d(kind, point_.alpha1, point_.n1, point_.m, theta, gamma1_,
                                   sampling);
  return build_preconditioner_2d(kind, point_.alpha1, point_.alpha2, point_.n1, point_.n2,
                                 point_.m, theta, gamma1_, gamma2_, sampling);
}

Eigen::VectorXd PointProblem::exact_final() const {
  if (p1_) {
    if (!p1_->exact) return {};
    const double dx = p1_->domain.length() / static_cast<double>(point_.n1 + 1);
    Eigen::VectorXd u(point_.n1);
    for (Index i = 0; i < point_.n1; ++i)
      u[i] = p1_->exact(p1_->domain.lo + static_cast<double>(i + 1) * dx, p1_->horizon);
    return u;
  }
  if (!p2_->exact) return {};
  const double dx1 = p2_->domain1.length() / static_cast<double>(point_.n1 + 1);
  const double dx2 = p2_->domain2.length() / static_cast<double>(point_.n2 + 1);
  Eigen::VectorXd u(point_.n1 * point_.n2);
  for (Index i1 = 0; i1 < point_.n1; ++i1)
    for (Index i2 = 0; i2 < point_.n2; ++i2)
      u[i1 * point_.n2 + i2] = p2_->exact(p2_->domain1.lo + static_cast<double>(i1 + 1) * dx1,
                                          p2_->domain2.lo + static_cast<double>(i2 + 1) * dx2,
                                          p2_->horizon);
  return u;
}

Eigen::VectorXd PointProblem::final_slice(const Eigen::VectorXd& u) const {
  const Index n = system_->space().order(), m = point_.m;
  Eigen::VectorXd last(n);
  for (Index s = 0; s < n; ++s) last[s] = u[s * m + m - 1];
  return last;
}

PointSolve solve_point(const PointProblem& problem, PreconditionerKind kind, double tol,
                       Index max_iters) {
  const auto& system = problem.system();
  const LinearOperator op = [&](const Eigen::VectorXd& v) { return system.apply(v); };
  LinearOperator pinv;
  std::optional<CirculantPreconditioner> p;
  if (kind != PreconditionerKind::none) {
    p.emplace(problem.preconditioner(circulant_kind(kind)));
    pinv = [&](const Eigen::VectorXd& v) { return p->apply_inverse(v); };
  }
  GmresOptions options;
  options.tol = tol;
  options.max_iters = max_iters;
  PointSolve out{gmres_solve(op, pinv, problem.rhs(), options), -1.0};
  const Eigen::VectorXd exact = problem.exact_final();
  if (exact.size() > 0)
    out.max_error = (problem.final_slice(out.result.solution) - exact).cwiseAbs().maxCoeff();
  return out;
}

Eigen::MatrixXd dense_preconditioned(const PointProblem& problem, PreconditionerKind kind,
                                     Index cap) {
  Eigen::MatrixXd a = assemble_dense(problem.system(), cap);
  if (kind == PreconditionerKind::none) return a;
  const auto p = problem.preconditioner(circulant_kind(kind));
  for (Index j = 0; j < a.cols(); ++j) a.col(j) = p.apply_inverse(a.col(j));
  return a;
}

SpectrumReport block_eigenvalues(const PointProblem& problem, PreconditionerKind kind,
                                 Index cap) {
  const auto& system = problem.system();
  const Index ns = system.space().order();
  const Index m = system.time().steps();
  std::optional<CirculantPreconditioner> p;
  if (kind != PreconditionerKind::none) p.emplace(problem.preconditioner(circulant_kind(kind)));
  // time level 0 of space node s sits at s * m
  Eigen::MatrixXd block(ns, ns);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(system.order());
  for (Index j = 0; j < ns; ++j) {
    e[j * m] = 1.0;
    Eigen::VectorXd y = system.apply(e);
    if (p) y = p->apply_inverse(y);
    e[j * m] = 0.0;
    for (Index i = 0; i < ns; ++i) block(i, j) = y[i * m];
  }
  const auto small = dense_eigenvalues(block, {}, cap);
  SpectrumReport out;
  out.order = ns * m;
  out.label = to_string(kind);
  out.eigenvalues.resize(out.order);
  for (Index i = 0; i < ns; ++i)
    out.eigenvalues.segment(i * m, m).setConstant(small.eigenvalues[i]);
  return out;
}

namespace {

double lanczos_condition(const AllAtOnceSolver& a, const CirculantPreconditioner* p) {
  using V = Eigen::VectorXd;
  ExtremeSingularValues ext;
  if (p == nullptr) {
    ext = extreme_singular_values(
        a.order(), [&](const V& v) -> V { return a.apply(v); },
        [&](const V& v) -> V { return a.apply_transpose(v); },
        [&](const V& v) -> V { return a.solve(v); },
        [&](const V& v) -> V { return a.solve_transpose(v); });
  } else {
    // B = P^{-1} A, B^{-1} = A^{-1} P
    ext = extreme_singular_values(
        a.order(), [&](const V& v) -> V { return p->apply_inverse(a.apply(v)); },
        [&](const V& v) -> V { return a.apply_transpose(p->apply_inverse_transpose(v)); },
        [&](const V& v) -> V { return a.solve(p->apply(v)); },
        [&](const V& v) -> V { return p->apply_transpose(a.solve_transpose(v)); });
  }
  if (!(ext.smallest > 1e-30 * ext.largest)) throw std::runtime_error("matrix is numerically singular");
  return ext.condition();
}

void check_order(Index n, Index cap) {
  if (n > cap)
    throw std::length_error("order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

ConditionRow condition_numbers_point(const PointProblem& problem, Index cap) {
  ConditionRow row;
  const Index n = problem.order();
  check_order(n, cap);
  if (n <= kDenseSvdLimit) {
    row.cond_a = condition_number_2(dense_preconditioned(problem, PreconditionerKind::none, cap), cap);
    row.cond_strang =
        condition_number_2(dense_preconditioned(problem, PreconditionerKind::strang, cap), cap);
    row.cond_first_column =
        condition_number_2(dense_preconditioned(problem, PreconditionerKind::first_column, cap), cap);
    return row;
  }
  const AllAtOnceSolver a(problem.system());
  row.cond_a = lanczos_condition(a, nullptr);
  const auto ps = problem.preconditioner(CirculantKind::strang);
  row.cond_strang = lanczos_condition(a, &ps);
  const auto pf = problem.preconditioner(CirculantKind::first_column);
  row.cond_first_column = lanczos_condition(a, &pf);
  return row;
}

double condition_number_point(const PointProblem& problem, PreconditionerKind kind, Index cap) {
  const Index n = problem.order();
  check_order(n, cap);
  if (n <= kDenseSvdLimit) return condition_number_2(dense_preconditioned(problem, kind, cap), cap);
  const AllAtOnceSolver a(problem.system());
  if (kind == PreconditionerKind::none) return lanczos_condition(a, nullptr);
  const auto p = problem.preconditioner(circulant_kind(kind));
  return lanczos_condition(a, &p);
}

// ---------------------------------------------------------------- config

namespace {

template <typename T>
std::vector<T> json_list(const nlohmann::json& v, const char* key) {
  try {
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type: " + e.what());
  }
}

template <typename T>
T json_scalar(const nlohmann::json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type: " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "problem") c.problem = json_scalar<std::string>(value, "problem");
    else if (key == "n") c.n = json_list<Index>(value, "n");
    else if (key == "n2") c.n2 = json_list<Index>(value, "n2");
    else if (key == "m") c.m = json_list<Index>(value, "m");
    else if (key == "alpha") c.alpha = json_list<double>(value, "alpha");
    else if (key == "alpha2") c.alpha2 = json_list<double>(value, "alpha2");
    else if (key == "theta") c.theta = json_scalar<double>(value, "theta");
    else if (key == "tol") c.tol = json_scalar<double>(value, "tol");
    else if (key == "out") c.out = json_scalar<std::string>(value, "out");
    else if (key == "max_iters") c.max_iters = json_scalar<Index>(value, "max_iters");
    else if (key == "repeats") c.repeats = json_scalar<Index>(value, "repeats");
    else if (key == "timing") c.timing = json_scalar<bool>(value, "timing");
    else if (key == "precond") {
      c.precond.clear();
      for (const auto& name : json_list<std::string>(value, "precond"))
        c.precond.push_back(parse_preconditioner(name));
    } else {
      throw ConfigError("unknown config key '" + key +
                        "' (known: problem, n, n2, m, alpha, alpha2, theta, precond, tol, out, "
                        "max_iters, repeats, timing)");
    }
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  const bool two_d = is_problem_2d(c.problem);
  if (!two_d) {
    bool known = false;
    for (const auto& n : problem_names_1d()) known = known || n == c.problem;
    if (!known)
      throw ConfigError("unknown problem '" + c.problem +
                        "' (expected const1, xsq_plus1, xsq, const1_2d, radial_plus1_2d or "
                        "radial_2d)");
    if (!c.n2.empty()) throw ConfigError("n2 applies only to 2D problems");
    if (!c.alpha2.empty()) throw ConfigError("alpha2 applies only to 2D problems");
  }
  if (c.theta == 0.0)
    throw ConfigError("theta = 0 is not supported: H_theta is singular for the all-at-once form");
  if (!(c.theta > 0.0 && c.theta <= 1.0))
    throw ConfigError("theta must lie in (0,1], got " + format_real(c.theta));
  auto check_alpha = [](const std::vector<double>& list, const char* name) {
    for (double a : list)
      if (!(a > 1.0 && a < 2.0))
        throw ConfigError(std::string(name) + " must lie in the open interval (1,2), got " +
                          format_real(a));
  };
  check_alpha(c.alpha, "alpha");
  check_alpha(c.alpha2, "alpha2");
  bool strang = std::find(c.precond.begin(), c.precond.end(), PreconditionerKind::strang) !=
                c.precond.end();
  auto check_sizes = [&](const std::vector<Index>& list, const char* name, bool space) {
    for (Index v : list) {
      if (v <= 0) throw ConfigError(std::string(name) + " must be positive, got " + std::to_string(v));
      if (v < 2) throw ConfigError(std::string(name) + " must be at least 2, got " + std::to_string(v));
      if (space && strang && v < 4)
        throw ConfigError(std::string(name) + " must be at least 4 for the strang preconditioner");
    }
  };
  check_sizes(c.n, "n", true);
  check_sizes(c.n2, "n2", true);
  check_sizes(c.m, "m", false);
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (c.max_iters < 0) throw ConfigError("max_iters must be nonnegative (0: full GMRES)");
  if (c.repeats < 1) throw ConfigError("repeats must be at least 1");
  if (c.dense_cap < 1) throw ConfigError("dense cap must be positive");
}

std::vector<GridPoint> grid_points(const ExperimentConfig& c) {
  std::vector<GridPoint> pts;
  if (c.dimension() == 1) {
    for (Index n : c.n)
      for (Index m : c.m)
        for (double a : c.alpha) pts.push_back({n, 0, m, a, a});
    return pts;
  }
  for (Index n1 : c.n) {
    const std::vector<Index> second = c.n2.empty() ? std::vector<Index>{n1} : c.n2;
    for (Index n2 : second)
      for (Index m : c.m)
        for (double a : c.alpha) {
          const std::vector<double> a2 = c.alpha2.empty() ? std::vector<double>{a} : c.alpha2;
          for (double b : a2) pts.push_back({n1, n2, m, a, b});
        }
  }
  return pts;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::string csv_safe(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  return s;
}

void write_point_prefix(std::ostream& out, const std::string& problem, const GridPoint& p) {
  out << problem << ',' << p.n1 << ',';
  if (p.n2 > 0) out << p.n2;
  out << ',' << p.m << ',' << format_real(p.alpha1) << ',';
  if (p.n2 > 0) out << format_real(p.alpha2);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

}  // namespace

bool run_table(const ExperimentConfig& config, std::ostream& out) {
  validate(config);
  out << "problem,N1,N2,M,alpha1,alpha2,precond,iterations,final_residual,converged,max_error,status";
  if (config.timing) out << ",wall_time";
  out << '\n';
  bool ok = true;
  for (const auto& point : grid_points(config)) {
    std::optional<PointProblem> problem;
    std::string setup_error;
    try {
      problem.emplace(config.problem, point, config.theta);
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    for (PreconditionerKind kind : config.precond) {
      write_point_prefix(out, config.problem, point);
      out << ',' << to_string(kind) << ',';
      try {
        if (!problem) throw std::runtime_error(setup_error);
        PointSolve s = solve_point(*problem, kind, config.tol, config.max_iters);
        std::vector<double> times{s.result.report.wall_time};
        if (config.timing)
          for (Index r = 1; r < config.repeats; ++r)
            times.push_back(solve_point(*problem, kind, config.tol, config.max_iters).result.report.wall_time);
        const auto& rep = s.result.report;
        const bool conv = rep.converged;
        ok = ok && conv;
        out << rep.iterations << ',' << format_real(rep.final_relative_residual()) << ','
            << (conv ? 1 : 0) << ',' << (s.max_error >= 0 ? format_real(s.max_error) : "") << ','
            << (conv ? "ok" : "not_converged");
        if (config.timing) out << ',' << format_real(median(times));
      } catch (const std::exception& e) {
        ok = false;
        out << ",,,,error: " << csv_safe(e.what());
        if (config.timing) out << ',';
      }
      out << '\n';
    }
  }
  return ok;
}

bool run_cond(const ExperimentConfig& config, std::ostream& out) {
  validate(config);
  out << "problem,N1,N2,M,alpha1,alpha2,cond_A,cond_strang,cond_first_column,status\n";
  bool ok = true;
  for (const auto& point : grid_points(config)) {
    write_point_prefix(out, config.problem, point);
    const Index order = point.n1 * std::max<Index>(point.n2, 1) * point.m;
    if (order > config.dense_cap) {
      out << ",,,,skipped_cap\n";
      continue;
    }
    try {
      const PointProblem problem(config.problem, point, config.theta);
      const ConditionRow row = condition_numbers_point(problem, config.dense_cap);
      out << ',' << format_real(row.cond_a) << ',' << format_real(row.cond_strang) << ','
          << format_real(row.cond_first_column) << ",ok\n";
    } catch (const std::exception& e) {
      ok = false;
      out << ",,,,error: " << csv_safe(e.what()) << '\n';
    }
  }
  return ok;
}

bool run_solve(const ExperimentConfig& config, std::ostream& out) {
  validate(config);
  const auto points = grid_points(config);
  if (points.size() != 1 || config.precond.size() != 1)
    throw ConfigError("solve takes exactly one grid point and one preconditioner");
  const PointProblem problem(config.problem, points[0], config.theta);
  const PointSolve s = solve_point(problem, config.precond[0], config.tol, config.max_iters);
  const Eigen::VectorXd u = problem.final_slice(s.result.solution);
  const Eigen::VectorXd exact = problem.exact_final();
  const GridPoint& p = problem.point();
  if (problem.dimension() == 1) out << "x,u,u_exact\n";
  else out << "x1,x2,u,u_exact\n";
  for (Index s_idx = 0; s_idx < u.size(); ++s_idx) {
    if (problem.dimension() == 1) {
      out << format_real(static_cast<double>(s_idx + 1) / static_cast<double>(p.n1 + 1)) << ',';
    } else {
      const Index i1 = s_idx / p.n2, i2 = s_idx % p.n2;
      out << format_real(static_cast<double>(i1 + 1) / static_cast<double>(p.n1 + 1)) << ','
          << format_real(static_cast<double>(i2 + 1) / static_cast<double>(p.n2 + 1)) << ',';
    }
    out << format_real(u[s_idx]) << ',' << (exact.size() ? format_real(exact[s_idx]) : "") << '\n';
  }
  return s.result.report.converged;
}

bool run_svdist(const ExperimentConfig& config, std::ostream& out) {
  validate(config);
  if (config.dimension() != 1) throw ConfigError("svdist supports 1D problems only");
  out << "problem,N,alpha,discrepancy,status\n";
  const Coefficient1D a = coefficient_1d(config.problem);
  bool ok = true;
  std::set<std::pair<Index, double>> seen;
  for (Index n : config.n) {
    for (double alpha : config.alpha) {
      if (!seen.insert({n, alpha}).second) continue;
      out << config.problem << ',' << n << ',' << format_real(alpha) << ',';
      try {
        const SpaceOperator op = build_space_1d(alpha, n, sample_1d(a, n), 1.0);
        const GridAxis axes[] = {{AxisKind::space, n}, {AxisKind::frequency, n}};
        const SymbolCloud cloud = sample_symbol_cloud(
            [&](std::span<const double> v) { return a(v[0]) * f_alpha(alpha, v[1]); }, axes);
        const double d = singular_value_distribution_check(op.dense(), cloud.values, config.dense_cap);
        out << format_real(d) << ",ok\n";
      } catch (const std::exception& e) {
        ok = false;
        out << ",error: " << csv_safe(e.what()) << '\n';
      }
    }
  }
  return ok;
}

bool run_spectrum(const ExperimentConfig& config, const SpectrumOptions& options,
                  std::ostream& out) {
  validate(config);
  const auto points = grid_points(config);
  if (points.size() != 1) throw ConfigError("spectrum takes exactly one grid point");
  PreconditionerKind kind = PreconditionerKind::none;
  if (options.preconditioned) {
    for (auto k : config.precond)
      if (k != PreconditionerKind::none) {
        kind = k;
        break;
      }
    if (kind == PreconditionerKind::none)
      throw ConfigError("preconditioned spectrum needs strang or first_column in precond");
  }
  const PointProblem problem(config.problem, points[0], config.theta);
  const GridPoint& p = problem.point();
  const int dim = problem.dimension();

  SpectrumReport spectrum;
  if (options.space_only) {
    const auto& space = problem.system().space();
    Eigen::MatrixXd g;
    if (dim == 1) {
      g = build_space_1d(p.alpha1, p.n1, space.sampling(), 1.0).dense();
    } else {
      g = build_space_2d(p.alpha1, p.alpha2, p.n1, p.n2, 1.0, 1.0, space.sampling()).dense();
    }
    spectrum = dense_eigenvalues(g, "space", config.dense_cap);
  } else {
    spectrum = dense_eigenvalues(dense_preconditioned(problem, kind, config.dense_cap),
                                 to_string(kind), config.dense_cap);
  }

  out << "section,index,re,im\n";
  for (Index i = 0; i < spectrum.eigenvalues.size(); ++i)
    out << "eigenvalue," << i << ',' << format_real(spectrum.eigenvalues[i].real()) << ','
        << format_real(spectrum.eigenvalues[i].imag()) << '\n';
  if (options.symbol_points <= 0) return true;

  const double theta = config.theta;
  std::vector<GridAxis> axes;
  for (int d = 0; d < dim; ++d) axes.push_back({AxisKind::space, options.symbol_space_points});
  for (int d = 0; d < dim; ++d) axes.push_back({AxisKind::frequency, options.symbol_points});
  if (!options.space_only)
    axes.push_back({AxisKind::frequency,
                    options.symbol_time_points > 0 ? options.symbol_time_points : p.m});

  SymbolFunction symbol;
  if (dim == 1) {
    const Coefficient1D a = coefficient_1d(config.problem);
    const double gamma = discretize(make_problem_1d(config.problem, p.alpha1, theta), p.n1, p.m).gamma;
    const double d_hat = mean_coefficient(problem.system().space().sampling());
    if (options.space_only)
      symbol = [=](std::span<const double> v) { return a(v[0]) * f_alpha(p.alpha1, v[1]); };
    else if (kind == PreconditionerKind::none)
      symbol = [=](std::span<const double> v) {
        return spacetime_symbol_1d(gamma, a(v[0]), p.alpha1, theta, {v[0], v[1], v[2]});
      };
    else
      symbol = [=](std::span<const double> v) {
        return precond_ratio_symbol_1d(gamma, a(v[0]), d_hat, p.alpha1, theta, {v[0], v[1], v[2]});
      };
  } else {
    const Coefficient2D a = coefficient_2d(config.problem);
    const auto disc =
        discretize(make_problem_2d(config.problem, p.alpha1, p.alpha2, theta), p.n1, p.n2, p.m);
    const double d_hat = mean_coefficient(problem.system().space().sampling());
    if (options.space_only)
      symbol = [=](std::span<const double> v) {
        return a(v[0], v[1]) * (f_alpha(p.alpha1, v[2]) + f_alpha(p.alpha2, v[3]));
      };
    else if (kind == PreconditionerKind::none)
      symbol = [=](std::span<const double> v) {
        return spacetime_symbol_2d(disc.gamma1, disc.gamma2, a(v[0], v[1]), p.alpha1, p.alpha2,
                                   theta, {v[0], v[1], v[2], v[3], v[4]});
      };
    else
      symbol = [=](std::span<const double> v) {
        return precond_ratio_symbol_2d(disc.gamma1, disc.gamma2, a(v[0], v[1]), d_hat, p.alpha1,
                                       p.alpha2, theta, {v[0], v[1], v[2], v[3], v[4]});
      };
  }
  // Samples on a pole of the time symbol are dropped.
  const SymbolFunction guarded = [&](std::span<const double> v) {
    try {
      return symbol(v);
    } catch (const SymbolPoleError&) {
      return Complex(std::nan(""), std::nan(""));
    }
  };
  const SymbolCloud cloud = sample_symbol_cloud(guarded, axes);
  Index row = 0;
  for (Index i = 0; i < cloud.size(); ++i) {
    const Complex z = cloud.values[i];
    if (std::isnan(z.real())) continue;
    out << "symbol," << row++ << ',' << format_real(z.real()) << ',' << format_real(z.imag())
        << '\n';
  }
  return true;
}

}  // namespace sfde
