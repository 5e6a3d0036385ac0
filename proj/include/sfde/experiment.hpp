#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sfde/diagnostics.hpp"
#include "sfde/gmres.hpp"
#include "sfde/precond.hpp"
#include "sfde/problems.hpp"

namespace sfde {

enum class PreconditionerKind { none, strang, first_column };

std::string to_string(PreconditionerKind kind);
PreconditionerKind parse_preconditioner(const std::string& name);
CirculantKind circulant_kind(PreconditionerKind kind);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridPoint {
  Index n1 = 16;
  Index n2 = 0;  // 0 in 1D
  Index m = 16;
  double alpha1 = 1.5;
  double alpha2 = 1.5;
};

// Discretized problem at one grid point, 1D or 2D.
class PointProblem {
 public:
  PointProblem(const std::string& problem, const GridPoint& point, double theta);

  int dimension() const { return point_.n2 == 0 ? 1 : 2; }
  const GridPoint& point() const { return point_; }
  const AllAtOnceSystem& system() const { return *system_; }
  Index order() const { return system_->order(); }

  Eigen::VectorXd rhs() const;
  CirculantPreconditioner preconditioner(CirculantKind kind) const;
  // Exact solution at the last time level on the space nodes; empty if unknown.
  Eigen::VectorXd exact_final() const;
  Eigen::VectorXd final_slice(const Eigen::VectorXd& u) const;

 private:
  GridPoint point_;
  std::optional<ProblemSpec1D> p1_;
  std::optional<ProblemSpec2D> p2_;
  std::optional<AllAtOnceSystem> system_;
  double gamma1_ = 0.0;
  double gamma2_ = 0.0;
};

struct PointSolve {
  GmresResult result;
  double max_error = -1.0;  // negative when no exact solution is known
};

// max_iters 0 runs full GMRES.
PointSolve solve_point(const PointProblem& problem, PreconditionerKind kind, double tol,
                       Index max_iters = 0);

// 2-norm condition number of P^{-1} A (or A for kind none).
double condition_number_point(const PointProblem& problem, PreconditionerKind kind,
                              Index cap = kDefaultDenseCap);

struct ConditionRow {
  double cond_a = 0.0;
  double cond_strang = 0.0;
  double cond_first_column = 0.0;
};

// Dense SVD up to kDenseSvdLimit, above it Lanczos with time-stepping solves.
// Orders above cap throw.
ConditionRow condition_numbers_point(const PointProblem& problem, Index cap = kDefaultDenseCap);

Eigen::MatrixXd dense_preconditioned(const PointProblem& problem, PreconditionerKind kind,
                                     Index cap = kDefaultDenseCap);

// Eigenvalues of P^{-1} A from its time diagonal block. In time-major order A and P
// are block lower triangular in time with equal diagonal blocks (Q has constant
// diagonal), so the spectrum is that of the space-order block, each eigenvalue
// with multiplicity M. Dense eig of the full matrix smears these Jordan blocks
// into rings of radius about eps^(1/M); this avoids that and costs one space
// order solve per column.
SpectrumReport block_eigenvalues(const PointProblem& problem, PreconditionerKind kind,
                                 Index cap = kDefaultDenseCap);

struct ExperimentConfig {
  std::string problem = "const1";
  std::vector<Index> n{16};
  std::vector<Index> n2;  // 2D only; empty means N2 = N1
  std::vector<Index> m{16};
  std::vector<double> alpha{1.5};
  std::vector<double> alpha2;  // 2D only; empty means alpha2 = alpha1
  double theta = 0.5;
  std::vector<PreconditionerKind> precond{PreconditionerKind::none, PreconditionerKind::strang,
                                          PreconditionerKind::first_column};
  double tol = 1e-8;
  Index max_iters = 0;
  std::string out;
  Index repeats = 3;
  bool timing = false;
  Index dense_cap = kDefaultDenseCap;

  int dimension() const { return is_problem_2d(problem) ? 2 : 1; }
};

// Accepts scalars or arrays for the list-valued keys.
ExperimentConfig config_from_json_text(const std::string& text);
void validate(const ExperimentConfig& config);

// Grid points in emission order: N1, N2, M, alpha.
std::vector<GridPoint> grid_points(const ExperimentConfig& config);

std::string format_real(double v);

// Each runner writes a CSV with a header row and returns false if any grid point failed.
bool run_table(const ExperimentConfig& config, std::ostream& out);
bool run_cond(const ExperimentConfig& config, std::ostream& out);
bool run_solve(const ExperimentConfig& config, std::ostream& out);
bool run_svdist(const ExperimentConfig& config, std::ostream& out);

struct SpectrumOptions {
  bool preconditioned = false;  // uses the first non-none entry of config.precond
  bool space_only = false;      // eigenvalues of D(a) Gbar (gamma = 1) instead of A
  Index symbol_points = 0;      // frequency samples per axis, 0 disables the symbol section
  Index symbol_space_points = 1;
  Index symbol_time_points = 0;  // 0 means M
};

bool run_spectrum(const ExperimentConfig& config, const SpectrumOptions& options,
                  std::ostream& out);

}  // namespace sfde
