#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "sfde/grunwald.hpp"

namespace sfde {

inline constexpr Index kDefaultDenseCap = 8192;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

double gamma_ratio(double delta_t, double delta_x, double alpha);

// General Toeplitz product through a zero-padded circulant embedding.
class ToeplitzOperator {
 public:
  ToeplitzOperator(const Eigen::VectorXd& first_column, const Eigen::VectorXd& first_row);

  Index order() const { return n_; }
  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::MatrixXd dense() const;

 private:
  Index n_;
  Index embed_;
  Eigen::VectorXd column_;
  Eigen::VectorXd row_;
  Eigen::VectorXcd spectrum_;
};

Eigen::VectorXd toeplitz_matvec(const Eigen::VectorXd& first_column,
                                const Eigen::VectorXd& first_row,
                                const Eigen::VectorXd& v);

// Lower-Hessenberg Toeplitz matrix with (i,j) entry g_{i-j+1}.
class HessenbergToeplitz {
 public:
  HessenbergToeplitz(const GrunwaldTable& table, Index order);
  static HessenbergToeplitz build(FractionalOrder alpha, Index order);

  Index order() const { return n_; }
  FractionalOrder alpha() const { return alpha_; }
  // g_1..g_N
  const Eigen::VectorXd& first_column() const { return column_; }
  double superdiagonal() const { return superdiagonal_; }

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::MatrixXd dense() const;

 private:
  FractionalOrder alpha_;
  Index n_;
  Eigen::VectorXd column_;
  double superdiagonal_;
  ToeplitzOperator toeplitz_;
};

struct DiagonalSampling {
  Eigen::VectorXd values;
  Index size() const { return values.size(); }
};

// a(x_i) at x_i = lo + i (hi - lo) / (N + 1), i = 1..N.
DiagonalSampling sample_1d(const std::function<double(double)>& a, Index n, Interval domain = {});
// Lexicographic in (i1, i2), index i1 * N2 + i2.
DiagonalSampling sample_2d(const std::function<double(double, double)>& a, Index n1, Index n2,
                           Interval x1 = {}, Interval x2 = {});

// gamma_k scaled Hessenberg Toeplitz factors combined as a Kronecker sum,
// left-scaled by a diagonal sampling.
class SpaceOperator {
 public:
  struct Factor {
    double gamma;
    HessenbergToeplitz toeplitz;
  };

  SpaceOperator(std::vector<Factor> factors, DiagonalSampling sampling);

  int dimension() const { return static_cast<int>(factors_.size()); }
  Index order() const { return order_; }
  Index extent(int axis) const { return factors_[axis].toeplitz.order(); }
  const Factor& factor(int axis) const { return factors_[axis]; }
  const DiagonalSampling& sampling() const { return sampling_; }

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::MatrixXd dense() const;

 private:
  std::vector<Factor> factors_;
  DiagonalSampling sampling_;
  Index order_;
};

SpaceOperator build_space_1d(double alpha, Index n, const DiagonalSampling& a, double gamma);
SpaceOperator build_space_1d(double alpha, Index n, const std::function<double(double)>& a,
                             double gamma, Interval domain = {});
SpaceOperator build_U_2d(double alpha1, double alpha2, Index n1, Index n2, double gamma1,
                         double gamma2);
SpaceOperator build_space_2d(double alpha1, double alpha2, Index n1, Index n2, double gamma1,
                             double gamma2, const DiagonalSampling& a);

// H: diag 1, subdiag -1.  H_theta: diag -theta, subdiag -(1 - theta).  Q = H_theta^{-1} H.
class TimeOperators {
 public:
  TimeOperators(double theta, Index m);

  double theta() const { return theta_; }
  Index steps() const { return m_; }

  template <typename Vec>
  void apply_h(Vec&& x) const {
    for (Index k = m_ - 1; k > 0; --k) x[k] -= x[k - 1];
  }
  template <typename Vec>
  void solve_h_theta(Vec&& x) const {
    const double off = 1.0 - theta_;
    x[0] = -x[0] / theta_;
    for (Index k = 1; k < m_; ++k) x[k] = -(x[k] + off * x[k - 1]) / theta_;
  }
  template <typename Vec>
  void apply_h_theta(Vec&& x) const {
    const double off = 1.0 - theta_;
    for (Index k = m_ - 1; k > 0; --k) x[k] = -theta_ * x[k] - off * x[k - 1];
    x[0] = -theta_ * x[0];
  }
  // Transposes: upper bidiagonal sweeps.
  template <typename Vec>
  void apply_h_transpose(Vec&& x) const {
    for (Index k = 0; k + 1 < m_; ++k) x[k] -= x[k + 1];
  }
  template <typename Vec>
  void apply_h_theta_transpose(Vec&& x) const {
    const double off = 1.0 - theta_;
    for (Index k = 0; k + 1 < m_; ++k) x[k] = -theta_ * x[k] - off * x[k + 1];
    x[m_ - 1] = -theta_ * x[m_ - 1];
  }
  template <typename Vec>
  void solve_h_theta_transpose(Vec&& x) const {
    const double off = 1.0 - theta_;
    x[m_ - 1] = -x[m_ - 1] / theta_;
    for (Index k = m_ - 2; k >= 0; --k) x[k] = -(x[k] + off * x[k + 1]) / theta_;
  }
  template <typename Vec>
  void apply_q(Vec&& x) const {
    apply_h(x);
    solve_h_theta(x);
  }
  template <typename Vec>
  void apply_q_transpose(Vec&& x) const {
    solve_h_theta_transpose(x);
    apply_h_transpose(x);
  }

  Eigen::MatrixXd dense_h() const;
  Eigen::MatrixXd dense_h_theta() const;
  Eigen::MatrixXd dense_q() const;
  Eigen::VectorXd q_first_column() const;

 private:
  double theta_;
  Index m_;
};

TimeOperators build_time_q(double theta, Index m);

// A = G (x) I_M + I_n (x) Q, unknowns laid out as space_index * M + time_index.
class AllAtOnceSystem {
 public:
  AllAtOnceSystem(SpaceOperator space, TimeOperators time);

  const SpaceOperator& space() const { return space_; }
  const TimeOperators& time() const { return time_; }
  Index order() const { return space_.order() * time_.steps(); }

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;

 private:
  SpaceOperator space_;
  TimeOperators time_;
};

// Exact solves with A by time stepping: (I (x) H_theta) A = G (x) H_theta + I (x) H
// is block lower bidiagonal in time, so one LU of I - theta G and M sweeps.
// Keeps G dense, so meant for space orders up to a few thousand.
class AllAtOnceSolver {
 public:
  explicit AllAtOnceSolver(const AllAtOnceSystem& system);

  Index order() const { return g_.rows() * time_.steps(); }
  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::VectorXd apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::VectorXd solve(const Eigen::Ref<const Eigen::VectorXd>& b) const;
  Eigen::VectorXd solve_transpose(const Eigen::Ref<const Eigen::VectorXd>& b) const;

 private:
  TimeOperators time_;
  Eigen::MatrixXd g_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;  // I - theta G
};

Eigen::VectorXd aao_matvec(const AllAtOnceSystem& system, const Eigen::VectorXd& v);
Eigen::MatrixXd assemble_dense(const AllAtOnceSystem& system, Index cap = kDefaultDenseCap);

}  // namespace sfde
