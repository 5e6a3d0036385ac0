#include "sfde/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "sfde/fft.hpp"

namespace sfde {

namespace {

void require_length(Index got, Index want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(want) +
                                ", got " + std::to_string(got));
}

}  // namespace

double gamma_ratio(double delta_t, double delta_x, double alpha) {
  if (!(delta_t > 0.0) || !(delta_x > 0.0))
    throw std::invalid_argument("step sizes must be positive");
  return delta_t / std::pow(delta_x, alpha);
}

ToeplitzOperator::ToeplitzOperator(const Eigen::VectorXd& first_column,
                                   const Eigen::VectorXd& first_row)
    : n_(first_column.size()), column_(first_column), row_(first_row) {
  if (n_ == 0) throw std::invalid_argument("Toeplitz order must be positive");
  require_length(first_row.size(), n_, "Toeplitz first row");
  if (first_column[0] != first_row[0])
    throw std::invalid_argument("Toeplitz column and row disagree at (0,0)");
  embed_ = next_power_of_two(2 * n_);
  // c = [t_0, t_1, .., t_{n-1}, 0, .., 0, t_{-(n-1)}, .., t_{-1}]
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(embed_);
  for (Index k = 0; k < n_; ++k) c[k] = column_[k];
  for (Index k = 1; k < n_; ++k) c[embed_ - k] = row_[k];
  fft_inplace(c, -1);
  spectrum_ = std::move(c);
}

Eigen::VectorXd ToeplitzOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  require_length(v.size(), n_, "Toeplitz matvec");
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(embed_);
  w.head(n_) = v.cast<std::complex<double>>();
  fft_inplace(w, -1);
  w.array() *= spectrum_.array();
  fft_inplace(w, +1);
  return w.head(n_).real() / static_cast<double>(embed_);
}

Eigen::MatrixXd ToeplitzOperator::dense() const {
  Eigen::MatrixXd t(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) t(i, j) = i >= j ? column_[i - j] : row_[j - i];
  return t;
}

Eigen::VectorXd toeplitz_matvec(const Eigen::VectorXd& first_column,
                                const Eigen::VectorXd& first_row, const Eigen::VectorXd& v) {
  return ToeplitzOperator(first_column, first_row).apply(v);
}

namespace {

Index checked_order(const GrunwaldTable& table, Index order) {
  if (order < 1) throw std::invalid_argument("Hessenberg Toeplitz order must be positive");
  if (table.size() < order + 1)
    throw std::invalid_argument("Grünwald table too short for the requested order");
  return order;
}

ToeplitzOperator hessenberg_embedding(const GrunwaldTable& table, Index n) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
  row[0] = table[1];
  if (n > 1) row[1] = table[0];
  return ToeplitzOperator(table.coeffs.segment(1, n), row);
}

}  // namespace

HessenbergToeplitz::HessenbergToeplitz(const GrunwaldTable& table, Index order)
    : alpha_(table.alpha),
      n_(checked_order(table, order)),
      column_(table.coeffs.segment(1, n_)),
      superdiagonal_(table[0]),
      toeplitz_(hessenberg_embedding(table, n_)) {}

HessenbergToeplitz HessenbergToeplitz::build(FractionalOrder alpha, Index order) {
  return HessenbergToeplitz(coefficients(alpha, std::max<Index>(order + 1, 2)), order);
}

Eigen::VectorXd HessenbergToeplitz::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  return toeplitz_.apply(v);
}

Eigen::MatrixXd HessenbergToeplitz::dense() const { return toeplitz_.dense(); }

DiagonalSampling sample_1d(const std::function<double(double)>& a, Index n, Interval domain) {
  if (n < 1) throw std::invalid_argument("sampling size must be positive");
  const double h = domain.length() / static_cast<double>(n + 1);
  DiagonalSampling s{Eigen::VectorXd(n)};
  for (Index i = 0; i < n; ++i) s.values[i] = a(domain.lo + static_cast<double>(i + 1) * h);
  return s;
}

DiagonalSampling sample_2d(const std::function<double(double, double)>& a, Index n1, Index n2,
                           Interval x1, Interval x2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("sampling sizes must be positive");
  const double h1 = x1.length() / static_cast<double>(n1 + 1);
  const double h2 = x2.length() / static_cast<double>(n2 + 1);
  DiagonalSampling s{Eigen::VectorXd(n1 * n2)};
  for (Index i1 = 0; i1 < n1; ++i1)
    for (Index i2 = 0; i2 < n2; ++i2)
      s.values[i1 * n2 + i2] =
          a(x1.lo + static_cast<double>(i1 + 1) * h1, x2.lo + static_cast<double>(i2 + 1) * h2);
  return s;
}

SpaceOperator::SpaceOperator(std::vector<Factor> factors, DiagonalSampling sampling)
    : factors_(std::move(factors)), sampling_(std::move(sampling)), order_(1) {
  if (factors_.empty() || factors_.size() > 2)
    throw std::invalid_argument("space operator supports one or two dimensions");
  for (const auto& f : factors_) {
    if (!(f.gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
    order_ *= f.toeplitz.order();
  }
  require_length(sampling_.size(), order_, "diagonal sampling");
}

Eigen::VectorXd SpaceOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  require_length(v.size(), order_, "space operator");
  Eigen::VectorXd out;
  if (dimension() == 1) {
    out = factors_[0].gamma * factors_[0].toeplitz.apply(v);
  } else {
    const Index n1 = extent(0), n2 = extent(1);
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor, 0, Eigen::OuterStride<>> in(v.data(), n1, n2,
                                                          Eigen::OuterStride<>(n2));
    RowMajor result(n1, n2);
    Eigen::VectorXd tmp;
    for (Index i2 = 0; i2 < n2; ++i2) {
      tmp = in.col(i2);
      result.col(i2) = factors_[0].gamma * factors_[0].toeplitz.apply(tmp);
    }
    for (Index i1 = 0; i1 < n1; ++i1) {
      tmp = in.row(i1).transpose();
      result.row(i1) += factors_[1].gamma * factors_[1].toeplitz.apply(tmp).transpose();
    }
    out = Eigen::Map<const Eigen::VectorXd>(result.data(), order_);
  }
  out.array() *= sampling_.values.array();
  return out;
}

Eigen::MatrixXd SpaceOperator::dense() const {
  Eigen::MatrixXd g;
  if (dimension() == 1) {
    g = factors_[0].gamma * factors_[0].toeplitz.dense();
  } else {
    const Index n1 = extent(0), n2 = extent(1);
    const Eigen::MatrixXd g1 = factors_[0].toeplitz.dense();
    const Eigen::MatrixXd g2 = factors_[1].toeplitz.dense();
    g = Eigen::MatrixXd::Zero(order_, order_);
    for (Index i1 = 0; i1 < n1; ++i1)
      for (Index j1 = 0; j1 < n1; ++j1)
        g.block(i1 * n2, j1 * n2, n2, n2).diagonal().array() += factors_[0].gamma * g1(i1, j1);
    for (Index i1 = 0; i1 < n1; ++i1) g.block(i1 * n2, i1 * n2, n2, n2) += factors_[1].gamma * g2;
  }
  return sampling_.values.asDiagonal() * g;
}

SpaceOperator build_space_1d(double alpha, Index n, const DiagonalSampling& a, double gamma) {
  if (n < 2) throw std::invalid_argument("space order must be at least 2");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return SpaceOperator({{gamma, HessenbergToeplitz::build(FractionalOrder(alpha), n)}}, a);
}

SpaceOperator build_space_1d(double alpha, Index n, const std::function<double(double)>& a,
                             double gamma, Interval domain) {
  return build_space_1d(alpha, n, sample_1d(a, n, domain), gamma);
}

SpaceOperator build_space_2d(double alpha1, double alpha2, Index n1, Index n2, double gamma1,
                             double gamma2, const DiagonalSampling& a) {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("space orders must be at least 2");
  return SpaceOperator({{gamma1, HessenbergToeplitz::build(FractionalOrder(alpha1), n1)},
                        {gamma2, HessenbergToeplitz::build(FractionalOrder(alpha2), n2)}},
                       a);
}

SpaceOperator build_U_2d(double alpha1, double alpha2, Index n1, Index n2, double gamma1,
                         double gamma2) {
  return build_space_2d(alpha1, alpha2, n1, n2, gamma1, gamma2,
                        DiagonalSampling{Eigen::VectorXd::Ones(n1 * n2)});
}

TimeOperators::TimeOperators(double theta, Index m) : theta_(theta), m_(m) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in (0,1]; theta = 0 makes H_theta singular");
  if (m < 1) throw std::invalid_argument("number of time steps must be positive");
}

Eigen::MatrixXd TimeOperators::dense_h() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m_, m_);
  h.diagonal(-1).setConstant(-1.0);
  return h;
}

Eigen::MatrixXd TimeOperators::dense_h_theta() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m_, m_);
  h.diagonal().setConstant(-theta_);
  h.diagonal(-1).setConstant(-(1.0 - theta_));
  return h;
}

Eigen::MatrixXd TimeOperators::dense_q() const {
  Eigen::MatrixXd q = dense_h();
  for (Index j = 0; j < m_; ++j) solve_h_theta(q.col(j));
  return q;
}

Eigen::VectorXd TimeOperators::q_first_column() const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
  e[0] = 1.0;
  apply_q(e);
  return e;
}

TimeOperators build_time_q(double theta, Index m) { return TimeOperators(theta, m); }

AllAtOnceSystem::AllAtOnceSystem(SpaceOperator space, TimeOperators time)
    : space_(std::move(space)), time_(time) {}

Eigen::VectorXd AllAtOnceSystem::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  const Index n = space_.order(), m = time_.steps();
  require_length(v.size(), n * m, "all-at-once matvec");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor, 0, Eigen::OuterStride<>> in(v.data(), n, m, Eigen::OuterStride<>(m));
  RowMajor out(n, m);
  Eigen::VectorXd tmp;
  for (Index t = 0; t < m; ++t) {
    tmp = in.col(t);
    out.col(t) = space_.apply(tmp);
  }
  Eigen::VectorXd row(m);
  for (Index s = 0; s < n; ++s) {
    row = in.row(s).transpose();
    time_.apply_q(row);
    out.row(s) += row.transpose();
  }
  return Eigen::Map<const Eigen::VectorXd>(out.data(), n * m);
}

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

AllAtOnceSolver::AllAtOnceSolver(const AllAtOnceSystem& system)
    : time_(system.time()), g_(system.space().dense()) {
  const Index n = g_.rows();
  lu_.compute(Eigen::MatrixXd::Identity(n, n) - time_.theta() * g_);
}

Eigen::VectorXd AllAtOnceSolver::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  const Index n = g_.rows(), m = time_.steps();
  require_length(v.size(), n * m, "all-at-once matvec");
  Eigen::Map<const RowMajor> in(v.data(), n, m);
  RowMajor out = g_ * in;
  Eigen::VectorXd row(m);
  for (Index s = 0; s < n; ++s) {
    row = in.row(s).transpose();
    time_.apply_q(row);
    out.row(s) += row.transpose();
  }
  return Eigen::Map<const Eigen::VectorXd>(out.data(), n * m);
}

Eigen::VectorXd AllAtOnceSolver::apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  const Index n = g_.rows(), m = time_.steps();
  require_length(v.size(), n * m, "all-at-once transpose matvec");
  Eigen::Map<const RowMajor> in(v.data(), n, m);
  RowMajor out = g_.transpose() * in;
  Eigen::VectorXd row(m);
  for (Index s = 0; s < n; ++s) {
    row = in.row(s).transpose();
    time_.apply_q_transpose(row);
    out.row(s) += row.transpose();
  }
  return Eigen::Map<const Eigen::VectorXd>(out.data(), n * m);
}

Eigen::VectorXd AllAtOnceSolver::solve(const Eigen::Ref<const Eigen::VectorXd>& b) const {
  const Index n = g_.rows(), m = time_.steps();
  require_length(b.size(), n * m, "all-at-once solve");
  RowMajor u = Eigen::Map<const RowMajor>(b.data(), n, m);
  for (Index s = 0; s < n; ++s) time_.apply_h_theta(u.row(s).transpose());
  // u_k = (I - theta G)^{-1} (c_k + ((1 - theta) G + I) u_{k-1})
  const double off = 1.0 - time_.theta();
  Eigen::VectorXd rhs(n);
  for (Index k = 0; k < m; ++k) {
    rhs = u.col(k);
    if (k > 0) rhs += off * (g_ * u.col(k - 1)) + u.col(k - 1);
    u.col(k) = lu_.solve(rhs);
  }
  return Eigen::Map<const Eigen::VectorXd>(u.data(), n * m);
}

Eigen::VectorXd AllAtOnceSolver::solve_transpose(const Eigen::Ref<const Eigen::VectorXd>& b) const {
  const Index n = g_.rows(), m = time_.steps();
  require_length(b.size(), n * m, "all-at-once transpose solve");
  RowMajor z = Eigen::Map<const RowMajor>(b.data(), n, m);
  const double off = 1.0 - time_.theta();
  Eigen::VectorXd rhs(n);
  for (Index k = m - 1; k >= 0; --k) {
    rhs = z.col(k);
    if (k + 1 < m) rhs += off * (g_.transpose() * z.col(k + 1)) + z.col(k + 1);
    z.col(k) = lu_.transpose().solve(rhs);
  }
  for (Index s = 0; s < n; ++s) time_.apply_h_theta_transpose(z.row(s).transpose());
  return Eigen::Map<const Eigen::VectorXd>(z.data(), n * m);
}

Eigen::VectorXd aao_matvec(const AllAtOnceSystem& system, const Eigen::VectorXd& v) {
  return system.apply(v);
}

Eigen::MatrixXd assemble_dense(const AllAtOnceSystem& system, Index cap) {
  const Index n = system.space().order(), m = system.time().steps();
  if (n * m > cap)
    throw std::length_error("dense order " + std::to_string(n * m) + " exceeds cap " +
                            std::to_string(cap));
  const Eigen::MatrixXd g = system.space().dense();
  const Eigen::MatrixXd q = system.time().dense_q();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (g(i, j) != 0.0) a.block(i * m, j * m, m, m).diagonal().array() += g(i, j);
  for (Index i = 0; i < n; ++i) a.block(i * m, i * m, m, m) += q;
  return a;
}

}  // namespace sfde
