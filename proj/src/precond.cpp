#include "sfde/precond.hpp"

#include <cmath>
#include <string>

#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "sfde/fft.hpp"

namespace sfde {

namespace {

constexpr double kSingularTolerance = 1e-14;

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

Eigen::VectorXd strang_column(double alpha, Index n) {
  if (n < 4) throw std::invalid_argument("Strang circulant needs N >= 4");
  const GrunwaldTable g = coefficients(FractionalOrder(alpha), n + 1);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (Index k = 0; 2 * k < n; ++k) c[k] = g[k + 1];
  c[n - 1] = g[0];
  return c;
}

Eigen::VectorXd first_column_circulant(double alpha, Index n) {
  if (n < 2) throw std::invalid_argument("circulant order must be at least 2");
  const GrunwaldTable g = coefficients(FractionalOrder(alpha), n + 1);
  Eigen::VectorXd c(n);
  c.head(n - 1) = g.coeffs.segment(1, n - 1);
  c[n - 1] = g[0];
  return c;
}

Eigen::VectorXd circulant_column(CirculantKind kind, double alpha, Index n) {
  return kind == CirculantKind::strang ? strang_column(alpha, n) : first_column_circulant(alpha, n);
}

Eigen::VectorXcd circulant_eigenvalues(const Eigen::VectorXd& column) {
  if (column.size() == 0) throw std::invalid_argument("circulant column must be nonempty");
  Eigen::VectorXcd lambda = column.cast<Complex>();
  fft_inplace(lambda, +1);
  return lambda;
}

Eigen::MatrixXd dense_circulant(const Eigen::VectorXd& column) {
  const Index n = column.size();
  Eigen::MatrixXd c(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) c(i, j) = column[((i - j) % n + n) % n];
  return c;
}

Eigen::MatrixXcd fourier_matrix(Index n) {
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index s = 0; s < n; ++s)
    for (Index t = 0; t < n; ++t)
      f(s, t) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>((s * t) % n) /
                                      static_cast<double>(n));
  return f;
}

double mean_coefficient(const DiagonalSampling& sampling) {
  if (sampling.size() == 0) throw std::invalid_argument("sampling must be nonempty");
  return sampling.values.mean();
}

Eigen::VectorXcd block_solve(Complex s_lambda, double theta, Index m, const Eigen::VectorXcd& b) {
  if (b.size() != m) throw std::invalid_argument("block right-hand side has wrong length");
  const Complex diag = 1.0 - s_lambda * theta;
  if (std::abs(diag) <= kSingularTolerance) throw SingularBlockError("near-singular block pivot");
  const Complex sub = -s_lambda * (1.0 - theta) - 1.0;
  Eigen::VectorXcd x(m);
  Complex prev_b(0.0), prev_x(0.0);
  for (Index k = 0; k < m; ++k) {
    const Complex r = -theta * b[k] - (1.0 - theta) * prev_b;
    x[k] = (r - sub * prev_x) / diag;
    prev_b = b[k];
    prev_x = x[k];
  }
  return x;
}

CirculantPreconditioner::CirculantPreconditioner(CirculantKind kind, std::vector<Axis> axes,
                                                 double mean, double theta, Index m)
    : kind_(kind), axes_(std::move(axes)), mean_(mean), time_(theta, m) {
  if (axes_.empty() || axes_.size() > 2)
    throw std::invalid_argument("preconditioner supports one or two space dimensions");
  if (m < 2) throw std::invalid_argument("number of time steps must be at least 2");
  Index n = 1;
  for (const auto& axis : axes_) {
    if (axis.column.size() < 2) throw std::invalid_argument("circulant order must be at least 2");
    n *= axis.column.size();
  }
  multipliers_ = Eigen::VectorXcd::Zero(n);
  if (axes_.size() == 1) {
    multipliers_ = axes_[0].gamma * circulant_eigenvalues(axes_[0].column);
  } else {
    const Eigen::VectorXcd l1 = circulant_eigenvalues(axes_[0].column);
    const Eigen::VectorXcd l2 = circulant_eigenvalues(axes_[1].column);
    for (Index j1 = 0; j1 < l1.size(); ++j1)
      for (Index j2 = 0; j2 < l2.size(); ++j2)
        multipliers_[j1 * l2.size() + j2] = axes_[0].gamma * l1[j1] + axes_[1].gamma * l2[j2];
  }
  multipliers_ *= mean_;
  for (Index j = 0; j < n; ++j)
    if (std::abs(1.0 - multipliers_[j] * theta) <= kSingularTolerance)
      throw SingularBlockError("block " + std::to_string(j) + " is singular: |1 - s lambda theta| = " +
                               std::to_string(std::abs(1.0 - multipliers_[j] * theta)));
}

void CirculantPreconditioner::space_transform(Eigen::MatrixXcd& w, int sign) const {
  const Index n = space_order();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index t = 0; t < w.cols(); ++t) {
    Complex* col = w.col(t).data();
    if (axes_.size() == 1) {
      fft_inplace(Eigen::Map<Eigen::VectorXcd>(col, n), sign);
    } else {
      const Index n1 = extent(0), n2 = extent(1);
      for (Index i1 = 0; i1 < n1; ++i1)
        fft_inplace(Eigen::Map<Eigen::VectorXcd>(col + i1 * n2, n2), sign);
      for (Index i2 = 0; i2 < n2; ++i2)
        fft_inplace(Eigen::Map<Eigen::VectorXcd, 0, Eigen::InnerStride<>>(
                        col + i2, n1, Eigen::InnerStride<>(n2)),
                    sign);
    }
  }
  w *= scale;
}

Eigen::VectorXd CirculantPreconditioner::run(const Eigen::Ref<const Eigen::VectorXd>& v,
                                             Mode mode) const {
  const Index n = space_order(), m = steps();
  if (v.size() != n * m)
    throw std::invalid_argument("preconditioner input has length " + std::to_string(v.size()) +
                                ", expected " + std::to_string(n * m));
  const double theta = time_.theta();
  Eigen::Map<const RowMajor, 0, Eigen::OuterStride<>> in(v.data(), n, m, Eigen::OuterStride<>(m));
  Eigen::MatrixXcd w = in.cast<Complex>();

  space_transform(w, +1);
  Eigen::VectorXcd x(m);
  for (Index j = 0; j < n; ++j) {
    const Complex sl = multipliers_[j];
    x = w.row(j).transpose();
    switch (mode) {
      case Mode::forward: {
        Eigen::VectorXcd qx = x;
        time_.apply_q(qx);
        x = sl * x + qx;
        break;
      }
      case Mode::forward_transpose: {
        Eigen::VectorXcd qx = x;
        time_.apply_q_transpose(qx);
        x = std::conj(sl) * x + qx;
        break;
      }
      case Mode::inverse:
        x = block_solve(sl, theta, m, x);
        break;
      case Mode::inverse_transpose: {
        const Complex diag = std::conj(1.0 - sl * theta);
        const Complex sup = std::conj(-sl * (1.0 - theta) - 1.0);
        x[m - 1] /= diag;
        for (Index k = m - 2; k >= 0; --k) x[k] = (x[k] - sup * x[k + 1]) / diag;
        for (Index k = 0; k + 1 < m; ++k) x[k] = -theta * x[k] - (1.0 - theta) * x[k + 1];
        x[m - 1] *= -theta;
        break;
      }
    }
    w.row(j) = x.transpose();
  }
  space_transform(w, -1);

  RowMajor out = w.real();
  return Eigen::Map<const Eigen::VectorXd>(out.data(), n * m);
}

Eigen::VectorXd CirculantPreconditioner::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  return run(v, Mode::forward);
}

Eigen::VectorXd CirculantPreconditioner::apply_inverse(
    const Eigen::Ref<const Eigen::VectorXd>& v) const {
  return run(v, Mode::inverse);
}

Eigen::VectorXd CirculantPreconditioner::apply_transpose(
    const Eigen::Ref<const Eigen::VectorXd>& v) const {
  return run(v, Mode::forward_transpose);
}

Eigen::VectorXd CirculantPreconditioner::apply_inverse_transpose(
    const Eigen::Ref<const Eigen::VectorXd>& v) const {
  return run(v, Mode::inverse_transpose);
}

Eigen::MatrixXcd CirculantPreconditioner::block(Index j) const {
  const Eigen::MatrixXd q = time_.dense_q();
  Eigen::MatrixXcd d = q.cast<Complex>();
  d.diagonal().array() += multipliers_[j];
  return d;
}

Eigen::MatrixXd CirculantPreconditioner::dense(Index cap) const {
  const Index n = space_order(), m = steps();
  if (n * m > cap) throw std::length_error("dense preconditioner exceeds cap");
  Eigen::MatrixXd s;
  if (axes_.size() == 1) {
    s = axes_[0].gamma * dense_circulant(axes_[0].column);
  } else {
    const Index n2 = extent(1);
    const Eigen::MatrixXd c1 = dense_circulant(axes_[0].column);
    const Eigen::MatrixXd c2 = dense_circulant(axes_[1].column);
    s = Eigen::MatrixXd::Zero(n, n);
    for (Index i1 = 0; i1 < extent(0); ++i1) {
      for (Index j1 = 0; j1 < extent(0); ++j1)
        s.block(i1 * n2, j1 * n2, n2, n2).diagonal().array() += axes_[0].gamma * c1(i1, j1);
      s.block(i1 * n2, i1 * n2, n2, n2) += axes_[1].gamma * c2;
    }
  }
  s *= mean_;
  const Eigen::MatrixXd q = time_.dense_q();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j)
      if (s(i, j) != 0.0) p.block(i * m, j * m, m, m).diagonal().array() += s(i, j);
    p.block(i * m, i * m, m, m) += q;
  }
  return p;
}

Eigen::MatrixXcd CirculantPreconditioner::transform(Index cap) const {
  const Index n = space_order(), m = steps();
  if (n * m > cap) throw std::length_error("dense transform exceeds cap");
  Eigen::MatrixXcd f = fourier_matrix(extent(0));
  if (axes_.size() == 2) f = Eigen::kroneckerProduct(f, fourier_matrix(extent(1))).eval();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) u.block(i * m, j * m, m, m).diagonal().setConstant(f(i, j));
  return u;
}

CirculantPreconditioner build_preconditioner_1d(CirculantKind kind, double alpha, Index n, Index m,
                                                double theta, double gamma,
                                                const DiagonalSampling& a) {
  if (a.size() != n) throw std::invalid_argument("sampling length must equal N");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return CirculantPreconditioner(kind, {{circulant_column(kind, alpha, n), gamma}},
                                 mean_coefficient(a), theta, m);
}

CirculantPreconditioner build_preconditioner_2d(CirculantKind kind, double alpha1, double alpha2,
                                                Index n1, Index n2, Index m, double theta,
                                                double gamma1, double gamma2,
                                                const DiagonalSampling& a) {
  if (a.size() != n1 * n2) throw std::invalid_argument("sampling length must equal N1 * N2");
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  return CirculantPreconditioner(kind,
                                 {{circulant_column(kind, alpha1, n1), gamma1},
                                  {circulant_column(kind, alpha2, n2), gamma2}},
                                 mean_coefficient(a), theta, m);
}

}  // namespace sfde
