#include <gtest/gtest.h>

#include <random>

#include <Eigen/LU>
#include <unsupported/Eigen/KroneckerProduct>

#include "sfde/fft.hpp"
#include "sfde/operators.hpp"

using namespace sfde;

namespace {

Eigen::VectorXd random_vector(Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

Eigen::MatrixXd hessenberg_oracle(double alpha, Index n) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i - j + 1 >= 0) g(i, j) = coefficient_closed_form(FractionalOrder(alpha), i - j + 1);
  return g;
}

Eigen::MatrixXd q_oracle(double theta, Index m) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m);
  h.diagonal(-1).setConstant(-1.0);
  Eigen::MatrixXd ht = Eigen::MatrixXd::Zero(m, m);
  ht.diagonal().setConstant(-theta);
  ht.diagonal(-1).setConstant(-(1.0 - theta));
  return ht.inverse() * h;
}

}  // namespace

TEST(Fft, MatchesDirectSumForPowerOfTwoAndOtherSizes) {
  for (Index n : {1, 2, 8, 64, 6, 12}) {
    Eigen::VectorXcd x(n);
    std::mt19937 rng(3);
    std::normal_distribution<double> d;
    for (Index i = 0; i < n; ++i) x[i] = {d(rng), d(rng)};
    for (int sign : {-1, 1}) {
      Eigen::VectorXcd y = x;
      fft_inplace(y, sign);
      for (Index j = 0; j < n; ++j) {
        std::complex<double> acc = 0;
        for (Index k = 0; k < n; ++k)
          acc += x[k] * std::polar(1.0, sign * 2.0 * std::numbers::pi * double(j * k) / double(n));
        EXPECT_LT(std::abs(acc - y[j]), 1e-11 * (1 + std::abs(acc)));
      }
    }
  }
}

TEST(GammaRatio, Values) {
  EXPECT_NEAR(gamma_ratio(1.0 / 16, 1.0 / 17, 1.5), std::pow(17.0, 1.5) / 16.0, 1e-14);
  EXPECT_NEAR(gamma_ratio(1.0 / 16, 1.0 / 17, 1.5), 4.3808, 1e-4);
  EXPECT_DOUBLE_EQ(gamma_ratio(1.0, 1.0, 1.7), 1.0);
  double prev = gamma_ratio(1.0, 0.1, 1.5);
  for (int m = 2; m < 64; m *= 2) {
    const double g = gamma_ratio(1.0 / m, 0.1, 1.5);
    EXPECT_LT(g, prev);
    prev = g;
  }
  EXPECT_THROW(gamma_ratio(0.0, 0.1, 1.5), std::invalid_argument);
}

TEST(ToeplitzMatvec, IdentityReturnsInput) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(7);
  e[0] = 1.0;
  const Eigen::VectorXd v = random_vector(7, 1);
  EXPECT_LT(rel_err(toeplitz_matvec(e, e, v), v), 1e-14);
}

TEST(ToeplitzMatvec, HessenbergRowSums) {
  const auto g = HessenbergToeplitz::build(FractionalOrder(1.5), 4);
  const Eigen::VectorXd r = g.apply(Eigen::VectorXd::Ones(4));
  const double expect[] = {-0.5, -0.125, -0.0625, -1.0390625};  // last row has no g_0
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r[i], expect[i], 1e-14);
}

TEST(ToeplitzMatvec, RandomAgainstDense) {
  for (Index n : {4, 16, 64, 128}) {
    Eigen::VectorXd col = random_vector(n, 10 + n), row = random_vector(n, 20 + n);
    row[0] = col[0];
    Eigen::MatrixXd t(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) t(i, j) = i >= j ? col[i - j] : row[j - i];
    const Eigen::VectorXd v = random_vector(n, 30 + n);
    EXPECT_LT(rel_err(toeplitz_matvec(col, row, v), t * v), 1e-12) << n;
  }
}

TEST(ToeplitzMatvec, RejectsMismatch) {
  Eigen::VectorXd c = Eigen::VectorXd::Ones(3), r = Eigen::VectorXd::Ones(4);
  EXPECT_THROW(toeplitz_matvec(c, r, Eigen::VectorXd::Ones(3)), std::invalid_argument);
  r = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(toeplitz_matvec(c, r, Eigen::VectorXd::Ones(5)), std::invalid_argument);
  r[0] = 2.0;
  EXPECT_THROW(toeplitz_matvec(c, r, Eigen::VectorXd::Ones(3)), std::invalid_argument);
}

TEST(HessenbergToeplitz, DenseStructure) {
  const auto g = HessenbergToeplitz::build(FractionalOrder(1.6), 9);
  EXPECT_LT((g.dense() - hessenberg_oracle(1.6, 9)).norm(), 1e-14);
  EXPECT_EQ(g.superdiagonal(), 1.0);
  const Eigen::MatrixXd d = g.dense();
  for (Index i = 0; i < 9; ++i)
    for (Index j = i + 2; j < 9; ++j) EXPECT_EQ(d(i, j), 0.0);
}

TEST(BuildSpace1d, HandMatrix) {
  const auto op = build_space_1d(1.5, 3, [](double) { return 1.0; }, 1.0);
  Eigen::MatrixXd expect(3, 3);
  expect << -1.5, 1, 0, 0.375, -1.5, 1, 0.0625, 0.375, -1.5;
  EXPECT_LT((op.dense() - expect).norm(), 1e-15);
}

TEST(BuildSpace1d, ZeroCoefficientAndScaling) {
  const auto zero = build_space_1d(1.5, 5, [](double) { return 0.0; }, 1.0);
  EXPECT_EQ(zero.dense().norm(), 0.0);
  EXPECT_EQ(zero.apply(Eigen::VectorXd::Ones(5)).norm(), 0.0);

  const auto unit = build_space_1d(1.5, 3, [](double) { return 1.0; }, 1.0).dense();
  const auto scaled = build_space_1d(1.5, 3, [](double x) { return x * x; }, 2.0).dense();
  const double x[] = {0.25, 0.5, 0.75};
  for (int i = 0; i < 3; ++i)
    EXPECT_LT((scaled.row(i) - 2.0 * x[i] * x[i] * unit.row(i)).norm(), 1e-15);
  EXPECT_THROW(build_space_1d(1.5, 3, [](double) { return 1.0; }, 0.0), std::invalid_argument);
  EXPECT_THROW(build_space_1d(1.5, 3, [](double) { return 1.0; }, -1.0), std::invalid_argument);
  EXPECT_THROW(build_space_1d(1.5, 1, [](double) { return 1.0; }, 1.0), std::invalid_argument);
}

TEST(BuildU2d, KroneckerSumHand) {
  const auto u = build_U_2d(1.5, 1.5, 2, 2, 1.0, 1.0);
  Eigen::MatrixXd g(2, 2);
  g << -1.5, 1, 0.375, -1.5;
  const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd expect =
      Eigen::kroneckerProduct(g, i2).eval() + Eigen::kroneckerProduct(i2, g).eval();
  EXPECT_LT((u.dense() - expect).norm(), 1e-15);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
  e1[0] = 1.0;
  EXPECT_LT((u.apply(e1) - expect.col(0)).norm(), 1e-14);
}

TEST(BuildU2d, ZeroFirstGamma) {
  const auto u = build_U_2d(1.3, 1.7, 3, 4, 0.0, 2.0);
  const Eigen::MatrixXd expect = Eigen::kroneckerProduct(
      Eigen::MatrixXd::Identity(3, 3), 2.0 * hessenberg_oracle(1.7, 4)).eval();
  EXPECT_LT((u.dense() - expect).norm(), 1e-13);
}

TEST(Space2d, MatvecMatchesDenseWithLexicographicSampling) {
  const auto a = sample_2d([](double x1, double x2) { return 1.0 + x1 + 3.0 * x2 * x2; }, 5, 3);
  EXPECT_DOUBLE_EQ(a.values[1 * 3 + 2], 1.0 + 2.0 / 6.0 + 3.0 * 0.75 * 0.75);
  const auto op = build_space_2d(1.3, 1.8, 5, 3, 0.7, 1.9, a);
  const Eigen::MatrixXd oracle =
      a.values.asDiagonal() *
      (0.7 * Eigen::kroneckerProduct(hessenberg_oracle(1.3, 5), Eigen::MatrixXd::Identity(3, 3))
                 .eval() +
       1.9 * Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(5, 5), hessenberg_oracle(1.8, 3))
                 .eval());
  EXPECT_LT((op.dense() - oracle).norm() / oracle.norm(), 1e-14);
  const Eigen::VectorXd v = random_vector(15, 4);
  EXPECT_LT(rel_err(op.apply(v), oracle * v), 1e-13);
}

TEST(TimeOperators, FirstColumnOfQ) {
  const auto t = build_time_q(0.5, 3);
  const Eigen::VectorXd c = t.q_first_column();
  EXPECT_NEAR(c[0], -2.0, 1e-15);
  EXPECT_NEAR(c[1], 4.0, 1e-15);
  EXPECT_NEAR(c[2], -4.0, 1e-15);

  const double theta = 0.3;
  const Eigen::VectorXd q = build_time_q(theta, 6).q_first_column();
  EXPECT_NEAR(q[0], -1.0 / theta, 1e-13);
  EXPECT_NEAR(q[1], 1.0 / (theta * theta), 1e-12);
  for (int k = 2; k < 6; ++k)
    EXPECT_NEAR(q[k], std::pow(theta - 1.0, k - 1) / std::pow(theta, k + 1), 1e-10) << k;
}

TEST(TimeOperators, BackwardEulerIsMinusH) {
  const auto t = build_time_q(1.0, 3);
  Eigen::MatrixXd expect = -Eigen::MatrixXd::Identity(3, 3);
  expect.diagonal(-1).setConstant(1.0);
  EXPECT_LT((t.dense_q() - expect).norm(), 1e-15);
}

TEST(TimeOperators, DefiningIdentity) {
  for (double theta : {0.25, 0.5, 1.0})
    for (Index m : {4, 16, 64}) {
      const auto t = build_time_q(theta, m);
      EXPECT_LT((t.dense_h_theta() * t.dense_q() - t.dense_h()).norm(), 1e-13 * m)
          << theta << " " << m;
      EXPECT_LT((t.dense_q() - q_oracle(theta, m)).norm(), 1e-9 * q_oracle(theta, m).norm());
    }
}

TEST(TimeOperators, TransposeSweeps) {
  const auto t = build_time_q(0.4, 7);
  const Eigen::VectorXd v = random_vector(7, 9);
  Eigen::VectorXd w = v;
  t.apply_q_transpose(w);
  EXPECT_LT(rel_err(w, t.dense_q().transpose() * v), 1e-13);
}

TEST(TimeOperators, RejectsThetaZero) {
  EXPECT_THROW(build_time_q(0.0, 4), std::invalid_argument);
  EXPECT_THROW(build_time_q(1.5, 4), std::invalid_argument);
  EXPECT_THROW(build_time_q(0.5, 0), std::invalid_argument);
}

TEST(AllAtOnce, MatvecMatchesDense1d) {
  for (auto [n, m] : {std::pair<Index, Index>{4, 4}, {16, 16}, {5, 7}}) {
    AllAtOnceSystem sys(build_space_1d(1.5, n, [](double x) { return 1.0 + x; }, 1.3),
                        build_time_q(0.5, m));
    const Eigen::MatrixXd a = assemble_dense(sys);
    for (unsigned s = 0; s < 10; ++s) {
      const Eigen::VectorXd v = random_vector(n * m, s);
      EXPECT_LT(rel_err(aao_matvec(sys, v), a * v), 1e-12);
    }
    EXPECT_EQ(aao_matvec(sys, Eigen::VectorXd::Zero(n * m)).norm(), 0.0);
  }
}

TEST(AllAtOnce, DenseIsKroneckerFormula) {
  const Index n = 4, m = 3;
  const double gamma = 2.5;
  AllAtOnceSystem sys(build_space_1d(1.7, n, [](double) { return 1.0; }, gamma),
                      build_time_q(0.6, m));
  const Eigen::MatrixXd g = gamma * hessenberg_oracle(1.7, n);
  const Eigen::MatrixXd expect =
      Eigen::kroneckerProduct(g, Eigen::MatrixXd::Identity(m, m)).eval() +
      Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(n, n), q_oracle(0.6, m)).eval();
  EXPECT_LT((assemble_dense(sys) - expect).norm(), 1e-12);
  for (Index k = 0; k < n * m; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n * m);
    e[k] = 1.0;
    EXPECT_LT((aao_matvec(sys, e) - expect.col(k)).norm(), 1e-12);
  }
}

TEST(AllAtOnce, HandTwoByTwo) {
  AllAtOnceSystem sys(build_space_1d(1.5, 2, [](double) { return 1.0; }, 1.0),
                      build_time_q(1.0, 2));
  Eigen::MatrixXd expect(4, 4);
  // G = [[-1.5, 1], [0.375, -1.5]], Q = [[-1, 0], [1, -1]]
  expect << -2.5, 0, 1, 0,
            1, -2.5, 0, 1,
            0.375, 0, -2.5, 0,
            0, 0.375, 1, -2.5;
  EXPECT_LT((assemble_dense(sys) - expect).norm(), 1e-15);
}

TEST(AllAtOnce, ZeroCoefficientBackwardEuler) {
  AllAtOnceSystem sys(build_space_1d(1.5, 3, [](double) { return 0.0; }, 1.0),
                      build_time_q(1.0, 4));
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(4, 4);
  h.diagonal(-1).setConstant(-1.0);
  const Eigen::MatrixXd expect = Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(3, 3), -h).eval();
  EXPECT_LT((assemble_dense(sys) - expect).norm(), 1e-15);
}

TEST(AllAtOnce, NotSymmetric) {
  AllAtOnceSystem sys(build_space_1d(1.4, 4, [](double) { return 1.0; }, 1.0),
                      build_time_q(0.5, 4));
  const Eigen::MatrixXd a = assemble_dense(sys);
  EXPECT_GT((a - a.transpose()).norm(), 0.1);
}

TEST(AllAtOnce, TwoDimensionalMatchesDense) {
  const auto a = sample_2d([](double x1, double x2) { return 1.0 + x1 * x1 + x2; }, 2, 2);
  AllAtOnceSystem sys(build_space_2d(1.5, 1.5, 2, 2, 1.0, 1.0, a), build_time_q(0.5, 2));
  const Eigen::MatrixXd d = assemble_dense(sys);
  EXPECT_EQ(d.rows(), 8);
  for (unsigned s = 0; s < 5; ++s) {
    const Eigen::VectorXd v = random_vector(8, s);
    EXPECT_LT(rel_err(aao_matvec(sys, v), d * v), 1e-12);
  }
}

TEST(AllAtOnce, CapAndLengthChecks) {
  AllAtOnceSystem sys(build_space_1d(1.5, 8, [](double) { return 1.0; }, 1.0),
                      build_time_q(0.5, 8));
  EXPECT_THROW(assemble_dense(sys, 63), std::length_error);
  EXPECT_THROW(aao_matvec(sys, Eigen::VectorXd::Ones(10)), std::invalid_argument);
}

TEST(AllAtOnceSolver, MatchesDenseLu) {
  for (double theta : {0.5, 1.0, 0.3}) {
    AllAtOnceSystem sys(build_space_1d(1.7, 9, [](double x) { return x * x + 1.0; }, 2.2),
                        build_time_q(theta, 6));
    const AllAtOnceSolver solver(sys);
    const Eigen::MatrixXd a = assemble_dense(sys);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    for (unsigned s = 0; s < 3; ++s) {
      const Eigen::VectorXd v = random_vector(54, s);
      EXPECT_LT(rel_err(solver.apply(v), a * v), 1e-13);
      EXPECT_LT(rel_err(solver.apply_transpose(v), a.transpose() * v), 1e-13);
      EXPECT_LT(rel_err(solver.solve(v), lu.solve(v)), 1e-11);
      EXPECT_LT(rel_err(solver.solve_transpose(v), lu.transpose().solve(v)), 1e-11);
    }
  }
}

TEST(AllAtOnceSolver, TwoDimensional) {
  const auto a = sample_2d([](double x1, double x2) { return 1.0 + x1 * x2; }, 3, 4);
  AllAtOnceSystem sys(build_space_2d(1.4, 1.8, 3, 4, 0.7, 1.1, a), build_time_q(0.5, 5));
  const AllAtOnceSolver solver(sys);
  const Eigen::VectorXd v = random_vector(60, 4);
  EXPECT_LT(rel_err(sys.apply(solver.solve(v)), v), 1e-12);
  EXPECT_LT(rel_err(solver.solve_transpose(solver.apply_transpose(v)), v), 1e-12);
}

TEST(TimeOperators, HThetaTranspose) {
  const auto t = build_time_q(0.3, 6);
  const Eigen::VectorXd v = random_vector(6, 2);
  Eigen::VectorXd w = v;
  t.apply_h_theta_transpose(w);
  EXPECT_LT(rel_err(w, t.dense_h_theta().transpose() * v), 1e-15);
}
