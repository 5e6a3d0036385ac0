#include "sfde/diagnostics.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace sfde {

namespace {

void check_cap(Index order, Index cap) {
  if (order > cap)
    throw std::length_error("dense order " + std::to_string(order) + " exceeds cap " +
                            std::to_string(cap));
}

void check_square(Index rows, Index cols) {
  if (rows != cols) throw std::invalid_argument("matrix must be square");
}

}  // namespace

Index dense_cap_from_env() {
  const char* s = std::getenv("SFDE_DENSE_CAP");
  if (s == nullptr || *s == '\0') return kDefaultDenseCap;
  char* end = nullptr;
  const long long v = std::strtoll(s, &end, 10);
  if (*end != '\0' || v <= 0)
    throw std::invalid_argument(std::string("SFDE_DENSE_CAP must be a positive integer, got '") +
                                s + "'");
  return static_cast<Index>(v);
}

SpectrumReport dense_eigenvalues(const Eigen::MatrixXd& a, std::string label, Index cap) {
  check_square(a.rows(), a.cols());
  const Index n = a.rows();
  check_cap(n, cap);
  SpectrumReport report{Eigen::VectorXcd(n), n, std::move(label)};
  if (n == 0) return report;
  Eigen::MatrixXd work = a;
  Eigen::VectorXd wr(n), wi(n);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n), work.data(),
                    static_cast<lapack_int>(n), wr.data(), wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("dgeev failed with info " + std::to_string(info));
  for (Index i = 0; i < n; ++i) report.eigenvalues[i] = {wr[i], wi[i]};
  return report;
}

SpectrumReport dense_eigenvalues(const Eigen::MatrixXcd& a, std::string label, Index cap) {
  check_square(a.rows(), a.cols());
  const Index n = a.rows();
  check_cap(n, cap);
  SpectrumReport report{Eigen::VectorXcd(n), n, std::move(label)};
  if (n == 0) return report;
  Eigen::MatrixXcd work = a;
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(work.data()), static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(report.eigenvalues.data()), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("zgeev failed with info " + std::to_string(info));
  return report;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a, Index cap) {
  check_cap(std::max(a.rows(), a.cols()), cap);
  const Index k = std::min(a.rows(), a.cols());
  Eigen::VectorXd s(k);
  if (k == 0) return s;
  Eigen::MatrixXd work = a;
  const lapack_int info = LAPACKE_dgesdd(
      LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(a.rows()), static_cast<lapack_int>(a.cols()),
      work.data(), static_cast<lapack_int>(a.rows()), s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("dgesdd failed with info " + std::to_string(info));
  return s;
}

double lanczos_largest(Index n, const VectorMap& apply, double tol) {
  if (n < 1) throw std::invalid_argument("Lanczos needs a positive dimension");
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  Eigen::VectorXd q(n);
  for (Index i = 0; i < n; ++i) q[i] = normal(rng);
  q.normalize();

  const Index max_steps = std::min<Index>(n, 600);
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  double estimate = 0.0;
  for (Index k = 0; k < max_steps; ++k) {
    basis.push_back(q);
    Eigen::VectorXd w = apply(q);
    alpha.push_back(q.dot(w));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const double b_next = w.norm();

    const Index m = static_cast<Index>(alpha.size());
    if (m % 4 == 0 || b_next == 0.0 || k + 1 == max_steps || m < 4) {
      Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd e = m > 1 ? Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1)
                                : Eigen::VectorXd();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      estimate = es.eigenvalues()[m - 1];
      const double residual = std::abs(b_next * es.eigenvectors()(m - 1, m - 1));
      if (residual <= tol * std::abs(estimate)) return estimate;
    }
    if (b_next <= std::numeric_limits<double>::epsilon() * std::abs(estimate)) return estimate;
    beta.push_back(b_next);
    q = w / b_next;
  }
  return estimate;
}

ExtremeSingularValues extreme_singular_values(Index n, const VectorMap& apply,
                                              const VectorMap& apply_transpose,
                                              const VectorMap& solve,
                                              const VectorMap& solve_transpose, double tol) {
  const double top = lanczos_largest(
      n, [&](const Eigen::VectorXd& v) { return apply_transpose(apply(v)); }, tol);
  const double inv = lanczos_largest(
      n, [&](const Eigen::VectorXd& v) { return solve(solve_transpose(v)); }, tol);
  return {std::sqrt(top), 1.0 / std::sqrt(inv)};
}

double condition_number_2(const Eigen::MatrixXd& a, Index cap) {
  check_square(a.rows(), a.cols());
  const Index n = a.rows();
  check_cap(n, cap);
  double largest = 0.0, smallest = 0.0;
  if (n <= kDenseSvdLimit) {
    const Eigen::VectorXd s = singular_values(a, cap);
    largest = s[0];
    smallest = s[n - 1];
  } else {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const auto ext = extreme_singular_values(
        n, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return a * v; },
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return a.transpose() * v; },
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return lu.solve(v); },
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return lu.transpose().solve(v); });
    largest = ext.largest;
    smallest = ext.smallest;
  }
  if (!(smallest > 1e-30 * largest) || !std::isfinite(smallest))
    throw std::runtime_error("matrix is numerically singular");
  return largest / smallest;
}

ClusterMetric cluster_fraction(const SpectrumReport& spectrum, Complex center, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const Index n = spectrum.eigenvalues.size();
  Index inside = 0;
  for (Index i = 0; i < n; ++i)
    if (std::abs(spectrum.eigenvalues[i] - center) < epsilon) ++inside;
  ClusterMetric m{center, epsilon, n == 0 ? 1.0 : static_cast<double>(inside) / n, n - inside, n};
  return m;
}

namespace {

std::vector<double> sorted_moduli(const Eigen::VectorXcd& z) {
  std::vector<double> m(z.size());
  for (Index i = 0; i < z.size(); ++i) m[i] = std::abs(z[i]);
  std::sort(m.begin(), m.end());
  return m;
}

Index nearest_index(const Eigen::VectorXcd& cloud, Complex z) {
  Index best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < cloud.size(); ++j) {
    const double d = std::abs(cloud[j] - z);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

CloudComparison symbol_spectrum_compare(const Eigen::VectorXcd& spectrum,
                                        const Eigen::VectorXcd& symbol_cloud) {
  if (spectrum.size() == 0 || symbol_cloud.size() == 0)
    throw std::invalid_argument("clouds must be nonempty");
  CloudComparison c;
  double total = 0.0;
  for (Index i = 0; i < spectrum.size(); ++i)
    total += std::abs(symbol_cloud[nearest_index(symbol_cloud, spectrum[i])] - spectrum[i]);
  c.mean_nearest_distance = total / static_cast<double>(spectrum.size());

  const auto a = sorted_moduli(spectrum);
  const auto b = sorted_moduli(symbol_cloud);
  const std::size_t k = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < k; ++i) {
    // match by rank fraction when the sizes differ
    const std::size_t ia = a.size() == k ? i : i * a.size() / k;
    const std::size_t ib = b.size() == k ? i : i * b.size() / k;
    c.max_sorted_modulus_gap = std::max(c.max_sorted_modulus_gap, std::abs(a[ia] - b[ib]));
  }
  return c;
}

void write_cloud_pairs_csv(std::ostream& out, const Eigen::VectorXcd& spectrum,
                           const Eigen::VectorXcd& symbol_cloud) {
  out << "eig_re,eig_im,symbol_re,symbol_im,distance\n";
  const auto old_precision = out.precision(10);
  for (Index i = 0; i < spectrum.size(); ++i) {
    const Complex z = spectrum[i];
    const Complex w = symbol_cloud[nearest_index(symbol_cloud, z)];
    out << z.real() << ',' << z.imag() << ',' << w.real() << ',' << w.imag() << ','
        << std::abs(z - w) << '\n';
  }
  out.precision(old_precision);
}

double singular_value_distribution_check(const Eigen::MatrixXd& op,
                                         const Eigen::VectorXcd& symbol_samples, Index cap) {
  check_square(op.rows(), op.cols());
  const Index n = op.rows();
  const Index total = symbol_samples.size();
  if (total < n) throw std::invalid_argument("need at least one symbol sample per singular value");
  Eigen::VectorXd sigma = singular_values(op, cap);
  std::sort(sigma.begin(), sigma.end());
  const auto q = sorted_moduli(symbol_samples);

  double diff = 0.0, norm = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Index lo = i * total / n, hi = (i + 1) * total / n;
    double mean = 0.0;
    for (Index j = lo; j < hi; ++j) mean += q[j];
    mean /= static_cast<double>(hi - lo);
    diff += std::abs(sigma[i] - mean);
    norm += mean;
  }
  return norm > 0.0 ? diff / norm : diff;
}

}  // namespace sfde
