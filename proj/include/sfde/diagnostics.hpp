#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "sfde/operators.hpp"
#include "sfde/symbols.hpp"

namespace sfde {

// SFDE_DENSE_CAP overrides the default dense order cap.
Index dense_cap_from_env();

struct SpectrumReport {
  Eigen::VectorXcd eigenvalues;
  Index order = 0;
  std::string label;
};

SpectrumReport dense_eigenvalues(const Eigen::MatrixXd& a, std::string label = {},
                                 Index cap = kDefaultDenseCap);
SpectrumReport dense_eigenvalues(const Eigen::MatrixXcd& a, std::string label = {},
                                 Index cap = kDefaultDenseCap);

// Descending.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a, Index cap = kDefaultDenseCap);

// Orders above this use Lanczos on the normal equations.
inline constexpr Index kDenseSvdLimit = 1024;

double condition_number_2(const Eigen::MatrixXd& a, Index cap = kDefaultDenseCap);

using VectorMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct ExtremeSingularValues {
  double largest = 0.0;
  double smallest = 0.0;
  double condition() const { return largest / smallest; }
};

// B, B^T, B^{-1}, B^{-T} supplied as maps of R^n.
ExtremeSingularValues extreme_singular_values(Index n, const VectorMap& apply,
                                              const VectorMap& apply_transpose,
                                              const VectorMap& solve,
                                              const VectorMap& solve_transpose,
                                              double tol = 1e-12);

// Largest eigenvalue of a symmetric positive semidefinite map.
double lanczos_largest(Index n, const VectorMap& apply, double tol = 1e-12);

struct ClusterMetric {
  Complex center;
  double epsilon = 0.0;
  double inside_fraction = 0.0;
  Index outlier_count = 0;
  Index order = 0;
};

ClusterMetric cluster_fraction(const SpectrumReport& spectrum, Complex center, double epsilon);

struct CloudComparison {
  double mean_nearest_distance = 0.0;
  double max_sorted_modulus_gap = 0.0;
};

CloudComparison symbol_spectrum_compare(const Eigen::VectorXcd& spectrum,
                                        const Eigen::VectorXcd& symbol_cloud);
void write_cloud_pairs_csv(std::ostream& out, const Eigen::VectorXcd& spectrum,
                           const Eigen::VectorXcd& symbol_cloud);

// Sorted singular values against sorted |symbol| samples, each run of
// (samples / order) consecutive sorted samples averaged into one value.
// Returns sum |sigma_i - q_i| / sum |q_i|.
double singular_value_distribution_check(const Eigen::MatrixXd& op,
                                         const Eigen::VectorXcd& symbol_samples,
                                         Index cap = kDefaultDenseCap);

}  // namespace sfde
