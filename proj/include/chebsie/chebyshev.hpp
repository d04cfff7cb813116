#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace chebsie {

/// First-kind Chebyshev polynomial T_n(t) on [-1, 1], by the three-term
/// recurrence. Throws std::domain_error for |t| > 1.
double chebyshev_t(int n, double t);

/// The n zeros of T_n, t_i = cos(pi (i - 1/2) / n), in decreasing order.
/// Throws std::invalid_argument for n < 2.
std::vector<double> chebyshev_nodes(int n);

enum class SingularKind { cauchy_pv, log_kernel };

/// Quadrature weights for one evaluation point tau of a singular kernel.
///
///   cauchy_pv:  PV int_{-1}^{1} f(t) / (t - tau) dt  ~  sum_i values[i] f(t_i)
///   log_kernel: int_{-1}^{1} f(t) log|t - tau| dt     ~  sum_i values[i] f(t_i)
struct SingularWeights {
  SingularKind kind;
  double tau;
  std::vector<double> values;

  /// sum_i values[i] * samples[i], compensated.
  double apply(std::span<const double> samples) const;
};

/// Chebyshev mesh of the first kind with its interpolation, differentiation
/// and quadrature tables.
///
/// Indices are zero-based: node j = 0 is the one closest to t = +1. All tables
/// are built in the constructor and never change afterwards, so a grid can be
/// shared freely between threads. Rules are exact for polynomials of degree
/// below order().
class ChebGrid {
 public:
  explicit ChebGrid(int order);

  /// Process-wide immutable cache keyed by order.
  static std::shared_ptr<const ChebGrid> shared(int order);

  int order() const { return order_; }
  std::span<const double> nodes() const { return nodes_; }
  double node(int j) const { return nodes_[static_cast<std::size_t>(j)]; }

  /// w_i = int_{-1}^{1} G_i(t) dt (Fejer's first rule).
  std::span<const double> plain_weights() const { return plain_weights_; }

  /// D_ij = G_j'(t_i): (D f)_i is the derivative of the interpolant at t_i.
  const Eigen::MatrixXd& diff_matrix() const { return diff_; }

  /// Cardinal function G_j(t) with G_j(t_k) = delta_jk.
  double cardinal(int j, double t) const;

  /// Chebyshev coefficients a_n of the interpolant, f(t) = sum_n a_n T_n(t).
  std::vector<double> coefficients(std::span<const double> values) const;

  /// Interpolant of mesh values evaluated at |t| <= 1 (Clenshaw).
  double interpolate(std::span<const double> values, double t) const;

  /// Cauchy principal value weights omega_i(tau), -1 < tau < 1.
  SingularWeights cauchy_weights(double tau) const;

  /// Log-kernel weights Omega_i(tau), -1 <= tau <= 1.
  SingularWeights log_weights(double tau) const;

  /// Row i holds omega_j(t_i) for every j.
  const Eigen::MatrixXd& cauchy_table() const { return cauchy_table_; }

  /// Row i holds Omega_j(t_i) for every j.
  const Eigen::MatrixXd& log_table() const { return log_table_; }

 private:
  std::vector<double> project(std::span<const double> moments) const;

  int order_;
  std::vector<double> nodes_;
  std::vector<double> angles_;
  // basis_(n, i) = (2/N)' T_n(t_i), the primed factor halving n = 0.
  Eigen::MatrixXd basis_;
  std::vector<double> plain_weights_;
  Eigen::MatrixXd diff_;
  Eigen::MatrixXd cauchy_table_;
  Eigen::MatrixXd log_table_;
};

namespace moments {

/// int_{-1}^{1} T_n(t) dt.
double plain(int n);

/// PV int T_n(t) / (t - tau) dt for n = 0..count-1, -1 < tau < 1.
std::vector<double> cauchy(double tau, int count);

/// int T_n(t) log|t - tau| dt for n = 0..count-1, -1 <= tau <= 1.
std::vector<double> log_kernel(double tau, int count);

}  // namespace moments

}  // namespace chebsie
