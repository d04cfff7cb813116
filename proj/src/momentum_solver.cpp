#include "chebsie/momentum_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "chebsie/errors.hpp"
#include "chebsie/partial_wave.hpp"

namespace chebsie {

namespace {

constexpr double kPi = std::numbers::pi;

// log1p(y) / y, continuous through y = 0.
double log1p_ratio(double y) {
  if (std::abs(y) < 1e-8) return 1.0 - 0.5 * y;
  return std::log1p(y) / y;
}

// sin(u) / u, continuous through u = 0.
double sinc(double u) {
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

void require_open_interval(double t) {
  if (!(std::abs(t) < 1.0)) {
    throw std::domain_error("mapping: t = " + std::to_string(t) + " outside (-1, 1)");
  }
}

}  // namespace

MappedPoint Mapping::map(double t) const {
  require_open_interval(t);
  switch (kind) {
    case MappingKind::rational:
      return {sigma * (1.0 + t) / (1.0 - t), 2.0 * sigma / ((1.0 - t) * (1.0 - t))};
    case MappingKind::trigonometric: {
      const double a = 0.25 * kPi * (1.0 + t);
      const double c = std::cos(a);
      return {sigma * std::tan(a), sigma * 0.25 * kPi / (c * c)};
    }
    case MappingKind::logarithmic:
      return {sigma * std::log((3.0 + t) / (1.0 - t)), 4.0 * sigma / ((3.0 + t) * (1.0 - t))};
  }
  throw std::logic_error("unknown mapping kind");
}

double Mapping::to_interval(double x) const {
  if (!(x > 0.0)) {
    throw std::domain_error("mapping: x = " + std::to_string(x) + " is not positive");
  }
  switch (kind) {
    case MappingKind::rational:
      return (x - sigma) / (x + sigma);
    case MappingKind::trigonometric:
      return 4.0 / kPi * std::atan(x / sigma) - 1.0;
    case MappingKind::logarithmic: {
      const double e = std::exp(x / sigma);
      return std::isinf(e) ? 1.0 : (e - 3.0) / (e + 1.0);
    }
  }
  throw std::logic_error("unknown mapping kind");
}

double Mapping::pv_factor(double t, double tp) const {
  switch (kind) {
    case MappingKind::rational:
      return (1.0 - t) / (1.0 - tp);
    case MappingKind::trigonometric: {
      const double a = 0.25 * kPi * (1.0 + tp);
      const double b = 0.25 * kPi * (1.0 + t);
      return std::cos(b) / (std::cos(a) * sinc(a - b));
    }
    case MappingKind::logarithmic: {
      const double d = tp - t;
      const double g = sigma * (log1p_ratio(d / (3.0 + t)) / (3.0 + t) +
                                log1p_ratio(-d / (1.0 - t)) / (1.0 - t));
      return map(tp).jacobian / g;
    }
  }
  throw std::logic_error("unknown mapping kind");
}

double Mapping::log_ratio(double t, double tp) const {
  switch (kind) {
    case MappingKind::rational:
      return std::log(1.0 - t * tp);
    case MappingKind::trigonometric: {
      const double a = 0.25 * kPi * (1.0 + tp);
      const double b = 0.25 * kPi * (1.0 + t);
      return std::log(std::sin(a + b) / (0.25 * kPi * sinc(a - b)));
    }
    case MappingKind::logarithmic: {
      const double d = tp - t;
      const double g = sigma * (log1p_ratio(d / (3.0 + t)) / (3.0 + t) +
                                log1p_ratio(-d / (1.0 - t)) / (1.0 - t));
      return std::log((map(t).x + map(tp).x) / g);
    }
  }
  throw std::logic_error("unknown mapping kind");
}

MappingKind parse_mapping_kind(std::string_view name) {
  if (name == "rational") return MappingKind::rational;
  if (name == "trigonometric") return MappingKind::trigonometric;
  if (name == "logarithmic") return MappingKind::logarithmic;
  throw std::invalid_argument("unknown mapping '" + std::string(name) + "'");
}

std::string_view to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::rational: return "rational";
    case MappingKind::trigonometric: return "trigonometric";
    case MappingKind::logarithmic: return "logarithmic";
  }
  return "?";
}

KineticMode parse_kinetic_mode(std::string_view name) {
  if (name == "nonrelativistic") return KineticMode::nonrelativistic;
  if (name == "salpeter") return KineticMode::salpeter;
  throw std::invalid_argument("unknown kinetic mode '" + std::string(name) + "'");
}

std::string_view to_string(KineticMode mode) {
  return mode == KineticMode::salpeter ? "salpeter" : "nonrelativistic";
}

void PotentialParams::validate() const {
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
  if (!(s > 0.0)) throw std::invalid_argument("s = 1/(2 mu a) must be positive");
  if (!include_linear && !include_coulomb) {
    throw std::invalid_argument("both the linear and the Coulomb potential are disabled");
  }
  if (kinetic == KineticMode::salpeter && !(am1 > 0.0 && am2 > 0.0)) {
    throw std::invalid_argument("Salpeter kinetic term needs positive quark masses");
  }
}

double PotentialParams::spectral_floor() const {
  const bool coulomb = include_coulomb && alpha > 0.0;
  if (!coulomb) return 0.0;
  if (kinetic == KineticMode::nonrelativistic) {
    // T + V_C >= hydrogen ground state of the partial wave; V_L >= 0.
    const double l1 = ell + 1.0;
    return -alpha * alpha / (4.0 * s * l1 * l1);
  }
  // 2|p| - alpha/r >= 0 for alpha <= 4/pi (Herbst), and sqrt(p^2+m^2) - m >= |p| - m.
  if (alpha <= 4.0 / kPi) return -(am1 + am2);
  return -std::numeric_limits<double>::infinity();
}

double PotentialParams::continuum_threshold() const {
  return include_linear ? std::numeric_limits<double>::infinity() : 0.0;
}

PotentialMatrix assemble_potential(const PotentialParams& params, const ChebGrid& grid,
                                   const Mapping& mapping) {
  params.validate();
  const int N = grid.order();
  const auto t = grid.nodes();
  const auto w = grid.plain_weights();
  const auto& omega = grid.cauchy_table();
  const auto& big_omega = grid.log_table();

  std::vector<MappedPoint> pts(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) pts[j] = mapping.map(t[j]);

  const bool linear = params.include_linear;
  const double alpha = params.include_coulomb ? params.alpha : 0.0;

  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(N, N);
  // chi_j = (1/J_j) sum_k D_jk X_k enters through A * D.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    const double x = pts[i].x;
    for (int j = 0; j < N; ++j) {
      const double xp = pts[j].x;
      const double jac = pts[j].jacobian;
      const KernelPieces k = kernel_pieces(params.ell, x, xp, alpha);

      const double regular = w[j] * jac;
      // Combine the smooth log and the weight before scaling so the
      // diagonal stays finite.
      const double log_part = (w[j] * mapping.log_ratio(t[i], t[j]) - big_omega(i, j)) * jac;
      const double pv_part = omega(i, j) * mapping.pv_factor(t[i], t[j]);

      double v = 0.0;
      if (linear) {
        v += k.linear_log * log_part + k.linear_regular * regular + k.pv_factor_dx * pv_part;
        A(i, j) = pv_part * k.pv_factor / jac;
      }
      if (alpha != 0.0) v += k.coulomb_log * log_part + k.coulomb_regular * regular;
      V(i, j) = v;
    }
  }
  if (linear) V.noalias() += A * grid.diff_matrix();
  return {std::move(V), Provenance{N, mapping, params}};
}

double kinetic_energy(const PotentialParams& params, double x) {
  if (params.kinetic == KineticMode::nonrelativistic) return params.s * x * x;
  // sqrt(x^2 + m^2) - m without cancellation at small x.
  auto shifted = [x](double m) { return x * x / (std::sqrt(x * x + m * m) + m); };
  return shifted(params.am1) + shifted(params.am2);
}

HamiltonianMatrix assemble_hamiltonian(const PotentialMatrix& potential,
                                       const PotentialParams& params, const ChebGrid& grid,
                                       const Mapping& mapping) {
  const Provenance expected{grid.order(), mapping, params};
  if (!(potential.provenance == expected) || potential.values.rows() != grid.order() ||
      potential.values.cols() != grid.order()) {
    throw std::invalid_argument(
        "assemble_hamiltonian: potential was assembled for a different (N, mapping, params)");
  }
  const int N = grid.order();
  HamiltonianMatrix h{potential.values, expected, {}, {}};
  h.momenta.resize(static_cast<std::size_t>(N));
  h.measure.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const MappedPoint p = mapping.map(grid.node(i));
    h.momenta[i] = p.x;
    h.measure[i] = grid.plain_weights()[i] * p.jacobian;
    h.values(i, i) += kinetic_energy(params, p.x);
  }
  return h;
}

namespace {

// Diagonal similarity by powers of two so that row and column norms match.
// Exact in floating point; returns the scaling d with A_bal = D^-1 A D.
Eigen::VectorXd balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  for (bool converged = false; !converged;) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double c = a.col(i).cwiseAbs().sum() - std::abs(a(i, i));
      const double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      double cs = c;
      while (cs < 0.5 * r) {
        f *= 2.0;
        cs *= 4.0;
      }
      while (cs > 2.0 * r) {
        f *= 0.5;
        cs *= 0.25;
      }
      if ((cs + r) / f < 0.95 * (c + r)) {
        converged = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

}  // namespace

Spectrum solve_spectrum(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("solve_spectrum: matrix is not square");
  }
  if (!matrix.allFinite()) throw NumericalError("solve_spectrum: matrix has non-finite entries");
  Eigen::MatrixXd a = matrix;
  const Eigen::VectorXd d = balance(a);
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(a, true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("solve_spectrum: real Schur iteration did not converge (N = " +
                         std::to_string(matrix.rows()) + ")");
  }
  Spectrum out;
  const auto& values = solver.eigenvalues();
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  out.vectors = d.cast<std::complex<double>>().asDiagonal() * solver.eigenvectors();
  return out;
}

LevelSelection select_bound_states(const Spectrum& spectrum, const HamiltonianMatrix& h,
                                   int count) {
  const auto& H = h.values;
  const double h_norm = H.norm();
  const double floor = h.provenance.params.spectral_floor();
  const double floor_slack = 1e-6 * std::max(1.0, std::abs(floor));
  const double ceiling = h.provenance.params.continuum_threshold();

  LevelSelection sel;
  std::vector<BoundLevel> accepted;
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    const double re = spectrum.eigenvalues[k].real();
    const double im = spectrum.eigenvalues[k].imag();
    if (std::abs(im) > kImagTolerance * std::max(1.0, std::abs(re))) continue;
    if (std::isfinite(floor) && re < floor - floor_slack) continue;
    if (!(re < ceiling)) continue;

    Eigen::VectorXd X = spectrum.vectors.col(static_cast<Eigen::Index>(k)).real();
    const double xnorm = X.norm();
    if (!(xnorm > 0.0)) continue;
    const double residual = (H * X - re * X).norm() / ((h_norm + std::abs(re)) * xnorm);
    if (!(residual <= kResidualTolerance)) continue;

    BoundLevel level;
    level.ell = h.provenance.params.ell;
    level.epsilon = re;
    level.imag_part = im;
    level.residual_norm = residual;
    level.mesh_values.assign(X.data(), X.data() + X.size());
    accepted.push_back(std::move(level));
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const BoundLevel& a, const BoundLevel& b) { return a.epsilon < b.epsilon; });

  const std::size_t N = h.momenta.size();
  for (auto& level : accepted) {
    if (static_cast<int>(sel.levels.size()) == count) break;
    auto& X = level.mesh_values;
    double norm2 = 0.0;
    double peak = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      norm2 += h.measure[j] * h.momenta[j] * h.momenta[j] * X[j] * X[j];
      peak = std::max(peak, std::abs(X[j]));
    }
    // Sign: positive at the first significant node counted from x = 0
    // (nodes are stored with decreasing x).
    double sign = 1.0;
    for (std::size_t j = N; j-- > 0;) {
      if (std::abs(X[j]) >= 1e-3 * peak) {
        sign = X[j] < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    const double scale = sign / std::sqrt(norm2);
    for (auto& v : X) v *= scale;
    level.n = static_cast<int>(sel.levels.size());
    sel.levels.push_back(std::move(level));
  }
  sel.partial = static_cast<int>(sel.levels.size()) < count;
  return sel;
}

double wavefunction_at(const BoundLevel& level, const ChebGrid& grid, const Mapping& mapping,
                       double x) {
  if (!(x > 0.0)) throw std::invalid_argument("wavefunction_at: x must be positive");
  return grid.interpolate(level.mesh_values, mapping.to_interval(x));
}

SolveResult solve_levels(const PotentialParams& params, int order, const Mapping& mapping,
                         int count) {
  auto grid = ChebGrid::shared(order);
  const auto V = assemble_potential(params, *grid, mapping);
  const auto H = assemble_hamiltonian(V, params, *grid, mapping);
  const auto spectrum = solve_spectrum(H.values);
  return {grid, mapping, select_bound_states(spectrum, H, count)};
}

ConvergenceTable convergence_scan(const PotentialParams& params, const Mapping& mapping,
                                  std::span<const int> orders, int count) {
  for (std::size_t k = 1; k < orders.size(); ++k) {
    if (orders[k] <= orders[k - 1]) {
      throw std::invalid_argument("convergence_scan: orders must be strictly increasing");
    }
  }
  ConvergenceTable table;
  table.orders.assign(orders.begin(), orders.end());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int N : orders) {
    const auto res = solve_levels(params, N, mapping, count);
    std::vector<double> row(static_cast<std::size_t>(count), nan);
    for (const auto& level : res.selection.levels) row[level.n] = level.epsilon;
    table.energies.push_back(std::move(row));
  }
  for (std::size_t k = 1; k < table.energies.size(); ++k) {
    std::vector<double> d(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
      d[n] = std::abs(table.energies[k][n] - table.energies[k - 1][n]);
    }
    table.differences.push_back(std::move(d));
  }
  return table;
}

SigmaScan sigma_scan(const PotentialParams& params, int order, MappingKind kind,
                     std::span<const double> candidates, int count) {
  if (candidates.empty()) throw std::invalid_argument("sigma_scan: no candidates");
  SigmaScan scan;
  scan.best_sigma = candidates.front();
  double best = std::numeric_limits<double>::infinity();
  const int fine = order + order / 2;
  for (double sigma : candidates) {
    const Mapping m{kind, sigma};
    const auto a = solve_levels(params, order, m, count).selection;
    const auto b = solve_levels(params, fine, m, count).selection;
    double worst = std::numeric_limits<double>::infinity();
    if (!a.partial && !b.partial) {
      worst = 0.0;
      for (int n = 0; n < count; ++n) {
        worst = std::max(worst, std::abs(a.levels[n].epsilon - b.levels[n].epsilon));
      }
    }
    scan.entries.push_back({sigma, worst});
    if (worst < best) {
      best = worst;
      scan.best_sigma = sigma;
    }
  }
  return scan;
}

}  // namespace chebsie
