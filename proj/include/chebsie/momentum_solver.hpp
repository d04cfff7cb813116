#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "chebsie/chebyshev.hpp"

namespace chebsie {

enum class MappingKind { rational, trigonometric, logarithmic };

/// Value and derivative of a map t in (-1, 1) -> x in (0, inf).
struct MappedPoint {
  double x;
  double jacobian;  // dx/dt
};

/// Change of variables from the Chebyshev interval to the half line.
///
///   rational       x = sigma (1 + t) / (1 - t)
///   trigonometric  x = sigma tan(pi (1 + t) / 4)
///   logarithmic    x = sigma log((3 + t) / (1 - t))
struct Mapping {
  MappingKind kind = MappingKind::rational;
  double sigma = 1.0;

  /// Throws std::domain_error unless |t| < 1.
  MappedPoint map(double t) const;
  /// Inverse map; throws std::domain_error unless x > 0.
  double to_interval(double x) const;

  /// J(t') / g(t, t') with g the divided difference (x(t') - x(t)) / (t' - t).
  /// Converts dx'/(x' - x) into dt'/(t' - t).
  double pv_factor(double t, double tp) const;

  /// log((x + x') / g(t, t')). Converts log|(x'+x)/(x'-x)| into
  /// this minus log|t' - t|.
  double log_ratio(double t, double tp) const;

  bool operator==(const Mapping&) const = default;
};

MappingKind parse_mapping_kind(std::string_view name);
std::string_view to_string(MappingKind kind);

enum class KineticMode { nonrelativistic, salpeter };

/// Dimensionless problem definition in units of the length a.
///
/// Energies are epsilon = E a, momenta x = k a. The linear potential has unit
/// strength, s = 1 / (2 mu a) multiplies the nonrelativistic kinetic term,
/// and am1, am2 are the quark masses times a (Salpeter mode only).
struct PotentialParams {
  int ell = 0;
  double alpha = 0.0;
  double s = 1.0;
  bool include_linear = true;
  bool include_coulomb = true;
  KineticMode kinetic = KineticMode::nonrelativistic;
  double am1 = 0.0;
  double am2 = 0.0;

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;

  /// Rigorous lower bound of the partial-wave spectrum. Eigenvalues of the
  /// discretized operator below it are discretization artifacts.
  double spectral_floor() const;

  /// Start of the continuum: 0 without the confining term, +inf with it.
  /// Eigenvalues at or above it are not bound states.
  double continuum_threshold() const;

  bool operator==(const PotentialParams&) const = default;
};

KineticMode parse_kinetic_mode(std::string_view name);
std::string_view to_string(KineticMode mode);

/// Where a matrix came from; assemble_hamiltonian refuses mismatches.
struct Provenance {
  int order = 0;
  Mapping mapping;
  PotentialParams params;

  bool operator==(const Provenance&) const = default;
};

struct PotentialMatrix {
  Eigen::MatrixXd values;
  Provenance provenance;
};

struct HamiltonianMatrix {
  Eigen::MatrixXd values;
  Provenance provenance;
  std::vector<double> momenta;  // x_i
  std::vector<double> measure;  // w_i dx/dt(t_i): int g dx ~ sum_i measure_i g(x_i)
};

/// Discretized potential operator V (non-symmetric, N x N). Throws
/// std::invalid_argument when both potentials are disabled.
PotentialMatrix assemble_potential(const PotentialParams& params, const ChebGrid& grid,
                                   const Mapping& mapping);

/// Kinetic energy at momentum x for the selected mode.
double kinetic_energy(const PotentialParams& params, double x);

/// H = V + diag(K(x_i)). Throws std::invalid_argument if V was assembled for
/// a different (N, mapping, params).
HamiltonianMatrix assemble_hamiltonian(const PotentialMatrix& potential,
                                       const PotentialParams& params, const ChebGrid& grid,
                                       const Mapping& mapping);

/// Full eigen-decomposition of a real non-symmetric matrix. Column k of
/// vectors is the right eigenvector of eigenvalues[k].
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  Eigen::MatrixXcd vectors;
};

/// Balanced real Schur decomposition. Throws NumericalError when the QR
/// iteration fails.
Spectrum solve_spectrum(const Eigen::MatrixXd& matrix);

struct BoundLevel {
  int ell = 0;
  int n = 0;
  double epsilon = 0.0;
  std::vector<double> mesh_values;  // phi(x_j), unit norm int |phi|^2 x^2 dx
  double residual_norm = 0.0;       // normwise backward error of the eigenpair
  double imag_part = 0.0;
};

struct LevelSelection {
  std::vector<BoundLevel> levels;
  bool partial = false;  // fewer than the requested count passed the filters
};

inline constexpr double kImagTolerance = 1e-8;
inline constexpr double kResidualTolerance = 1e-8;

/// Filters eigenpairs (imaginary part, backward error, spectral floor and
/// continuum threshold), sorts by energy, assigns nodal indices from 0 and
/// normalizes the eigenvectors.
LevelSelection select_bound_states(const Spectrum& spectrum, const HamiltonianMatrix& h,
                                   int count);

/// Interpolated wavefunction at momentum x > 0.
double wavefunction_at(const BoundLevel& level, const ChebGrid& grid, const Mapping& mapping,
                       double x);

/// Grid, assembly, eigensolve and selection in one call.
struct SolveResult {
  std::shared_ptr<const ChebGrid> grid;
  Mapping mapping;
  LevelSelection selection;
};

SolveResult solve_levels(const PotentialParams& params, int order, const Mapping& mapping,
                         int count);

struct ConvergenceTable {
  std::vector<int> orders;
  // energies[k][n]: level n at orders[k]; NaN when the level was not found.
  std::vector<std::vector<double>> energies;
  // differences[k][n] = |energies[k+1][n] - energies[k][n]|.
  std::vector<std::vector<double>> differences;
};

/// Throws std::invalid_argument unless orders are strictly increasing.
ConvergenceTable convergence_scan(const PotentialParams& params, const Mapping& mapping,
                                  std::span<const int> orders, int count);

struct SigmaScanEntry {
  double sigma;
  double instability;  // max_n |eps_N(n) - eps_{3N/2}(n)|
};

struct SigmaScan {
  std::vector<SigmaScanEntry> entries;
  double best_sigma;
};

/// Picks sigma by comparing each candidate's levels at N and 3N/2 and keeping
/// the most stable one. Uses only the discretization, no reference values.
SigmaScan sigma_scan(const PotentialParams& params, int order, MappingKind kind,
                     std::span<const double> candidates, int count);

}  // namespace chebsie
