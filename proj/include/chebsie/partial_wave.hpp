#pragma once

#include <vector>

namespace chebsie {

/// A function value together with its derivative in the argument.
struct ValueAndSlope {
  double value = 0.0;
  double slope = 0.0;
};

/// Legendre polynomial P_ell(z) and P_ell'(z). Any real z is accepted; the
/// kernels only ever use z >= 1. Throws std::invalid_argument for ell < 0.
ValueAndSlope legendre_p(int ell, double z);

/// P_0(z) .. P_ell(z) and their derivatives.
std::vector<ValueAndSlope> legendre_table(int ell, double z);

/// Polynomial part of Q_ell: w_{ell-1}(z) = sum_{n=1}^{ell} P_{n-1}(z) P_{ell-n}(z) / n,
/// so that Q_ell = P_ell Q_0 - w_{ell-1}. The term does not exist for ell = 0
/// and that case throws std::invalid_argument.
ValueAndSlope w_poly(int ell, double z);

/// Q_0(z) = (1/2) log((z+1)/(z-1)) for z > 1; std::domain_error otherwise.
double q0(double z);

/// Q_0'(z) = 1 / (1 - z^2) for z > 1; std::domain_error otherwise.
double q0_prime(double z);

/// z = (x^2 + x'^2) / (2 x x'), symmetric in its arguments.
double kernel_z(double x, double xp);

/// z - 1 = (x - x')^2 / (2 x x') without cancellation near the diagonal.
double kernel_z_minus_one(double x, double xp);

/// Factors multiplying each quadrature class in the dimensionless
/// partial-wave equation at fixed external momentum x and internal x'.
///
/// With L = log|(x'+x)/(x'-x)| the right-hand side reads
///
///   int [linear_log L + linear_regular] phi dx'
/// + PV int dx'/(x'-x) [pv_factor chi(x') + pv_factor_dx phi(x')]
/// + int [coulomb_log L + coulomb_regular] phi dx'
///
/// where chi = dphi/dx'. The Coulomb entries are already multiplied by
/// alpha; every entry is finite on the diagonal x = x'.
struct KernelPieces {
  int ell = 0;
  double linear_log = 0.0;       // P_ell'(z) / (pi x^2)
  double linear_regular = 0.0;   // -w_{ell-1}'(z) / (pi x^2)
  double pv_factor = 0.0;        // -(4/pi) x'^2 P_ell(z) / (x'+x)^2
  double pv_factor_dx = 0.0;     // d/dx' of pv_factor
  double coulomb_log = 0.0;      // -(alpha / (pi x)) P_ell(z) x'
  double coulomb_regular = 0.0;  // (alpha / (pi x)) w_{ell-1}(z) x'
};

/// Throws std::invalid_argument for nonpositive momenta or negative ell.
KernelPieces kernel_pieces(int ell, double x, double xp, double alpha);

}  // namespace chebsie
