#include "chebsie/partial_wave.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chebsie {

std::vector<ValueAndSlope> legendre_table(int ell, double z) {
  if (ell < 0) throw std::invalid_argument("legendre_p: negative ell");
  std::vector<ValueAndSlope> p(static_cast<std::size_t>(ell) + 1);
  p[0] = {1.0, 0.0};
  if (ell == 0) return p;
  p[1] = {z, 1.0};
  for (int k = 1; k < ell; ++k) {
    // Bonnet, and P'_{k+1} = P'_{k-1} + (2k+1) P_k which stays exact at z = 1.
    p[k + 1].value = ((2 * k + 1) * z * p[k].value - k * p[k - 1].value) / (k + 1);
    p[k + 1].slope = p[k - 1].slope + (2 * k + 1) * p[k].value;
  }
  return p;
}

ValueAndSlope legendre_p(int ell, double z) { return legendre_table(ell, z).back(); }

ValueAndSlope w_poly(int ell, double z) {
  if (ell < 1) {
    throw std::invalid_argument("w_poly: the polynomial part of Q_ell is absent for ell = 0");
  }
  const auto p = legendre_table(ell, z);
  ValueAndSlope w;
  for (int n = 1; n <= ell; ++n) {
    const auto& a = p[static_cast<std::size_t>(n - 1)];
    const auto& b = p[static_cast<std::size_t>(ell - n)];
    w.value += a.value * b.value / n;
    w.slope += (a.slope * b.value + a.value * b.slope) / n;
  }
  return w;
}

double q0(double z) {
  if (!(z > 1.0)) {
    throw std::domain_error("q0: singular argument z = " + std::to_string(z));
  }
  return 0.5 * std::log((z + 1.0) / (z - 1.0));
}

double q0_prime(double z) {
  if (!(z > 1.0)) {
    throw std::domain_error("q0_prime: singular argument z = " + std::to_string(z));
  }
  return 1.0 / ((1.0 - z) * (1.0 + z));
}

double kernel_z(double x, double xp) { return (x * x + xp * xp) / (2.0 * x * xp); }

double kernel_z_minus_one(double x, double xp) {
  const double d = x - xp;
  return d * d / (2.0 * x * xp);
}

KernelPieces kernel_pieces(int ell, double x, double xp, double alpha) {
  if (!(x > 0.0) || !(xp > 0.0)) {
    throw std::invalid_argument("kernel_pieces: momenta must be positive");
  }
  if (ell < 0) throw std::invalid_argument("kernel_pieces: negative ell");

  constexpr double pi = std::numbers::pi;
  const double z = 1.0 + kernel_z_minus_one(x, xp);
  const ValueAndSlope p = legendre_p(ell, z);
  const ValueAndSlope w = ell > 0 ? w_poly(ell, z) : ValueAndSlope{};

  KernelPieces k;
  k.ell = ell;
  k.linear_log = p.slope / (pi * x * x);
  k.linear_regular = -w.slope / (pi * x * x);

  const double sum = xp + x;
  const double f = xp * xp * p.value / (sum * sum);
  // dz/dx' = (x'^2 - x^2) / (2 x x'^2); the product with x'^2/(x'+x)^2 simplifies.
  const double df = 2.0 * x * xp / (sum * sum * sum) * p.value +
                    (xp - x) / (2.0 * x * sum) * p.slope;
  k.pv_factor = -4.0 / pi * f;
  k.pv_factor_dx = -4.0 / pi * df;

  k.coulomb_log = -alpha / (pi * x) * p.value * xp;
  k.coulomb_regular = alpha / (pi * x) * w.value * xp;
  return k;
}

}  // namespace chebsie
