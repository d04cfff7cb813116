#pragma once

namespace chebsie {

/// Radial problem in configuration space, dimensionless units of a:
///
///   -u''/(2 mu a) + [ell(ell+1)/(2 mu a r^2) - alpha/r + slope r] u = eps u
struct RadialProblem {
  int ell = 0;
  double alpha = 0.0;
  double slope = 1.0;
  double mu_a = 0.5;
  int level = 0;         // nodal index n
  double r_max = 0.0;    // 0 selects the cutoff automatically
  double margin = 10.0;  // minimum distance of r_max past the turning point (>= 5)
};

struct RadialSolution {
  double epsilon;
  int nodes;         // sign changes of u on (0, r_max) at the converged energy
  double r_max;
  double r_match;
};

/// Shooting with node counting: bisection on the node count brackets the
/// level, then the outward/inward Wronskian mismatch at the turning point is
/// driven to zero. Throws NumericalError when no bracket is found or the
/// integrator fails, std::invalid_argument on a malformed problem.
RadialSolution solve_radial(const RadialProblem& problem);

/// -(mu a) alpha^2 / (2 (n + ell + 1)^2).
double hydrogen_energy(int n, int ell, double alpha, double mu_a);

/// nu-th level (nu = 1..5) of -u'' + r u = eps u, i.e. minus the nu-th zero
/// of Ai. Throws std::out_of_range outside 1..5.
double airy_reference(int nu);

}  // namespace chebsie
