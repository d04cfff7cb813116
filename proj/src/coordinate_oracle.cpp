#include "chebsie/coordinate_oracle.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "chebsie/errors.hpp"

namespace chebsie {

namespace {

using State = std::array<double, 2>;

constexpr double kStartRadius = 1e-6;
constexpr double kDecayExponent = 36.0;  // e^-36 tail at r_max
constexpr double kRelTol = 1e-13;
constexpr double kAbsTol = 1e-16;
constexpr int kMaxSteps = 2'000'000;

class Shooter {
 public:
  explicit Shooter(const RadialProblem& p) : p_(p) {}

  // u'' = q(r) u.
  double q(double r, double eps) const {
    const double l = p_.ell;
    return l * (l + 1.0) / (r * r) + 2.0 * p_.mu_a * (-p_.alpha / r + p_.slope * r - eps);
  }

  double effective_potential(double r) const {
    const double l = p_.ell;
    return l * (l + 1.0) / (2.0 * p_.mu_a * r * r) - p_.alpha / r + p_.slope * r;
  }

  // Location of the minimum of the effective potential (unimodal for
  // Coulomb + linear + centrifugal).
  double potential_minimum() const {
    auto slope_at = [&](double r) {
      const double l = p_.ell;
      return -l * (l + 1.0) / (p_.mu_a * r * r * r) + p_.alpha / (r * r) + p_.slope;
    };
    if (slope_at(kStartRadius) >= 0.0) return kStartRadius;
    double lo = kStartRadius;
    double hi = 1.0;
    while (slope_at(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (slope_at(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
  }

  // Outermost classical turning point for energy eps.
  double turning_point(double eps) const {
    const double rmin = potential_minimum();
    if (effective_potential(rmin) >= eps) return rmin;
    double hi = std::max(2.0 * rmin, 1.0);
    int guard = 0;
    while (effective_potential(hi) < eps) {
      hi *= 2.0;
      if (++guard > 200) throw NumericalError("solve_radial: energy above the potential at infinity");
    }
    double lo = rmin;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (effective_potential(mid) < eps ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  double cutoff(double eps, double r_turn) const {
    if (p_.r_max > 0.0) return p_.r_max;
    double r = r_turn + std::max(p_.margin, 5.0 * std::sqrt(r_turn));
    // Extend until the WKB decay exponent past the turning point is large.
    double exponent = 0.0;
    const double h = 0.01 * std::max(1.0, std::sqrt(std::max(r_turn, 1.0)));
    for (double x = r_turn; ; x += h) {
      if (exponent >= kDecayExponent && x >= r) return x;
      exponent += std::sqrt(std::max(q(x + 0.5 * h, eps), 0.0)) * h;
      if (x > 1e7) throw NumericalError("solve_radial: no decaying tail; extend the domain");
    }
  }

  struct Trace {
    State y;
    int sign_changes = 0;
  };

  // Integrates u'' = q u from r0 to r1 (forward or backward in r).
  Trace integrate(State y, double r0, double r1, double eps) const {
    namespace ode = boost::numeric::odeint;
    const double dir = r1 >= r0 ? 1.0 : -1.0;
    // s runs forward; r = r0 + dir * s, so d/ds = dir d/dr.
    auto rhs = [&](const State& v, State& dv, double s) {
      const double r = r0 + dir * s;
      dv[0] = v[1];
      dv[1] = q(r, eps) * v[0];
    };
    State v{y[0], dir * y[1]};
    auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State>>(kAbsTol, kRelTol);
    const double length = std::abs(r1 - r0);
    double s = 0.0;
    double ds = std::min(0.1 * std::min(r0, r1) + 1e-8, 1e-2 * length);
    Trace out;
    double prev = v[0];
    int steps = 0;
    while (s < length) {
      if (s + ds > length) ds = length - s;
      if (stepper.try_step(rhs, v, s, ds) == ode::success) {
        if ((v[0] < 0.0) != (prev < 0.0) && v[0] != 0.0 && prev != 0.0) ++out.sign_changes;
        prev = v[0];
        const double big = std::max(std::abs(v[0]), std::abs(v[1]));
        if (big > 1e200) {
          v[0] *= 1e-200;
          v[1] *= 1e-200;
        }
      }
      if (++steps > kMaxSteps || ds < 1e-300) {
        throw NumericalError("solve_radial: step control failed near r = " +
                             std::to_string(r0 + dir * s) + " (eps = " + std::to_string(eps) + ")");
      }
    }
    out.y = {v[0], dir * v[1]};
    return out;
  }

  // Series start u = r^{l+1}(1 + c1 r + c2 r^2), divided by r0^{l+1}.
  State origin_state(double eps) const {
    const double l = p_.ell;
    const double r = kStartRadius;
    const double c1 = -p_.mu_a * p_.alpha / (l + 1.0);
    const double c2 = 2.0 * p_.mu_a * (-p_.alpha * c1 - eps) / (4.0 * l + 6.0);
    return {1.0 + c1 * r + c2 * r * r,
            ((l + 1.0) + (l + 2.0) * c1 * r + (l + 3.0) * c2 * r * r) / r};
  }

  int count_nodes(double eps) const {
    const double rt = turning_point(eps);
    const double rmax = cutoff(eps, rt);
    return integrate(origin_state(eps), kStartRadius, rmax, eps).sign_changes;
  }

  // Normalized Wronskian of the outward and inward solutions at r_match.
  double mismatch(double eps, double r_match, double r_max) const {
    const auto out = integrate(origin_state(eps), kStartRadius, r_match, eps).y;
    const State tail{1.0, -std::sqrt(std::max(q(r_max, eps), 0.0))};
    const auto in = integrate(tail, r_max, r_match, eps).y;
    const double w = out[1] * in[0] - out[0] * in[1];
    return w / (std::hypot(out[0], out[1]) * std::hypot(in[0], in[1]));
  }

  int stitched_nodes(double eps, double r_match, double r_max) const {
    const auto out = integrate(origin_state(eps), kStartRadius, r_match, eps);
    const State tail{1.0, -std::sqrt(std::max(q(r_max, eps), 0.0))};
    const auto in = integrate(tail, r_max, r_match, eps);
    return out.sign_changes + in.sign_changes;
  }

 private:
  const RadialProblem& p_;
};

}  // namespace

RadialSolution solve_radial(const RadialProblem& problem) {
  if (problem.ell < 0) throw std::invalid_argument("solve_radial: negative ell");
  if (problem.level < 0) throw std::invalid_argument("solve_radial: negative level");
  if (!(problem.mu_a > 0.0)) throw std::invalid_argument("solve_radial: mu_a must be positive");
  if (!(problem.alpha >= 0.0) || !(problem.slope >= 0.0)) {
    throw std::invalid_argument("solve_radial: couplings must be nonnegative");
  }
  if (problem.alpha == 0.0 && problem.slope == 0.0) {
    throw std::invalid_argument("solve_radial: no potential, no bound states");
  }
  if (!(problem.margin >= 5.0)) throw std::invalid_argument("solve_radial: margin must be >= 5");

  const Shooter sh(problem);
  const int n = problem.level;

  // Lower end below the ground state of the partial wave.
  double lo = -1.0;
  if (problem.alpha > 0.0) {
    const double l1 = problem.ell + 1.0;
    lo = -1.01 * problem.mu_a * problem.alpha * problem.alpha / (2.0 * l1 * l1) - 1e-3;
  }
  if (sh.count_nodes(lo) > n) {
    throw NumericalError("solve_radial: lower energy bound already has too many nodes");
  }

  double hi;
  int guard = 0;
  if (problem.slope > 0.0) {
    double step = 1.0;
    hi = lo + step;
    while (sh.count_nodes(hi) <= n) {
      lo = hi;
      step *= 2.0;
      hi += step;
      if (++guard > 60) throw NumericalError("solve_radial: could not bracket the level");
    }
  } else {
    hi = 0.5 * lo;
    while (sh.count_nodes(hi) <= n) {
      lo = hi;
      hi *= 0.5;
      if (++guard > 200) {
        throw NumericalError("solve_radial: could not bracket the level below the continuum");
      }
    }
  }

  for (guard = 0; hi - lo > 1e-7 * std::max(1.0, std::abs(hi)) && guard < 200; ++guard) {
    const double mid = 0.5 * (lo + hi);
    (sh.count_nodes(mid) <= n ? lo : hi) = mid;
  }

  const double mid = 0.5 * (lo + hi);
  const double r_match = sh.turning_point(mid);
  const double r_max = sh.cutoff(hi, sh.turning_point(hi));
  auto f = [&](double e) { return sh.mismatch(e, r_match, r_max); };

  double eps;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if ((f_lo < 0.0) != (f_hi < 0.0)) {
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(
        f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(50), iters);
    eps = 0.5 * (root.first + root.second);
  } else {
    // Fall back to node-count bisection to full precision.
    for (guard = 0; guard < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(hi)); ++guard) {
      const double m = 0.5 * (lo + hi);
      (sh.count_nodes(m) <= n ? lo : hi) = m;
    }
    eps = 0.5 * (lo + hi);
  }

  return {eps, sh.stitched_nodes(eps, r_match, r_max), r_max, r_match};
}

double hydrogen_energy(int n, int ell, double alpha, double mu_a) {
  if (n < 0 || ell < 0) throw std::invalid_argument("hydrogen_energy: negative quantum number");
  if (!(alpha > 0.0) || !(mu_a > 0.0)) {
    throw std::invalid_argument("hydrogen_energy: alpha and mu_a must be positive");
  }
  const double principal = n + ell + 1.0;
  return -mu_a * alpha * alpha / (2.0 * principal * principal);
}

double airy_reference(int nu) {
  static constexpr std::array<double, 5> zeros{
      2.338107410459767, 4.087949444130970, 5.520559828095551,
      6.786708090071759, 7.944133587120853};
  if (nu < 1 || nu > 5) {
    throw std::out_of_range("airy_reference: nu = " + std::to_string(nu) + " outside 1..5");
  }
  return zeros[static_cast<std::size_t>(nu - 1)];
}

}  // namespace chebsie
