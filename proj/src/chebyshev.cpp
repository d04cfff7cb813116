#include "chebsie/chebyshev.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "compensated.hpp"

namespace chebsie {

namespace {

void require_closed_interval(double t, const char* what) {
  if (!(std::abs(t) <= 1.0)) {
    throw std::domain_error(std::string(what) + ": argument " + std::to_string(t) +
                            " outside [-1, 1]");
  }
}

// T_0..T_{count-1} at t.
std::vector<double> chebyshev_values(double t, int count) {
  std::vector<double> T(static_cast<std::size_t>(std::max(count, 2)));
  T[0] = 1.0;
  T[1] = t;
  for (int n = 1; n + 1 < count; ++n) {
    T[n + 1] = 2.0 * t * T[n] - T[n - 1];
  }
  T.resize(static_cast<std::size_t>(count));
  return T;
}

// r_n(tau) = int (T_n(t) - T_n(tau)) / (t - tau) dt, n = 0..count-1. Regular on
// the closed interval; the Cauchy moments are rho_n = T_n(tau) rho_0 + r_n.
std::vector<double> regular_cauchy_moments(double tau, int count) {
  std::vector<double> r(static_cast<std::size_t>(std::max(count, 2)), 0.0);
  r[0] = 0.0;
  r[1] = 2.0;
  for (int n = 1; n + 1 < count; ++n) {
    r[n + 1] = 2.0 * tau * r[n] - r[n - 1] + 2.0 * moments::plain(n);
  }
  r.resize(static_cast<std::size_t>(count));
  return r;
}

// Antiderivative S_n of T_n written as a combination c_a T_a + c_b T_b.
struct Antiderivative {
  int a;
  double ca;
  int b;
  double cb;

  double eval(const std::vector<double>& seq) const {
    double v = ca * seq[static_cast<std::size_t>(a)];
    if (cb != 0.0) v += cb * seq[static_cast<std::size_t>(b)];
    return v;
  }
};

Antiderivative antiderivative(int n) {
  if (n == 0) return {1, 1.0, 0, 0.0};
  if (n == 1) return {2, 0.25, 0, 0.0};
  return {n + 1, 0.5 / (n + 1), n - 1, -0.5 / (n - 1)};
}

double clenshaw(std::span<const double> a, double t) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = a.size(); k-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (a.empty() ? 0.0 : a[0]);
}

}  // namespace

double SingularWeights::apply(std::span<const double> samples) const {
  if (samples.size() != values.size()) {
    throw std::invalid_argument("SingularWeights::apply: length mismatch");
  }
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < values.size(); ++i) acc.add(values[i] * samples[i]);
  return acc.value();
}

double chebyshev_t(int n, double t) {
  if (n < 0) throw std::invalid_argument("chebyshev_t: negative degree");
  require_closed_interval(t, "chebyshev_t");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> chebyshev_nodes(int n) {
  if (n < 2) {
    throw std::invalid_argument("invalid order " + std::to_string(n) +
                                ": a Chebyshev mesh needs at least 2 nodes");
  }
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    t[static_cast<std::size_t>(i)] = std::cos(std::numbers::pi * (i + 0.5) / n);
  }
  return t;
}

namespace moments {

double plain(int n) {
  if (n % 2 != 0) return 0.0;
  return 2.0 / (1.0 - static_cast<double>(n) * n);
}

std::vector<double> cauchy(double tau, int count) {
  if (!(std::abs(tau) < 1.0)) {
    throw std::domain_error(
        "Cauchy principal value undefined when tau coincides with an end-point");
  }
  const double rho0 = std::log((1.0 - tau) / (1.0 + tau));
  const auto T = chebyshev_values(tau, count);
  auto r = regular_cauchy_moments(tau, count);
  for (int n = 0; n < count; ++n) r[n] += T[n] * rho0;
  return r;
}

std::vector<double> log_kernel(double tau, int count) {
  require_closed_interval(tau, "log-kernel moments");
  const int span = count + 1;
  const auto T = chebyshev_values(tau, span);
  const auto r = regular_cauchy_moments(tau, span);
  std::vector<double> plus(static_cast<std::size_t>(span), 1.0);
  std::vector<double> minus(static_cast<std::size_t>(span));
  for (int m = 0; m < span; ++m) minus[m] = (m % 2 == 0) ? 1.0 : -1.0;

  // Integration by parts with the antiderivative pinned to zero at tau:
  //   int T_n log|t-tau| = [S~ log|t-tau|]_{-1}^{1} - int (S(t)-S(tau))/(t-tau).
  // S~(+-1) vanishes linearly as tau -> +-1, so the boundary term drops there.
  const double log_right = tau < 1.0 ? std::log1p(-tau) : 0.0;
  const double log_left = tau > -1.0 ? std::log1p(tau) : 0.0;
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const Antiderivative S = antiderivative(n);
    const double at_tau = S.eval(T);
    const double right = tau < 1.0 ? (S.eval(plus) - at_tau) * log_right : 0.0;
    const double left = tau > -1.0 ? (S.eval(minus) - at_tau) * log_left : 0.0;
    out[n] = right - left - S.eval(r);
  }
  return out;
}

}  // namespace moments

ChebGrid::ChebGrid(int order) : order_(order), nodes_(chebyshev_nodes(order)) {
  const int N = order_;
  angles_.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) angles_[i] = std::numbers::pi * (i + 0.5) / N;

  basis_.resize(N, N);
  for (int n = 0; n < N; ++n) {
    const double scale = (n == 0 ? 1.0 : 2.0) / N;
    for (int i = 0; i < N; ++i) basis_(n, i) = scale * std::cos(n * angles_[i]);
  }

  std::vector<double> mu(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) mu[n] = moments::plain(n);
  plain_weights_ = project(mu);

  // T_n'(t_i) = n U_{n-1}(t_i), U by its own recurrence.
  diff_.resize(N, N);
  std::vector<double> dT(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double t = nodes_[i];
    double u_prev = 0.0;
    double u_cur = 1.0;  // U_0
    dT[0] = 0.0;
    for (int n = 1; n < N; ++n) {
      dT[n] = n * u_cur;
      const double u_next = 2.0 * t * u_cur - u_prev;
      u_prev = u_cur;
      u_cur = u_next;
    }
    for (int j = 0; j < N; ++j) {
      detail::CompensatedSum acc;
      for (int n = 1; n < N; ++n) acc.add(basis_(n, j) * dT[n]);
      diff_(i, j) = acc.value();
    }
  }

  cauchy_table_.resize(N, N);
  log_table_.resize(N, N);
  for (int i = 0; i < N; ++i) {
    const double tau = nodes_[i];
    // G_j(t_i) = delta_ij, so only the diagonal carries the rho_0 term.
    const auto r = regular_cauchy_moments(tau, N);
    const auto regular = project(r);
    for (int j = 0; j < N; ++j) cauchy_table_(i, j) = regular[j];
    cauchy_table_(i, i) += std::log((1.0 - tau) / (1.0 + tau));

    const auto lam = moments::log_kernel(tau, N);
    const auto w = project(lam);
    for (int j = 0; j < N; ++j) log_table_(i, j) = w[j];
  }
}

std::shared_ptr<const ChebGrid> ChebGrid::shared(int order) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const ChebGrid>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }
  auto grid = std::make_shared<const ChebGrid>(order);
  std::lock_guard lock(mutex);
  return cache.try_emplace(order, std::move(grid)).first->second;
}

std::vector<double> ChebGrid::project(std::span<const double> moments) const {
  const int N = order_;
  std::vector<double> out(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    detail::CompensatedSum acc;
    for (int n = 0; n < N; ++n) acc.add(basis_(n, i) * moments[n]);
    out[i] = acc.value();
  }
  return out;
}

double ChebGrid::cardinal(int j, double t) const {
  if (j < 0 || j >= order_) throw std::out_of_range("cardinal: index out of range");
  require_closed_interval(t, "cardinal");
  // Barycentric form with first-kind weights (-1)^k sin(theta_k); exact at the nodes.
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < order_; ++k) {
    const double d = t - nodes_[k];
    if (d == 0.0) return k == j ? 1.0 : 0.0;
    const double w = (k % 2 == 0 ? 1.0 : -1.0) * std::sin(angles_[k]) / d;
    den += w;
    if (k == j) num = w;
  }
  return num / den;
}

std::vector<double> ChebGrid::coefficients(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != order_) {
    throw std::invalid_argument("coefficients: expected " + std::to_string(order_) +
                                " values, got " + std::to_string(values.size()));
  }
  std::vector<double> a(static_cast<std::size_t>(order_));
  for (int n = 0; n < order_; ++n) {
    detail::CompensatedSum acc;
    for (int i = 0; i < order_; ++i) acc.add(basis_(n, i) * values[i]);
    a[n] = acc.value();
  }
  return a;
}

double ChebGrid::interpolate(std::span<const double> values, double t) const {
  if (static_cast<int>(values.size()) != order_) {
    throw std::invalid_argument("interpolate: expected " + std::to_string(order_) +
                                " values, got " + std::to_string(values.size()));
  }
  require_closed_interval(t, "interpolate");
  return clenshaw(coefficients(values), t);
}

SingularWeights ChebGrid::cauchy_weights(double tau) const {
  if (!(std::abs(tau) < 1.0)) {
    throw std::domain_error(
        "Cauchy principal value undefined when tau coincides with an end-point");
  }
  const auto r = regular_cauchy_moments(tau, order_);
  auto w = project(r);
  const double rho0 = std::log((1.0 - tau) / (1.0 + tau));
  for (int j = 0; j < order_; ++j) w[j] += rho0 * cardinal(j, tau);
  return {SingularKind::cauchy_pv, tau, std::move(w)};
}

SingularWeights ChebGrid::log_weights(double tau) const {
  return {SingularKind::log_kernel, tau, project(moments::log_kernel(tau, order_))};
}

}  // namespace chebsie
