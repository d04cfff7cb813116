#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "chebsie/chebyshev.hpp"
#include "oracles.hpp"

using chebsie::ChebGrid;

namespace {

std::vector<double> sample(const ChebGrid& g, const std::function<double(double)>& f) {
  std::vector<double> v;
  for (double t : g.nodes()) v.push_back(f(t));
  return v;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("nodes are the first-kind zeros in decreasing order") {
  const auto n2 = chebsie::chebyshev_nodes(2);
  CHECK(n2[0] == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(n2[1] == doctest::Approx(-0.70710678).epsilon(1e-8));

  const auto n4 = chebsie::chebyshev_nodes(4);
  const double expect[] = {0.92387953, 0.38268343, -0.38268343, -0.92387953};
  for (int i = 0; i < 4; ++i) CHECK(n4[i] == doctest::Approx(expect[i]).epsilon(1e-8));

  for (int N : {5, 16, 33, 128}) {
    const auto t = chebsie::chebyshev_nodes(N);
    for (int i = 0; i < N; ++i) {
      CHECK(std::abs(t[i]) < 1.0);
      CHECK(t[i] == doctest::Approx(-t[N - 1 - i]).epsilon(1e-15));
      if (i > 0) CHECK(t[i] < t[i - 1]);
      // Recurrence roundoff at a node grows roughly like N^2 eps.
      CHECK(std::abs(chebsie::chebyshev_t(N, t[i])) < 1e-15 * N * N);
    }
  }
  CHECK_THROWS_AS(chebsie::chebyshev_nodes(1), std::invalid_argument);
  CHECK_THROWS_AS(ChebGrid(0), std::invalid_argument);
}

TEST_CASE("chebyshev_t matches the cosine form") {
  CHECK(chebsie::chebyshev_t(0, 0.3) == 1.0);
  CHECK(chebsie::chebyshev_t(1, 0.3) == 0.3);
  CHECK(chebsie::chebyshev_t(5, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  for (int n = 0; n < 60; n += 7) {
    for (double t : {-1.0, -0.77, 0.0, 0.31, 0.999, 1.0}) {
      CHECK(std::abs(chebsie::chebyshev_t(n, t) - std::cos(n * std::acos(t))) < 1e-13);
    }
  }
  CHECK_THROWS_AS(chebsie::chebyshev_t(3, 1.0001), std::domain_error);
}

TEST_CASE("cardinal functions") {
  const ChebGrid g2(2);
  CHECK(g2.cardinal(0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

  for (int N : {3, 17, 100, 400}) {
    const ChebGrid g(N);
    double worst = 0.0;
    for (int j = 0; j < N; j += std::max(1, N / 25)) {
      for (int k = 0; k < N; ++k) {
        worst = std::max(worst, std::abs(g.cardinal(j, g.node(k)) - (j == k ? 1.0 : 0.0)));
      }
    }
    CHECK(worst <= 1e-12);
  }
  CHECK_THROWS(g2.cardinal(2, 0.0));
  CHECK_THROWS(g2.cardinal(0, 1.5));
}

TEST_CASE("interpolation") {
  const ChebGrid g4(4);
  const auto ones = sample(g4, [](double) { return 1.0; });
  CHECK(g4.interpolate(ones, 0.77) == doctest::Approx(1.0).epsilon(1e-14));
  const auto cube = sample(g4, [](double t) { return t * t * t; });
  CHECK(g4.interpolate(cube, 0.2) == doctest::Approx(0.008).epsilon(1e-12));

  const ChebGrid g16(16);
  const auto e = sample(g16, [](double t) { return std::exp(t); });
  CHECK(std::abs(g16.interpolate(e, 0.1) - std::exp(0.1)) < 1e-12);

  // Spectral convergence: the error for e^t falls geometrically until roundoff.
  double previous = 1.0;
  for (int N : {4, 6, 8, 10, 12}) {
    const ChebGrid g(N);
    const auto v = sample(g, [](double t) { return std::exp(t); });
    double err = 0.0;
    for (double t = -1.0; t <= 1.0; t += 0.01) err = std::max(err, std::abs(g.interpolate(v, t) - std::exp(t)));
    CHECK(err < previous / 20.0);
    previous = err;
  }

  std::vector<double> short_values(3, 1.0);
  CHECK_THROWS_AS(g4.interpolate(short_values, 0.0), std::invalid_argument);
  CHECK_THROWS(g4.interpolate(ones, -1.2));
}

TEST_CASE("differentiation matrix") {
  for (int N : {4, 8, 32, 100}) {
    const ChebGrid g(N);
    const auto& D = g.diff_matrix();
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(N);
    CHECK((D * one).cwiseAbs().maxCoeff() <= 1e-10 * N * N);
    Eigen::VectorXd t(N);
    for (int i = 0; i < N; ++i) t(i) = g.node(i);
    CHECK(((D * t) - one).cwiseAbs().maxCoeff() <= 1e-10 * N);
  }

  // T_5' = 5 U_4.
  const ChebGrid g8(8);
  Eigen::VectorXd t5(8);
  for (int i = 0; i < 8; ++i) t5(i) = chebsie::chebyshev_t(5, g8.node(i));
  const Eigen::VectorXd d = g8.diff_matrix() * t5;
  for (int i = 0; i < 8; ++i) {
    const double th = std::acos(g8.node(i));
    CHECK(std::abs(d(i) - 5.0 * std::sin(5.0 * th) / std::sin(th)) < 1e-11);
  }

  // Consistent with central differences of the interpolant.
  const ChebGrid g(24);
  const auto v = sample(g, [](double x) { return std::sin(2.0 * x) + x * x; });
  const Eigen::VectorXd dv = g.diff_matrix() * Eigen::Map<const Eigen::VectorXd>(v.data(), 24);
  for (double h : {1e-3, 5e-4}) {
    double worst = 0.0;
    for (int i = 0; i < 24; ++i) {
      const double fd = (g.interpolate(v, g.node(i) + h) - g.interpolate(v, g.node(i) - h)) / (2 * h);
      worst = std::max(worst, std::abs(fd - dv(i)));
    }
    CHECK(worst < 20.0 * h * h);
  }
}

TEST_CASE("plain weights") {
  const ChebGrid g2(2);
  CHECK(g2.plain_weights()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g2.plain_weights()[1] == doctest::Approx(1.0).epsilon(1e-15));

  for (int N : {2, 3, 9, 64, 301}) {
    const ChebGrid g(N);
    double sum = 0.0;
    for (double w : g.plain_weights()) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 2.0) <= 1e-13);
  }

  const ChebGrid g8(8);
  CHECK(dot(g8.plain_weights(), sample(g8, [](double t) { return std::pow(t, 4); })) ==
        doctest::Approx(0.4).epsilon(1e-13));
}

TEST_CASE("Cauchy principal value weights") {
  const ChebGrid g(12);
  const auto ones = sample(g, [](double) { return 1.0; });
  CHECK(std::abs(g.cauchy_weights(0.0).apply(ones)) < 1e-14);
  CHECK(g.cauchy_weights(0.5).apply(ones) == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));

  const auto sq = sample(g, [](double t) { return t * t; });
  CHECK(g.cauchy_weights(0.3).apply(sq) ==
        doctest::Approx(0.6 + 0.09 * std::log(0.7 / 1.3)).epsilon(1e-12));

  for (double tau : {-0.97, -0.2, 0.0, 0.61, 0.999}) {
    CHECK(g.cauchy_weights(tau).apply(ones) ==
          doctest::Approx(std::log((1 - tau) / (1 + tau))).epsilon(1e-12));
  }

  // The table rows are the weights at the nodes themselves.
  const auto w = g.cauchy_weights(g.node(4));
  for (int j = 0; j < 12; ++j) CHECK(std::abs(w.values[j] - g.cauchy_table()(4, j)) < 1e-12);

  CHECK_THROWS_AS(g.cauchy_weights(1.0), std::domain_error);
  CHECK_THROWS_AS(g.cauchy_weights(-1.0), std::domain_error);
}

TEST_CASE("log-kernel weights") {
  const ChebGrid g(12);
  const auto ones = sample(g, [](double) { return 1.0; });
  CHECK(g.log_weights(0.0).apply(ones) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(g.log_weights(1.0).apply(ones) == doctest::Approx(2.0 * std::log(2.0) - 2.0).epsilon(1e-13));
  CHECK(std::abs(g.log_weights(0.0).apply(sample(g, [](double t) { return t; }))) < 1e-14);

  for (double tau : {-1.0, -0.5, 0.123, 0.9}) {
    auto xlogx = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
    const double exact = xlogx(1 - tau) + xlogx(1 + tau) - 2.0;
    CHECK(std::abs(g.log_weights(tau).apply(ones) - exact) <= 1e-12);
  }

  const auto w = g.log_weights(g.node(7));
  for (int j = 0; j < 12; ++j) CHECK(std::abs(w.values[j] - g.log_table()(7, j)) < 1e-12);

  CHECK_THROWS_AS(g.log_weights(1.01), std::domain_error);
}

TEST_CASE("singular rules agree with the subtraction oracle on smooth functions") {
  const ChebGrid g(64);
  const std::function<double(double)> fs[] = {
      [](double t) { return std::exp(t); },
      [](double t) { return 1.0 / (2.0 + t); },
      [](double t) { return std::sin(3.0 * t); },
  };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pick(-0.99, 0.99);
  for (int k = 0; k < 6; ++k) {
    const double tau = pick(rng);
    for (const auto& f : fs) {
      const auto v = sample(g, f);
      CHECK(std::abs(g.cauchy_weights(tau).apply(v) - oracle::cauchy_pv(f, tau)) <= 1e-9);
      CHECK(std::abs(g.log_weights(tau).apply(v) - oracle::log_kernel(f, tau)) <= 1e-9);
    }
  }
}

TEST_CASE("moments") {
  CHECK(chebsie::moments::plain(0) == 2.0);
  CHECK(chebsie::moments::plain(3) == 0.0);
  CHECK(chebsie::moments::plain(4) == doctest::Approx(-2.0 / 15.0));

  // rho_1 = PV int t/(t-tau) = 2 + tau rho_0.
  const double tau = 0.4;
  const auto rho = chebsie::moments::cauchy(tau, 3);
  CHECK(rho[0] == doctest::Approx(std::log(0.6 / 1.4)));
  CHECK(rho[1] == doctest::Approx(2.0 + tau * rho[0]));

  const auto lam = chebsie::moments::log_kernel(tau, 2);
  CHECK(lam[0] == doctest::Approx(oracle::log_kernel([](double) { return 1.0; }, tau)).epsilon(1e-12));
  CHECK(lam[1] == doctest::Approx(oracle::log_kernel([](double t) { return t; }, tau)).epsilon(1e-12));
}

TEST_CASE("shared grids are cached") {
  const auto a = ChebGrid::shared(40);
  const auto b = ChebGrid::shared(40);
  CHECK(a.get() == b.get());
  CHECK(a->order() == 40);
}
