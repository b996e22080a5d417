#include <doctest.h>

#include <cmath>
#include <random>

#include "atomchain/quadrature.hpp"
#include "oracles.hpp"

using namespace atomchain;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 32u, 64u}) {
    const auto rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 1; i < n; ++i) CHECK(rule.nodes[i - 1] < rule.nodes[i]);
    for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
      double q = 0.0;
      for (std::size_t i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], double(k));
      const double exact = k % 2 ? 0.0 : 2.0 / double(k + 1);
      CHECK(std::abs(q - exact) < 1e-13);
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);
}

TEST_CASE("sphere weights cover the full solid angle") {
  for (SphereGrid g : {SphereGrid{32, 64}, SphereGrid{4, 3}, SphereGrid{1, 1}}) {
    const auto pts = sphere_points(g);
    CHECK(pts.size() == g.n_theta * g.n_phi);
    double s = 0.0;
    for (const auto& p : pts) {
      s += p.weight;
      CHECK(norm(p.direction) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(s == doctest::Approx(4.0 * pi).epsilon(1e-13));
  }
}

TEST_CASE("dipole pattern integrates to 8 pi / 3") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Vec3 u{g(rng), g(rng), g(rng)};
    const double n = norm(u);
    for (auto& c : u) c /= n;
    const double v = integrate_sphere(
        [&](const SpherePoint& p) {
          const double d = dot(u, p.direction);
          return 1.0 - d * d;
        },
        {32, 64});
    CHECK(std::abs(v - 8.0 * pi / 3.0) < 1e-10);
  }
}

TEST_CASE("sphere quadrature agrees with a midpoint oracle") {
  auto f = [](double t, double p) {
    return std::exp(std::sin(t) * std::cos(p)) * (1.0 + std::cos(t) * std::cos(t));
  };
  const double gl = integrate_sphere([&](const SpherePoint& p) { return f(p.theta, p.phi); },
                                     {32, 64});
  const double mid = oracle::sphere_midpoint(f, 2000, 2000);
  CHECK(std::abs(gl - mid) < 1e-5);
}

TEST_CASE("integrate_sphere is reproducible") {
  auto f = [](const SpherePoint& p) { return std::sin(3.0 * p.phi) + p.direction[2]; };
  const double a = integrate_sphere(f, {17, 23});
  const double b = integrate_sphere(f, {17, 23});
  CHECK(a == b);
}
