#include "atomchain/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace atomchain {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const unsigned deg = unsigned(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess for the i-th largest root
    double x = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = std::legendre(deg, x);
      const double pm1 = deg > 1 ? std::legendre(deg - 1, x) : 1.0;
      dp = double(n) * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      const double p = std::legendre(deg, x);
      const double pm1 = deg > 1 ? std::legendre(deg - 1, x) : 1.0;
      dp = double(n) * (x * p - pm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::vector<SpherePoint> sphere_points(const SphereGrid& grid) {
  if (grid.n_theta < 1 || grid.n_phi < 1)
    throw InvalidArgument("sphere grid needs at least one node per axis");
  const auto rule = gauss_legendre(grid.n_theta);
  const double dphi = 2.0 * pi / double(grid.n_phi);
  std::vector<SpherePoint> pts;
  pts.reserve(grid.n_theta * grid.n_phi);
  for (std::size_t a = 0; a < grid.n_theta; ++a) {
    const double ct = rule.nodes[a];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double theta = std::acos(ct);
    for (std::size_t b = 0; b < grid.n_phi; ++b) {
      const double phi = dphi * double(b);
      pts.push_back({theta, phi, rule.weights[a] * dphi,
                     {st * std::cos(phi), st * std::sin(phi), ct}});
    }
  }
  return pts;
}

double integrate_sphere(const std::function<double(const SpherePoint&)>& f,
                        const SphereGrid& grid) {
  double sum = 0.0;
  for (const auto& p : sphere_points(grid)) sum += p.weight * f(p);
  return sum;
}

}  // namespace atomchain
