#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "atomchain/domain.hpp"

namespace atomchain {

struct GaussLegendreRule {
  std::vector<double> nodes;    ///< ascending, in (-1, 1)
  std::vector<double> weights;  ///< sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussLegendreRule gauss_legendre(std::size_t n);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times an
/// equispaced trapezoid in phi.
struct SphereGrid {
  std::size_t n_theta = 32;
  std::size_t n_phi = 64;
};

struct SpherePoint {
  double theta;
  double phi;
  double weight;  ///< solid-angle weight; all weights sum to 4 pi
  Vec3 direction;
};

std::vector<SpherePoint> sphere_points(const SphereGrid& grid);

/// Integral of f over the full solid angle. Summation is sequential in grid
/// order so the result is reproducible bit-for-bit.
double integrate_sphere(const std::function<double(const SpherePoint&)>& f,
                        const SphereGrid& grid);

}  // namespace atomchain
