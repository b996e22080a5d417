#pragma once

#include <optional>

#include "atomchain/domain.hpp"

namespace atomchain {

/// Upper end of the coupling range over which the closed forms were tabulated.
inline constexpr double analytic_validity_max = 0.5;

/// Closed-form transverse amplitude factors in the Coulomb (ka0 -> 0) limit.
struct ApproxAmplitudes {
  double t0 = 1.0;               ///< interior atom
  std::optional<double> t1;      ///< end atom (absent for the infinite chain)
  std::optional<double> t2;      ///< second atom (two-neighbour truncation only)
  AmplitudeMethod order = AmplitudeMethod::infinite_chain;
  bool extrapolated = false;     ///< coupling outside [0, analytic_validity_max]
};

/// Nearest-neighbour truncation: t0 = 1/(1+2C), t1 = (1+C)/(1+2C).
ApproxAmplitudes one_neighbor(double coupling);

/// Two-neighbour truncation. Throws InvalidArgument at the C = 1 pole.
ApproxAmplitudes two_neighbor(double coupling);

/// Interior amplitude of the infinite chain, 1/(1 + 2 C zeta(3)).
ApproxAmplitudes infinite_chain(double coupling);

/// Longitudinal amplitude T^z for the given truncation order.
///
/// In ZMode::paper this is the optical-range relation -2 t_x. In
/// ZMode::equation it is the interior solution of the z-row itself,
/// 1/(1 - 2 sum_d C_d^z), i.e. 1/(1-4C), 1/(1-4.5C) or 1/(1-4C zeta(3)); this
/// has a longitudinal resonance and is rejected within 1e-6 of its pole.
double z_amplitude(double coupling, double t_x, ZMode z_mode,
                   AmplitudeMethod order = AmplitudeMethod::infinite_chain);

}  // namespace atomchain
