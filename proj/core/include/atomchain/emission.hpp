#pragma once

#include <cstddef>
#include <optional>

#include "atomchain/domain.hpp"
#include "atomchain/quadrature.hpp"
#include "atomchain/solver.hpp"

namespace atomchain {

/// Decay-rate enhancement tau_1 / tau(r_j) = |T^x|^2 sin^2(theta_d) + |T^z|^2 cos^2(theta_d).
/// The same bracket gives the frequency-shift ratio Delta / Delta_1.
double rate_ratio(double tx, double tz, const DipoleOrientation& orientation);
double rate_ratio(cplx tx, cplx tz, const DipoleOrientation& orientation);

/// Reciprocal of the rate ratio; +infinity for a non-radiating configuration.
double lifetime_ratio(double rate);

struct QuadratureEstimate {
  double value = 0.0;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
};

/// Decay-rate ratio from the solid-angle integral
///   (3 / 8 pi) sum_lambda \oint |u_d . f_lambda(r_j)|^2 dOmega
/// with the mode functions solved at every quadrature direction. Reuses the
/// solver's factorizations, so pass one ChainSolver across calls for the same
/// chain.
QuadratureEstimate rate_ratio_quadrature(ChainSolver& solver, std::size_t atom_index,
                                         const DipoleOrientation& orientation,
                                         const SphereGrid& grid = {});

QuadratureEstimate rate_ratio_quadrature(const ChainSpec& chain, std::size_t atom_index,
                                         const DipoleOrientation& orientation,
                                         const SolveOptions& options,
                                         const SphereGrid& grid = {});

/// Bloch-vector inversion <sigma_3(t)> = -1 + (1 + sigma3_initial) exp(-t / tau).
/// The upper-level population is (1 + value) / 2.
double excited_population(double t_over_tau, double sigma3_initial);

/// Unit vector along which the in-chain radiation pattern is oriented, for
/// amplitude ratio r = T^z / T^x.
Vec3 effective_dipole(const DipoleOrientation& orientation, double ratio_r);

/// Tilt gamma between u_d and the effective dipole, in radians.
double rotation_angle(const DipoleOrientation& orientation, double ratio_r);

/// Overall scale of the angular pattern.
///  - dipole_strength: |T^x|^2 sin^2 + |T^z|^2 cos^2, integrates to the decay rate
///  - transverse_only: |T^x|^2, the printed prefactor; equal at theta_d = pi/2
enum class PatternPrefactor { dipole_strength, transverse_only };

double pattern_scale(double tx, double tz, const DipoleOrientation& orientation,
                     PatternPrefactor prefactor = PatternPrefactor::dipole_strength);

/// Relative emitted intensity in direction s (constant w0^4 d0^2 / 2 pi c^3
/// factored out).
double angular_intensity(const DipoleOrientation& orientation, double tx, double tz,
                         const Vec3& direction_s, double upper_population,
                         PatternPrefactor prefactor = PatternPrefactor::dipole_strength);

struct EmissionReport {
  std::size_t atom_index = 1;
  double rate_ratio = 1.0;
  double lifetime_ratio = 1.0;
  double shift_ratio = 1.0;
  double gamma = 0.0;
  Vec3 effective_dipole{};
  double pattern_scale = 1.0;
  bool infinite_lifetime = false;
};

/// All single-emitter observables for atom j. Complex amplitudes enter the
/// rates through their moduli; the pattern orientation uses Re(T^z / T^x).
EmissionReport emission_report(std::size_t atom_index, cplx tx, cplx tz,
                               const DipoleOrientation& orientation,
                               PatternPrefactor prefactor = PatternPrefactor::dipole_strength);

struct AbsoluteEmission {
  std::optional<double> lifetime;
  std::optional<double> shift;
};

AbsoluteEmission absolute_values(const EmissionReport& report, const ReferenceScales& scales);

}  // namespace atomchain
