#include "atomchain/emission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace atomchain {

namespace {

double sq(double v) { return v * v; }

// (tx sin cos, tx sin sin, tz cos), normalized. Equals effective_dipole with
// r = tz / tx but stays defined for tx = 0.
Vec3 scaled_dipole(double tx, double tz, const DipoleOrientation& o) {
  const double st = std::sin(o.theta_d);
  const double ct = std::cos(o.theta_d);
  Vec3 v{tx * st * std::cos(o.phi_d), tx * st * std::sin(o.phi_d), tz * ct};
  const double n = norm(v);
  if (!(n > 0.0)) throw InvalidArgument("effective dipole is degenerate (zero vector)");
  for (auto& c : v) c /= n;
  return v;
}

}  // namespace

double rate_ratio(double tx, double tz, const DipoleOrientation& o) {
  return sq(tx) * sq(std::sin(o.theta_d)) + sq(tz) * sq(std::cos(o.theta_d));
}

double rate_ratio(cplx tx, cplx tz, const DipoleOrientation& o) {
  return std::norm(tx) * sq(std::sin(o.theta_d)) + std::norm(tz) * sq(std::cos(o.theta_d));
}

double lifetime_ratio(double rate) {
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / rate;
}

QuadratureEstimate rate_ratio_quadrature(ChainSolver& solver, std::size_t atom_index,
                                         const DipoleOrientation& orientation,
                                         const SphereGrid& grid) {
  const auto& chain = solver.chain();
  if (atom_index < 1 || atom_index > chain.n_atoms())
    throw InvalidArgument("atom index out of range");
  if (grid.n_theta < 1 || grid.n_phi < 1)
    throw InvalidArgument("sphere grid needs at least one node per axis");

  const std::size_t j = atom_index - 1;
  const Vec3 u = orientation.unit();
  const auto rule = gauss_legendre(grid.n_theta);
  const double dphi = 2.0 * pi / double(grid.n_phi);

  double sum = 0.0;
  for (std::size_t a = 0; a < grid.n_theta; ++a) {
    const double theta = std::acos(rule.nodes[a]);
    // Mode functions at phi = pi; other azimuths are rotations about z.
    const cplx gy =
        solver.solve_component(ModeSpec(theta, Polarization::perpendicular), Component::y)
            .values[j];
    const ModeSpec par(theta, Polarization::parallel);
    const cplx gx = solver.solve_component(par, Component::x).values[j];
    const cplx gz = solver.solve_component(par, Component::z).values[j];

    double ring = 0.0;
    for (std::size_t b = 0; b < grid.n_phi; ++b) {
      const double phi = dphi * double(b);
      const double c = std::cos(phi), s = std::sin(phi);
      const cplx perp = gy * (u[0] * s - u[1] * c);
      const cplx para = -gx * (u[0] * c + u[1] * s) + gz * u[2];
      ring += std::norm(perp) + std::norm(para);
    }
    sum += rule.weights[a] * dphi * ring;
  }
  return {3.0 / (8.0 * pi) * sum, grid.n_theta, grid.n_phi};
}

QuadratureEstimate rate_ratio_quadrature(const ChainSpec& chain, std::size_t atom_index,
                                         const DipoleOrientation& orientation,
                                         const SolveOptions& options, const SphereGrid& grid) {
  ChainSolver solver(chain, options);
  return rate_ratio_quadrature(solver, atom_index, orientation, grid);
}

double excited_population(double t_over_tau, double sigma3_initial) {
  if (!(sigma3_initial >= -1.0 && sigma3_initial <= 1.0))
    throw InvalidArgument("initial inversion must lie in [-1, 1]");
  if (!(t_over_tau >= 0.0)) throw InvalidArgument("time must be non-negative");
  return -1.0 + (1.0 + sigma3_initial) * std::exp(-t_over_tau);
}

Vec3 effective_dipole(const DipoleOrientation& orientation, double ratio_r) {
  return scaled_dipole(1.0, ratio_r, orientation);
}

double rotation_angle(const DipoleOrientation& orientation, double ratio_r) {
  const double c = dot(orientation.unit(), effective_dipole(orientation, ratio_r));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double pattern_scale(double tx, double tz, const DipoleOrientation& orientation,
                     PatternPrefactor prefactor) {
  if (prefactor == PatternPrefactor::transverse_only) return sq(tx);
  return rate_ratio(tx, tz, orientation);
}

double angular_intensity(const DipoleOrientation& orientation, double tx, double tz,
                         const Vec3& direction_s, double upper_population,
                         PatternPrefactor prefactor) {
  if (!(upper_population >= 0.0 && upper_population <= 1.0))
    throw InvalidArgument("upper-level population must lie in [0, 1]");
  const double scale = pattern_scale(tx, tz, orientation, prefactor);
  if (scale == 0.0) return 0.0;
  const double proj = dot(scaled_dipole(tx, tz, orientation), direction_s);
  return upper_population * scale * (1.0 - proj * proj);
}

EmissionReport emission_report(std::size_t atom_index, cplx tx, cplx tz,
                               const DipoleOrientation& orientation,
                               PatternPrefactor prefactor) {
  EmissionReport r;
  r.atom_index = atom_index;
  r.rate_ratio = rate_ratio(tx, tz, orientation);
  r.shift_ratio = r.rate_ratio;
  r.infinite_lifetime = r.rate_ratio == 0.0;
  r.lifetime_ratio = lifetime_ratio(r.rate_ratio);
  r.pattern_scale = prefactor == PatternPrefactor::transverse_only ? std::norm(tx)
                                                                    : r.rate_ratio;
  if (r.infinite_lifetime) {
    r.effective_dipole = orientation.unit();
    r.gamma = 0.0;
    return r;
  }
  // Orientation uses the real ratio; the imaginary part is O(ka0).
  const double ratio = tx != cplx{} ? (tz / tx).real() : 0.0;
  r.effective_dipole = tx != cplx{} ? scaled_dipole(1.0, ratio, orientation)
                                    : scaled_dipole(0.0, tz.real() >= 0 ? 1.0 : -1.0, orientation);
  r.gamma = std::acos(std::clamp(dot(orientation.unit(), r.effective_dipole), -1.0, 1.0));
  return r;
}

AbsoluteEmission absolute_values(const EmissionReport& report, const ReferenceScales& scales) {
  AbsoluteEmission out;
  if (scales.free_space_lifetime())
    out.lifetime = *scales.free_space_lifetime() * report.lifetime_ratio;
  if (scales.free_space_shift()) out.shift = *scales.free_space_shift() * report.shift_ratio;
  return out;
}

}  // namespace atomchain
