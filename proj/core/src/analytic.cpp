#include "atomchain/analytic.hpp"

#include <cmath>
#include <sstream>

namespace atomchain {

namespace {

void check_coupling(double c) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw InvalidArgument("normalized polarizability must be finite and non-negative");
}

bool outside_validity(double c) { return c > analytic_validity_max; }

}  // namespace

ApproxAmplitudes one_neighbor(double c) {
  check_coupling(c);
  ApproxAmplitudes a;
  a.order = AmplitudeMethod::one_neighbor;
  a.t0 = 1.0 / (1.0 + 2.0 * c);
  a.t1 = (1.0 + c) / (1.0 + 2.0 * c);
  a.extrapolated = outside_validity(c);
  return a;
}

ApproxAmplitudes two_neighbor(double c) {
  check_coupling(c);
  const double one_minus_c2 = 1.0 - c * c;
  if (std::abs(one_minus_c2) < 1e-12)
    throw InvalidArgument("two-neighbour amplitudes have a pole at C = 1");
  const double denom = (1.0 + 2.25 * c) * one_minus_c2;

  ApproxAmplitudes a;
  a.order = AmplitudeMethod::two_neighbor;
  a.t0 = 1.0 / (1.0 + 2.25 * c);
  a.t2 = (1.0 + 0.125 * c - 2.125 * c * c) / denom;
  a.t1 = 1.0 - c * (1.125 + 0.125 * c - 2.0 * c * c) / denom;
  a.extrapolated = outside_validity(c);
  return a;
}

ApproxAmplitudes infinite_chain(double c) {
  check_coupling(c);
  ApproxAmplitudes a;
  a.order = AmplitudeMethod::infinite_chain;
  a.t0 = 1.0 / (1.0 + 2.0 * c * riemann_zeta3());
  a.extrapolated = outside_validity(c);
  return a;
}

double z_amplitude(double c, double t_x, ZMode z_mode, AmplitudeMethod order) {
  if (!std::isfinite(c) || !std::isfinite(t_x))
    throw InvalidArgument("z_amplitude inputs must be finite");
  if (z_mode == ZMode::paper) return -2.0 * t_x;

  check_coupling(c);
  // Sum over both sides of the Coulomb z-couplings 2C/d^3.
  double lattice_sum = 0.0;
  switch (order) {
    case AmplitudeMethod::one_neighbor: lattice_sum = 1.0; break;
    case AmplitudeMethod::two_neighbor: lattice_sum = 1.0 + 1.0 / 8.0; break;
    case AmplitudeMethod::infinite_chain: lattice_sum = riemann_zeta3(); break;
    case AmplitudeMethod::numeric:
      throw InvalidArgument("z_amplitude needs an analytic truncation order");
  }
  const double pole = 1.0 / (4.0 * lattice_sum);
  if (std::abs(c - pole) < 1e-6) {
    std::ostringstream os;
    os << "coupling " << c << " is at the longitudinal resonance C = " << pole;
    throw InvalidArgument(os.str());
  }
  return 1.0 / (1.0 - 4.0 * c * lattice_sum);
}

}  // namespace atomchain
