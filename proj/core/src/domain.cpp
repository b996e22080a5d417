#include "atomchain/domain.hpp"

#include <cmath>
#include <sstream>

namespace atomchain {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double riemann_zeta3() {
  // zeta(3) = 5/2 * sum_{n>=1} (-1)^{n+1} / (n^3 binom(2n, n)).
  // Terms shrink by ~4x per step, so 30 terms are far past double precision.
  double sum = 0.0;
  double central = 1.0;  // binom(2n, n), built incrementally
  for (int n = 1; n <= 30; ++n) {
    central *= 2.0 * (2.0 * n - 1.0) / n;
    const double term = 1.0 / (double(n) * n * n * central);
    sum += (n % 2 == 1) ? term : -term;
  }
  return 2.5 * sum;
}

ChainSpec::ChainSpec(std::size_t n_atoms, double spacing_nm,
                     double wavelength_nm, double coupling)
    : n_atoms_(n_atoms),
      spacing_nm_(spacing_nm),
      wavelength_nm_(wavelength_nm),
      coupling_(coupling) {
  if (n_atoms_ < 1) throw InvalidArgument("chain must contain at least one atom");
  if (!(spacing_nm_ > 0.0) || !std::isfinite(spacing_nm_))
    throw InvalidArgument("interatomic spacing must be positive");
  if (!(wavelength_nm_ > 0.0) || !std::isfinite(wavelength_nm_))
    throw InvalidArgument("wavelength must be positive");
  if (!(coupling_ >= 0.0) || !std::isfinite(coupling_))
    throw InvalidArgument("normalized polarizability must be non-negative");
}

std::vector<std::string> ChainSpec::warnings() const {
  std::vector<std::string> out;
  if (ka0() > ka0_warning_threshold) {
    std::ostringstream os;
    os << "ka0 = " << ka0() << " exceeds " << ka0_warning_threshold
       << "; analytic approximations drop O(ka0) terms";
    out.push_back(os.str());
  }
  return out;
}

Vec3 atom_position(const ChainSpec& chain, std::size_t j) {
  if (j < 1 || j > chain.n_atoms())
    throw InvalidArgument("atom index " + std::to_string(j) + " outside [1, " +
                          std::to_string(chain.n_atoms()) + "]");
  return {0.0, 0.0, -chain.spacing_nm() * double(j - 1)};
}

ModeSpec::ModeSpec(double theta_, Polarization pol, double phi_)
    : theta(theta_), phi(phi_), polarization(pol) {
  if (!(theta >= 0.0 && theta <= pi))
    throw InvalidArgument("mode angle theta must lie in [0, pi]");
  if (!std::isfinite(phi)) throw InvalidArgument("mode azimuth must be finite");
}

Vec3 ModeSpec::direction() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

Vec3 ModeSpec::e_perpendicular() const {
  return {std::sin(phi), -std::cos(phi), 0.0};
}

Vec3 ModeSpec::e_parallel() const {
  return {-std::cos(theta) * std::cos(phi), -std::cos(theta) * std::sin(phi),
          std::sin(theta)};
}

Vec3 ModeSpec::polarization_vector() const {
  return polarization == Polarization::perpendicular ? e_perpendicular()
                                                     : e_parallel();
}

DipoleOrientation::DipoleOrientation(double theta, double phi)
    : theta_d(theta), phi_d(phi) {
  if (!(theta_d >= 0.0 && theta_d <= pi))
    throw InvalidArgument("dipole angle theta_d must lie in [0, pi]");
  if (!std::isfinite(phi_d)) throw InvalidArgument("dipole azimuth must be finite");
}

Vec3 DipoleOrientation::unit() const {
  return {std::sin(theta_d) * std::cos(phi_d),
          std::sin(theta_d) * std::sin(phi_d), std::cos(theta_d)};
}

ReferenceScales::ReferenceScales(std::optional<double> free_space_lifetime,
                                 std::optional<double> free_space_shift)
    : lifetime_(free_space_lifetime), shift_(free_space_shift) {
  if (lifetime_ && !(*lifetime_ > 0.0))
    throw InvalidArgument("free-space lifetime must be positive");
  if (shift_ && !(*shift_ > 0.0))
    throw InvalidArgument("free-space shift must be positive");
}

std::string to_string(Polarization p) {
  return p == Polarization::perpendicular ? "perpendicular" : "parallel";
}

std::string to_string(AmplitudeMethod m) {
  switch (m) {
    case AmplitudeMethod::numeric: return "numeric";
    case AmplitudeMethod::one_neighbor: return "one_neighbor";
    case AmplitudeMethod::two_neighbor: return "two_neighbor";
    case AmplitudeMethod::infinite_chain: return "infinite_chain";
  }
  return "unknown";
}

std::string to_string(ZMode m) { return m == ZMode::paper ? "paper" : "equation"; }

Polarization parse_polarization(const std::string& s) {
  if (s == "perpendicular" || s == "perp") return Polarization::perpendicular;
  if (s == "parallel" || s == "par") return Polarization::parallel;
  throw InvalidArgument("unknown polarization '" + s + "'");
}

ZMode parse_z_mode(const std::string& s) {
  if (s == "paper") return ZMode::paper;
  if (s == "equation") return ZMode::equation;
  throw InvalidArgument("unknown z-mode '" + s + "'");
}

}  // namespace atomchain
