#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace atomchain {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

inline constexpr double pi = 3.14159265358979323846;

/// Thrown for non-physical or out-of-range inputs.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a linear system cannot be solved (singular / resonant coupling).
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// Riemann zeta at 3, evaluated from Apery's central-binomial series.
double riemann_zeta3();

/// Retardation parameter above which the analytic (Coulomb-only) formulas
/// are flagged as unreliable.
inline constexpr double ka0_warning_threshold = 0.1;

/// Geometry and material of a uniform chain of identical polarizable atoms
/// placed on the negative z half-axis. Atom indices are 1-based.
class ChainSpec {
public:
  ChainSpec(std::size_t n_atoms, double spacing_nm, double wavelength_nm,
            double coupling);

  std::size_t n_atoms() const { return n_atoms_; }
  double spacing_nm() const { return spacing_nm_; }
  double wavelength_nm() const { return wavelength_nm_; }
  /// Normalized polarizability alpha / a0^3.
  double coupling() const { return coupling_; }

  /// Free-space wave number in 1/nm.
  double wavenumber() const { return 2.0 * pi / wavelength_nm_; }
  double ka0() const { return wavenumber() * spacing_nm_; }

  /// Non-fatal diagnostics (currently: large retardation parameter).
  std::vector<std::string> warnings() const;

  ChainSpec with_coupling(double coupling) const {
    return ChainSpec(n_atoms_, spacing_nm_, wavelength_nm_, coupling);
  }

  /// Atom index nearest the chain centre, ceil(N/2).
  std::size_t mid_index() const { return (n_atoms_ + 1) / 2; }

private:
  std::size_t n_atoms_;
  double spacing_nm_;
  double wavelength_nm_;
  double coupling_;
};

/// Position of atom j (1-based), in nm: (0, 0, -a0 (j-1)).
Vec3 atom_position(const ChainSpec& chain, std::size_t j);

enum class Polarization { perpendicular, parallel };

/// One incident plane-wave mode, direction given in spherical angles about
/// the chain axis.
struct ModeSpec {
  double theta = 0.0;
  double phi = pi;
  Polarization polarization = Polarization::perpendicular;

  ModeSpec() = default;
  ModeSpec(double theta_, Polarization pol, double phi_ = pi);

  Vec3 direction() const;
  Vec3 e_perpendicular() const;
  Vec3 e_parallel() const;
  Vec3 polarization_vector() const;
};

struct FieldProfile {
  std::vector<CVec3> values;
  ModeSpec mode;
  ChainSpec chain;
};

enum class AmplitudeMethod { numeric, one_neighbor, two_neighbor, infinite_chain };

/// How the longitudinal amplitude T^z is obtained.
///  - paper:    T^z = -2 T^x (optical-range relation)
///  - equation: solved from the z-row of the coupled equations
enum class ZMode { paper, equation };

struct AmplitudeProfile {
  std::vector<cplx> tx;
  std::vector<cplx> ty;
  std::vector<cplx> tz;
  AmplitudeMethod method = AmplitudeMethod::numeric;
  ZMode z_mode = ZMode::paper;

  std::size_t size() const { return tx.size(); }
};

/// Orientation of the emitter's transition dipole moment.
struct DipoleOrientation {
  double theta_d = pi / 2;
  double phi_d = 0.0;

  DipoleOrientation() = default;
  DipoleOrientation(double theta, double phi = 0.0);

  Vec3 unit() const;
};

/// Free-space lifetime and shift used to turn ratios into absolute values.
class ReferenceScales {
public:
  ReferenceScales() = default;
  ReferenceScales(std::optional<double> free_space_lifetime,
                  std::optional<double> free_space_shift);

  const std::optional<double>& free_space_lifetime() const { return lifetime_; }
  const std::optional<double>& free_space_shift() const { return shift_; }

private:
  std::optional<double> lifetime_;
  std::optional<double> shift_;
};

std::string to_string(Polarization p);
std::string to_string(AmplitudeMethod m);
std::string to_string(ZMode m);
Polarization parse_polarization(const std::string& s);
ZMode parse_z_mode(const std::string& s);

}  // namespace atomchain
