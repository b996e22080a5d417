#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atomchain/domain.hpp"
#include "atomchain/emission.hpp"
#include "atomchain/solver.hpp"
#include "cli/table.hpp"

namespace atomchain::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_invalid_config = 1,
  exit_solver_failure = 2,
  exit_check_failed = 3,
};

/// Resolved settings shared by every subcommand.
struct RunConfig {
  std::size_t n_atoms = 629;
  double spacing_nm = 1.0;
  double wavelength_nm = 628.0;
  std::vector<double> couplings{0.1};
  SolveOptions solver;
  DipoleOrientation orientation{pi / 2, 0.0};
  ZMode z_mode = ZMode::paper;
  Format format = Format::csv;
  std::optional<std::string> output;
  bool check = false;

  ChainSpec chain(double coupling) const {
    return ChainSpec(n_atoms, spacing_nm, wavelength_nm, coupling);
  }
  void validate() const;
};

/// One golden comparison performed under --check.
struct CheckResult {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CommandOutput {
  Table table;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;  ///< also copied into table metadata
};

struct ModeProfileArgs {
  double theta = pi / 2;
  Polarization polarization = Polarization::perpendicular;
};

struct RotationCurveArgs {
  std::vector<double> theta_d_deg;         ///< grid, degrees
  std::optional<double> ratio;             ///< overrides the z-mode ratio
};

struct AngularPatternArgs {
  std::optional<std::size_t> atom;         ///< default: mid-chain
  SphereGrid grid{32, 64};
  double upper_population = 1.0;
  PatternPrefactor prefactor = PatternPrefactor::dipole_strength;
};

CommandOutput cmd_mode_profile(const RunConfig& cfg, const ModeProfileArgs& args);
CommandOutput cmd_amplitude_table(const RunConfig& cfg);
CommandOutput cmd_lifetime_profile(const RunConfig& cfg);
CommandOutput cmd_rotation_curve(const RunConfig& cfg, const RotationCurveArgs& args);
CommandOutput cmd_angular_pattern(const RunConfig& cfg, const AngularPatternArgs& args);

/// Parses an angle with a mandatory unit suffix: "90deg", "1.5708rad".
double parse_angle(const std::string& text);

/// "start:stop:step" or "a,b,c", in degrees.
std::vector<double> parse_degree_grid(const std::string& text);

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atomchain::cli
