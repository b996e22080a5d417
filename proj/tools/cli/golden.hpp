#pragma once

#include <array>
#include <optional>

namespace atomchain::cli {

/// Reference amplitude factors (three decimals) for N = 629, a0 = 1 nm,
/// lambda = 628 nm.
struct GoldenAmplitudeRow {
  double coupling;
  double one_t1, one_t0;
  double two_t1, two_t2, two_t0;
  double num_t1, num_t2, num_t0;
};

inline constexpr std::array<GoldenAmplitudeRow, 5> golden_amplitude_table{{
    {0.1, 0.917, 0.833, 0.908, 0.817, 0.816, 0.902, 0.812, 0.806},
    {0.2, 0.857, 0.714, 0.846, 0.675, 0.690, 0.839, 0.668, 0.675},
    {0.3, 0.813, 0.625, 0.807, 0.555, 0.597, 0.800, 0.546, 0.581},
    {0.4, 0.778, 0.556, 0.786, 0.445, 0.526, 0.787, 0.425, 0.510},
    {0.5, 0.750, 0.500, 0.784, 0.333, 0.471, 0.817, 0.262, 0.454},
}};

inline constexpr std::size_t golden_n_atoms = 629;
inline constexpr double golden_spacing_nm = 1.0;
inline constexpr double golden_wavelength_nm = 628.0;

/// Tolerance for numerically solved cells (three-decimal rounding).
inline constexpr double golden_numeric_tolerance = 0.002;

inline std::optional<GoldenAmplitudeRow> golden_row(double coupling) {
  for (const auto& r : golden_amplitude_table)
    if (r.coupling - coupling < 1e-9 && coupling - r.coupling < 1e-9) return r;
  return std::nullopt;
}

}  // namespace atomchain::cli
