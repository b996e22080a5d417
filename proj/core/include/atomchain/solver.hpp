#pragma once

#include <cstddef>
#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atomchain/dense_lu.hpp"
#include "atomchain/domain.hpp"
#include "atomchain/toeplitz.hpp"

namespace atomchain {

enum class Component { x, y, z };

/// Dipole-dipole coupling between two chain atoms `separation` sites apart,
/// including the retarded terms:
///   x, y:  C [ (ka0)^2/d + i ka0/d^2 - 1/d^3 ] e^{i ka0 d}
///   z:    2C [ -i ka0/d^2 + 1/d^3 ] e^{i ka0 d}
cplx coupling_coefficient(Component component, std::size_t separation, double ka0,
                          double coupling);

/// Incident phase at atom j (1-based): exp(-i ka0 (j-1) cos theta).
cplx free_field_factor(std::size_t j, double theta, double ka0);

/// One of the three decoupled scalar systems (I - C) f = rhs, projected at
/// azimuth phi = pi.
struct ScalarSystem {
  Component component = Component::y;
  std::vector<cplx> rhs;
  SymmetricToeplitz coupling;
  ChainSpec chain;
  ModeSpec mode;

  std::size_t size() const { return rhs.size(); }
  /// max_j |((I - C) f - rhs)_j|
  double residual(std::span<const cplx> f) const;
};

/// Coupling row for one component; x and y share the same row.
SymmetricToeplitz coupling_matrix(const ChainSpec& chain, Component component);

ScalarSystem assemble(const ChainSpec& chain, const ModeSpec& mode, Component component);

enum class SolveMethod { direct, gauss_seidel, sor };

std::string to_string(SolveMethod m);
SolveMethod parse_solve_method(const std::string& s);

struct SolveOptions {
  SolveMethod method = SolveMethod::direct;
  double tolerance = 1e-10;
  std::size_t max_sweeps = 100000;
  double relaxation = 1.0;

  void validate() const;
  /// Relaxation actually applied (gauss_seidel pins it to 1).
  double effective_relaxation() const {
    return method == SolveMethod::gauss_seidel ? 1.0 : relaxation;
  }
};

struct SolveReport {
  bool converged = false;
  std::size_t sweeps_used = 0;
  double final_residual = 0.0;
  SolveMethod method_used = SolveMethod::direct;
};

struct Solution {
  std::vector<cplx> values;
  SolveReport report;
};

/// Dense LU with partial pivoting. Throws SolverError on a singular system.
Solution solve_direct(const ScalarSystem& system);

/// Gauss-Seidel / SOR sweeps in ascending atom order starting from f = rhs.
/// Never throws on non-convergence; the last iterate is returned with
/// report.converged == false.
Solution solve_iterative(const ScalarSystem& system, const SolveOptions& options);

/// Dispatches on options.method.
Solution solve(const ScalarSystem& system, const SolveOptions& options);

/// Solves modes for one chain, caching the coupling rows and (for the direct
/// method) the LU factorizations shared by every mode. Not thread-safe; use
/// one instance per thread.
class ChainSolver {
public:
  ChainSolver(ChainSpec chain, SolveOptions options);

  const ChainSpec& chain() const { return chain_; }
  const SolveOptions& options() const { return options_; }

  Solution solve_component(const ModeSpec& mode, Component component);

  /// Full per-atom complex 3-vector for `mode` (any azimuth).
  FieldProfile solve_mode(const ModeSpec& mode);

  /// T^y_j = f^y_j / E_j from the perpendicular mode at angle theta.
  std::vector<cplx> transverse_amplitudes(double theta);

  AmplitudeProfile extract_amplitudes(ZMode z_mode);

  /// Reports of every scalar solve performed so far, in call order.
  const std::vector<SolveReport>& reports() const { return reports_; }
  bool all_converged() const;

private:
  const SymmetricToeplitz& matrix(Component component);
  const DenseLu& factorization(Component component);

  ChainSpec chain_;
  SolveOptions options_;
  // [0]: transverse (x and y share a row), [1]: longitudinal (z)
  std::array<std::optional<SymmetricToeplitz>, 2> matrices_;
  std::array<std::unique_ptr<DenseLu>, 2> factors_;
  std::vector<SolveReport> reports_;
};

FieldProfile solve_mode(const ChainSpec& chain, const ModeSpec& mode,
                        const SolveOptions& options);

AmplitudeProfile extract_amplitudes(const ChainSpec& chain, const SolveOptions& options,
                                    ZMode z_mode);

}  // namespace atomchain
