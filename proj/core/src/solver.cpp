#include "atomchain/solver.hpp"

#include <algorithm>
#include <cmath>

namespace atomchain {

namespace {

std::size_t kind_index(Component c) { return c == Component::z ? 1 : 0; }

bool all_zero(std::span<const cplx> v) {
  return std::all_of(v.begin(), v.end(), [](const cplx& c) { return c == cplx{}; });
}

// Polarization selector: which scalar systems the mode drives at phi = pi.
bool is_driven(Polarization pol, Component c) {
  return pol == Polarization::perpendicular ? c == Component::y : c != Component::y;
}

}  // namespace

cplx coupling_coefficient(Component component, std::size_t separation, double ka0,
                          double coupling) {
  if (separation == 0) throw InvalidArgument("self-coupling (separation 0) is undefined");
  if (!(ka0 >= 0.0)) throw InvalidArgument("ka0 must be non-negative");
  if (!(coupling >= 0.0)) throw InvalidArgument("coupling must be non-negative");

  const double d = double(separation);
  const cplx phase = std::polar(1.0, ka0 * d);
  if (component == Component::z) {
    const cplx bracket(1.0 / (d * d * d), -ka0 / (d * d));
    return 2.0 * coupling * bracket * phase;
  }
  const cplx bracket(ka0 * ka0 / d - 1.0 / (d * d * d), ka0 / (d * d));
  return coupling * bracket * phase;
}

cplx free_field_factor(std::size_t j, double theta, double ka0) {
  if (j < 1) throw InvalidArgument("atom index is 1-based");
  return std::polar(1.0, -ka0 * double(j - 1) * std::cos(theta));
}

double ScalarSystem::residual(std::span<const cplx> f) const {
  const auto cf = coupling.apply(f);
  double r = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    r = std::max(r, std::abs(f[j] - cf[j] - rhs[j]));
  return r;
}

SymmetricToeplitz coupling_matrix(const ChainSpec& chain, Component component) {
  std::vector<cplx> row(chain.n_atoms());
  for (std::size_t d = 1; d < row.size(); ++d)
    row[d] = coupling_coefficient(component, d, chain.ka0(), chain.coupling());
  return SymmetricToeplitz(std::move(row));
}

namespace {

std::vector<cplx> driving_terms(const ChainSpec& chain, const ModeSpec& mode,
                                Component component) {
  std::vector<cplx> rhs(chain.n_atoms());
  if (!is_driven(mode.polarization, component)) return rhs;
  const double weight = component == Component::x   ? std::cos(mode.theta)
                        : component == Component::z ? std::sin(mode.theta)
                                                    : 1.0;
  for (std::size_t j = 1; j <= rhs.size(); ++j)
    rhs[j - 1] = free_field_factor(j, mode.theta, chain.ka0()) * weight;
  return rhs;
}

}  // namespace

ScalarSystem assemble(const ChainSpec& chain, const ModeSpec& mode, Component component) {
  return ScalarSystem{component, driving_terms(chain, mode, component),
                      coupling_matrix(chain, component), chain, mode};
}

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::direct: return "direct";
    case SolveMethod::gauss_seidel: return "gauss-seidel";
    case SolveMethod::sor: return "sor";
  }
  return "unknown";
}

SolveMethod parse_solve_method(const std::string& s) {
  if (s == "direct") return SolveMethod::direct;
  if (s == "gauss-seidel" || s == "gauss_seidel") return SolveMethod::gauss_seidel;
  if (s == "sor") return SolveMethod::sor;
  throw InvalidArgument("unknown solver '" + s + "'");
}

void SolveOptions::validate() const {
  if (!(tolerance > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (max_sweeps < 1) throw InvalidArgument("max_sweeps must be at least 1");
  if (!(relaxation > 0.0 && relaxation <= 2.0))
    throw InvalidArgument("relaxation factor must lie in (0, 2]");
}

namespace {

Solution finish_direct(const ScalarSystem& system, std::vector<cplx> values) {
  Solution s{std::move(values), {}};
  s.report.converged = true;
  s.report.sweeps_used = 0;
  s.report.method_used = SolveMethod::direct;
  s.report.final_residual = system.residual(s.values);
  return s;
}

}  // namespace

Solution solve_direct(const ScalarSystem& system) {
  const std::size_t n = system.size();
  if (n == 0) throw InvalidArgument("empty system");
  DenseLu lu(system.coupling.identity_minus_dense(), n);
  return finish_direct(system, lu.solve(system.rhs));
}

Solution solve_iterative(const ScalarSystem& system, const SolveOptions& options) {
  options.validate();
  const std::size_t n = system.size();
  const double omega = options.effective_relaxation();
  const auto row = system.coupling.row();

  Solution s{system.rhs, {}};
  s.report.method_used = options.method == SolveMethod::direct ? SolveMethod::gauss_seidel
                                                               : options.method;
  auto& f = s.values;
  for (std::size_t sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = system.rhs[j];
      for (std::size_t l = 0; l < j; ++l) acc += row[j - l] * f[l];
      for (std::size_t l = j + 1; l < n; ++l) acc += row[l - j] * f[l];
      const cplx updated = (1.0 - omega) * f[j] + omega * acc;
      change = std::max(change, std::abs(updated - f[j]));
      f[j] = updated;
    }
    s.report.sweeps_used = sweep;
    if (!std::isfinite(change)) break;
    if (change < options.tolerance) {
      s.report.converged = true;
      break;
    }
  }
  s.report.final_residual = system.residual(f);
  if (!std::isfinite(s.report.final_residual)) s.report.converged = false;
  return s;
}

Solution solve(const ScalarSystem& system, const SolveOptions& options) {
  options.validate();
  if (all_zero(system.rhs)) {
    Solution s{system.rhs, {}};
    s.report.converged = true;
    s.report.method_used = options.method;
    return s;
  }
  if (options.method == SolveMethod::direct) return solve_direct(system);
  return solve_iterative(system, options);
}

ChainSolver::ChainSolver(ChainSpec chain, SolveOptions options)
    : chain_(std::move(chain)), options_(options) {
  options_.validate();
}

const SymmetricToeplitz& ChainSolver::matrix(Component component) {
  auto& slot = matrices_[kind_index(component)];
  if (!slot) slot = coupling_matrix(chain_, component);
  return *slot;
}

const DenseLu& ChainSolver::factorization(Component component) {
  auto& slot = factors_[kind_index(component)];
  if (!slot)
    slot = std::make_unique<DenseLu>(matrix(component).identity_minus_dense(),
                                     chain_.n_atoms());
  return *slot;
}

Solution ChainSolver::solve_component(const ModeSpec& mode, Component component) {
  ScalarSystem system{component, driving_terms(chain_, mode, component), matrix(component),
                      chain_, mode};
  Solution s;
  if (all_zero(system.rhs)) {
    s = solve(system, options_);
  } else if (options_.method == SolveMethod::direct) {
    s = finish_direct(system, factorization(component).solve(system.rhs));
  } else {
    s = solve_iterative(system, options_);
  }
  reports_.push_back(s.report);
  return s;
}

FieldProfile ChainSolver::solve_mode(const ModeSpec& mode) {
  const std::size_t n = chain_.n_atoms();
  FieldProfile profile{std::vector<CVec3>(n), mode, chain_};
  const double cphi = std::cos(mode.phi);
  const double sphi = std::sin(mode.phi);
  // Scalar systems are posed at phi = pi; the chain is symmetric about z, so
  // other azimuths follow by rotating the transverse part.
  if (mode.polarization == Polarization::perpendicular) {
    const auto fy = solve_component(mode, Component::y).values;
    for (std::size_t j = 0; j < n; ++j)
      profile.values[j] = {fy[j] * sphi, -fy[j] * cphi, cplx{}};
  } else {
    const auto fx = solve_component(mode, Component::x).values;
    const auto fz = solve_component(mode, Component::z).values;
    for (std::size_t j = 0; j < n; ++j)
      profile.values[j] = {-fx[j] * cphi, -fx[j] * sphi, fz[j]};
  }
  return profile;
}

std::vector<cplx> ChainSolver::transverse_amplitudes(double theta) {
  const ModeSpec mode(theta, Polarization::perpendicular);
  auto t = solve_component(mode, Component::y).values;
  for (std::size_t j = 0; j < t.size(); ++j)
    t[j] /= free_field_factor(j + 1, theta, chain_.ka0());
  return t;
}

AmplitudeProfile ChainSolver::extract_amplitudes(ZMode z_mode) {
  const std::size_t n = chain_.n_atoms();
  AmplitudeProfile out;
  out.method = AmplitudeMethod::numeric;
  out.z_mode = z_mode;

  out.ty = solve_component(ModeSpec(pi / 2, Polarization::perpendicular), Component::y).values;

  // theta = 0: cos = 1 and the z-system is undriven.
  out.tx = solve_component(ModeSpec(0.0, Polarization::parallel), Component::x).values;
  for (std::size_t j = 0; j < n; ++j) out.tx[j] /= free_field_factor(j + 1, 0.0, chain_.ka0());

  if (z_mode == ZMode::equation) {
    out.tz = solve_component(ModeSpec(pi / 2, Polarization::parallel), Component::z).values;
  } else {
    out.tz.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.tz[j] = -2.0 * out.tx[j];
  }
  return out;
}

bool ChainSolver::all_converged() const {
  return std::all_of(reports_.begin(), reports_.end(),
                     [](const SolveReport& r) { return r.converged; });
}

FieldProfile solve_mode(const ChainSpec& chain, const ModeSpec& mode,
                        const SolveOptions& options) {
  ChainSolver solver(chain, options);
  return solver.solve_mode(mode);
}

AmplitudeProfile extract_amplitudes(const ChainSpec& chain, const SolveOptions& options,
                                    ZMode z_mode) {
  ChainSolver solver(chain, options);
  return solver.extract_amplitudes(z_mode);
}

}  // namespace atomchain
