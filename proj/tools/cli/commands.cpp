#include "cli/commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>

#include "atomchain/analytic.hpp"
#include "atomchain/quadrature.hpp"
#include "cli/golden.hpp"

namespace atomchain::cli {

namespace {

constexpr double rad_to_deg = 180.0 / pi;

// Evaluates fn(coupling) concurrently; results come back in input order.
template <class F>
auto parallel_map(const std::vector<double>& couplings, F fn) {
  using R = decltype(fn(0.0));
  std::vector<std::future<R>> futures;
  futures.reserve(couplings.size());
  for (double c : couplings) futures.push_back(std::async(std::launch::async, fn, c));
  std::vector<R> out;
  out.reserve(couplings.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

// Runs fn on a solver built from `options`. If an iterative solve fails to
// converge, reruns with the direct solver and says so in `notes`.
template <class F>
auto with_fallback(const ChainSpec& chain, const SolveOptions& options,
                   std::vector<std::string>& notes, F fn) {
  ChainSolver solver(chain, options);
  auto result = fn(solver);
  if (solver.all_converged()) return result;

  std::size_t failed = 0;
  for (const auto& r : solver.reports()) failed += r.converged ? 0 : 1;
  notes.push_back(fmt::format(
      "C={}: {} of {} {} solves did not converge within {} sweeps; retried with direct solver",
      format_real(chain.coupling()), failed, solver.reports().size(),
      to_string(options.method), options.max_sweeps));
  SolveOptions direct = options;
  direct.method = SolveMethod::direct;
  ChainSolver fallback(chain, direct);
  return fn(fallback);
}

void add_common_meta(Table& t, const std::string& command, const RunConfig& cfg) {
  const ChainSpec probe = cfg.chain(0.0);
  t.meta = {
      {"command", command},
      {"n_atoms", std::to_string(cfg.n_atoms)},
      {"spacing_nm", format_real(cfg.spacing_nm)},
      {"wavelength_nm", format_real(cfg.wavelength_nm)},
      {"ka0", format_real(probe.ka0())},
      {"solver", to_string(cfg.solver.method)},
      {"z_mode", to_string(cfg.z_mode)},
      {"theta_d_rad", format_real(cfg.orientation.theta_d)},
      {"phi_d_rad", format_real(cfg.orientation.phi_d)},
  };
  for (const auto& w : probe.warnings()) t.meta.emplace_back("warning", w);
}

void finish(CommandOutput& out) {
  for (const auto& n : out.notes) out.table.meta.emplace_back("note", n);
}

CheckResult make_check(std::string name, double expected, double actual, double tol) {
  return {std::move(name), expected, actual, tol, std::abs(actual - expected) <= tol};
}

bool golden_geometry(const RunConfig& cfg) {
  return cfg.n_atoms == golden_n_atoms && std::abs(cfg.spacing_nm - golden_spacing_nm) < 1e-12 &&
         std::abs(cfg.wavelength_nm - golden_wavelength_nm) < 1e-9;
}

// Closed-form tilt of the pattern for r = -2.
double rotation_closed_form(double theta_d) {
  const double c2 = std::cos(theta_d) * std::cos(theta_d);
  return std::acos(std::clamp((1.0 - 3.0 * c2) / std::sqrt(1.0 + 3.0 * c2), -1.0, 1.0));
}

}  // namespace

void RunConfig::validate() const {
  if (couplings.empty()) throw InvalidArgument("at least one coupling value is required");
  for (double c : couplings) (void)chain(c);
  solver.validate();
}

double parse_angle(const std::string& text) {
  auto ends_with = [&](const std::string& suf) {
    return text.size() > suf.size() &&
           text.compare(text.size() - suf.size(), suf.size(), suf) == 0;
  };
  double scale = 0.0;
  std::string number;
  if (ends_with("deg")) {
    scale = pi / 180.0;
    number = text.substr(0, text.size() - 3);
  } else if (ends_with("rad")) {
    scale = 1.0;
    number = text.substr(0, text.size() - 3);
  } else {
    throw InvalidArgument("angle '" + text + "' needs a unit suffix (deg or rad)");
  }
  double v = 0.0;
  auto [p, ec] = std::from_chars(number.data(), number.data() + number.size(), v);
  if (ec != std::errc{} || p != number.data() + number.size() || !std::isfinite(v))
    throw InvalidArgument("cannot parse angle '" + text + "'");
  return v * scale;
}

std::vector<double> parse_degree_grid(const std::string& text) {
  auto to_double = [](const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw InvalidArgument("cannot parse grid value '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string::npos) throw InvalidArgument("grid range must be start:stop:step");
    const double start = to_double(text.substr(0, a));
    const double stop = to_double(text.substr(a + 1, b - a - 1));
    const double step = to_double(text.substr(b + 1));
    if (!(step > 0.0) || stop < start) throw InvalidArgument("grid range is empty");
    for (std::size_t k = 0;; ++k) {
      const double v = start + double(k) * step;
      if (v > stop + 1e-9 * step) break;
      out.push_back(v);
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      out.push_back(to_double(piece));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (out.empty()) throw InvalidArgument("theta_d grid is empty");
  return out;
}

CommandOutput cmd_mode_profile(const RunConfig& cfg, const ModeProfileArgs& args) {
  cfg.validate();
  const ModeSpec mode(args.theta, args.polarization);
  CommandOutput out;
  add_common_meta(out.table, "mode-profile", cfg);
  out.table.meta.emplace_back("theta_rad", format_real(args.theta));
  out.table.meta.emplace_back("polarization", to_string(args.polarization));
  out.table.columns = {"C", "j", "z_nm", "re_fx", "im_fx", "re_fy", "im_fy", "re_fz", "im_fz"};

  struct Result {
    FieldProfile profile;
    std::vector<std::string> notes;
  };
  const auto results = parallel_map(cfg.couplings, [&](double c) {
    Result r{FieldProfile{{}, mode, cfg.chain(c)}, {}};
    r.profile = with_fallback(cfg.chain(c), cfg.solver, r.notes,
                              [&](ChainSolver& s) { return s.solve_mode(mode); });
    return r;
  });

  for (std::size_t k = 0; k < results.size(); ++k) {
    const double c = cfg.couplings[k];
    const auto& prof = results[k].profile;
    out.notes.insert(out.notes.end(), results[k].notes.begin(), results[k].notes.end());
    for (std::size_t j = 1; j <= prof.values.size(); ++j) {
      const auto& f = prof.values[j - 1];
      out.table.rows.push_back({c, std::int64_t(j), atom_position(prof.chain, j)[2],
                                f[0].real(), f[0].imag(), f[1].real(), f[1].imag(),
                                f[2].real(), f[2].imag()});
    }

    if (!cfg.check) continue;
    const std::size_t n = cfg.n_atoms;
    if (args.polarization != Polarization::perpendicular || n < 200) {
      out.notes.push_back(fmt::format(
          "C={}: golden checks need a perpendicular mode on a chain of >= 200 atoms; skipped",
          format_real(c)));
      continue;
    }
    // Interior phase stays with the incident wave.
    double worst_phase = 0.0;
    for (std::size_t j = 11; j + 10 < n; ++j) {
      const cplx t = std::abs(std::sin(mode.phi)) > 0.5
                         ? prof.values[j - 1][0] / std::sin(mode.phi)
                         : prof.values[j - 1][1] / -std::cos(mode.phi);
      worst_phase = std::max(worst_phase,
                             std::abs(std::arg(t / free_field_factor(j, args.theta,
                                                                     prof.chain.ka0()))));
    }
    out.checks.push_back(make_check(fmt::format("C={} interior |arg T^y| <= 0.05", format_real(c)),
                                    0.0, worst_phase, 0.05));
    const std::size_t mid = prof.chain.mid_index();
    const double amp = std::hypot(std::abs(prof.values[mid - 1][0]), std::abs(prof.values[mid - 1][1]));
    out.checks.push_back(make_check(
        fmt::format("C={} mid-chain |f| vs 1/(1+2C zeta3)", format_real(c)),
        infinite_chain(c).t0, amp, golden_numeric_tolerance));
  }
  finish(out);
  return out;
}

CommandOutput cmd_amplitude_table(const RunConfig& cfg) {
  cfg.validate();
  CommandOutput out;
  add_common_meta(out.table, "amplitude-table", cfg);
  out.table.columns = {"C",
                       "one_T1_3dp", "one_T2_3dp", "one_T0_3dp",
                       "two_T1_3dp", "two_T2_3dp", "two_T0_3dp",
                       "num_T1_3dp", "num_T2_3dp", "num_T0_3dp",
                       "inf_T0_3dp",
                       "one_T1", "one_T0",
                       "two_T1", "two_T2", "two_T0",
                       "num_T1", "num_T2", "num_T0",
                       "inf_T0"};

  struct Result {
    ApproxAmplitudes one, two, inf;
    double t1 = 0, t2 = 0, t0 = 0;
    bool has_t2 = false;
    std::vector<std::string> notes;
  };
  const auto results = parallel_map(cfg.couplings, [&](double c) {
    Result r;
    r.one = one_neighbor(c);
    r.two = two_neighbor(c);
    r.inf = infinite_chain(c);
    const ChainSpec chain = cfg.chain(c);
    // z amplitudes are not tabulated; T^z = -2 T^x avoids a z solve.
    const auto prof = with_fallback(chain, cfg.solver, r.notes, [](ChainSolver& s) {
      return s.extract_amplitudes(ZMode::paper);
    });
    r.t1 = prof.tx.front().real();
    r.has_t2 = prof.size() >= 2;
    r.t2 = r.has_t2 ? prof.tx[1].real() : 0.0;
    r.t0 = prof.tx[chain.mid_index() - 1].real();
    return r;
  });

  const bool numeric_golden = golden_geometry(cfg);
  for (std::size_t k = 0; k < results.size(); ++k) {
    const double c = cfg.couplings[k];
    const auto& r = results[k];
    out.notes.insert(out.notes.end(), r.notes.begin(), r.notes.end());
    if (r.two.extrapolated)
      out.notes.push_back(fmt::format("C={} lies outside the tabulated range [0, {}]",
                                      format_real(c), format_real(analytic_validity_max)));
    const Cell num_t2 = r.has_t2 ? Cell{r.t2} : Cell{};
    out.table.rows.push_back({c,
                              *r.one.t1, Cell{}, r.one.t0,
                              *r.two.t1, *r.two.t2, r.two.t0,
                              r.t1, num_t2, r.t0,
                              r.inf.t0,
                              *r.one.t1, r.one.t0,
                              *r.two.t1, *r.two.t2, r.two.t0,
                              r.t1, num_t2, r.t0,
                              r.inf.t0});

    if (!cfg.check) continue;
    const auto golden = golden_row(c);
    if (!golden) {
      out.notes.push_back(fmt::format("C={} has no reference row; not checked", format_real(c)));
      continue;
    }
    auto exact3 = [&](const std::string& what, double expected, double value) {
      out.checks.push_back(make_check(fmt::format("C={} {}", format_real(c), what), expected,
                                      round_half_away(value, 3), 1e-9));
    };
    exact3("one-neighbour T1", golden->one_t1, *r.one.t1);
    exact3("one-neighbour T0", golden->one_t0, r.one.t0);
    exact3("two-neighbour T1", golden->two_t1, *r.two.t1);
    exact3("two-neighbour T2", golden->two_t2, *r.two.t2);
    exact3("two-neighbour T0", golden->two_t0, r.two.t0);
    out.checks.push_back(make_check(fmt::format("C={} infinite-chain T0", format_real(c)),
                                    golden->num_t0, r.inf.t0, golden_numeric_tolerance));
    if (!numeric_golden) {
      out.notes.push_back(fmt::format(
          "C={}: numeric reference values assume N=629, a0=1 nm, lambda=628 nm; skipped",
          format_real(c)));
      continue;
    }
    auto near = [&](const std::string& what, double expected, double value) {
      out.checks.push_back(make_check(fmt::format("C={} {}", format_real(c), what), expected,
                                      value, golden_numeric_tolerance));
    };
    near("numeric T1", golden->num_t1, r.t1);
    near("numeric T2", golden->num_t2, r.t2);
    near("numeric T0", golden->num_t0, r.t0);
  }
  finish(out);
  return out;
}

CommandOutput cmd_lifetime_profile(const RunConfig& cfg) {
  cfg.validate();
  CommandOutput out;
  add_common_meta(out.table, "lifetime-profile", cfg);
  out.table.columns = {"C",     "j",          "re_Tx",          "im_Tx",      "re_Tz",
                       "im_Tz", "rate_ratio", "lifetime_ratio", "shift_ratio"};

  struct Result {
    AmplitudeProfile prof;
    std::vector<std::string> notes;
  };
  const auto results = parallel_map(cfg.couplings, [&](double c) {
    Result r;
    r.prof = with_fallback(cfg.chain(c), cfg.solver, r.notes,
                           [&](ChainSolver& s) { return s.extract_amplitudes(cfg.z_mode); });
    return r;
  });

  for (std::size_t k = 0; k < results.size(); ++k) {
    const double c = cfg.couplings[k];
    const auto& prof = results[k].prof;
    out.notes.insert(out.notes.end(), results[k].notes.begin(), results[k].notes.end());
    std::vector<EmissionReport> reports;
    for (std::size_t j = 1; j <= prof.size(); ++j) {
      const auto rep = emission_report(j, prof.tx[j - 1], prof.tz[j - 1], cfg.orientation);
      out.table.rows.push_back({c, std::int64_t(j), prof.tx[j - 1].real(), prof.tx[j - 1].imag(),
                                prof.tz[j - 1].real(), prof.tz[j - 1].imag(), rep.rate_ratio,
                                rep.lifetime_ratio, rep.shift_ratio});
      reports.push_back(rep);
    }

    if (!cfg.check) continue;
    if (std::abs(cfg.orientation.theta_d - pi / 2) > 1e-12 || cfg.n_atoms < 200) {
      out.notes.push_back(fmt::format(
          "C={}: golden checks need theta_d = 90deg and >= 200 atoms; skipped", format_real(c)));
      continue;
    }
    const double zeta_term = 1.0 + 2.0 * c * riemann_zeta3();
    const double expected = zeta_term * zeta_term;
    const double mid = reports[cfg.chain(c).mid_index() - 1].lifetime_ratio;
    out.checks.push_back(make_check(fmt::format("C={} mid-chain lifetime ratio", format_real(c)),
                                    expected, mid, 0.005 * expected));
    if (c > 0.0) {
      const double end = reports.front().lifetime_ratio;
      out.checks.push_back({fmt::format("C={} end-atom lifetime below interior", format_real(c)),
                            mid, end, 0.0, end < mid});
    }
  }
  finish(out);
  return out;
}

CommandOutput cmd_rotation_curve(const RunConfig& cfg, const RotationCurveArgs& args) {
  cfg.validate();
  if (args.theta_d_deg.empty()) throw InvalidArgument("theta_d grid is empty");
  CommandOutput out;
  add_common_meta(out.table, "rotation-curve", cfg);
  out.table.columns = {"C",          "ratio_r",   "theta_d_deg", "theta_d_rad",
                       "cos_gamma",  "gamma_deg", "gamma_rad"};

  struct Result {
    double ratio = -2.0;
    std::vector<std::string> notes;
  };
  const auto results = parallel_map(cfg.couplings, [&](double c) {
    Result r;
    if (args.ratio) {
      r.ratio = *args.ratio;
    } else if (cfg.z_mode == ZMode::equation) {
      const ChainSpec chain = cfg.chain(c);
      const auto prof = with_fallback(chain, cfg.solver, r.notes, [](ChainSolver& s) {
        return s.extract_amplitudes(ZMode::equation);
      });
      const std::size_t mid = chain.mid_index() - 1;
      r.ratio = (prof.tz[mid] / prof.tx[mid]).real();
    }
    return r;
  });

  for (std::size_t k = 0; k < results.size(); ++k) {
    const double c = cfg.couplings[k];
    const double r = results[k].ratio;
    out.notes.insert(out.notes.end(), results[k].notes.begin(), results[k].notes.end());
    std::vector<double> gammas;
    for (double deg : args.theta_d_deg) {
      const DipoleOrientation o(deg * pi / 180.0, cfg.orientation.phi_d);
      const double g = rotation_angle(o, r);
      gammas.push_back(g);
      out.table.rows.push_back({c, r, deg, o.theta_d, std::cos(g), g * rad_to_deg, g});
    }

    if (!cfg.check) continue;
    if (r != -2.0) {
      out.notes.push_back(fmt::format(
          "C={}: closed-form reference applies to r = -2 only; skipped", format_real(c)));
      continue;
    }
    double worst = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      const double th = args.theta_d_deg[i] * pi / 180.0;
      worst = std::max(worst, std::abs(gammas[i] - rotation_closed_form(th)));
      if (i > 0 && args.theta_d_deg[i] > args.theta_d_deg[i - 1] &&
          args.theta_d_deg[i] <= 90.0 && gammas[i] > gammas[i - 1] + 1e-12)
        monotone = false;
    }
    out.checks.push_back(make_check(fmt::format("C={} gamma vs closed form", format_real(c)),
                                    0.0, worst, 1e-9));
    out.checks.push_back({fmt::format("C={} gamma non-increasing on [0, 90] deg", format_real(c)),
                          1.0, monotone ? 1.0 : 0.0, 0.0, monotone});
  }
  finish(out);
  return out;
}

CommandOutput cmd_angular_pattern(const RunConfig& cfg, const AngularPatternArgs& args) {
  cfg.validate();
  if (!(args.upper_population >= 0.0 && args.upper_population <= 1.0))
    throw InvalidArgument("upper-level population must lie in [0, 1]");
  const std::size_t atom = args.atom.value_or(cfg.chain(0.0).mid_index());
  (void)atom_position(cfg.chain(0.0), atom);

  CommandOutput out;
  add_common_meta(out.table, "angular-pattern", cfg);
  out.table.meta.emplace_back("atom", std::to_string(atom));
  out.table.meta.emplace_back("upper_population", format_real(args.upper_population));
  out.table.meta.emplace_back("prefactor", args.prefactor == PatternPrefactor::dipole_strength
                                               ? "dipole_strength"
                                               : "transverse_only");
  out.table.columns = {"C",          "theta_rad",  "phi_rad",       "weight",   "in_chain",
                       "free_space", "pattern_scale", "rate_ratio", "gamma_rad"};

  struct Result {
    EmissionReport report;
    std::vector<std::string> notes;
  };
  const auto results = parallel_map(cfg.couplings, [&](double c) {
    Result r;
    const auto prof = with_fallback(cfg.chain(c), cfg.solver, r.notes, [&](ChainSolver& s) {
      return s.extract_amplitudes(cfg.z_mode);
    });
    r.report = emission_report(atom, prof.tx[atom - 1], prof.tz[atom - 1], cfg.orientation,
                               args.prefactor);
    return r;
  });

  const auto points = sphere_points(args.grid);
  const Vec3 u = cfg.orientation.unit();
  for (std::size_t k = 0; k < results.size(); ++k) {
    const double c = cfg.couplings[k];
    const auto& rep = results[k].report;
    out.notes.insert(out.notes.end(), results[k].notes.begin(), results[k].notes.end());
    double integral = 0.0;
    for (const auto& p : points) {
      const double proj = dot(rep.effective_dipole, p.direction);
      const double free_proj = dot(u, p.direction);
      const double in_chain = args.upper_population * rep.pattern_scale * (1.0 - proj * proj);
      const double free = args.upper_population * (1.0 - free_proj * free_proj);
      integral += p.weight * in_chain;
      out.table.rows.push_back(
          {c, p.theta, p.phi, p.weight, in_chain, free, rep.pattern_scale, rep.rate_ratio, rep.gamma});
    }

    if (!cfg.check) continue;
    if (args.prefactor != PatternPrefactor::dipole_strength || args.upper_population == 0.0) {
      out.notes.push_back(fmt::format(
          "C={}: normalization check needs the dipole-strength prefactor and a non-zero "
          "population; skipped",
          format_real(c)));
      continue;
    }
    const double normalized = integral / (args.upper_population * 8.0 * pi / 3.0);
    out.checks.push_back(make_check(
        fmt::format("C={} sphere integral / (8 pi / 3) vs rate ratio", format_real(c)),
        rep.rate_ratio, normalized, 1e-6 * std::max(1.0, rep.rate_ratio)));
  }
  finish(out);
  return out;
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mode functions and single-atom emission in a finite chain of polarizable atoms",
               "atomchain"};
  app.set_config("--config", "", "Flat key=value configuration file (flags override it)");
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<double> couplings;
  std::string theta_d = "90deg", phi_d = "0deg";
  std::string z_mode = "paper", solver = "direct", format = "csv";
  std::string output;

  app.add_option("--n-atoms", cfg.n_atoms, "Number of atoms N")->capture_default_str();
  app.add_option("--spacing-nm", cfg.spacing_nm, "Interatomic spacing a0 [nm]")->capture_default_str();
  app.add_option("--wavelength-nm", cfg.wavelength_nm, "Free-space wavelength [nm]")->capture_default_str();
  app.add_option("--coupling", couplings, "Normalized polarizability C (repeatable)");
  app.add_option("--theta-d", theta_d, "Dipole polar angle, e.g. 90deg")->capture_default_str();
  app.add_option("--phi-d", phi_d, "Dipole azimuth, e.g. 0deg")->capture_default_str();
  app.add_option("--z-mode", z_mode, "paper | equation")->capture_default_str();
  app.add_option("--solver", solver, "direct | gauss-seidel | sor")->capture_default_str();
  app.add_option("--tol", cfg.solver.tolerance, "Iteration tolerance")->capture_default_str();
  app.add_option("--max-sweeps", cfg.solver.max_sweeps, "Iteration sweep limit")->capture_default_str();
  app.add_option("--relax", cfg.solver.relaxation, "SOR relaxation factor")->capture_default_str();
  app.add_option("--format", format, "csv | json")->capture_default_str();
  app.add_option("--output", output, "Output path (default: stdout)");
  app.add_flag("--check", cfg.check, "Compare against built-in reference data");

  auto* mode_cmd = app.add_subcommand("mode-profile", "Per-atom mode function f_j");
  std::string mode_theta = "90deg", mode_pol = "perpendicular";
  mode_cmd->add_option("--theta", mode_theta, "Mode polar angle, e.g. 90deg")->capture_default_str();
  mode_cmd->add_option("--polarization", mode_pol, "perpendicular | parallel")->capture_default_str();

  auto* table_cmd = app.add_subcommand("amplitude-table", "Amplitude factors T1, T2, T0");
  auto* life_cmd = app.add_subcommand("lifetime-profile", "Lifetime and shift ratios per atom");

  auto* rot_cmd = app.add_subcommand("rotation-curve", "Pattern rotation angle vs dipole angle");
  std::string grid = "0:90:1";
  std::optional<double> ratio;
  rot_cmd->add_option("--theta-d-grid-deg", grid, "start:stop:step or a,b,c (degrees)")
      ->capture_default_str();
  rot_cmd->add_option("--ratio", ratio, "Override r = T^z / T^x");

  auto* pat_cmd = app.add_subcommand("angular-pattern", "Angular emission pattern of one atom");
  AngularPatternArgs pat;
  std::size_t atom = 0;
  std::string prefactor = "dipole";
  pat_cmd->add_option("--atom", atom, "Emitter index j (default: ceil(N/2))");
  pat_cmd->add_option("--grid-theta", pat.grid.n_theta, "Gauss-Legendre nodes in cos(theta)")
      ->capture_default_str();
  pat_cmd->add_option("--grid-phi", pat.grid.n_phi, "Equispaced nodes in phi")->capture_default_str();
  pat_cmd->add_option("--upper-population", pat.upper_population, "Upper-level population")
      ->capture_default_str();
  pat_cmd->add_option("--prefactor", prefactor, "dipole | transverse")->capture_default_str();

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_config;
  }

  CommandOutput result;
  try {
    if (!couplings.empty()) {
      cfg.couplings = couplings;
    } else if (table_cmd->parsed()) {
      cfg.couplings.clear();
      for (const auto& r : golden_amplitude_table) cfg.couplings.push_back(r.coupling);
    } else if (life_cmd->parsed()) {
      cfg.couplings = {0.1, 0.3, 0.5};
    }
    cfg.orientation = DipoleOrientation(parse_angle(theta_d), parse_angle(phi_d));
    cfg.z_mode = parse_z_mode(z_mode);
    cfg.solver.method = parse_solve_method(solver);
    cfg.format = parse_format(format);
    if (!output.empty()) cfg.output = output;
    cfg.validate();

    if (mode_cmd->parsed()) {
      result = cmd_mode_profile(cfg, {parse_angle(mode_theta), parse_polarization(mode_pol)});
    } else if (table_cmd->parsed()) {
      result = cmd_amplitude_table(cfg);
    } else if (life_cmd->parsed()) {
      result = cmd_lifetime_profile(cfg);
    } else if (rot_cmd->parsed()) {
      result = cmd_rotation_curve(cfg, {parse_degree_grid(grid), ratio});
    } else if (pat_cmd->parsed()) {
      if (atom != 0) pat.atom = atom;
      if (prefactor == "dipole")
        pat.prefactor = PatternPrefactor::dipole_strength;
      else if (prefactor == "transverse")
        pat.prefactor = PatternPrefactor::transverse_only;
      else
        throw InvalidArgument("unknown prefactor '" + prefactor + "'");
      result = cmd_angular_pattern(cfg, pat);
    }
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\nrows: 0\n";
    return exit_solver_failure;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return exit_invalid_config;
  }

  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) {
      err << "cannot open output file " << *cfg.output << '\n';
      return exit_invalid_config;
    }
    write_table(result.table, cfg.format, file);
  } else {
    write_table(result.table, cfg.format, out);
  }
  for (const auto& n : result.notes) err << "note: " << n << '\n';

  bool all_passed = true;
  for (const auto& c : result.checks) {
    err << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": expected "
        << format_real(c.expected) << ", got " << format_real(c.actual) << " (tol "
        << format_real(c.tolerance) << ")\n";
    all_passed = all_passed && c.passed;
  }
  if (cfg.check) {
    err << fmt::format("check: {} of {} comparisons passed\n",
                       std::count_if(result.checks.begin(), result.checks.end(),
                                     [](const CheckResult& c) { return c.passed; }),
                       result.checks.size());
  }
  return all_passed ? exit_ok : exit_check_failed;
}

}  // namespace atomchain::cli
