#include "wmlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "wmlab/errors.hpp"
#include "wmlab/io.hpp"
#include "wmlab/report.hpp"
#include "wmlab/schrodinger.hpp"
#include "wmlab/verify.hpp"
#include "wmlab/wigner.hpp"

namespace wmlab {
namespace {

struct Common {
  std::string config_path;
  std::string out;
  bool no_timestamp = false;
};

struct StateChoice {
  enum class Kind { eigenstate, coherent } kind = Kind::eigenstate;
  std::size_t level = 0;
  PhasePoint center;
};

bool parse_double(std::string_view s, double& v) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(v);
}

StateChoice parse_state(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("state must be eigenstate:n or coherent:q0,p0");
  const std::string_view kind(text.data(), colon);
  const std::string_view rest(text.data() + colon + 1, text.size() - colon - 1);
  StateChoice s;
  if (kind == "eigenstate") {
    s.kind = StateChoice::Kind::eigenstate;
    const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), s.level);
    if (rest.empty() || res.ec != std::errc{} || res.ptr != rest.data() + rest.size())
      throw InvalidArgument("eigenstate level must be a non-negative integer: '" + text + "'");
    return s;
  }
  if (kind == "coherent") {
    s.kind = StateChoice::Kind::coherent;
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos || !parse_double(rest.substr(0, comma), s.center.q) ||
        !parse_double(rest.substr(comma + 1), s.center.p))
      throw InvalidArgument("coherent state needs two numbers q0,p0: '" + text + "'");
    return s;
  }
  throw InvalidArgument("unknown state kind '" + std::string(kind) + "'");
}

Config load_config(const Common& c) { return c.config_path.empty() ? Config{} : Config::load(c.config_path); }

bool is_usage_error(const Error& e) {
  const std::string& k = e.kind();
  return k == "InvalidArgument" || k == "IoError" || k == "DomainError" || k == "OutOfTruncation" ||
         k == "GridTooNarrow";
}

int cmd_verify(const Common& c, std::ostream& out) {
  const Config cfg = load_config(c);
  const VerificationReport rep = run_verification(cfg);
  const std::string path = c.out.empty() ? "report.json" : c.out;
  io::write_text(path, rep.to_json(cfg.to_json(), !c.no_timestamp).dump(2) + "\n");
  for (const auto& e : rep.entries) {
    if (e.status != Status::fail) continue;
    out << "FAIL " << e.equation_id << " [" << e.module << "::" << e.operation << "] residual "
        << (e.residual ? io::format_double(*e.residual) : std::string("n/a")) << " threshold "
        << (e.threshold ? io::format_double(*e.threshold) : std::string("n/a"));
    if (!e.note.empty()) out << " (" << e.note << ")";
    out << "\n";
  }
  out << rep.entries.size() << " entries: " << rep.count(Status::pass) << " pass, " << rep.count(Status::fail)
      << " fail, " << rep.count(Status::reported) << " reported -> " << path << "\n";
  return rep.all_pass() ? kExitOk : kExitFailure;
}

int cmd_spectrum(const Common& c, std::size_t cutoff, std::ostream& out) {
  const Config cfg = load_config(c);
  if (cutoff < 2) throw InvalidArgument("--cutoff must be at least 2");
  const auto spectrum = ho_spectrum(cutoff, cfg.params);
  const std::string path = c.out.empty() ? "spectrum.csv" : c.out;
  io::write_spectrum_csv(spectrum, path);
  out << spectrum.size() << " levels -> " << path << "\n";
  return kExitOk;
}

int cmd_spin(const Common& c, std::size_t n_max, std::ostream& out) {
  const Config cfg = load_config(c);
  if (n_max > 30) throw InvalidArgument("--n-max above 30 is not supported");
  const std::size_t dim = std::max<std::size_t>(2, n_max + 1);
  auto rows = spin_spectrum(dim, cfg.params);
  std::erase_if(rows, [n_max](const SpinRow& r) { return r.N > n_max; });
  const std::string path = c.out.empty() ? "spin.csv" : c.out;
  io::write_spin_csv(rows, cfg.params, path);
  out << std::count_if(rows.begin(), rows.end(), [](const SpinRow& r) { return r.complete; }) << " states -> " << path
      << "\n";
  return kExitOk;
}

int cmd_evolve(const Common& c, const std::string& state_text, std::optional<double> time,
               std::optional<std::size_t> steps, std::ostream& out) {
  const StateChoice choice = parse_state(state_text);
  const Config cfg = load_config(c);
  const PhysParams& par = cfg.params;
  const PhaseGrid grid = cfg.grid();
  const double t = time.value_or(2.0 * std::numbers::pi / par.omega);
  if (!std::isfinite(t)) throw InvalidArgument("--time must be finite");

  const WaveFunction phi0 = choice.kind == StateChoice::Kind::eigenstate
                                ? hermite_eigenstate(choice.level, grid.q_axis(), par)
                                : coherent_state(choice.center, 0.0, grid.q_axis(), par);
  const std::size_t n_steps = steps.value_or(default_split_steps(t, par));
  const EquivalenceReport eq = equivalence_report(phi0, t, grid, par, n_steps);
  WaveFunction phi1 = split_step_evolve(phi0, t, eq.n_steps, par);
  phi1.time = t;

  PhaseDensity f0 = wigner_density(phi0, grid, par);
  f0.time = 0.0;
  PhaseDensity f1 = liouville_propagate(f0, t, par);
  f1.time = t;
  PhaseDensity fq = eq.quantum;
  fq.time = t;

  const std::filesystem::path dir = c.out.empty() ? "evolve_out" : c.out;
  io::write_wavefunction(phi0, dir / "wavefunction_t0");
  io::write_wavefunction(phi1, dir / "wavefunction_t1");
  io::write_phase_density(f0, dir / "density_t0");
  io::write_phase_density(f1, dir / "density_t1");
  io::write_phase_density(fq, dir / "density_quantum_t1");

  double stationary = 0.0;
  for (std::size_t i = 0; i < f0.values.size(); ++i) stationary = std::max(stationary, std::abs(f1.values[i] - f0.values[i]));

  nlohmann::json rep;
  rep["config"] = cfg.to_json();
  rep["state"] = state_text;
  rep["time"] = t;
  rep["n_steps"] = eq.n_steps;
  rep["equivalence"] = {{"l2", eq.l2}, {"max_abs", eq.max_abs}};
  rep["density_change_max_abs"] = stationary;
  if (!c.no_timestamp) rep["generated_at"] = utc_timestamp();
  io::write_text(dir / "equivalence.json", rep.dump(2) + "\n");
  out << "equivalence L2 " << io::format_double(eq.l2) << " over " << eq.n_steps << " steps -> " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space verification laboratory for the harmonic oscillator", "wmlab"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON configuration file");
    sub->add_option("--out", common.out, "output file or directory");
    sub->add_flag("--no-timestamp", common.no_timestamp, "omit the generation time from JSON output");
  };

  auto* verify = app.add_subcommand("verify", "run the equation checks and write a JSON report");
  add_common(verify);

  std::size_t cutoff = kDefaultTruncation;
  auto* spectrum = app.add_subcommand("spectrum", "write the truncated oscillator spectrum as CSV");
  add_common(spectrum);
  spectrum->add_option("--cutoff", cutoff, "Fock space dimension D");

  std::size_t n_max = 7;
  auto* spin = app.add_subcommand("spin", "write the two-mode spin spectrum as CSV");
  add_common(spin);
  spin->add_option("--n-max", n_max, "largest total excitation number N");

  std::string state;
  std::optional<double> time;
  std::optional<std::size_t> steps;
  auto* evolve = app.add_subcommand("evolve", "evolve a state both ways and export the fields");
  add_common(evolve);
  evolve->add_option("--state", state, "eigenstate:n or coherent:q0,p0")->required();
  evolve->add_option("--time", time, "duration (default one period)");
  evolve->add_option("--steps", steps, "split-step count (default 512 per period)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "wmlab: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(common, out);
    if (spectrum->parsed()) return cmd_spectrum(common, cutoff, out);
    if (spin->parsed()) return cmd_spin(common, n_max, out);
    if (evolve->parsed()) return cmd_evolve(common, state, time, steps, out);
  } catch (const Error& e) {
    err << "wmlab: " << e.what() << "\n";
    return is_usage_error(e) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "wmlab: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace wmlab
