#include "cli.hpp"

#include "lattice_flows/integrate.hpp"
#include "lattice_flows/io.hpp"
#include "lattice_flows/registry.hpp"
#include "lattice_flows/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lattice_flows::cli {

namespace {

// Errors found while interpreting arguments, before any computation starts.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

struct SimulateArgs {
  std::string system;
  Index n = 0;
  Index m = 0;
  std::string state;
  double t_end = -1.0;
  double dt = 1e-3;
  bool adaptive = false;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::string invariants;
  std::string spectrum_file;
  std::string output;
  systems::SklyaninCouplings couplings;
};

struct VerifyArgs {
  std::string suite;
  suites::Options options;
  Index states = 0;
  Index n = 0;
  Index m = 0;
  std::string file;
  std::string output;
};

// Fills the size parameter the system needs from the initial state when it was not given.
registry::SystemParams params_for(const SimulateArgs& a, const State& s) {
  registry::SystemParams p;
  p.couplings = a.couplings;
  p.chart = s.chart();
  p.n = a.n;
  p.m = a.m;
  const std::string& id = a.system;
  if (id == "ab" && p.m == 0) p.m = s.size() - s.split();
  if ((id == "sklyanin" || id == "sklyanin-full") && p.m == 0) p.m = s.split();
  if (id == "toda" && p.n == 0) p.n = s.chart() == Chart::qp ? s.split() : s.size() - s.split();
  if (p.n == 0 && id != "ab" && id != "toda" && id != "spectrum") p.n = s.size();
  if (id == "spectrum") {
    if (a.spectrum_file.empty()) throw UsageError("system spectrum needs --spectrum FILE");
    p.spectrum = rootdata::Spectrum::from_json(read_file(a.spectrum_file));
  }
  return p;
}

int simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const auto& ids = registry::system_ids();
  if (std::find(ids.begin(), ids.end(), a.system) == ids.end()) {
    err << "unknown system: " << a.system << '\n';
    return kUsage;
  }
  systems::LatticeSystem system;
  State s0 = State::volterra_u(Vec());
  std::vector<systems::NamedInvariant> invariants;
  try {
    const std::string text =
        (!a.state.empty() && a.state.front() == '{') ? a.state : read_file(a.state);
    s0 = io::state_from_json(text);
    system = registry::make_system(a.system, params_for(a, s0));
    require_chart(s0, system.chart, "simulate");
    if (s0.size() != system.dimension)
      throw UsageError("state has " + std::to_string(s0.size()) + " coordinates, system needs " +
                       std::to_string(system.dimension));
    invariants = registry::select_invariants(system, split_list(a.invariants));
    if (!(a.t_end >= 0.0)) throw UsageError("--t must be nonnegative");
    if (!a.adaptive && !(a.dt > 0.0)) throw UsageError("--dt must be positive");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const integrate::StepPolicy policy =
      a.adaptive ? integrate::StepPolicy(integrate::Adaptive{a.rtol, a.atol})
                 : integrate::StepPolicy(integrate::FixedStep{a.dt});
  integrate::Trajectory traj;
  try {
    traj = integrate::integrate(system, s0, a.t_end, policy);
  } catch (const DomainExit& e) {
    err << "domain exit at t=" << e.time() << ": " << e.what() << '\n';
    return kFailure;
  } catch (const StepFailure& e) {
    err << "step failure at t=" << e.time() << ": " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }

  try {
    if (a.output.empty()) {
      integrate::write_csv(out, traj, invariants);
    } else {
      std::ofstream file(a.output);
      if (!file) throw UsageError("cannot write " + a.output);
      integrate::write_csv(file, traj, invariants);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kPass;
}

int verify(VerifyArgs a, std::ostream& out, std::ostream& err) {
  if (a.states > 0) a.options.states = a.states;
  if (a.n > 0) a.options.n = a.n;
  if (a.m > 0) a.options.m = a.m;
  std::vector<suites::Record> records;
  try {
    if (!a.file.empty()) a.options.spectrum = rootdata::Spectrum::from_json(read_file(a.file));
    records = suites::run_suite(a.suite, a.options);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const std::string report = suites::report_json(a.suite, a.options, records);
  if (a.output.empty()) {
    out << report << '\n';
  } else {
    std::ofstream file(a.output);
    if (!file) {
      err << "error: cannot write " << a.output << '\n';
      return kUsage;
    }
    file << report << '\n';
  }
  const bool pass = !records.empty() && std::all_of(records.begin(), records.end(),
                                                    [](const auto& r) { return r.pass; });
  return pass ? kPass : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integrable lattice simulation and verification", "lattice_flows"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate a lattice and write a CSV trajectory");
  simulate_cmd->add_option("--system", sim.system, "System id")->required();
  simulate_cmd->add_option("--n", sim.n, "Number of variables (or particles for toda)");
  simulate_cmd->add_option("--m", sim.m, "Order for ab and sklyanin");
  simulate_cmd->add_option("--state", sim.state, "Initial state as inline JSON or a file path")->required();
  simulate_cmd->add_option("--t", sim.t_end, "End time")->required();
  simulate_cmd->add_option("--dt", sim.dt, "Fixed RK4 step");
  simulate_cmd->add_flag("--adaptive", sim.adaptive, "Use the adaptive 5(4) integrator");
  simulate_cmd->add_option("--rtol", sim.rtol, "Adaptive relative tolerance");
  simulate_cmd->add_option("--atol", sim.atol, "Adaptive absolute tolerance");
  simulate_cmd->add_option("--invariants", sim.invariants, "Comma-separated invariant names");
  simulate_cmd->add_option("--spectrum", sim.spectrum_file, "Spectrum JSON file (system spectrum)");
  simulate_cmd->add_option("--output", sim.output, "CSV path (default: standard output)");
  simulate_cmd->add_option("--alpha1", sim.couplings.alpha1);
  simulate_cmd->add_option("--beta1", sim.couplings.beta1);
  simulate_cmd->add_option("--alphan", sim.couplings.alphan);
  simulate_cmd->add_option("--betan", sim.couplings.betan);

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Run a residual suite at seeded random states");
  verify_cmd->add_option("suite", ver.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suites::suite_names()));
  verify_cmd->add_option("--system", ver.options.system, "lax: km, toda, vd or ab");
  verify_cmd->add_option("--structure", ver.options.structure, "jacobi, casimir: structure name");
  verify_cmd->add_option("--chart", ver.options.chart, "lenard, compat: v or ab")
      ->check(CLI::IsMember({"v", "ab"}));
  verify_cmd->add_option("--map", ver.options.map, "transform: map name");
  verify_cmd->add_option("--n", ver.n, "Size in variables");
  verify_cmd->add_option("--m", ver.m, "Order of the ab chart");
  verify_cmd->add_option("--states", ver.states, "Random states per check");
  verify_cmd->add_option("--seed", ver.options.seed, "Generator seed");
  verify_cmd->add_option("--lambda", ver.options.lambdas, "compat: pencil parameters");
  verify_cmd->add_option("--file", ver.file, "spectrum: spectrum JSON file");
  verify_cmd->add_option("--output", ver.output, "Report path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  }

  if (simulate_cmd->parsed()) return simulate(sim, out, err);
  return verify(ver, out, err);
}

}  // namespace lattice_flows::cli
