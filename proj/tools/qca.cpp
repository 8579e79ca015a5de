// Command-line front end: assemble circuits into chain layouts, evolve them,
// and evaluate the reduced transport model and the promise-gap construction.
// Exit codes: 0 success, 1 validation error, 2 numerical error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <qca/assembler.hpp>
#include <qca/errors.hpp>
#include <qca/evolver.hpp>
#include <qca/gates.hpp>
#include <qca/layout.hpp>
#include <qca/qma.hpp>
#include <qca/transport.hpp>

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

std::vector<int> parse_sites(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("malformed site list: " + csv);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty site list");
  return out;
}

qca::GateSet make_gates(const std::string& gate_file) {
  if (gate_file.empty()) return qca::GateSet::with_default_gate();
  return qca::GateSet::with_gate(qca::load_g_gate(gate_file));
}

struct AssembleArgs {
  std::string circuit, qubits, out;
  int pointer_start = 0, padding = -1, left_margin = -1;
};

struct EvolveArgs {
  std::string layout, gate_file, boundary = "open", out;
  double t = 0.0, tol = 1e-10;
  int max_dim = 200000, dense_threshold = 2048;
  bool distribution = false, measure = false;
  std::uint64_t seed = 0;
};

struct P1Args {
  int N = 0, M = 0, k = 1;
  std::vector<double> t;
  double t_mult = 0.0;
  std::string out;
};

struct SplitArgs {
  int N = 0, M = 0;
  double t = -1.0, t_mult = 5000.0, eps = 0.001;
  std::string out;
};

struct SlaterArgs {
  int M = 0;
  double t = 0.0;
  std::string initial, final_sites, out;
  bool density = false;
};

struct QmaArgs {
  std::string input, out;
  double zero_tol = 1e-9;
  int ring_multiplier = 1;
  std::int64_t dense_cap = 4096;
};

void run_assemble(const AssembleArgs& a) {
  const qca::Circuit circuit = qca::load_circuit(a.circuit);
  const qca::ChainLayout layout = qca::make_layout(
      circuit, a.qubits, {a.pointer_start, a.padding, a.left_margin});
  emit(nlohmann::json(layout).dump(2) + "\n", a.out);
}

void run_evolve(const EvolveArgs& a) {
  const qca::ChainLayout layout = qca::load_layout(a.layout);
  const qca::Boundary boundary =
      a.boundary == "periodic" ? qca::Boundary::Periodic : qca::Boundary::Open;
  const qca::GateSet gates = make_gates(a.gate_file);
  qca::EvolveOptions opts;
  opts.tol = a.tol;
  opts.max_dimension = a.max_dim;
  opts.dense_threshold = a.dense_threshold;
  qca::SubspaceEvolver ev(layout, boundary, gates, opts);
  ev.evolve(a.t);

  nlohmann::json j{{"schema_version", 1},
                   {"t", a.t},
                   {"boundary", a.boundary},
                   {"dimension", ev.basis().size()},
                   {"norm", ev.norm()},
                   {"energy", ev.energy()},
                   {"initial_configuration", qca::initial_configuration(layout).to_string()},
                   {"success_probability", ev.success_probability()}};
  if (a.distribution) {
    auto& rows = j["distribution"] = nlohmann::json::array();
    for (const auto& [config, probability] : ev.distribution())
      rows.push_back({{"configuration", config.to_string()}, {"probability", probability}});
  }
  if (a.measure) {
    const qca::MeasurementOutcome outcome = ev.measure(a.seed);
    const bool success = qca::success_predicate(outcome.configuration, layout);
    nlohmann::json m{{"seed", a.seed},
                     {"configuration", outcome.configuration.to_string()},
                     {"probability", outcome.probability},
                     {"success", success}};
    if (success) {
      nlohmann::json ro;
      for (const auto& [bits, p] : ev.readout(outcome.configuration)) ro[bits] = p;
      m["readout"] = ro;
    }
    j["measurement"] = m;
  }
  emit(j.dump(2) + "\n", a.out);
}

void run_p1(const P1Args& a) {
  const int M = a.M > 0 ? a.M : 100 * a.N;
  std::vector<double> times = a.t;
  if (a.t_mult > 0.0) times.push_back(a.t_mult * a.N);
  if (times.empty()) throw std::invalid_argument("p1: give --t or --t-mult");
  std::string csv = "t,p1,p,success_bound\n";
  for (double t : times) {
    const double p1 = qca::transport::p1(a.N, M, t);
    const double bound = qca::transport::success_bound(p1, a.N, a.k);
    csv += fmt(t) + "," + fmt(p1) + "," + fmt(1.0 - p1) + "," + fmt(bound) + "\n";
  }
  emit(csv, a.out);
}

void run_split(const SplitArgs& a) {
  const int M = a.M > 0 ? a.M : 100 * a.N;
  const double t = a.t >= 0.0 ? a.t : a.t_mult * a.N;
  const auto est = qca::transport::split_estimate(a.N, M, t, a.eps);
  const nlohmann::json j{{"schema_version", 1},
                         {"N", est.N},
                         {"M", est.M},
                         {"t", est.t},
                         {"eps", est.eps},
                         {"d1", est.d1},
                         {"d2", est.d2},
                         {"term1", est.term1},
                         {"term2", est.term2},
                         {"term3", est.term3},
                         {"total", est.total},
                         {"term1_bound", est.term1_bound},
                         {"term2_bound", est.term2_bound},
                         {"total_bound", est.total_bound},
                         {"bessel_max_dev", est.bessel_max_dev},
                         {"ballistic_crossing", est.ballistic_crossing}};
  emit(j.dump(2) + "\n", a.out);
}

void run_slater(const SlaterArgs& a) {
  const std::vector<int> initial = parse_sites(a.initial);
  nlohmann::json j{{"schema_version", 1}, {"M", a.M}, {"t", a.t}, {"initial", initial}};
  if (!a.final_sites.empty()) {
    const std::vector<int> final_sites = parse_sites(a.final_sites);
    j["final"] = final_sites;
    j["probability"] = qca::transport::slater_config_probability(initial, final_sites, a.t, a.M);
  } else {
    auto& rows = j["distribution"] = nlohmann::json::array();
    for (const auto& [sites, probability] : qca::transport::slater_distribution(initial, a.t, a.M))
      rows.push_back({{"sites", sites}, {"probability", probability}});
  }
  if (a.density) j["density"] = qca::transport::density(initial, a.t, a.M);
  emit(j.dump(2) + "\n", a.out);
}

void run_qma_verify(const QmaArgs& a) {
  const qca::qma::InputHamiltonian h = qca::qma::load_input_hamiltonian(a.input);
  qca::qma::VerifyOptions opts;
  opts.zero_tol = a.zero_tol;
  opts.ring_multiplier = a.ring_multiplier;
  opts.dense_cap = a.dense_cap;
  const qca::qma::SpectrumResult result = qca::qma::verify_promise(h, opts);
  emit(nlohmann::json(result).dump(2) + "\n", a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translationally invariant chain automaton toolkit"};
  app.require_subcommand(1);

  AssembleArgs assemble_args;
  auto* assemble = app.add_subcommand(
      "assemble", "compile a circuit JSON into a chain layout JSON");
  assemble->add_option("--circuit", assemble_args.circuit, "circuit JSON file")->required();
  assemble->add_option("--qubits", assemble_args.qubits, "initial window bits, e.g. 00")
      ->required();
  assemble->add_option("--pointer-start", assemble_args.pointer_start,
                       "qubit index where the pointer starts");
  assemble->add_option("--padding", assemble_args.padding,
                       "trailing L commands; -1 selects the (l_p+l_q)^2 sizing rule");
  assemble->add_option("--left-margin", assemble_args.left_margin,
                       "empty sites left of the window; -1 sizes to the command count");
  assemble->add_option("--out", assemble_args.out, "output file (default stdout)");
  assemble->callback([&] { run_assemble(assemble_args); });

  EvolveArgs evolve_args;
  auto* evolve = app.add_subcommand("evolve", "evolve a layout and report the outcome");
  evolve->add_option("--layout", evolve_args.layout, "chain layout JSON file")->required();
  evolve->add_option("--t", evolve_args.t, "evolution time")->required();
  evolve->add_option("--boundary", evolve_args.boundary, "open or periodic")
      ->check(CLI::IsMember({"open", "periodic"}));
  evolve->add_option("--gate-file", evolve_args.gate_file, "custom g gate JSON file");
  evolve->add_option("--tol", evolve_args.tol, "time-evolution accuracy target");
  evolve->add_option("--max-dim", evolve_args.max_dim, "configuration-space size cap");
  evolve->add_option("--dense-threshold", evolve_args.dense_threshold,
                     "largest dimension handled by dense diagonalization");
  evolve->add_flag("--distribution", evolve_args.distribution,
                   "include the full configuration distribution");
  evolve->add_flag("--measure", evolve_args.measure, "sample one program measurement");
  evolve->add_option("--seed", evolve_args.seed, "measurement seed");
  evolve->add_option("--out", evolve_args.out, "output file (default stdout)");
  evolve->callback([&] { run_evolve(evolve_args); });

  P1Args p1_args;
  auto* p1 = app.add_subcommand("p1", "block survival probability of the hopping model (CSV)");
  p1->add_option("--N", p1_args.N, "filled block length")->required();
  p1->add_option("--M", p1_args.M, "ring size (default 100*N)");
  p1->add_option("--t", p1_args.t, "evolution time (repeatable)");
  p1->add_option("--t-mult", p1_args.t_mult, "adds t = t-mult * N");
  p1->add_option("--k", p1_args.k, "required departures for the success bound");
  p1->add_option("--csv,--out", p1_args.out, "output CSV file (default stdout)");
  p1->callback([&] { run_p1(p1_args); });

  SplitArgs split_args;
  auto* split =
      app.add_subcommand("split", "three-term split of the p1 integral approximation (JSON)");
  split->add_option("--N", split_args.N, "filled block length")->required();
  split->add_option("--M", split_args.M, "ring size (default 100*N)");
  split->add_option("--t", split_args.t, "evolution time (default t-mult * N)");
  split->add_option("--t-mult", split_args.t_mult, "time multiplier when --t is absent");
  split->add_option("--eps", split_args.eps, "first split point eps*M/N");
  split->add_option("--out", split_args.out, "output file (default stdout)");
  split->callback([&] { run_split(split_args); });

  SlaterArgs slater_args;
  auto* slater =
      app.add_subcommand("slater", "determinant configuration probabilities (JSON)");
  slater->add_option("--M", slater_args.M, "ring size")->required();
  slater->add_option("--initial", slater_args.initial, "comma-separated initial sites")
      ->required();
  slater->add_option("--t", slater_args.t, "evolution time")->required();
  slater->add_option("--final", slater_args.final_sites,
                     "comma-separated final sites; omit for the full distribution");
  slater->add_flag("--density", slater_args.density, "include the one-body density");
  slater->add_option("--out", slater_args.out, "output file (default stdout)");
  slater->callback([&] { run_slater(slater_args); });

  QmaArgs qma_args;
  auto* qma = app.add_subcommand("qma", "promise-gap verification");
  qma->require_subcommand(1);
  auto* verify = qma->add_subcommand("verify", "diagonalize the wrapper and classify e0");
  verify->add_option("--input", qma_args.input, "input chain Hamiltonian JSON")->required();
  verify->add_option("--zero-tol", qma_args.zero_tol, "|e0| threshold for zero-energy");
  verify->add_option("--ring-multiplier", qma_args.ring_multiplier,
                     "ring length as a multiple of n+1");
  verify->add_option("--dense-cap", qma_args.dense_cap, "largest dense dimension");
  verify->add_option("--out", qma_args.out, "output file (default stdout)");
  verify->callback([&] { run_qma_verify(qma_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const qca::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
