// irrlab: state-dependent and averaged irreducibility measures (phi, psi
// bounds) for small deterministic threshold networks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irrlab/bench.hpp"
#include "irrlab/corpus.hpp"
#include "irrlab/dist.hpp"
#include "irrlab/errors.hpp"
#include "irrlab/format.hpp"
#include "irrlab/net.hpp"
#include "irrlab/report.hpp"
#include "irrlab/repro.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnreachable = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw irrlab::DomainError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_stem(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

// X-distribution file: one "bitstring probability" pair per line, '#' starts
// a comment, unlisted states carry zero mass. The total must be 1 within
// 1e-6; the masses are then normalized exactly.
irrlab::Dist parse_x_dist_file(const std::string& text, const irrlab::StateSpace& space) {
  std::vector<double> mass(space.total_states(), 0.0);
  std::vector<bool> seen(space.total_states(), false);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    std::string bits;
    if (!(fields >> bits)) continue;
    double p = 0.0;
    if (!(fields >> p) || !(p >= 0.0))
      throw irrlab::ParseError(line_no, "expected 'bitstring probability'");
    std::string extra;
    if (fields >> extra) throw irrlab::ParseError(line_no, "trailing input after probability");
    irrlab::State s;
    try {
      s = space.parse_state(bits);
    } catch (const irrlab::DomainError& e) {
      throw irrlab::ParseError(line_no, e.what());
    }
    if (seen[s]) throw irrlab::ParseError(line_no, "duplicate state " + bits);
    seen[s] = true;
    mass[s] = p;
  }
  double total = 0.0;
  for (double p : mass) total += p;
  if (std::abs(total - 1.0) > 1e-6)
    throw irrlab::ParseError(0, "probabilities sum to " + std::to_string(total) +
                                    ", expected 1 within 1e-6");
  for (double& p : mass) p /= total;
  return irrlab::Dist::from_mass(space, std::move(mass));
}

struct ComputeOptions {
  std::string network_file;
  std::string table_file;
  std::int64_t t = 1;
  std::string mode = "standard";
  std::string x_dist = "uniform";
  std::string format = "md";
  std::string state;
};

int run_compute(const ComputeOptions& opt) {
  if (opt.network_file.empty() == opt.table_file.empty())
    throw irrlab::DomainError("exactly one of --network or --table is required");

  irrlab::TransitionMap map;
  std::string id;
  if (!opt.network_file.empty()) {
    map = irrlab::build_transition_map(
        irrlab::parse_network_spec(read_file(opt.network_file)));
    id = file_stem(opt.network_file);
  } else {
    map = irrlab::parse_transition_table(read_file(opt.table_file));
    id = file_stem(opt.table_file);
  }
  if (opt.t > 1) map = irrlab::compose_t_steps(map, opt.t);

  irrlab::EiMode mode;
  if (opt.mode == "standard") {
    mode = irrlab::EiMode::kStandard;
  } else if (opt.mode == "perturbed") {
    mode = irrlab::EiMode::kPerturbedWires;
  } else {
    throw irrlab::DomainError("unknown mode '" + opt.mode +
                              "' (expected standard or perturbed)");
  }

  irrlab::JointDist joint = irrlab::uniform_joint(map);
  std::string x_label = "uniform";
  if (opt.x_dist.rfind("empirical:", 0) == 0) {
    const std::string path = opt.x_dist.substr(10);
    joint = irrlab::joint_with_input(map, parse_x_dist_file(read_file(path), map.space));
    x_label = "empirical:" + file_stem(path);
  } else if (opt.x_dist == "capacity") {
    throw irrlab::DomainError("x-dist 'capacity' is not implemented");
  } else if (opt.x_dist != "uniform") {
    throw irrlab::DomainError("unknown x-dist '" + opt.x_dist +
                              "' (expected uniform or empirical:FILE)");
  }

  irrlab::MeasureReport report = irrlab::build_report(id, joint, mode, opt.t, x_label);
  if (!opt.state.empty()) {
    const irrlab::State y = map.space.parse_state(opt.state);
    if (!(joint.prob_output(y) > 0.0))
      throw irrlab::UnreachableState("output state " + opt.state + " is unreachable");
    std::vector<irrlab::StateRow> kept;
    for (irrlab::StateRow& row : report.rows)
      if (row.y == y) kept.push_back(std::move(row));
    report.rows = std::move(kept);
  }
  std::cout << irrlab::render_table(report, irrlab::parse_table_format(opt.format));
  return kExitOk;
}

int run_repro(const std::string& figure_id) {
  const irrlab::repro::FigureResult result = irrlab::repro::run_figure(figure_id);
  std::cout << result.rendered << "\n";
  if (result.pass) {
    std::cout << result.id << ": PASS\n";
    return kExitOk;
  }
  std::cout << result.id << ": FAIL (" << result.mismatches.size() << " mismatches)\n";
  for (const std::string& m : result.mismatches) std::cout << "  " << m << "\n";
  return kExitMismatch;
}

int run_bench(int max_nodes) {
  const auto rows = irrlab::bench::run_bench(max_nodes);
  std::cout << irrlab::bench::render_bench(rows);
  return kExitOk;
}

int run_doublets(const std::string& format) {
  const bool csv = format == "csv";
  if (!csv && format != "md")
    throw irrlab::DomainError("unknown format '" + format + "' (expected csv or md)");
  std::string out;
  if (csv)
    out += "network,i_xy,bracket_phi,bracket_psi_min,bracket_psi_max\n";
  else
    out +=
        "| network | I(X;Y) | <phi> | <psi>_min | <psi>_max |\n"
        "| --- | --- | --- | --- | --- |\n";
  for (irrlab::corpus::NodeKind a : irrlab::corpus::threshold_node_kinds())
    for (irrlab::corpus::NodeKind b : irrlab::corpus::threshold_node_kinds()) {
      const irrlab::TransitionMap map =
          irrlab::build_transition_map(irrlab::corpus::doublet_spec(a, b));
      const irrlab::JointDist joint = irrlab::uniform_joint(map);
      const std::string name = irrlab::corpus::doublet_name(a, b);
      const std::string i_xy = irrlab::fixed3(irrlab::mutual_information(joint));
      const std::string phi = irrlab::fixed3(irrlab::bracket_measures(joint).phi);
      const std::string lo = irrlab::fixed3(irrlab::bracket_psi_min(joint).first);
      const std::string hi = irrlab::fixed3(irrlab::bracket_psi_max(joint).first);
      if (csv)
        out += name + "," + i_xy + "," + phi + "," + lo + "," + hi + "\n";
      else
        out += "| " + name + " | " + i_xy + " | " + phi + " | " + lo + " | " + hi + " |\n";
    }
  std::cout << out;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integrated-information (phi) and PID irreducibility bounds (psi) "
               "for small deterministic threshold networks"};
  app.require_subcommand(1);

  ComputeOptions compute_opt;
  CLI::App* compute = app.add_subcommand("compute", "measure one network");
  compute->add_option("--network", compute_opt.network_file,
                      "network description file (threshold DSL)");
  compute->add_option("--table", compute_opt.table_file, "transition table file");
  compute->add_option("--t", compute_opt.t, "number of update steps (default 1)")
      ->check(CLI::PositiveNumber);
  compute->add_option("--mode", compute_opt.mode, "standard|perturbed");
  compute->add_option("--x-dist", compute_opt.x_dist, "uniform|empirical:FILE");
  compute->add_option("--format", compute_opt.format, "csv|md|json");
  compute->add_option("--state", compute_opt.state, "restrict the report to one output state");

  std::string figure_id;
  CLI::App* repro = app.add_subcommand("repro", "recompute a built-in reference table");
  repro->add_option("figure", figure_id, "fig1|fig2|fig3|fig4|fig6")->required();

  int max_nodes = 10;
  CLI::App* bench = app.add_subcommand(
      "bench", "partition counts and <phi> vs <psi> timings on random networks");
  bench->add_option("--max-nodes", max_nodes, "largest network size (default 10)");

  std::string doublets_format = "md";
  CLI::App* doublets = app.add_subcommand(
      "doublets", "sweep every 2-node threshold network and tabulate its measures");
  doublets->add_option("--format", doublets_format, "csv|md");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return run_compute(compute_opt);
    if (repro->parsed()) return run_repro(figure_id);
    if (bench->parsed()) return run_bench(max_nodes);
    if (doublets->parsed()) return run_doublets(doublets_format);
  } catch (const irrlab::UnreachableState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnreachable;
  } catch (const irrlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
