#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "irrlab/corpus.hpp"
#include "irrlab/errors.hpp"
#include "irrlab/format.hpp"
#include "irrlab/net.hpp"
#include "irrlab/phi.hpp"
#include "irrlab/psi.hpp"
#include "irrlab/state_space.hpp"

namespace irrlab::repro {

// Expected values are stored exactly as printed in the reference tables and
// compared at half-ULP of that precision: two decimals or fewer match within
// 0.005, three decimals within 0.0005 (plus a 1e-9 quantization guard).
inline bool matches_printed(double computed, std::string_view printed) {
  const double want = std::strtod(std::string(printed).c_str(), nullptr);
  const size_t dot = printed.find('.');
  const size_t decimals = dot == std::string_view::npos ? 0 : printed.size() - dot - 1;
  const double tol = (decimals >= 3 ? 5e-4 : 5e-3) + 1e-9;
  return std::abs(computed - want) <= tol;
}

struct FigureResult {
  std::string id;
  bool pass = true;
  std::string rendered;
  std::vector<std::string> mismatches;
};

inline std::vector<std::string> figure_ids() {
  return {"fig1", "fig2", "fig3", "fig4", "fig6"};
}

namespace detail {

inline const TransitionMap& reference_network(const std::string& name) {
  static const std::vector<corpus::NamedNetwork> nets = corpus::reference_networks();
  for (const auto& n : nets)
    if (n.name == name) return n.map;
  throw DomainError("unknown reference network " + name);
}

struct Check {
  FigureResult* result;
  void value(const std::string& where, double computed, std::string_view printed) {
    if (!matches_printed(computed, printed))
      fail(where + ": got " + fixed3(computed) + ", expected " + std::string(printed));
  }
  void text(const std::string& where, const std::string& computed,
            std::string_view printed) {
    if (computed != printed)
      fail(where + ": got " + computed + ", expected " + std::string(printed));
  }
  void fail(std::string message) {
    result->pass = false;
    result->mismatches.push_back(std::move(message));
  }
};

struct StateGolden {
  const char* network;
  std::array<const char*, 4> pr;
  std::array<const char*, 4> ei;
  std::array<const char*, 4> phi;
  const char* bracket_phi;
  const char* mutual_information;
};

// Per-state tables for the 2-node examples (fig1 and fig2).
inline FigureResult run_state_figure(const std::string& id,
                                     const std::vector<StateGolden>& golden) {
  FigureResult result;
  result.id = id;
  Check check{&result};
  std::string out = "# " + id + "\n\n";
  out += "| network | y | Pr(y) | ei(y) | phi(y) |\n| --- | --- | --- | --- | --- |\n";
  for (const StateGolden& g : golden) {
    const JointDist joint = uniform_joint(reference_network(g.network));
    const Dist py = joint.output_marginal();
    const State total = py.space().total_states();
    for (State y = 0; y < total; ++y) {
      const std::string bits = py.space().format_state(y);
      const std::string where = std::string(g.network) + " y=" + bits;
      if (py.mass(y) > 0.0) {
        const double ei = effective_information(joint, y);
        const double phi = phi_of_state(joint, y);
        out += "| " + std::string(g.network) + " | " + bits + " | " +
               format_probability(py.mass(y), total) + " | " + fixed3(ei) + " | " +
               fixed3(phi) + " |\n";
        check.text(where + " Pr", format_probability(py.mass(y), total), g.pr[y]);
        check.value(where + " ei", ei, g.ei[y]);
        check.value(where + " phi", phi, g.phi[y]);
      } else {
        out += "| " + std::string(g.network) + " | " + bits + " | - | - | - |\n";
        check.text(where + " Pr", "-", g.pr[y]);
        check.text(where + " ei", "-", g.ei[y]);
        check.text(where + " phi", "-", g.phi[y]);
      }
    }
    const double i_xy = mutual_information(joint);
    const double bracket_phi = bracket_measures(joint).phi;
    out += "| " + std::string(g.network) + " | <all> | I(X;Y)=" + fixed3(i_xy) +
           " | <phi>=" + fixed3(bracket_phi) + " | |\n";
    check.value(std::string(g.network) + " I(X;Y)", i_xy, g.mutual_information);
    check.value(std::string(g.network) + " <phi>", bracket_phi, g.bracket_phi);
  }
  result.rendered = std::move(out);
  return result;
}

struct PhiRangeGolden {
  const char* network;
  const char* mutual_information;
  const char* min_phi;
  const char* max_phi;
  const char* bracket_phi;
};

struct ComparisonGolden {
  const char* network;
  const char* mutual_information;
  const char* bracket_phi;
  const char* bracket_psi_min;
  const char* bracket_psi_max;
};

inline FigureResult run_phi_range_figure(const std::string& id,
                                         const std::vector<PhiRangeGolden>& golden) {
  FigureResult result;
  result.id = id;
  Check check{&result};
  std::string out = "# " + id + "\n\n";
  out +=
      "| network | I(X;Y) | min_y phi | max_y phi | <phi> |\n"
      "| --- | --- | --- | --- | --- |\n";
  for (const PhiRangeGolden& g : golden) {
    const JointDist joint = uniform_joint(reference_network(g.network));
    const Dist py = joint.output_marginal();
    double min_phi = std::numeric_limits<double>::infinity();
    double max_phi = -std::numeric_limits<double>::infinity();
    for (State y = 0; y < py.space().total_states(); ++y)
      if (py.mass(y) > 0.0) {
        const double phi = phi_of_state(joint, y);
        min_phi = std::min(min_phi, phi);
        max_phi = std::max(max_phi, phi);
      }
    const double i_xy = mutual_information(joint);
    const double bracket_phi = bracket_measures(joint).phi;
    out += "| " + std::string(g.network) + " | " + fixed3(i_xy) + " | " +
           fixed3(min_phi) + " | " + fixed3(max_phi) + " | " + fixed3(bracket_phi) +
           " |\n";
    check.value(std::string(g.network) + " I(X;Y)", i_xy, g.mutual_information);
    check.value(std::string(g.network) + " min phi", min_phi, g.min_phi);
    check.value(std::string(g.network) + " max phi", max_phi, g.max_phi);
    check.value(std::string(g.network) + " <phi>", bracket_phi, g.bracket_phi);
  }
  result.rendered = std::move(out);
  return result;
}

inline FigureResult run_comparison_figure(const std::string& id,
                                          const std::vector<ComparisonGolden>& golden) {
  FigureResult result;
  result.id = id;
  Check check{&result};
  std::string out = "# " + id + "\n\n";
  out +=
      "| network | I(X;Y) | <phi> | <psi>_min | <psi>_max |\n"
      "| --- | --- | --- | --- | --- |\n";
  for (const ComparisonGolden& g : golden) {
    const JointDist joint = uniform_joint(reference_network(g.network));
    const double i_xy = mutual_information(joint);
    const double bracket_phi = bracket_measures(joint).phi;
    const double psi_lo = bracket_psi_min(joint).first;
    const double psi_hi = bracket_psi_max(joint).first;
    out += "| " + std::string(g.network) + " | " + fixed3(i_xy) + " | " +
           fixed3(bracket_phi) + " | " + fixed3(psi_lo) + " | " + fixed3(psi_hi) +
           " |\n";
    check.value(std::string(g.network) + " I(X;Y)", i_xy, g.mutual_information);
    check.value(std::string(g.network) + " <phi>", bracket_phi, g.bracket_phi);
    check.value(std::string(g.network) + " <psi>_min", psi_lo, g.bracket_psi_min);
    check.value(std::string(g.network) + " <psi>_max", psi_hi, g.bracket_psi_max);
  }
  result.rendered = std::move(out);
  return result;
}

}  // namespace detail

inline FigureResult run_figure(std::string_view id) {
  using detail::ComparisonGolden;
  using detail::PhiRangeGolden;
  using detail::StateGolden;

  if (id == "fig1") {
    return detail::run_state_figure(
        "fig1", {StateGolden{"OR-GET",
                             {"1/4", "-", "1/4", "1/2"},
                             {"2.00", "-", "2.00", "1.00"},
                             {"1.00", "-", "2.58", "0.58"},
                             "1.189",
                             "1.5"},
                 StateGolden{"OR-XOR",
                             {"1/4", "-", "1/4", "1/2"},
                             {"2.00", "-", "2.00", "1.00"},
                             {"1.00", "-", "1.58", "1.08"},
                             "1.189",
                             "1.5"}});
  }
  if (id == "fig2") {
    return detail::run_state_figure(
        "fig2", {StateGolden{"AND-ZERO",
                             {"3/4", "-", "1/4", "-"},
                             {"0.42", "-", "2.00", "-"},
                             {"0.33", "-", "1.00", "-"},
                             "0.5",
                             "0.811"},
                 StateGolden{"AND-AND",
                             {"3/4", "-", "-", "1/4"},
                             {"0.42", "-", "-", "2.00"},
                             {"0.25", "-", "-", "0.00"},
                             "0.189",
                             "0.811"}});
  }
  if (id == "fig3") {
    return detail::run_phi_range_figure(
        "fig3", {PhiRangeGolden{"SHIFT", "4.000", "2.000", "2.000", "2.000"},
                 PhiRangeGolden{"4422", "1.198", "0.000", "0.673", "0.424"},
                 PhiRangeGolden{"4322", "1.805", "0.322", "1.586", "1.367"},
                 PhiRangeGolden{"4321", "2.031", "0.322", "1.682", "1.651"}});
  }
  if (id == "fig4") {
    return detail::run_comparison_figure(
        "fig4", {ComparisonGolden{"AND-ZERO+KEEP", "1.81", "0", "0", "0.50"},
                 ComparisonGolden{"2x AND-ZERO", "1.62", "0", "0", "0.50"},
                 ComparisonGolden{"KEEP-KEEP", "2.00", "0", "0", "1.00"},
                 ComparisonGolden{"GET-GET", "2.00", "2.00", "0", "1.00"},
                 ComparisonGolden{"ANDtriplet", "2.00", "2.00", "0.16", "0.75"},
                 ComparisonGolden{"iso-ANDtriplet", "2.00", "1.07", "0.16", "0.75"},
                 ComparisonGolden{"AND-ZERO", "0.81", "0.50", "0.19", "0.50"},
                 ComparisonGolden{"AND-AND", "0.81", "0.19", "0.19", "0.50"},
                 ComparisonGolden{"SHIFT", "4.00", "2.00", "0", "1.00"},
                 ComparisonGolden{"4422", "1.20", "0.42", "0.33", "0.50"},
                 ComparisonGolden{"4322", "1.81", "1.37", "0.68", "0.88"},
                 ComparisonGolden{"4321", "2.03", "1.65", "0.78", "1.00"}});
  }
  if (id == "fig6") {
    return detail::run_comparison_figure(
        "fig6", {ComparisonGolden{"ZERO-ZERO", "0", "0", "0", "0"},
                 ComparisonGolden{"KEEP-ZERO", "1.0", "0", "0", "0"},
                 ComparisonGolden{"KEEP-KEEP", "2.0", "0", "0", "1.0"},
                 ComparisonGolden{"GET-ZERO", "1.0", "1.0", "0", "0"},
                 ComparisonGolden{"GET-KEEP", "1.0", "0", "0", "0"},
                 ComparisonGolden{"GET-GET", "2.0", "2.0", "0", "1.0"},
                 ComparisonGolden{"AND-ZERO", "0.811", "0.5", "0.189", "0.5"},
                 ComparisonGolden{"AND-KEEP", "1.5", "0.189", "0", "0.5"},
                 ComparisonGolden{"AND-GET", "1.5", "1.189", "0", "0.5"},
                 ComparisonGolden{"AND-AND", "0.811", "0.189", "0.189", "0.5"},
                 ComparisonGolden{"AND-XOR", "1.5", "1.189", "0.5", "1.0"},
                 ComparisonGolden{"XOR-ZERO", "1.0", "1.0", "1.0", "1.0"},
                 ComparisonGolden{"XOR-KEEP", "2.0", "1.0", "0", "1.0"},
                 ComparisonGolden{"XOR-GET", "2.0", "2.0", "0", "1.0"},
                 ComparisonGolden{"XOR-AND", "1.5", "1.189", "0.5", "1.0"},
                 ComparisonGolden{"XOR-XOR", "1.0", "1.0", "1.0", "1.0"}});
  }
  throw DomainError("unknown figure id '" + std::string(id) +
                    "' (expected fig1, fig2, fig3, fig4, or fig6)");
}

}  // namespace irrlab::repro
