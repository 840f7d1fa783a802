#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "irrlab/dist.hpp"
#include "irrlab/errors.hpp"
#include "irrlab/format.hpp"
#include "irrlab/parts.hpp"
#include "irrlab/phi.hpp"
#include "irrlab/psi.hpp"
#include "irrlab/state_space.hpp"

namespace irrlab {

struct StateMeasures {
  double ei = 0.0;
  double phi = 0.0;
  double psi_min = 0.0;
  double psi_max = 0.0;
  Partition mip;
  Partition psi_min_partition;
  int psi_max_node = 0;
  bool operator==(const StateMeasures&) const = default;
};

struct StateRow {
  State y = 0;
  std::string bits;
  double pr = 0.0;
  std::optional<StateMeasures> measures;  // empty for unreachable states
  bool operator==(const StateRow&) const = default;
};

struct ReportSummary {
  double input_entropy = 0.0;
  double mutual_information = 0.0;
  double bracket_phi = 0.0;
  Partition bracket_mip;
  double expected_state_phi = 0.0;
  double min_phi = 0.0;  // over reachable states
  double max_phi = 0.0;
  double bracket_psi_min = 0.0;
  Partition bracket_psi_min_partition;
  double bracket_psi_max = 0.0;
  int bracket_psi_max_node = 0;
  bool operator==(const ReportSummary&) const = default;
};

struct ReportFlags {
  EiMode mode = EiMode::kStandard;
  std::int64_t t = 1;
  std::string x_dist = "uniform";
  bool independence_violated = false;
  bool operator==(const ReportFlags&) const = default;
};

// Per-state rows plus averaged summary for one network, in a fixed state
// order so rendering is deterministic.
struct MeasureReport {
  std::string network_id;
  StateSpace output_space;
  std::vector<StateRow> rows;
  ReportSummary summary;
  ReportFlags flags;
  bool operator==(const MeasureReport&) const = default;
};

inline MeasureReport build_report(std::string network_id, const JointDist& joint,
                                  EiMode mode = EiMode::kStandard, std::int64_t t = 1,
                                  std::string x_dist_label = "uniform") {
  detail::check_square_system(joint);
  if (joint.input_space().node_count() < 2)
    throw DomainError("measures need at least 2 nodes");

  MeasureReport r;
  r.network_id = std::move(network_id);
  r.output_space = joint.output_space();
  r.flags.mode = mode;
  r.flags.t = t;
  r.flags.x_dist = std::move(x_dist_label);

  const Dist input = joint.input_marginal();
  r.flags.independence_violated = !input.is_product_distribution();

  const Dist py = joint.output_marginal();
  double expected_phi = 0.0;
  double min_phi = std::numeric_limits<double>::infinity();
  double max_phi = -std::numeric_limits<double>::infinity();
  for (State y = 0; y < py.space().total_states(); ++y) {
    StateRow row;
    row.y = y;
    row.bits = py.space().format_state(y);
    row.pr = py.mass(y);
    if (row.pr > 0.0) {
      StateMeasures m;
      m.ei = effective_information(joint, y);
      MipResult mip = find_mip(joint, y, mode);
      m.phi = mip.raw_ei_beyond;
      m.mip = mip.partition;
      auto [lo, lo_arg] = psi_min_state(joint, y);
      auto [hi, hi_arg] = psi_max_state(joint, y);
      m.psi_min = lo;
      m.psi_min_partition = lo_arg;
      m.psi_max = hi;
      m.psi_max_node = hi_arg;
      expected_phi += row.pr * m.phi;
      min_phi = std::min(min_phi, m.phi);
      max_phi = std::max(max_phi, m.phi);
      row.measures = std::move(m);
    }
    r.rows.push_back(std::move(row));
  }

  r.summary.input_entropy = entropy(input);
  r.summary.mutual_information = mutual_information(joint);
  const BracketMeasures bm = bracket_measures(joint, mode);
  r.summary.bracket_phi = bm.phi;
  r.summary.bracket_mip = bm.mip.partition;
  r.summary.expected_state_phi = expected_phi;
  r.summary.min_phi = min_phi;
  r.summary.max_phi = max_phi;
  auto [blo, blo_arg] = bracket_psi_min(joint);
  auto [bhi, bhi_arg] = bracket_psi_max(joint);
  r.summary.bracket_psi_min = blo;
  r.summary.bracket_psi_min_partition = blo_arg;
  r.summary.bracket_psi_max = bhi;
  r.summary.bracket_psi_max_node = bhi_arg;
  return r;
}

enum class TableFormat { kMarkdown, kCsv, kJson };

inline TableFormat parse_table_format(std::string_view name) {
  if (name == "md" || name == "markdown") return TableFormat::kMarkdown;
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  throw DomainError("unknown format '" + std::string(name) + "' (expected csv, md, or json)");
}

inline const char* mode_name(EiMode mode) {
  return mode == EiMode::kStandard ? "standard" : "perturbed";
}

namespace detail {

inline std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string render_markdown(const MeasureReport& r) {
  const State total = r.output_space.total_states();
  std::string out = "# " + r.network_id + "\n\n";
  out += "mode: " + std::string(mode_name(r.flags.mode)) +
         " | t: " + std::to_string(r.flags.t) + " | X: " + r.flags.x_dist;
  if (r.flags.independence_violated) out += " | independence assumption violated";
  out += "\n\n";
  out += "| y | Pr(y) | ei(y) | phi(y) | psi_min(y) | psi_max(y) |\n";
  out += "| --- | --- | --- | --- | --- | --- |\n";
  for (const StateRow& row : r.rows) {
    out += "| " + row.bits + " | ";
    if (!row.measures) {
      out += "- | - | - | - | - |\n";
      continue;
    }
    const StateMeasures& m = *row.measures;
    out += format_probability(row.pr, total) + " | " + fixed3(m.ei) + " | " +
           fixed3(m.phi) + " | " + fixed3(m.psi_min) + " | " + fixed3(m.psi_max) +
           " |\n";
  }
  out += "\n| measure | value |\n| --- | --- |\n";
  out += "| H(X) | " + fixed3(r.summary.input_entropy) + " |\n";
  out += "| I(X;Y) | " + fixed3(r.summary.mutual_information) + " |\n";
  out += "| <phi> | " + fixed3(r.summary.bracket_phi) + " |\n";
  out += "| <MIP> | " + md_escape(r.summary.bracket_mip.to_string()) + " |\n";
  out += "| E_y phi | " + fixed3(r.summary.expected_state_phi) + " |\n";
  out += "| min_y phi | " + fixed3(r.summary.min_phi) + " |\n";
  out += "| max_y phi | " + fixed3(r.summary.max_phi) + " |\n";
  out += "| <psi>_min | " + fixed3(r.summary.bracket_psi_min) + " |\n";
  out += "| <psi>_min argmin | " +
         md_escape(r.summary.bracket_psi_min_partition.to_string()) + " |\n";
  out += "| <psi>_max | " + fixed3(r.summary.bracket_psi_max) + " |\n";
  out += "| <psi>_max argmin | node " + std::to_string(r.summary.bracket_psi_max_node) +
         " |\n";
  return out;
}

inline std::string render_csv(const MeasureReport& r) {
  const State total = r.output_space.total_states();
  std::string out = "y,pr,ei,phi,psi_min,psi_max\n";
  for (const StateRow& row : r.rows) {
    out += row.bits + ",";
    if (!row.measures) {
      out += "-,-,-,-,-\n";
      continue;
    }
    const StateMeasures& m = *row.measures;
    out += csv_quote(format_probability(row.pr, total)) + "," + fixed3(m.ei) + "," +
           fixed3(m.phi) + "," + fixed3(m.psi_min) + "," + fixed3(m.psi_max) + "\n";
  }
  out += "\nmeasure,value\n";
  out += "H(X)," + fixed3(r.summary.input_entropy) + "\n";
  out += "I(X;Y)," + fixed3(r.summary.mutual_information) + "\n";
  out += "<phi>," + fixed3(r.summary.bracket_phi) + "\n";
  out += "<MIP>," + csv_quote(r.summary.bracket_mip.to_string()) + "\n";
  out += "E_y phi," + fixed3(r.summary.expected_state_phi) + "\n";
  out += "min_y phi," + fixed3(r.summary.min_phi) + "\n";
  out += "max_y phi," + fixed3(r.summary.max_phi) + "\n";
  out += "<psi>_min," + fixed3(r.summary.bracket_psi_min) + "\n";
  out += "<psi>_min argmin," + csv_quote(r.summary.bracket_psi_min_partition.to_string()) +
         "\n";
  out += "<psi>_max," + fixed3(r.summary.bracket_psi_max) + "\n";
  out += "<psi>_max argmin,node " + std::to_string(r.summary.bracket_psi_max_node) + "\n";
  return out;
}

inline std::string render_json(const MeasureReport& r) {
  nlohmann::ordered_json doc;
  doc["network"] = r.network_id;
  std::vector<int> arities;
  for (int i = 0; i < r.output_space.node_count(); ++i)
    arities.push_back(r.output_space.arity(i));
  doc["arities"] = arities;
  doc["flags"] = {{"mode", mode_name(r.flags.mode)},
                  {"t", r.flags.t},
                  {"x_dist", r.flags.x_dist},
                  {"independence_violated", r.flags.independence_violated}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const StateRow& row : r.rows) {
    nlohmann::ordered_json jr;
    jr["state"] = row.bits;
    jr["pr"] = row.pr;
    if (row.measures) {
      const StateMeasures& m = *row.measures;
      jr["ei"] = m.ei;
      jr["phi"] = m.phi;
      jr["mip"] = m.mip.to_string();
      jr["psi_min"] = m.psi_min;
      jr["psi_min_partition"] = m.psi_min_partition.to_string();
      jr["psi_max"] = m.psi_max;
      jr["psi_max_node"] = m.psi_max_node;
    } else {
      for (const char* key :
           {"ei", "phi", "mip", "psi_min", "psi_min_partition", "psi_max", "psi_max_node"})
        jr[key] = nullptr;
    }
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = {
      {"h_x", r.summary.input_entropy},
      {"i_xy", r.summary.mutual_information},
      {"bracket_phi", r.summary.bracket_phi},
      {"bracket_mip", r.summary.bracket_mip.to_string()},
      {"expected_state_phi", r.summary.expected_state_phi},
      {"min_phi", r.summary.min_phi},
      {"max_phi", r.summary.max_phi},
      {"bracket_psi_min", r.summary.bracket_psi_min},
      {"bracket_psi_min_partition", r.summary.bracket_psi_min_partition.to_string()},
      {"bracket_psi_max", r.summary.bracket_psi_max},
      {"bracket_psi_max_node", r.summary.bracket_psi_max_node}};
  return doc.dump(2) + "\n";
}

}  // namespace detail

/// Deterministic rendering: identical reports produce identical bytes.
/// Markdown and CSV round to 3 decimals (half-to-even) and mark unreachable
/// states with a dash; JSON keeps full precision and uses null.
inline std::string render_table(const MeasureReport& r, TableFormat format) {
  switch (format) {
    case TableFormat::kMarkdown: return detail::render_markdown(r);
    case TableFormat::kCsv: return detail::render_csv(r);
    case TableFormat::kJson: return detail::render_json(r);
  }
  throw DomainError("unknown table format");
}

inline MeasureReport report_from_json(std::string_view text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  MeasureReport r;
  r.network_id = doc.at("network").get<std::string>();
  r.output_space = StateSpace::with_arities(doc.at("arities").get<std::vector<int>>());
  const int n = r.output_space.node_count();

  const auto& flags = doc.at("flags");
  r.flags.mode = flags.at("mode").get<std::string>() == "perturbed"
                     ? EiMode::kPerturbedWires
                     : EiMode::kStandard;
  r.flags.t = flags.at("t").get<std::int64_t>();
  r.flags.x_dist = flags.at("x_dist").get<std::string>();
  r.flags.independence_violated = flags.at("independence_violated").get<bool>();

  for (const auto& jr : doc.at("rows")) {
    StateRow row;
    row.bits = jr.at("state").get<std::string>();
    row.y = r.output_space.parse_state(row.bits);
    row.pr = jr.at("pr").get<double>();
    if (!jr.at("ei").is_null()) {
      StateMeasures m;
      m.ei = jr.at("ei").get<double>();
      m.phi = jr.at("phi").get<double>();
      m.mip = Partition::from_string(jr.at("mip").get<std::string>(), n);
      m.psi_min = jr.at("psi_min").get<double>();
      m.psi_min_partition =
          Partition::from_string(jr.at("psi_min_partition").get<std::string>(), n);
      m.psi_max = jr.at("psi_max").get<double>();
      m.psi_max_node = jr.at("psi_max_node").get<int>();
      row.measures = std::move(m);
    }
    r.rows.push_back(std::move(row));
  }

  const auto& s = doc.at("summary");
  r.summary.input_entropy = s.at("h_x").get<double>();
  r.summary.mutual_information = s.at("i_xy").get<double>();
  r.summary.bracket_phi = s.at("bracket_phi").get<double>();
  r.summary.bracket_mip = Partition::from_string(s.at("bracket_mip").get<std::string>(), n);
  r.summary.expected_state_phi = s.at("expected_state_phi").get<double>();
  r.summary.min_phi = s.at("min_phi").get<double>();
  r.summary.max_phi = s.at("max_phi").get<double>();
  r.summary.bracket_psi_min = s.at("bracket_psi_min").get<double>();
  r.summary.bracket_psi_min_partition =
      Partition::from_string(s.at("bracket_psi_min_partition").get<std::string>(), n);
  r.summary.bracket_psi_max = s.at("bracket_psi_max").get<double>();
  r.summary.bracket_psi_max_node = s.at("bracket_psi_max_node").get<int>();
  return r;
}

}  // namespace irrlab
