#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irrlab/dist.hpp"
#include "irrlab/errors.hpp"
#include "irrlab/state_space.hpp"

namespace irrlab {

// Threshold network: a node updates to 1 when at least `threshold` of its
// inputs are on. An infinite threshold means the node always updates to 0.
struct NetworkSpec {
  static constexpr int kInfiniteThreshold = std::numeric_limits<int>::max();

  int node_count = 0;
  std::vector<int> thresholds;               // per node
  std::vector<std::pair<int, int>> edges;    // directed (src, dst)
};

// Total deterministic update map over the binary joint state space.
struct TransitionMap {
  StateSpace space;
  std::vector<State> next;  // next[x] = image of x, one entry per state

  int node_count() const { return space.node_count(); }
  bool operator==(const TransitionMap& other) const {
    return space == other.space && next == other.next;
  }
};

// Default cap of 20 nodes (2^20 joint states); IRRLAB_MAX_NODES overrides it.
inline int max_network_nodes() {
  if (const char* env = std::getenv("IRRLAB_MAX_NODES")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 32) return static_cast<int>(v);
  }
  return 20;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

// Strips a '#' comment, then splits on blanks.
inline std::vector<std::string> tokenize(std::string_view line) {
  size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

inline int parse_index(const std::string& tok, int line_no, const char* what) {
  if (tok.empty()) throw ParseError(line_no, std::string("missing ") + what);
  for (char c : tok)
    if (c < '0' || c > '9')
      throw ParseError(line_no, std::string("bad ") + what + " '" + tok + "'");
  if (tok.size() > 7) throw ParseError(line_no, std::string(what) + " out of range");
  return std::stoi(tok);
}

}  // namespace detail

// Network DSL, one directive per line ('#' starts a comment):
//   nodes <n>
//   threshold <node> <positive-int|inf>
//   edge <src> <dst>
// Every node needs exactly one threshold; duplicate edges are rejected.
inline NetworkSpec parse_network_spec(std::string_view text) {
  NetworkSpec spec;
  bool have_nodes = false;
  std::vector<bool> threshold_seen;
  std::set<std::pair<int, int>> edge_seen;

  const auto lines = detail::split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    const auto tokens = detail::tokenize(lines[li]);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0];

    if (directive == "nodes") {
      if (have_nodes) throw ParseError(line_no, "duplicate nodes directive");
      if (tokens.size() != 2) throw ParseError(line_no, "expected: nodes <n>");
      spec.node_count = detail::parse_index(tokens[1], line_no, "node count");
      if (spec.node_count < 1) throw ParseError(line_no, "node count must be positive");
      if (spec.node_count > max_network_nodes())
        throw ParseError(line_no, "node count exceeds the configured cap of " +
                                      std::to_string(max_network_nodes()));
      spec.thresholds.assign(static_cast<size_t>(spec.node_count), 0);
      threshold_seen.assign(static_cast<size_t>(spec.node_count), false);
      have_nodes = true;
    } else if (directive == "threshold") {
      if (!have_nodes) throw ParseError(line_no, "threshold before nodes directive");
      if (tokens.size() != 3)
        throw ParseError(line_no, "expected: threshold <node> <positive-int|inf>");
      int node = detail::parse_index(tokens[1], line_no, "node index");
      if (node >= spec.node_count) throw ParseError(line_no, "unknown node " + tokens[1]);
      if (threshold_seen[static_cast<size_t>(node)])
        throw ParseError(line_no, "duplicate threshold for node " + tokens[1]);
      if (tokens[2] == "inf" || tokens[2] == "INF" || tokens[2] == "Inf") {
        spec.thresholds[static_cast<size_t>(node)] = NetworkSpec::kInfiniteThreshold;
      } else {
        int t = detail::parse_index(tokens[2], line_no, "threshold");
        if (t < 1) throw ParseError(line_no, "threshold must be positive or inf");
        spec.thresholds[static_cast<size_t>(node)] = t;
      }
      threshold_seen[static_cast<size_t>(node)] = true;
    } else if (directive == "edge") {
      if (!have_nodes) throw ParseError(line_no, "edge before nodes directive");
      if (tokens.size() != 3) throw ParseError(line_no, "expected: edge <src> <dst>");
      int src = detail::parse_index(tokens[1], line_no, "node index");
      int dst = detail::parse_index(tokens[2], line_no, "node index");
      if (src >= spec.node_count) throw ParseError(line_no, "unknown node " + tokens[1]);
      if (dst >= spec.node_count) throw ParseError(line_no, "unknown node " + tokens[2]);
      if (!edge_seen.insert({src, dst}).second)
        throw ParseError(line_no, "duplicate edge " + tokens[1] + " -> " + tokens[2]);
      spec.edges.emplace_back(src, dst);
    } else {
      throw ParseError(line_no, "unknown directive '" + directive + "'");
    }
  }

  if (!have_nodes) throw ParseError(0, "missing nodes directive");
  for (int i = 0; i < spec.node_count; ++i)
    if (!threshold_seen[static_cast<size_t>(i)])
      throw ParseError(0, "missing threshold for node " + std::to_string(i));
  return spec;
}

/// next(x)_j = 1 iff the number of on inputs of node j meets its threshold;
/// an infinite threshold never fires. An edgeless node with a finite
/// (necessarily positive) threshold has zero on inputs and also never fires.
inline TransitionMap build_transition_map(const NetworkSpec& spec) {
  if (spec.node_count < 1) throw DomainError("network needs at least one node");
  if (spec.node_count > max_network_nodes())
    throw DomainError("node count exceeds the configured cap");
  const int n = spec.node_count;
  std::vector<std::uint32_t> input_bits(static_cast<size_t>(n), 0);
  for (auto [src, dst] : spec.edges)
    input_bits[static_cast<size_t>(dst)] |= std::uint32_t{1} << src;

  TransitionMap m;
  m.space = StateSpace::binary(n);
  m.next.assign(m.space.total_states(), 0);
  for (State x = 0; x < m.space.total_states(); ++x) {
    // node i's value lives at bit (n - 1 - i): node 0 is the leftmost digit
    std::uint32_t on = 0;
    for (int i = 0; i < n; ++i)
      if (m.space.digit(x, i)) on |= std::uint32_t{1} << i;
    State y = 0;
    for (int j = 0; j < n; ++j) {
      const int threshold = spec.thresholds[static_cast<size_t>(j)];
      if (threshold == NetworkSpec::kInfiniteThreshold) continue;
      const int active = std::popcount(on & input_bits[static_cast<size_t>(j)]);
      if (active >= threshold) y = m.space.with_digit(y, j, 1);
    }
    m.next[x] = y;
  }
  return m;
}

// Transition-table format: one line per input, "bitstring -> bitstring",
// leftmost bit = node 0. Every input must appear exactly once.
inline TransitionMap parse_transition_table(std::string_view text) {
  TransitionMap m;
  int n = -1;
  std::vector<bool> seen;
  std::uint64_t rows = 0;

  const auto lines = detail::split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::string_view line = lines[li];
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    size_t arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError(line_no, "expected 'bits -> bits'");
    std::string_view lhs = detail::trim(line.substr(0, arrow));
    std::string_view rhs = detail::trim(line.substr(arrow + 2));
    if (lhs.empty() || rhs.empty()) throw ParseError(line_no, "expected 'bits -> bits'");

    for (std::string_view side : {lhs, rhs})
      for (char c : side)
        if (c != '0' && c != '1')
          throw ParseError(line_no, std::string("non-binary character '") + c + "'");

    if (n < 0) {
      n = static_cast<int>(lhs.size());
      if (n < 1) throw ParseError(line_no, "empty bitstring");
      if (n > max_network_nodes())
        throw ParseError(line_no, "bitstring exceeds the configured cap of " +
                                      std::to_string(max_network_nodes()) + " nodes");
      m.space = StateSpace::binary(n);
      m.next.assign(m.space.total_states(), 0);
      seen.assign(m.space.total_states(), false);
    }
    if (static_cast<int>(lhs.size()) != n || static_cast<int>(rhs.size()) != n)
      throw ParseError(line_no, "ragged bitstring: expected " + std::to_string(n) +
                                    " bits");

    State x = m.space.parse_state(lhs);
    if (seen[x]) throw ParseError(line_no, "duplicate input row " + std::string(lhs));
    seen[x] = true;
    m.next[x] = m.space.parse_state(rhs);
    ++rows;
  }

  if (n < 0) throw ParseError(0, "empty transition table");
  if (rows != m.space.total_states())
    throw ParseError(0, "incomplete table: " + std::to_string(rows) + " of " +
                            std::to_string(m.space.total_states()) + " inputs defined");
  return m;
}

inline std::string format_transition_table(const TransitionMap& m) {
  std::string out;
  for (State x = 0; x < m.space.total_states(); ++x) {
    out += m.space.format_state(x);
    out += " -> ";
    out += m.space.format_state(m.next[x]);
    out += '\n';
  }
  return out;
}

/// The map applied t times (t >= 1), via repeated squaring.
inline TransitionMap compose_t_steps(const TransitionMap& m, std::int64_t t) {
  if (t < 1) throw DomainError("compose_t_steps: t must be at least 1");
  auto compose = [](const std::vector<State>& first, const std::vector<State>& then) {
    std::vector<State> out(first.size());
    for (size_t x = 0; x < first.size(); ++x) out[x] = then[first[x]];
    return out;
  };
  TransitionMap result;
  result.space = m.space;
  std::vector<State> power = m.next;
  std::vector<State> acc;
  std::int64_t remaining = t;
  while (remaining > 0) {
    if (remaining & 1) acc = acc.empty() ? power : compose(acc, power);
    remaining >>= 1;
    if (remaining > 0) power = compose(power, power);
  }
  result.next = std::move(acc);
  return result;
}

/// P(x, y) = P(x) [y = next(x)] with the uniform input distribution.
inline JointDist uniform_joint(const TransitionMap& m) {
  const double p = 1.0 / static_cast<double>(m.space.total_states());
  std::vector<JointDist::Entry> entries;
  entries.reserve(m.next.size());
  for (State x = 0; x < m.space.total_states(); ++x)
    entries.push_back({x, m.next[x], p});
  return JointDist::from_entries(m.space, m.space, std::move(entries));
}

/// Deterministic mechanism driven by an arbitrary input distribution.
inline JointDist joint_with_input(const TransitionMap& m, const Dist& input) {
  if (!(input.space() == m.space))
    throw DomainError("joint_with_input: input distribution has wrong state space");
  std::vector<JointDist::Entry> entries;
  for (State x = 0; x < m.space.total_states(); ++x)
    if (input.mass(x) > 0.0) entries.push_back({x, m.next[x], input.mass(x)});
  return JointDist::from_entries(m.space, m.space, std::move(entries));
}

}  // namespace irrlab
