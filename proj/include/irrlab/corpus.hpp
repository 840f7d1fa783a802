#pragma once

#include <string>
#include <vector>

#include "irrlab/errors.hpp"
#include "irrlab/net.hpp"

namespace irrlab::corpus {

// Node behaviors available in two-node networks. KEEP copies the node's own
// previous state, GET copies the other node's, and AND/OR/XOR combine both.
// All but XOR are expressible as threshold rules.
enum class NodeKind { kZero, kKeep, kGet, kAnd, kOr, kXor };

inline const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::kZero: return "ZERO";
    case NodeKind::kKeep: return "KEEP";
    case NodeKind::kGet: return "GET";
    case NodeKind::kAnd: return "AND";
    case NodeKind::kOr: return "OR";
    case NodeKind::kXor: return "XOR";
  }
  return "?";
}

inline bool threshold_expressible(NodeKind k) { return k != NodeKind::kXor; }

inline std::vector<NodeKind> all_node_kinds() {
  return {NodeKind::kZero, NodeKind::kKeep, NodeKind::kGet,
          NodeKind::kAnd,  NodeKind::kOr,   NodeKind::kXor};
}

inline std::vector<NodeKind> threshold_node_kinds() {
  return {NodeKind::kZero, NodeKind::kKeep, NodeKind::kGet, NodeKind::kAnd,
          NodeKind::kOr};
}

inline TransitionMap doublet(NodeKind first, NodeKind second) {
  auto eval = [](NodeKind k, State self, State other, State x0, State x1) -> State {
    switch (k) {
      case NodeKind::kZero: return 0;
      case NodeKind::kKeep: return self;
      case NodeKind::kGet: return other;
      case NodeKind::kAnd: return x0 & x1;
      case NodeKind::kOr: return x0 | x1;
      case NodeKind::kXor: return x0 ^ x1;
    }
    return 0;
  };
  TransitionMap m;
  m.space = StateSpace::binary(2);
  m.next.assign(4, 0);
  for (State x = 0; x < 4; ++x) {
    const State x0 = m.space.digit(x, 0);
    const State x1 = m.space.digit(x, 1);
    State y = 0;
    y = m.space.with_digit(y, 0, eval(first, x0, x1, x0, x1));
    y = m.space.with_digit(y, 1, eval(second, x1, x0, x0, x1));
    m.next[x] = y;
  }
  return m;
}

inline std::string doublet_name(NodeKind first, NodeKind second) {
  return std::string(kind_name(first)) + "-" + kind_name(second);
}

// Threshold DSL form of a doublet; XOR is not a threshold function.
inline NetworkSpec doublet_spec(NodeKind first, NodeKind second) {
  NetworkSpec spec;
  spec.node_count = 2;
  spec.thresholds.assign(2, 1);
  NodeKind kinds[2] = {first, second};
  for (int node = 0; node < 2; ++node) {
    const int other = 1 - node;
    switch (kinds[node]) {
      case NodeKind::kZero:
        spec.thresholds[static_cast<size_t>(node)] = NetworkSpec::kInfiniteThreshold;
        break;
      case NodeKind::kKeep:
        spec.edges.emplace_back(node, node);
        break;
      case NodeKind::kGet:
        spec.edges.emplace_back(other, node);
        break;
      case NodeKind::kAnd:
        spec.edges.emplace_back(0, node);
        spec.edges.emplace_back(1, node);
        spec.thresholds[static_cast<size_t>(node)] = 2;
        break;
      case NodeKind::kOr:
        spec.edges.emplace_back(0, node);
        spec.edges.emplace_back(1, node);
        break;
      case NodeKind::kXor:
        throw DomainError("XOR is not expressible as a threshold rule");
    }
  }
  return spec;
}

// Directed ring where each node copies its predecessor.
inline NetworkSpec shift_ring(int n) {
  NetworkSpec spec;
  spec.node_count = n;
  spec.thresholds.assign(static_cast<size_t>(n), 1);
  for (int i = 0; i < n; ++i) spec.edges.emplace_back((i + n - 1) % n, i);
  return spec;
}

// Every node reads every node (itself included) and fires on its own
// popcount threshold.
inline NetworkSpec fully_connected(std::vector<int> thresholds) {
  NetworkSpec spec;
  spec.node_count = static_cast<int>(thresholds.size());
  spec.thresholds = std::move(thresholds);
  for (int i = 0; i < spec.node_count; ++i)
    for (int k = 0; k < spec.node_count; ++k) spec.edges.emplace_back(i, k);
  return spec;
}

// Three nodes, each the AND of the other two.
inline NetworkSpec and_triplet() {
  NetworkSpec spec;
  spec.node_count = 3;
  spec.thresholds.assign(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      if (i != k) spec.edges.emplace_back(i, k);
  return spec;
}

// Three nodes on a directed ring, each the AND of itself and its successor.
inline NetworkSpec iso_and_triplet() {
  NetworkSpec spec;
  spec.node_count = 3;
  spec.thresholds.assign(3, 2);
  for (int i = 0; i < 3; ++i) {
    spec.edges.emplace_back(i, i);
    spec.edges.emplace_back((i + 1) % 3, i);
  }
  return spec;
}

// AND-ZERO with a disconnected self-looping KEEP node appended.
inline NetworkSpec and_zero_plus_keep() {
  NetworkSpec spec;
  spec.node_count = 3;
  spec.thresholds = {2, NetworkSpec::kInfiniteThreshold, 1};
  spec.edges = {{0, 0}, {1, 0}, {2, 2}};
  return spec;
}

// Two disjoint AND-ZERO pairs.
inline NetworkSpec two_and_zero() {
  NetworkSpec spec;
  spec.node_count = 4;
  spec.thresholds = {2, NetworkSpec::kInfiniteThreshold, 2,
                     NetworkSpec::kInfiniteThreshold};
  spec.edges = {{0, 0}, {1, 0}, {2, 2}, {3, 2}};
  return spec;
}

struct NamedNetwork {
  std::string name;
  TransitionMap map;
};

// Every network used by the reference tables and the invariant suite.
inline std::vector<NamedNetwork> reference_networks() {
  std::vector<NamedNetwork> nets;
  nets.push_back({"OR-GET", doublet(NodeKind::kOr, NodeKind::kGet)});
  nets.push_back({"OR-XOR", doublet(NodeKind::kOr, NodeKind::kXor)});
  const std::vector<std::pair<NodeKind, NodeKind>> doublet_zoo = {
      {NodeKind::kZero, NodeKind::kZero}, {NodeKind::kKeep, NodeKind::kZero},
      {NodeKind::kKeep, NodeKind::kKeep}, {NodeKind::kGet, NodeKind::kZero},
      {NodeKind::kGet, NodeKind::kKeep},  {NodeKind::kGet, NodeKind::kGet},
      {NodeKind::kAnd, NodeKind::kZero},  {NodeKind::kAnd, NodeKind::kKeep},
      {NodeKind::kAnd, NodeKind::kGet},   {NodeKind::kAnd, NodeKind::kAnd},
      {NodeKind::kAnd, NodeKind::kXor},   {NodeKind::kXor, NodeKind::kZero},
      {NodeKind::kXor, NodeKind::kKeep},  {NodeKind::kXor, NodeKind::kGet},
      {NodeKind::kXor, NodeKind::kAnd},   {NodeKind::kXor, NodeKind::kXor}};
  for (auto [a, b] : doublet_zoo) nets.push_back({doublet_name(a, b), doublet(a, b)});
  nets.push_back({"SHIFT", build_transition_map(shift_ring(4))});
  nets.push_back({"4422", build_transition_map(fully_connected({4, 4, 2, 2}))});
  nets.push_back({"4322", build_transition_map(fully_connected({4, 3, 2, 2}))});
  nets.push_back({"4321", build_transition_map(fully_connected({4, 3, 2, 1}))});
  nets.push_back({"ANDtriplet", build_transition_map(and_triplet())});
  nets.push_back({"iso-ANDtriplet", build_transition_map(iso_and_triplet())});
  nets.push_back({"AND-ZERO+KEEP", build_transition_map(and_zero_plus_keep())});
  nets.push_back({"2x AND-ZERO", build_transition_map(two_and_zero())});
  return nets;
}

}  // namespace irrlab::corpus
