#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irrlab/errors.hpp"

namespace irrlab {

// A joint state packed into one integer.
using State = std::uint64_t;

// Set of node indices; bit i stands for node i.
using NodeMask = std::uint32_t;

inline int mask_size(NodeMask m) { return std::popcount(m); }

inline NodeMask full_mask(int node_count) {
  return node_count >= 32 ? ~NodeMask{0}
                          : static_cast<NodeMask>((NodeMask{1} << node_count) - 1);
}

inline std::vector<int> mask_nodes(NodeMask m) {
  std::vector<int> nodes;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) nodes.push_back(i);
  return nodes;
}

// Joint state space of discrete nodes. Node 0 owns the most significant
// digit: the printed form of a state is the node digits read left to right.
class StateSpace {
 public:
  StateSpace() = default;

  static StateSpace binary(int node_count) {
    if (node_count < 1) throw DomainError("state space needs at least one node");
    return with_arities(std::vector<int>(static_cast<size_t>(node_count), 2));
  }

  static StateSpace with_arities(std::vector<int> arities) {
    if (arities.empty()) throw DomainError("state space needs at least one node");
    if (arities.size() > 32) throw DomainError("state space limited to 32 nodes");
    StateSpace s;
    s.arity_ = std::move(arities);
    s.place_.assign(s.arity_.size(), 1);
    State total = 1;
    for (int i = static_cast<int>(s.arity_.size()) - 1; i >= 0; --i) {
      if (s.arity_[i] < 2 || s.arity_[i] > 10)
        throw DomainError("node arity must be between 2 and 10");
      s.place_[i] = total;
      if (total > (State{1} << 62) / static_cast<State>(s.arity_[i]))
        throw DomainError("state space too large");
      total *= static_cast<State>(s.arity_[i]);
    }
    s.total_ = total;
    return s;
  }

  int node_count() const { return static_cast<int>(arity_.size()); }
  int arity(int node) const { return arity_[static_cast<size_t>(node)]; }
  State total_states() const { return total_; }

  State digit(State s, int node) const {
    return (s / place_[static_cast<size_t>(node)]) %
           static_cast<State>(arity_[static_cast<size_t>(node)]);
  }

  State with_digit(State s, int node, State value) const {
    return s + (value - digit(s, node)) * place_[static_cast<size_t>(node)];
  }

  // Digits of the kept nodes, packed in original node order.
  State restrict_to(State s, NodeMask keep) const {
    State r = 0;
    for (int i = 0; i < node_count(); ++i)
      if (keep & (NodeMask{1} << i))
        r = r * static_cast<State>(arity_[static_cast<size_t>(i)]) + digit(s, i);
    return r;
  }

  StateSpace subspace(NodeMask keep) const {
    check_mask(keep);
    std::vector<int> sub;
    for (int i = 0; i < node_count(); ++i)
      if (keep & (NodeMask{1} << i)) sub.push_back(arity_[static_cast<size_t>(i)]);
    return with_arities(std::move(sub));
  }

  std::string format_state(State s) const {
    std::string out(static_cast<size_t>(node_count()), '0');
    for (int i = 0; i < node_count(); ++i)
      out[static_cast<size_t>(i)] = static_cast<char>('0' + digit(s, i));
    return out;
  }

  State parse_state(std::string_view text) const {
    if (static_cast<int>(text.size()) != node_count())
      throw DomainError("state string has wrong length: expected " +
                        std::to_string(node_count()) + " digits");
    State s = 0;
    for (int i = 0; i < node_count(); ++i) {
      char c = text[static_cast<size_t>(i)];
      int v = c - '0';
      if (v < 0 || v >= arity_[static_cast<size_t>(i)])
        throw DomainError(std::string("invalid digit '") + c + "' in state");
      s = s * static_cast<State>(arity_[static_cast<size_t>(i)]) + static_cast<State>(v);
    }
    return s;
  }

  bool operator==(const StateSpace& other) const { return arity_ == other.arity_; }

 private:
  void check_mask(NodeMask m) const {
    if (m == 0) throw DomainError("node set must not be empty");
    if (m & ~full_mask(node_count())) throw DomainError("node set out of range");
  }

  std::vector<int> arity_;
  std::vector<State> place_;  // place_[i] = product of arities after node i
  State total_ = 0;
};

}  // namespace irrlab
