#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "irrlab/dist.hpp"
#include "irrlab/errors.hpp"
#include "irrlab/parts.hpp"
#include "irrlab/phi.hpp"
#include "irrlab/state_space.hpp"

namespace irrlab {

// Closed-form bounds on the PID irreducibility psi. The lower bound
// minimizes over bipartitions, the upper bound over single left-out nodes,
// and lower <= psi <= upper for independent inputs.
struct PsiBounds {
  double lower = 0.0;
  double upper = 0.0;
  Partition argmin_lower;  // minimizing bipartition
  int argmin_upper = 0;    // minimizing left-out node
};

/// D( P(X|y) || P(A|y) P(B|y) ) for one bipartition {A, B}: how far the
/// state's conditional is from factorizing across the two parts.
inline double bipartition_factorization_kl(const JointDist& j, State y,
                                           const Partition& bipart) {
  detail::check_square_system(j);
  if (bipart.part_count() != 2)
    throw DomainError("bipartition_factorization_kl needs exactly two parts");
  if (bipart.node_count() != j.input_space().node_count())
    throw DomainError("partition does not match the system's node count");
  const Dist cond = condition_on_output(j, y);
  const Dist a = marginalize(cond, bipart.part_mask(0));
  const Dist b = marginalize(cond, bipart.part_mask(1));
  const StateSpace& in = j.input_space();
  double kl = 0.0;
  for (State x = 0; x < in.total_states(); ++x) {
    const double px = cond.mass(x);
    if (px <= 0.0) continue;
    const double q = a.mass(in.restrict_to(x, bipart.part_mask(0))) *
                     b.mass(in.restrict_to(x, bipart.part_mask(1)));
    kl += px * std::log2(px / q);
  }
  return kl;
}

/// psi_min(X : y) = min over bipartitions {A,B} of
/// D( P(X|y) || P(A|y) P(B|y) ). Ties resolve to the first bipartition in
/// enumeration order.
inline std::pair<double, Partition> psi_min_state(const JointDist& j, State y) {
  detail::check_square_system(j);
  const int n = j.input_space().node_count();
  const Dist cond = condition_on_output(j, y);
  const std::vector<State> support = detail::support_states(cond);
  const StateSpace& in = j.input_space();

  std::unordered_map<NodeMask, std::vector<double>> marg;
  auto marg_for = [&](NodeMask mask) -> const std::vector<double>* {
    auto it = marg.find(mask);
    if (it == marg.end()) it = marg.emplace(mask, marginalize(cond, mask).masses()).first;
    return &it->second;
  };

  BipartitionEnumerator en(n);
  Partition p;
  double best = std::numeric_limits<double>::infinity();
  Partition best_p;
  bool have_best = false;
  while (en.next(p)) {
    const auto* a = marg_for(p.part_mask(0));
    const auto* b = marg_for(p.part_mask(1));
    double kl = 0.0;
    for (State x : support) {
      const double px = cond.mass(x);
      kl += px * std::log2(px / ((*a)[in.restrict_to(x, p.part_mask(0))] *
                                 (*b)[in.restrict_to(x, p.part_mask(1))]));
    }
    if (!have_best || kl < best - kTieSlack) {
      best = kl;
      best_p = p;
      have_best = true;
    }
  }
  return {best, best_p};
}

/// psi_max(X : y) = min over nodes i of
/// D( P(X|y) || P(X_i) P(X_~i | y) ), the cheapest single-node leave-out.
inline std::pair<double, int> psi_max_state(const JointDist& j, State y) {
  detail::check_square_system(j);
  const int n = j.input_space().node_count();
  if (n < 2) throw DomainError("psi needs at least 2 nodes");
  const Dist cond = condition_on_output(j, y);
  const std::vector<State> support = detail::support_states(cond);
  const Dist input = j.input_marginal();
  const StateSpace& in = j.input_space();
  const NodeMask full = full_mask(n);

  double best = std::numeric_limits<double>::infinity();
  int best_node = 0;
  for (int i = 0; i < n; ++i) {
    const NodeMask self = NodeMask{1} << i;
    const NodeMask rest = full & ~self;
    const Dist pxi = marginalize(input, self);
    const Dist mrest = marginalize(cond, rest);
    double kl = 0.0;
    for (State x : support) {
      const double px = cond.mass(x);
      kl += px * std::log2(px / (pxi.mass(in.restrict_to(x, self)) *
                                 mrest.mass(in.restrict_to(x, rest))));
    }
    if (i == 0 || kl < best - kTieSlack) {
      best = kl;
      best_node = i;
    }
  }
  return {best, best_node};
}

inline PsiBounds psi_bounds_state(const JointDist& j, State y) {
  PsiBounds b;
  auto [lo, lo_arg] = psi_min_state(j, y);
  auto [hi, hi_arg] = psi_max_state(j, y);
  b.lower = lo;
  b.argmin_lower = lo_arg;
  b.upper = hi;
  b.argmin_upper = hi_arg;
  return b;
}

/// <psi>_min(X : Y) = min over bipartitions of I(A;B|Y), computed through
/// the identity I(A;B|Y) = H(A,Y) + H(B,Y) - H(Y) - H(X,Y).
inline std::pair<double, Partition> bracket_psi_min(const JointDist& j) {
  detail::check_square_system(j);
  const StateSpace& in = j.input_space();
  const int n = in.node_count();
  const NodeMask full = full_mask(n);

  double h_xy = 0.0;
  for (const JointDist::Entry& e : j.entries())
    if (e.p > 0.0) h_xy -= e.p * std::log2(e.p);
  const double h_y = entropy(j.output_marginal());

  // H(X_S, Y) per proper nonempty subset
  std::vector<double> hsy(static_cast<size_t>(full) + 1, 0.0);
  std::vector<std::pair<std::uint64_t, double>> keys;
  keys.reserve(j.entries().size());
  const State out_total = j.output_space().total_states();
  for (NodeMask mask = 1; mask < full; ++mask) {
    keys.clear();
    for (const JointDist::Entry& e : j.entries())
      keys.emplace_back(in.restrict_to(e.x, mask) * out_total + e.y, e.p);
    hsy[mask] = detail::grouped_entropy(keys);
  }

  BipartitionEnumerator en(n);
  Partition p;
  double best = std::numeric_limits<double>::infinity();
  Partition best_p;
  bool have_best = false;
  while (en.next(p)) {
    const double v = hsy[p.part_mask(0)] + hsy[p.part_mask(1)] - h_y - h_xy;
    if (!have_best || v < best - kTieSlack) {
      best = v;
      best_p = p;
      have_best = true;
    }
  }
  return {best, best_p};
}

/// <psi>_max(X : Y) = min over nodes i of D( P(X,Y) || P(X_~i, Y) P(X_i) ).
inline std::pair<double, int> bracket_psi_max(const JointDist& j) {
  detail::check_square_system(j);
  const StateSpace& in = j.input_space();
  const int n = in.node_count();
  if (n < 2) throw DomainError("psi needs at least 2 nodes");
  const NodeMask full = full_mask(n);
  const Dist input = j.input_marginal();
  const State out_total = j.output_space().total_states();

  double best = std::numeric_limits<double>::infinity();
  int best_node = 0;
  std::vector<std::pair<std::uint64_t, double>> rest_marginal;
  for (int i = 0; i < n; ++i) {
    const NodeMask self = NodeMask{1} << i;
    const NodeMask rest = full & ~self;
    const Dist pxi = marginalize(input, self);

    rest_marginal.clear();
    for (const JointDist::Entry& e : j.entries())
      rest_marginal.emplace_back(in.restrict_to(e.x, rest) * out_total + e.y, e.p);
    std::sort(rest_marginal.begin(), rest_marginal.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // coalesce duplicate keys in place
    size_t w = 0;
    for (size_t r = 0; r < rest_marginal.size(); ++r) {
      if (w > 0 && rest_marginal[w - 1].first == rest_marginal[r].first)
        rest_marginal[w - 1].second += rest_marginal[r].second;
      else
        rest_marginal[w++] = rest_marginal[r];
    }
    rest_marginal.resize(w);

    auto lookup = [&](std::uint64_t key) {
      auto it = std::lower_bound(
          rest_marginal.begin(), rest_marginal.end(), key,
          [](const auto& kv, std::uint64_t k) { return kv.first < k; });
      return it->second;
    };

    double kl = 0.0;
    for (const JointDist::Entry& e : j.entries()) {
      if (e.p <= 0.0) continue;
      const std::uint64_t key = in.restrict_to(e.x, rest) * out_total + e.y;
      kl += e.p * std::log2(e.p / (lookup(key) * pxi.mass(in.restrict_to(e.x, self))));
    }
    if (i == 0 || kl < best - kTieSlack) {
      best = kl;
      best_node = i;
    }
  }
  return {best, best_node};
}

inline PsiBounds bracket_psi_bounds(const JointDist& j) {
  PsiBounds b;
  auto [lo, lo_arg] = bracket_psi_min(j);
  auto [hi, hi_arg] = bracket_psi_max(j);
  b.lower = lo;
  b.argmin_lower = lo_arg;
  b.upper = hi;
  b.argmin_upper = hi_arg;
  return b;
}

}  // namespace irrlab
