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
#include "irrlab/state_space.hpp"

namespace irrlab {

inline constexpr double kTieSlack = 1e-9;

// How the per-part conditional in the partition reference distribution is
// built: from the true joint of the part (kStandard), or with every node in
// the part reaching its state independently (kPerturbedWires).
enum class EiMode { kStandard, kPerturbedWires };

struct MipResult {
  Partition partition;
  double raw_ei_beyond = 0.0;   // bits
  double normalizer = 0.0;      // (m - 1) * min_i H(X_i)
  double normalized_cost = 0.0;
};

namespace detail {

inline void check_square_system(const JointDist& j) {
  if (j.input_space().node_count() != j.output_space().node_count())
    throw DomainError("measure requires matching input and output node sets");
}

inline std::vector<State> support_states(const Dist& d) {
  std::vector<State> s;
  for (State x = 0; x < d.space().total_states(); ++x)
    if (d.mass(x) > 0.0) s.push_back(x);
  return s;
}

// Sorts, groups by key, and returns the entropy of the grouped masses.
inline double grouped_entropy(std::vector<std::pair<std::uint64_t, double>>& kv) {
  std::sort(kv.begin(), kv.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double h = 0.0;
  size_t i = 0;
  while (i < kv.size()) {
    double p = kv[i].second;
    size_t k = i + 1;
    while (k < kv.size() && kv[k].first == kv[i].first) p += kv[k++].second;
    if (p > 0.0) h -= p * std::log2(p);
    i = k;
  }
  return h;
}

}  // namespace detail

/// ei(X -> y): the total information the output state carries about the
/// input, equal to the specific surprise D(P(X|y) || P(X)).
inline double effective_information(const JointDist& j, State y) {
  return specific_surprise(j, y);
}

/// True conditional P(X_S | y_S) of a part's input given the part's output.
inline Dist part_conditional(const JointDist& j, NodeMask part, State y_part) {
  if (part == 0) throw DomainError("part must not be empty");
  detail::check_square_system(j);
  StateSpace sub = j.input_space().subspace(part);
  std::vector<double> w(sub.total_states(), 0.0);
  double total = 0.0;
  for (const JointDist::Entry& e : j.entries())
    if (j.output_space().restrict_to(e.y, part) == y_part) {
      w[j.input_space().restrict_to(e.x, part)] += e.p;
      total += e.p;
    }
  if (total <= 0.0)
    throw UnreachableState("part output state " + sub.format_state(y_part) +
                           " is unreachable");
  for (double& v : w) v /= total;
  return Dist::from_mass(std::move(sub), std::move(w));
}

/// "Perturbing the wires" conditional P*(X_S | y_S): the part's joint is
/// rebuilt as P*(x_S, y_S) = P(x_S) prod_j P(y_j | x_S), so each node of the
/// part reaches its output state independently given the part input.
inline Dist pstar_part_conditional(const JointDist& j, NodeMask part, State y_part) {
  if (part == 0) throw DomainError("part must not be empty");
  detail::check_square_system(j);
  const std::vector<int> nodes = mask_nodes(part);
  StateSpace sub = j.input_space().subspace(part);
  const StateSpace& out = j.output_space();

  // input-part marginal and, per part node, P(y_node = v | x_S)
  std::vector<double> px(sub.total_states(), 0.0);
  std::vector<std::vector<double>> node_cond(nodes.size());
  for (size_t k = 0; k < nodes.size(); ++k)
    node_cond[k].assign(sub.total_states() * static_cast<State>(out.arity(nodes[k])), 0.0);
  for (const JointDist::Entry& e : j.entries()) {
    const State xs = j.input_space().restrict_to(e.x, part);
    px[xs] += e.p;
    for (size_t k = 0; k < nodes.size(); ++k) {
      const State v = out.digit(e.y, nodes[k]);
      node_cond[k][xs * static_cast<State>(out.arity(nodes[k])) + v] += e.p;
    }
  }

  std::vector<double> w(sub.total_states(), 0.0);
  double total = 0.0;
  for (State xs = 0; xs < sub.total_states(); ++xs) {
    if (px[xs] <= 0.0) continue;
    double prob = px[xs];
    for (size_t k = 0; k < nodes.size(); ++k) {
      const State v = sub.digit(y_part, static_cast<int>(k));
      prob *= node_cond[k][xs * static_cast<State>(out.arity(nodes[k])) + v] / px[xs];
    }
    w[xs] = prob;
    total += prob;
  }
  if (total <= 0.0)
    throw UnreachableState("part output state " + sub.format_state(y_part) +
                           " has zero probability under the perturbed distribution");
  for (double& v : w) v /= total;
  return Dist::from_mass(std::move(sub), std::move(w));
}

namespace detail {

inline Dist mode_part_conditional(const JointDist& j, NodeMask part, State y_part,
                                  EiMode mode) {
  return mode == EiMode::kStandard ? part_conditional(j, part, y_part)
                                   : pstar_part_conditional(j, part, y_part);
}

// KL between the whole-system conditional and the product of per-part
// conditionals, evaluated over the conditional's support.
inline double ei_beyond_with_parts(const Dist& cond, const std::vector<State>& support,
                                   const StateSpace& in,
                                   const std::vector<NodeMask>& masks,
                                   const std::vector<const std::vector<double>*>& parts) {
  double kl = 0.0;
  for (State x : support) {
    const double px = cond.mass(x);
    double log_q = 0.0;
    for (size_t i = 0; i < masks.size(); ++i) {
      const double f = (*parts[i])[in.restrict_to(x, masks[i])];
      if (f <= 0.0)
        throw AbsoluteContinuityViolation(
            "partition reference distribution has no mass at state " +
            in.format_state(x));
      log_q += std::log2(f);
    }
    kl += px * (std::log2(px) - log_q);
  }
  return kl;
}

}  // namespace detail

/// ei(X -> y / P): effective information beyond the partition, the KL between
/// P(X|y) and the product of the per-part conditionals.
inline double ei_beyond_partition(const JointDist& j, State y, const Partition& p,
                                  EiMode mode = EiMode::kStandard) {
  detail::check_square_system(j);
  if (p.node_count() != j.input_space().node_count())
    throw DomainError("partition does not match the system's node count");
  const Dist cond = condition_on_output(j, y);
  const std::vector<State> support = detail::support_states(cond);
  std::vector<Dist> q;
  q.reserve(p.part_masks().size());
  std::vector<const std::vector<double>*> part_ptrs;
  for (NodeMask mask : p.part_masks())
    q.push_back(detail::mode_part_conditional(
        j, mask, j.output_space().restrict_to(y, mask), mode));
  for (const Dist& d : q) part_ptrs.push_back(&d.masses());
  return detail::ei_beyond_with_parts(cond, support, j.input_space(), p.part_masks(),
                                      part_ptrs);
}

/// (m - 1) * min_i H(X_i^P), the normalizer of the partition cost. For the
/// uniform input distribution this is (m - 1) times the smallest part size.
inline double partition_normalizer(const Dist& input_marginal, const Partition& p) {
  double min_h = std::numeric_limits<double>::infinity();
  for (NodeMask mask : p.part_masks())
    min_h = std::min(min_h, entropy(marginalize(input_marginal, mask)));
  return static_cast<double>(p.part_count() - 1) * min_h;
}

/// Minimum information partition of state y: the argmin of the normalized
/// partition cost over every partition, ties resolved by enumeration order.
inline MipResult find_mip(const JointDist& j, State y, EiMode mode = EiMode::kStandard) {
  detail::check_square_system(j);
  const int n = j.input_space().node_count();
  const Dist cond = condition_on_output(j, y);
  const std::vector<State> support = detail::support_states(cond);
  const Dist input = j.input_marginal();

  std::unordered_map<NodeMask, std::vector<double>> part_q;
  std::unordered_map<NodeMask, double> part_h;
  auto q_for = [&](NodeMask mask) -> const std::vector<double>* {
    auto it = part_q.find(mask);
    if (it == part_q.end()) {
      Dist d = detail::mode_part_conditional(j, mask,
                                             j.output_space().restrict_to(y, mask), mode);
      it = part_q.emplace(mask, d.masses()).first;
    }
    return &it->second;
  };
  auto h_for = [&](NodeMask mask) {
    auto it = part_h.find(mask);
    if (it == part_h.end())
      it = part_h.emplace(mask, entropy(marginalize(input, mask))).first;
    return it->second;
  };

  PartitionEnumerator en(n);
  Partition p;
  MipResult best;
  bool have_best = false;
  std::vector<const std::vector<double>*> parts;
  while (en.next(p)) {
    const auto& masks = p.part_masks();
    parts.clear();
    double min_h = std::numeric_limits<double>::infinity();
    for (NodeMask mask : masks) {
      parts.push_back(q_for(mask));
      min_h = std::min(min_h, h_for(mask));
    }
    const double normalizer = static_cast<double>(p.part_count() - 1) * min_h;
    if (!(normalizer > 0.0))
      throw DomainError("partition normalizer is zero: a part's input entropy vanishes");
    const double raw =
        detail::ei_beyond_with_parts(cond, support, j.input_space(), masks, parts);
    const double cost = raw / normalizer;
    if (!have_best || cost < best.normalized_cost - kTieSlack) {
      best = MipResult{p, raw, normalizer, cost};
      have_best = true;
    }
  }
  return best;
}

/// phi(y): raw effective information beyond the state's MIP.
inline double phi_of_state(const JointDist& j, State y, EiMode mode = EiMode::kStandard) {
  return find_mip(j, y, mode).raw_ei_beyond;
}

namespace detail {

// Per-subset I(X_S;Y_S) and H(X_S), indexed by node mask. Grounds the
// averaged measures: <ei(Y/P)> = I(X;Y) - sum_i I(X_i;Y_i) for independent
// inputs.
struct SubsetStats {
  std::vector<double> mi;
  std::vector<double> input_entropy;
};

inline SubsetStats subset_stats(const JointDist& j) {
  const StateSpace& in = j.input_space();
  const StateSpace& out = j.output_space();
  const int n = in.node_count();
  const NodeMask full = full_mask(n);
  const Dist input = j.input_marginal();

  bool uniform_input = true;
  const double flat = 1.0 / static_cast<double>(in.total_states());
  for (double p : input.masses())
    if (std::abs(p - flat) > 1e-12) {
      uniform_input = false;
      break;
    }

  SubsetStats st;
  st.mi.assign(static_cast<size_t>(full) + 1, 0.0);
  st.input_entropy.assign(static_cast<size_t>(full) + 1, 0.0);

  std::vector<std::pair<std::uint64_t, double>> pair_keys, y_keys;
  pair_keys.reserve(j.entries().size());
  y_keys.reserve(j.entries().size());
  for (NodeMask mask = 1; mask < full; ++mask) {
    const State out_total = out.subspace(mask).total_states();
    pair_keys.clear();
    y_keys.clear();
    for (const JointDist::Entry& e : j.entries()) {
      const State xs = in.restrict_to(e.x, mask);
      const State ys = out.restrict_to(e.y, mask);
      pair_keys.emplace_back(xs * out_total + ys, e.p);
      y_keys.emplace_back(ys, e.p);
    }
    const double h_xy = grouped_entropy(pair_keys);
    const double h_y = grouped_entropy(y_keys);
    const double h_x = uniform_input
                           ? std::log2(static_cast<double>(in.subspace(mask).total_states()))
                           : entropy(marginalize(input, mask));
    st.mi[mask] = h_x + h_y - h_xy;
    st.input_entropy[mask] = h_x;
  }
  return st;
}

}  // namespace detail

/// <ei(X -> Y/P)>: the expected effective information beyond a fixed
/// partition. In standard mode this is I(X;Y) - sum_i I(X_i^P;Y_i^P); in
/// perturbed-wires mode it is the P(y)-weighted average of the per-state
/// values.
inline double bracket_ei_beyond(const JointDist& j, const Partition& p,
                                EiMode mode = EiMode::kStandard) {
  detail::check_square_system(j);
  if (mode == EiMode::kStandard) {
    double sum = 0.0;
    const detail::SubsetStats st = detail::subset_stats(j);
    for (NodeMask mask : p.part_masks()) sum += st.mi[mask];
    return mutual_information(j) - sum;
  }
  const Dist py = j.output_marginal();
  double acc = 0.0;
  for (State y = 0; y < py.space().total_states(); ++y)
    if (py.mass(y) > 0.0) acc += py.mass(y) * ei_beyond_partition(j, y, p, mode);
  return acc;
}

struct BracketMeasures {
  double ei = 0.0;  // <ei> = I(X;Y)
  MipResult mip;    // <MIP> with its raw and normalized cost
  double phi = 0.0; // <phi> = raw <ei beyond> at <MIP>
};

/// The averaged measures: <ei>, <MIP>, and <phi>. Note <phi> is the average
/// at one shared partition, which differs from E_y phi(y) in general.
inline BracketMeasures bracket_measures(const JointDist& j,
                                        EiMode mode = EiMode::kStandard) {
  detail::check_square_system(j);
  const int n = j.input_space().node_count();
  const double i_xy = mutual_information(j);
  const detail::SubsetStats st = detail::subset_stats(j);

  // reachable conditionals, shared by the perturbed-mode partition scan
  struct ReachableState {
    State y;
    double pr;
    Dist cond;
    std::vector<State> support;
  };
  std::vector<ReachableState> reachable;
  std::unordered_map<std::uint64_t, std::vector<double>> pstar_cache;
  if (mode == EiMode::kPerturbedWires) {
    const Dist py = j.output_marginal();
    for (State y = 0; y < py.space().total_states(); ++y)
      if (py.mass(y) > 0.0) {
        Dist cond = condition_on_output(j, y);
        std::vector<State> support = detail::support_states(cond);
        reachable.push_back({y, py.mass(y), std::move(cond), std::move(support)});
      }
  }

  PartitionEnumerator en(n);
  Partition p;
  MipResult best;
  bool have_best = false;
  while (en.next(p)) {
    const auto& masks = p.part_masks();
    double min_h = std::numeric_limits<double>::infinity();
    for (NodeMask mask : masks) min_h = std::min(min_h, st.input_entropy[mask]);
    const double normalizer = static_cast<double>(p.part_count() - 1) * min_h;
    if (!(normalizer > 0.0))
      throw DomainError("partition normalizer is zero: a part's input entropy vanishes");

    double raw;
    if (mode == EiMode::kStandard) {
      double sum = 0.0;
      for (NodeMask mask : masks) sum += st.mi[mask];
      raw = i_xy - sum;
    } else {
      raw = 0.0;
      std::vector<const std::vector<double>*> parts;
      for (const ReachableState& r : reachable) {
        parts.clear();
        for (NodeMask mask : masks) {
          const State ys = j.output_space().restrict_to(r.y, mask);
          const std::uint64_t key =
              (static_cast<std::uint64_t>(mask) << 32) | static_cast<std::uint64_t>(ys);
          auto it = pstar_cache.find(key);
          if (it == pstar_cache.end())
            it = pstar_cache.emplace(key, pstar_part_conditional(j, mask, ys).masses())
                     .first;
          parts.push_back(&it->second);
        }
        raw += r.pr * detail::ei_beyond_with_parts(r.cond, r.support, j.input_space(),
                                                   masks, parts);
      }
    }

    const double cost = raw / normalizer;
    if (!have_best || cost < best.normalized_cost - kTieSlack) {
      best = MipResult{p, raw, normalizer, cost};
      have_best = true;
    }
  }
  return BracketMeasures{i_xy, best, best.raw_ei_beyond};
}

/// E_y phi(y): the P(y)-weighted average of the state-dependent phi, exposed
/// separately because each state may have its own MIP.
inline double expected_state_phi(const JointDist& j, EiMode mode = EiMode::kStandard) {
  const Dist py = j.output_marginal();
  double acc = 0.0;
  for (State y = 0; y < py.space().total_states(); ++y)
    if (py.mass(y) > 0.0) acc += py.mass(y) * phi_of_state(j, y, mode);
  return acc;
}

}  // namespace irrlab
