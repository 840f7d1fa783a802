#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "irrlab/errors.hpp"
#include "irrlab/state_space.hpp"

namespace irrlab {

inline constexpr double kMassTolerance = 1e-9;

// Dense probability vector over a finite joint state space.
class Dist {
 public:
  static Dist uniform(const StateSpace& space) {
    std::vector<double> m(space.total_states(),
                          1.0 / static_cast<double>(space.total_states()));
    return Dist(space, std::move(m));
  }

  static Dist point_mass(const StateSpace& space, State s) {
    if (s >= space.total_states()) throw DomainError("point mass state out of range");
    std::vector<double> m(space.total_states(), 0.0);
    m[s] = 1.0;
    return Dist(space, std::move(m));
  }

  static Dist from_mass(StateSpace space, std::vector<double> mass) {
    if (mass.size() != space.total_states())
      throw InvalidDistribution("mass vector length does not match state space");
    double total = 0.0;
    for (double p : mass) {
      if (!(p >= 0.0)) throw InvalidDistribution("negative probability mass");
      total += p;
    }
    if (std::abs(total - 1.0) > kMassTolerance)
      throw InvalidDistribution("probability mass sums to " + std::to_string(total) +
                                ", not 1");
    return Dist(std::move(space), std::move(mass));
  }

  const StateSpace& space() const { return space_; }
  double mass(State s) const { return mass_[s]; }
  const std::vector<double>& masses() const { return mass_; }

  // True when the joint mass factorizes into the per-node marginals.
  bool is_product_distribution(double tol = kMassTolerance) const {
    const int n = space_.node_count();
    std::vector<std::vector<double>> node(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      node[static_cast<size_t>(i)].assign(static_cast<size_t>(space_.arity(i)), 0.0);
    for (State s = 0; s < space_.total_states(); ++s)
      for (int i = 0; i < n; ++i)
        node[static_cast<size_t>(i)][space_.digit(s, i)] += mass_[s];
    for (State s = 0; s < space_.total_states(); ++s) {
      double prod = 1.0;
      for (int i = 0; i < n; ++i) prod *= node[static_cast<size_t>(i)][space_.digit(s, i)];
      if (std::abs(prod - mass_[s]) > tol) return false;
    }
    return true;
  }

  bool operator==(const Dist& other) const = default;

 private:
  Dist(StateSpace space, std::vector<double> mass)
      : space_(std::move(space)), mass_(std::move(mass)) {}

  StateSpace space_;
  std::vector<double> mass_;
};

/// Shannon entropy in bits, with 0 log 0 = 0.
inline double entropy(const Dist& d) {
  double h = 0.0;
  for (double p : d.masses())
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

/// D(p || q) in bits. Throws AbsoluteContinuityViolation when p has mass on a
/// state where q has none (the divergence is +inf there, not a number).
inline double kl_divergence(const Dist& p, const Dist& q) {
  if (!(p.space() == q.space()))
    throw DomainError("kl_divergence: distributions live on different state spaces");
  double d = 0.0;
  for (State s = 0; s < p.space().total_states(); ++s) {
    const double ps = p.mass(s);
    if (ps <= 0.0) continue;
    const double qs = q.mass(s);
    if (qs <= 0.0)
      throw AbsoluteContinuityViolation(
          "kl_divergence undefined: p has mass at state " +
          p.space().format_state(s) + " where q has none");
    d += ps * std::log2(ps / qs);
  }
  return d;
}

/// Sum out every node not in `keep`; the result keeps the retained nodes in
/// their original order.
inline Dist marginalize(const Dist& d, NodeMask keep) {
  if (keep == 0) throw DomainError("marginalize: node set must not be empty");
  if (keep & ~full_mask(d.space().node_count()))
    throw DomainError("marginalize: node set out of range");
  StateSpace sub = d.space().subspace(keep);
  std::vector<double> m(sub.total_states(), 0.0);
  for (State s = 0; s < d.space().total_states(); ++s)
    m[d.space().restrict_to(s, keep)] += d.mass(s);
  return Dist::from_mass(std::move(sub), std::move(m));
}

// Joint distribution over (input, output) pairs, stored sparsely: only states
// with positive mass are kept, sorted by (x, y). Marginalizing over y recovers
// P(X) and over x recovers P(Y).
class JointDist {
 public:
  struct Entry {
    State x;
    State y;
    double p;
    bool operator==(const Entry&) const = default;
  };

  static JointDist from_entries(StateSpace input, StateSpace output,
                                std::vector<Entry> entries) {
    for (const Entry& e : entries) {
      if (e.x >= input.total_states() || e.y >= output.total_states())
        throw InvalidDistribution("joint entry out of range");
      if (!(e.p >= 0.0)) throw InvalidDistribution("negative probability mass");
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    std::vector<Entry> merged;
    merged.reserve(entries.size());
    double total = 0.0;
    for (const Entry& e : entries) {
      if (e.p <= 0.0) continue;
      if (!merged.empty() && merged.back().x == e.x && merged.back().y == e.y)
        merged.back().p += e.p;
      else
        merged.push_back(e);
      total += e.p;
    }
    if (std::abs(total - 1.0) > kMassTolerance)
      throw InvalidDistribution("joint mass sums to " + std::to_string(total) +
                                ", not 1");
    JointDist j;
    j.input_ = std::move(input);
    j.output_ = std::move(output);
    j.entries_ = std::move(merged);
    return j;
  }

  static JointDist from_dense(StateSpace input, StateSpace output,
                              const std::vector<double>& row_major) {
    if (row_major.size() != input.total_states() * output.total_states())
      throw InvalidDistribution("dense joint has wrong size");
    std::vector<Entry> entries;
    for (State x = 0; x < input.total_states(); ++x)
      for (State y = 0; y < output.total_states(); ++y) {
        double p = row_major[x * output.total_states() + y];
        if (p != 0.0) entries.push_back({x, y, p});
      }
    return from_entries(std::move(input), std::move(output), std::move(entries));
  }

  const StateSpace& input_space() const { return input_; }
  const StateSpace& output_space() const { return output_; }
  const std::vector<Entry>& entries() const { return entries_; }

  Dist input_marginal() const {
    std::vector<double> m(input_.total_states(), 0.0);
    for (const Entry& e : entries_) m[e.x] += e.p;
    return Dist::from_mass(input_, std::move(m));
  }

  Dist output_marginal() const {
    std::vector<double> m(output_.total_states(), 0.0);
    for (const Entry& e : entries_) m[e.y] += e.p;
    return Dist::from_mass(output_, std::move(m));
  }

  double prob_output(State y) const {
    double p = 0.0;
    for (const Entry& e : entries_)
      if (e.y == y) p += e.p;
    return p;
  }

  bool operator==(const JointDist& other) const = default;

 private:
  StateSpace input_;
  StateSpace output_;
  std::vector<Entry> entries_;
};

/// P(X | y) = P(x, y) / P(y). Throws UnreachableState when P(y) = 0.
inline Dist condition_on_output(const JointDist& j, State y) {
  if (y >= j.output_space().total_states())
    throw DomainError("condition_on_output: state out of range");
  std::vector<double> m(j.input_space().total_states(), 0.0);
  double total = 0.0;
  for (const JointDist::Entry& e : j.entries())
    if (e.y == y) {
      m[e.x] += e.p;
      total += e.p;
    }
  if (total <= 0.0)
    throw UnreachableState("output state " + j.output_space().format_state(y) +
                           " is unreachable");
  for (double& v : m) v /= total;
  return Dist::from_mass(j.input_space(), std::move(m));
}

/// I(X;Y) in bits; for a deterministic mechanism this equals H(Y).
inline double mutual_information(const JointDist& j) {
  const Dist px = j.input_marginal();
  const Dist py = j.output_marginal();
  double i = 0.0;
  for (const JointDist::Entry& e : j.entries())
    if (e.p > 0.0) i += e.p * std::log2(e.p / (px.mass(e.x) * py.mass(e.y)));
  return i;
}

/// I(X; y) = D(P(X|y) || P(X)), the information one output state carries
/// about the input. Throws UnreachableState when P(y) = 0.
inline double specific_surprise(const JointDist& j, State y) {
  return kl_divergence(condition_on_output(j, y), j.input_marginal());
}

}  // namespace irrlab
