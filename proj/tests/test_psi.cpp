#include <catch2/catch.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "irrlab/corpus.hpp"
#include "irrlab/net.hpp"
#include "irrlab/psi.hpp"

using namespace irrlab;
using corpus::NodeKind;

namespace {

JointDist joint_of(NodeKind a, NodeKind b) {
  return uniform_joint(corpus::doublet(a, b));
}

// Brute-force D( P(X|y) || P(A|y) P(B|y) ) straight from the transition
// table, with plain counting: the oracle side of the per-state lower bound.
double brute_factorization_kl(const TransitionMap& m, State y, NodeMask a_mask) {
  const State total = m.space.total_states();
  std::vector<State> preimage;
  for (State x = 0; x < total; ++x)
    if (m.next[x] == y) preimage.push_back(x);
  REQUIRE(!preimage.empty());
  const double p = 1.0 / static_cast<double>(preimage.size());

  const NodeMask b_mask = full_mask(m.node_count()) & ~a_mask;
  auto marginal_count = [&](NodeMask mask, State value) {
    int c = 0;
    for (State x : preimage)
      if (m.space.restrict_to(x, mask) == value) ++c;
    return static_cast<double>(c) / static_cast<double>(preimage.size());
  };

  double kl = 0.0;
  for (State x : preimage) {
    const double qa = marginal_count(a_mask, m.space.restrict_to(x, a_mask));
    const double qb = marginal_count(b_mask, m.space.restrict_to(x, b_mask));
    kl += p * std::log2(p / (qa * qb));
  }
  return kl;
}

// Per-state psi bound rows of a network, as (Pr, lower, upper) sorted for
// multiset comparison.
std::vector<std::array<double, 3>> psi_rows(const JointDist& j) {
  std::vector<std::array<double, 3>> rows;
  const Dist py = j.output_marginal();
  for (State y = 0; y < py.space().total_states(); ++y)
    if (py.mass(y) > 0.0)
      rows.push_back({py.mass(y), psi_min_state(j, y).first, psi_max_state(j, y).first});
  std::sort(rows.begin(), rows.end());
  return rows;
}

const TransitionMap& net(const char* name) {
  static const auto nets = corpus::reference_networks();
  for (const auto& n : nets)
    if (n.name == name) return n.map;
  FAIL("unknown network " << name);
  return nets.front().map;
}

}  // namespace

TEST_CASE("psi_min_state: factorizing conditionals score zero") {
  const JointDist kk = joint_of(NodeKind::kKeep, NodeKind::kKeep);
  CHECK(psi_min_state(kk, 0).first == Approx(0.0).margin(1e-12));

  // any state with a unique preimage factorizes as a product of point masses
  for (const auto& n : corpus::reference_networks()) {
    const JointDist j = uniform_joint(n.map);
    const Dist py = j.output_marginal();
    for (State y = 0; y < py.space().total_states(); ++y) {
      int preimages = 0;
      for (State x = 0; x < n.map.space.total_states(); ++x)
        if (n.map.next[x] == y) ++preimages;
      if (preimages == 1) {
        INFO(n.name << " y=" << py.space().format_state(y));
        CHECK(psi_min_state(j, y).first == Approx(0.0).margin(1e-12));
      }
    }
  }
}

TEST_CASE("psi_min_state: XOR-ZERO couples its preimage bits") {
  const TransitionMap m = corpus::doublet(NodeKind::kXor, NodeKind::kZero);
  const JointDist j = uniform_joint(m);
  const State y10 = m.space.parse_state("10");
  CHECK(brute_factorization_kl(m, y10, 0b01) == Approx(1.0).margin(1e-12));
  CHECK(psi_min_state(j, y10).first == Approx(1.0).margin(1e-12));
  CHECK_THROWS_AS(psi_min_state(j, m.space.parse_state("01")), UnreachableState);
}

TEST_CASE("psi_min_state agrees with the brute-force bipartition scan") {
  for (const char* name : {"ANDtriplet", "4321", "SHIFT", "AND-ZERO+KEEP"}) {
    const TransitionMap& m = net(name);
    const JointDist j = uniform_joint(m);
    const Dist py = j.output_marginal();
    for (State y = 0; y < py.space().total_states(); ++y) {
      if (!(py.mass(y) > 0.0)) continue;
      double best = std::numeric_limits<double>::infinity();
      Partition best_p;
      for (const Partition& p : all_bipartitions(m.node_count())) {
        const double kl = brute_factorization_kl(m, y, p.part_mask(0));
        if (kl < best - 1e-9) {
          best = kl;
          best_p = p;
        }
      }
      const auto [got, got_p] = psi_min_state(j, y);
      INFO(name << " y=" << py.space().format_state(y));
      CHECK(got == Approx(best).margin(1e-9));
      CHECK(got_p == best_p);
    }
  }
}

TEST_CASE("psi_max_state reference values") {
  const JointDist kk = joint_of(NodeKind::kKeep, NodeKind::kKeep);
  CHECK(psi_max_state(kk, 0).first == Approx(1.0).margin(1e-12));

  // leaving out the constant node loses nothing
  const JointDist kz = joint_of(NodeKind::kKeep, NodeKind::kZero);
  const Dist py = kz.output_marginal();
  for (State y = 0; y < py.space().total_states(); ++y)
    if (py.mass(y) > 0.0) {
      CHECK(psi_max_state(kz, y).first == Approx(0.0).margin(1e-12));
      CHECK(psi_max_state(kz, y).second == 1);
    }
  CHECK_THROWS_AS(psi_max_state(kk, 5), DomainError);
}

TEST_CASE("KEEP-KEEP and GET-GET have identical psi rows") {
  const auto kk = psi_rows(joint_of(NodeKind::kKeep, NodeKind::kKeep));
  const auto gg = psi_rows(joint_of(NodeKind::kGet, NodeKind::kGet));
  REQUIRE(kk.size() == gg.size());
  for (size_t i = 0; i < kk.size(); ++i)
    for (int k = 0; k < 3; ++k) CHECK(kk[i][k] == Approx(gg[i][k]).margin(1e-9));
}

TEST_CASE("duplicate computation leaves the psi bounds unchanged") {
  const std::pair<const char*, const char*> pairs[] = {
      {"AND-ZERO", "AND-AND"}, {"ANDtriplet", "iso-ANDtriplet"}};
  for (auto [left, right] : pairs) {
    const JointDist a = uniform_joint(net(left));
    const JointDist b = uniform_joint(net(right));
    INFO(left << " vs " << right);
    const auto ra = psi_rows(a);
    const auto rb = psi_rows(b);
    REQUIRE(ra.size() == rb.size());
    for (size_t i = 0; i < ra.size(); ++i)
      for (int k = 0; k < 3; ++k) CHECK(ra[i][k] == Approx(rb[i][k]).margin(1e-9));
    CHECK(bracket_psi_min(a).first == Approx(bracket_psi_min(b).first).margin(1e-9));
    CHECK(bracket_psi_max(a).first == Approx(bracket_psi_max(b).first).margin(1e-9));
  }
}

TEST_CASE("bracket_psi_min reference values") {
  CHECK(bracket_psi_min(joint_of(NodeKind::kAnd, NodeKind::kXor)).first ==
        Approx(0.5).margin(1e-9));
  CHECK(bracket_psi_min(joint_of(NodeKind::kXor, NodeKind::kXor)).first ==
        Approx(1.0).margin(1e-9));
  CHECK(bracket_psi_min(uniform_joint(net("AND-ZERO+KEEP"))).first ==
        Approx(0.0).margin(1e-9));
  CHECK(bracket_psi_min(uniform_joint(net("SHIFT"))).first == Approx(0.0).margin(1e-12));
  CHECK(bracket_psi_min(uniform_joint(net("ANDtriplet"))).first ==
        Approx(0.5 * (6.0 - 3.0 * std::log2(3.0)) / 4.0).margin(1e-12));
}

TEST_CASE("bracket_psi_max reference values") {
  CHECK(bracket_psi_max(joint_of(NodeKind::kKeep, NodeKind::kKeep)).first ==
        Approx(1.0).margin(1e-9));
  CHECK(bracket_psi_max(uniform_joint(net("ANDtriplet"))).first ==
        Approx(0.75).margin(1e-9));
  CHECK(bracket_psi_max(uniform_joint(net("4321"))).first == Approx(1.0).margin(1e-9));
  CHECK(bracket_psi_max(uniform_joint(net("AND-ZERO+KEEP"))).first ==
        Approx(0.5).margin(1e-9));
}

TEST_CASE("the argmin bipartition separates the disconnected KEEP node") {
  const JointDist j = uniform_joint(net("AND-ZERO+KEEP"));
  const auto [value, partition] = bracket_psi_min(j);
  CHECK(value == Approx(0.0).margin(1e-12));
  CHECK(partition.to_string() == "{0,1}|{2}");
}

TEST_CASE("psi sandwich and the specific-surprise ceiling") {
  for (const auto& n : corpus::reference_networks()) {
    const JointDist j = uniform_joint(n.map);
    const Dist py = j.output_marginal();
    for (State y = 0; y < py.space().total_states(); ++y) {
      if (!(py.mass(y) > 0.0)) continue;
      const PsiBounds b = psi_bounds_state(j, y);
      INFO(n.name << " y=" << py.space().format_state(y));
      CHECK(b.lower >= -1e-12);
      CHECK(b.lower <= b.upper + 1e-9);
      CHECK(b.upper <= specific_surprise(j, y) + 1e-9);
    }
    const PsiBounds bb = bracket_psi_bounds(j);
    INFO(n.name);
    CHECK(bb.lower >= -1e-9);
    CHECK(bb.lower <= bb.upper + 1e-9);
    CHECK(bb.upper <= mutual_information(j) + 1e-9);
  }
}

TEST_CASE("bracket lower bound is the weighted per-state KL at its own argmin") {
  // conditional mutual information written as an expectation: the entropy
  // route and the per-state KL route must agree
  for (const auto& n : corpus::reference_networks()) {
    const JointDist j = uniform_joint(n.map);
    const auto [value, partition] = bracket_psi_min(j);
    const Dist py = j.output_marginal();
    double expectation = 0.0;
    for (State y = 0; y < py.space().total_states(); ++y)
      if (py.mass(y) > 0.0)
        expectation += py.mass(y) * bipartition_factorization_kl(j, y, partition);
    INFO(n.name);
    CHECK(value == Approx(expectation).margin(1e-9));
  }
}

TEST_CASE("psi argmins are deterministic under symmetry") {
  const JointDist sh = uniform_joint(net("SHIFT"));
  // every bipartition of the bijective SHIFT scores zero; the first one wins
  const auto [value, partition] = psi_min_state(sh, 0);
  CHECK(value == Approx(0.0).margin(1e-12));
  CHECK(partition.to_string() == "{0,1,2}|{3}");
  const auto rerun = psi_min_state(sh, 0);
  CHECK(rerun.second == partition);

  const JointDist kk = joint_of(NodeKind::kKeep, NodeKind::kKeep);
  CHECK(psi_max_state(kk, 0).second == 0);  // tie between nodes resolves low
}
