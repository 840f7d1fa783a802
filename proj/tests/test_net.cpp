#include <catch2/catch.hpp>

#include <cstdlib>
#include <random>
#include <string>

#include "irrlab/corpus.hpp"
#include "irrlab/net.hpp"

using namespace irrlab;
using corpus::NodeKind;

namespace {

constexpr const char* kAndZeroSpec =
    "nodes 2\n"
    "threshold 0 2\n"
    "threshold 1 inf\n"
    "edge 0 0\n"
    "edge 1 0\n";

TransitionMap from_table(const std::string& rows) { return parse_transition_table(rows); }

}  // namespace

TEST_CASE("parse_network_spec builds AND-ZERO") {
  const TransitionMap m = build_transition_map(parse_network_spec(kAndZeroSpec));
  // the AND node fires only on 11; the inf node never does
  CHECK(m.space.format_state(m.next[m.space.parse_state("00")]) == "00");
  CHECK(m.space.format_state(m.next[m.space.parse_state("01")]) == "00");
  CHECK(m.space.format_state(m.next[m.space.parse_state("10")]) == "00");
  CHECK(m.space.format_state(m.next[m.space.parse_state("11")]) == "10");
  CHECK(m == corpus::doublet(NodeKind::kAnd, NodeKind::kZero));
}

TEST_CASE("parse_network_spec: single self-loop node is the identity") {
  const TransitionMap m = build_transition_map(
      parse_network_spec("nodes 1\nthreshold 0 1\nedge 0 0\n"));
  CHECK(m.next[0] == 0);
  CHECK(m.next[1] == 1);
}

TEST_CASE("parse_network_spec error paths") {
  auto line_of = [](const char* text) {
    try {
      parse_network_spec(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("nodes 2\nthreshold 0 1\nthreshold 1 1\nedge 0 5\n") == 4);
  CHECK(line_of("nodes 2\nthreshold 0 1\nthreshold 0 2\nthreshold 1 1\n") == 3);
  CHECK(line_of("nodes 2\nthreshold 0 1\nthreshold 1 1\nedge 0 0\nedge 0 0\n") == 5);
  CHECK(line_of("nodes 2\nthreshold 0 0\nthreshold 1 1\n") == 2);
  CHECK(line_of("nodes 2\nwires 0 1\n") == 2);
  CHECK(line_of("edge 0 1\n") == 1);             // before nodes
  CHECK(line_of("nodes 2\nthreshold 0 1\n") == 0);  // node 1 has no threshold
  CHECK_THROWS_AS(parse_network_spec(""), ParseError);
  CHECK_THROWS_AS(parse_network_spec("nodes 2\nnodes 2\n"), ParseError);
}

TEST_CASE("parse_transition_table reads the OR-GET rows") {
  const TransitionMap m = from_table(
      "00 -> 00\n"
      "01 -> 10\n"
      "10 -> 11\n"
      "11 -> 11\n");
  CHECK(m.next[m.space.parse_state("01")] == m.space.parse_state("10"));
  CHECK(m == corpus::doublet(NodeKind::kOr, NodeKind::kGet));
}

TEST_CASE("parse_transition_table error paths") {
  CHECK_THROWS_AS(from_table("00 -> 00\n01 -> 10\n10 -> 11\n"), ParseError);  // incomplete
  CHECK_THROWS_AS(from_table("0a -> 00\n"), ParseError);                      // non-binary
  CHECK_THROWS_AS(from_table("00 -> 00\n01 -> 1\n10 -> 11\n11 -> 11\n"), ParseError);
  CHECK_THROWS_AS(from_table("00 -> 00\n00 -> 10\n10 -> 11\n11 -> 11\n"), ParseError);
  CHECK_THROWS_AS(from_table("00 00\n"), ParseError);
  CHECK_THROWS_AS(from_table(""), ParseError);
}

TEST_CASE("build_transition_map: all-inf thresholds give the constant zero map") {
  NetworkSpec spec;
  spec.node_count = 3;
  spec.thresholds.assign(3, NetworkSpec::kInfiniteThreshold);
  const TransitionMap m = build_transition_map(spec);
  for (State x = 0; x < m.space.total_states(); ++x) CHECK(m.next[x] == 0);
}

TEST_CASE("build_transition_map: SHIFT is a cyclic rotation") {
  const TransitionMap m = build_transition_map(corpus::shift_ring(4));
  for (State x = 0; x < m.space.total_states(); ++x) {
    State expected = 0;
    for (int i = 0; i < 4; ++i)
      expected = m.space.with_digit(expected, i, m.space.digit(x, (i + 3) % 4));
    CHECK(m.next[x] == expected);
  }
}

TEST_CASE("build_transition_map: popcount thresholds for the 4422 family") {
  const TransitionMap m = build_transition_map(corpus::fully_connected({4, 4, 2, 2}));
  for (State x = 0; x < m.space.total_states(); ++x) {
    int on = 0;
    for (int i = 0; i < 4; ++i) on += static_cast<int>(m.space.digit(x, i));
    State expected = 0;
    const int thresholds[4] = {4, 4, 2, 2};
    for (int i = 0; i < 4; ++i)
      if (on >= thresholds[i]) expected = m.space.with_digit(expected, i, 1);
    CHECK(m.next[x] == expected);
  }
}

TEST_CASE("compose_t_steps: identity at t=1 and the AND-GET squares") {
  const TransitionMap ag = corpus::doublet(NodeKind::kAnd, NodeKind::kGet);
  CHECK(compose_t_steps(ag, 1) == ag);
  CHECK(compose_t_steps(ag, 2) == corpus::doublet(NodeKind::kAnd, NodeKind::kAnd));
  // state 11 is a fixed point, so every further iterate stays AND-AND
  CHECK(compose_t_steps(ag, 3) == corpus::doublet(NodeKind::kAnd, NodeKind::kAnd));
  CHECK(compose_t_steps(ag, 17) == corpus::doublet(NodeKind::kAnd, NodeKind::kAnd));
  CHECK_THROWS_AS(compose_t_steps(ag, 0), DomainError);
}

TEST_CASE("compose_t_steps satisfies the power laws") {
  // chaining the a-step and b-step maps gives the (a+b)-step map, and
  // iterating the a-step map b times gives the (a*b)-step map
  auto chain = [](const TransitionMap& first, const TransitionMap& then) {
    TransitionMap out;
    out.space = first.space;
    out.next.resize(first.next.size());
    for (State x = 0; x < first.space.total_states(); ++x)
      out.next[x] = then.next[first.next[x]];
    return out;
  };
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    TransitionMap m;
    m.space = StateSpace::binary(3);
    m.next.resize(m.space.total_states());
    for (State& y : m.next) y = rng() % m.space.total_states();
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b) {
        CHECK(compose_t_steps(m, a + b) ==
              chain(compose_t_steps(m, a), compose_t_steps(m, b)));
        CHECK(compose_t_steps(compose_t_steps(m, a), b) ==
              compose_t_steps(m, static_cast<std::int64_t>(a) * b));
      }
  }
}

TEST_CASE("printed transition tables round-trip") {
  for (const auto& net : corpus::reference_networks()) {
    INFO(net.name);
    CHECK(parse_transition_table(format_transition_table(net.map)) == net.map);
  }
}

TEST_CASE("uniform_joint: diagonal identity mechanism and OR-GET marginal") {
  const JointDist kk = uniform_joint(corpus::doublet(NodeKind::kKeep, NodeKind::kKeep));
  REQUIRE(kk.entries().size() == 4);
  for (const auto& e : kk.entries()) {
    CHECK(e.x == e.y);
    CHECK(e.p == Approx(0.25).margin(1e-15));
  }

  const Dist py = uniform_joint(corpus::doublet(NodeKind::kOr, NodeKind::kGet)).output_marginal();
  CHECK(py.mass(py.space().parse_state("00")) == Approx(0.25).margin(1e-12));
  CHECK(py.mass(py.space().parse_state("01")) == Approx(0.0).margin(1e-15));
  CHECK(py.mass(py.space().parse_state("10")) == Approx(0.25).margin(1e-12));
  CHECK(py.mass(py.space().parse_state("11")) == Approx(0.5).margin(1e-12));
}

TEST_CASE("deterministic mechanisms satisfy I(X;Y) = H(Y)") {
  for (const auto& net : corpus::reference_networks()) {
    const JointDist j = uniform_joint(net.map);
    INFO(net.name);
    CHECK(mutual_information(j) == Approx(entropy(j.output_marginal())).margin(1e-9));
  }
}

TEST_CASE("node count cap and its environment override") {
  std::string big = "nodes 21\n";
  for (int i = 0; i < 21; ++i) big += "threshold " + std::to_string(i) + " inf\n";
  CHECK_THROWS_AS(parse_network_spec(big), ParseError);

  setenv("IRRLAB_MAX_NODES", "21", 1);
  CHECK(max_network_nodes() == 21);
  CHECK_NOTHROW(parse_network_spec(big));
  setenv("IRRLAB_MAX_NODES", "nonsense", 1);
  CHECK(max_network_nodes() == 20);
  unsetenv("IRRLAB_MAX_NODES");
  CHECK(max_network_nodes() == 20);
}

TEST_CASE("joint_with_input skips zero-mass inputs") {
  const TransitionMap m = corpus::doublet(NodeKind::kKeep, NodeKind::kKeep);
  const Dist x = Dist::from_mass(m.space, {0.5, 0.5, 0.0, 0.0});
  const JointDist j = joint_with_input(m, x);
  CHECK(j.entries().size() == 2);
  CHECK(mutual_information(j) == Approx(1.0).margin(1e-12));
}
