#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "irrlab/corpus.hpp"
#include "irrlab/net.hpp"
#include "irrlab/parts.hpp"
#include "irrlab/phi.hpp"
#include "irrlab/psi.hpp"

namespace irrlab::bench {

struct BenchRow {
  int n = 0;
  std::uint64_t partition_count = 0;
  std::uint64_t bipartition_count = 0;
  double phi_seconds = 0.0;  // full <phi> computation (MIP over all partitions)
  double psi_seconds = 0.0;  // both <psi> bounds
  double bracket_phi = 0.0;
  double bracket_psi_min = 0.0;
  double bracket_psi_max = 0.0;
};

// Deterministic across platforms: only raw mt19937 draws, no distribution
// adapters. Every node gets a random input set and a threshold within its
// in-degree.
inline TransitionMap random_threshold_map(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  NetworkSpec spec;
  spec.node_count = n;
  spec.thresholds.assign(static_cast<size_t>(n), 1);
  for (int dst = 0; dst < n; ++dst) {
    int degree = 0;
    for (int src = 0; src < n; ++src)
      if (rng() & 1u) {
        spec.edges.emplace_back(src, dst);
        ++degree;
      }
    if (degree == 0)
      spec.thresholds[static_cast<size_t>(dst)] = NetworkSpec::kInfiniteThreshold;
    else
      spec.thresholds[static_cast<size_t>(dst)] =
          1 + static_cast<int>(rng() % static_cast<std::uint32_t>(degree));
  }
  return build_transition_map(spec);
}

namespace detail {

template <typename Fn>
double min_seconds(int reps, Fn&& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

inline int repetitions(int n) {
  if (n <= 8) return 5;
  if (n <= 10) return 3;
  return 1;
}

}  // namespace detail

/// One row per n in [min_nodes, max_nodes]: enumerated partition and
/// bipartition counts plus wall-clock minima for a full <phi> computation
/// versus both <psi> bounds on a seeded random threshold network.
inline std::vector<BenchRow> run_bench(int max_nodes, int min_nodes = 2,
                                       std::uint32_t seed = 0x5eedu) {
  if (min_nodes < 2) throw DomainError("bench needs at least 2 nodes");
  if (max_nodes < min_nodes) throw DomainError("bench range is empty");
  if (max_nodes > max_network_nodes())
    throw DomainError("bench size exceeds the configured cap of " +
                      std::to_string(max_network_nodes()) + " nodes");

  std::vector<BenchRow> rows;
  for (int n = min_nodes; n <= max_nodes; ++n) {
    BenchRow row;
    row.n = n;

    PartitionEnumerator pe(n);
    Partition p;
    while (pe.next(p)) ++row.partition_count;
    BipartitionEnumerator be(n);
    while (be.next(p)) ++row.bipartition_count;

    const JointDist joint = uniform_joint(random_threshold_map(n, seed + static_cast<std::uint32_t>(n)));
    const int reps = detail::repetitions(n);
    row.phi_seconds =
        detail::min_seconds(reps, [&] { row.bracket_phi = bracket_measures(joint).phi; });
    row.psi_seconds = detail::min_seconds(reps, [&] {
      row.bracket_psi_min = bracket_psi_min(joint).first;
      row.bracket_psi_max = bracket_psi_max(joint).first;
    });
    rows.push_back(row);
  }
  return rows;
}

inline std::string render_bench(const std::vector<BenchRow>& rows) {
  std::string out =
      "| n | partitions | bipartitions | <phi> ms | <psi> bounds ms |\n"
      "| --- | --- | --- | --- | --- |\n";
  char buf[128];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "| %d | %llu | %llu | %.3f | %.3f |\n", r.n,
                  static_cast<unsigned long long>(r.partition_count),
                  static_cast<unsigned long long>(r.bipartition_count),
                  r.phi_seconds * 1e3, r.psi_seconds * 1e3);
    out += buf;
  }
  return out;
}

}  // namespace irrlab::bench
