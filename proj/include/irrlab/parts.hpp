#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "irrlab/errors.hpp"
#include "irrlab/state_space.hpp"

namespace irrlab {

// Grouping of nodes 0..n-1 into m >= 2 disjoint nonempty parts. Stored as a
// restricted-growth string (part ids appear in first-use order), so equal
// partitions have equal encodings.
class Partition {
 public:
  Partition() = default;

  static Partition from_assignment(const std::vector<int>& part_of_node) {
    Partition p;
    p.assign(part_of_node);
    return p;
  }

  // The bipartition {A, complement}; A must contain node 0 after
  // canonicalization, which holds automatically via first-use relabeling.
  static Partition bipartition(int node_count, NodeMask part_a) {
    if (node_count < 2) throw DomainError("bipartition needs at least 2 nodes");
    const NodeMask full = full_mask(node_count);
    if (part_a == 0 || (part_a & ~full) || part_a == full)
      throw DomainError("bipartition part must be a proper nonempty node subset");
    std::vector<int> a(static_cast<size_t>(node_count));
    for (int i = 0; i < node_count; ++i)
      a[static_cast<size_t>(i)] = (part_a & (NodeMask{1} << i)) ? 0 : 1;
    return from_assignment(a);
  }

  static Partition from_string(std::string_view text, int node_count);

  int node_count() const { return static_cast<int>(rgs_.size()); }
  int part_count() const { return static_cast<int>(masks_.size()); }
  int part_of(int node) const { return rgs_[static_cast<size_t>(node)]; }
  NodeMask part_mask(int part) const { return masks_[static_cast<size_t>(part)]; }
  const std::vector<NodeMask>& part_masks() const { return masks_; }

  std::string to_string() const {
    std::string out;
    for (int part = 0; part < part_count(); ++part) {
      if (part > 0) out += '|';
      out += '{';
      bool first = true;
      for (int node : mask_nodes(masks_[static_cast<size_t>(part)])) {
        if (!first) out += ',';
        out += std::to_string(node);
        first = false;
      }
      out += '}';
    }
    return out;
  }

  bool operator==(const Partition& other) const { return rgs_ == other.rgs_; }

 private:
  friend class PartitionEnumerator;
  friend class BipartitionEnumerator;

  void assign(const std::vector<int>& part_of_node) {
    const int n = static_cast<int>(part_of_node.size());
    if (n < 2) throw DomainError("partition needs at least 2 nodes");
    if (n > 32) throw DomainError("partition limited to 32 nodes");
    rgs_.assign(static_cast<size_t>(n), 0);
    std::vector<int> relabel(static_cast<size_t>(n), -1);
    int next_id = 0;
    for (int i = 0; i < n; ++i) {
      int raw = part_of_node[static_cast<size_t>(i)];
      if (raw < 0 || raw >= n) throw DomainError("partition part id out of range");
      if (relabel[static_cast<size_t>(raw)] < 0) relabel[static_cast<size_t>(raw)] = next_id++;
      rgs_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(relabel[static_cast<size_t>(raw)]);
    }
    if (next_id < 2) throw DomainError("partition needs at least 2 parts");
    masks_.assign(static_cast<size_t>(next_id), 0);
    for (int i = 0; i < n; ++i)
      masks_[rgs_[static_cast<size_t>(i)]] |= NodeMask{1} << i;
  }

  std::vector<std::uint8_t> rgs_;
  std::vector<NodeMask> masks_;
};

inline Partition Partition::from_string(std::string_view text, int node_count) {
  if (node_count < 2) throw DomainError("partition needs at least 2 nodes");
  std::vector<int> assignment(static_cast<size_t>(node_count), -1);
  int part = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '{') throw DomainError("malformed partition string");
    size_t close = text.find('}', pos);
    if (close == std::string_view::npos) throw DomainError("malformed partition string");
    std::string_view group = text.substr(pos + 1, close - pos - 1);
    size_t start = 0;
    while (start <= group.size()) {
      size_t comma = group.find(',', start);
      std::string_view tok = group.substr(
          start, comma == std::string_view::npos ? group.size() - start : comma - start);
      if (tok.empty()) throw DomainError("malformed partition string");
      int node = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') throw DomainError("malformed partition string");
        node = node * 10 + (c - '0');
      }
      if (node >= node_count) throw DomainError("partition node out of range");
      if (assignment[static_cast<size_t>(node)] != -1)
        throw DomainError("partition assigns a node twice");
      assignment[static_cast<size_t>(node)] = part;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    ++part;
    pos = close + 1;
    if (pos < text.size()) {
      if (text[pos] != '|') throw DomainError("malformed partition string");
      ++pos;
    }
  }
  for (int v : assignment)
    if (v < 0) throw DomainError("partition does not cover every node");
  return Partition::from_assignment(assignment);
}

// All set partitions with m >= 2 parts, emitted in lexicographic
// restricted-growth order. The first string (all nodes in one part) is the
// total partition and is skipped, so the sequence has Bell(n) - 1 elements.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int node_count) : n_(node_count) {
    if (n_ < 2) throw DomainError("partition enumeration needs at least 2 nodes");
    if (n_ > 32) throw DomainError("partition enumeration limited to 32 nodes");
    rgs_.assign(static_cast<size_t>(n_), 0);
    prefix_max_.assign(static_cast<size_t>(n_), 0);
  }

  bool next(Partition& out) {
    if (!advance()) return false;
    emit(out);
    return true;
  }

 private:
  bool advance() {
    for (int i = n_ - 1; i >= 1; --i) {
      if (rgs_[static_cast<size_t>(i)] <= prefix_max_[static_cast<size_t>(i - 1)]) {
        ++rgs_[static_cast<size_t>(i)];
        prefix_max_[static_cast<size_t>(i)] =
            std::max(prefix_max_[static_cast<size_t>(i - 1)], rgs_[static_cast<size_t>(i)]);
        for (int k = i + 1; k < n_; ++k) {
          rgs_[static_cast<size_t>(k)] = 0;
          prefix_max_[static_cast<size_t>(k)] = prefix_max_[static_cast<size_t>(i)];
        }
        return true;
      }
    }
    return false;
  }

  void emit(Partition& out) const {
    out.rgs_ = rgs_;
    const int parts = prefix_max_[static_cast<size_t>(n_ - 1)] + 1;
    out.masks_.assign(static_cast<size_t>(parts), 0);
    for (int i = 0; i < n_; ++i)
      out.masks_[rgs_[static_cast<size_t>(i)]] |= NodeMask{1} << i;
  }

  int n_;
  std::vector<std::uint8_t> rgs_;
  std::vector<std::uint8_t> prefix_max_;
};

// Each unordered bipartition {A, complement} exactly once, 2^(n-1) - 1 in
// total, ordered as the m = 2 subsequence of PartitionEnumerator.
class BipartitionEnumerator {
 public:
  explicit BipartitionEnumerator(int node_count) : n_(node_count) {
    if (n_ < 2) throw DomainError("bipartition enumeration needs at least 2 nodes");
    if (n_ > 32) throw DomainError("bipartition enumeration limited to 32 nodes");
    limit_ = (std::uint64_t{1} << (n_ - 1)) - 1;
  }

  bool next(Partition& out) {
    if (counter_ >= limit_) return false;
    ++counter_;
    out.rgs_.assign(static_cast<size_t>(n_), 0);
    out.masks_.assign(2, 0);
    out.masks_[0] = NodeMask{1};  // node 0 always sits in the first part
    for (int i = 1; i < n_; ++i) {
      // bit order chosen so the sequence is lexicographic in the growth string
      const bool in_b = (counter_ >> (n_ - 1 - i)) & 1u;
      out.rgs_[static_cast<size_t>(i)] = in_b ? 1 : 0;
      out.masks_[in_b ? 1 : 0] |= NodeMask{1} << i;
    }
    return true;
  }

 private:
  int n_;
  std::uint64_t counter_ = 0;
  std::uint64_t limit_ = 0;
};

inline std::vector<Partition> all_partitions(int node_count) {
  PartitionEnumerator en(node_count);
  std::vector<Partition> out;
  Partition p;
  while (en.next(p)) out.push_back(p);
  return out;
}

inline std::vector<Partition> all_bipartitions(int node_count) {
  BipartitionEnumerator en(node_count);
  std::vector<Partition> out;
  Partition p;
  while (en.next(p)) out.push_back(p);
  return out;
}

/// Digits of the part's nodes in original order, as a state of the part's
/// subspace. The part must be nonempty.
inline State restrict_state(const StateSpace& space, State s, NodeMask part) {
  if (part == 0) throw DomainError("restrict_state: part must not be empty");
  if (part & ~full_mask(space.node_count()))
    throw DomainError("restrict_state: part out of range");
  return space.restrict_to(s, part);
}

}  // namespace irrlab
