#include <catch2/catch.hpp>

#include <cstdint>
#include <set>
#include <vector>

#include "irrlab/parts.hpp"

using namespace irrlab;

namespace {

// Independent count oracle: Bell numbers via the Bell triangle.
std::vector<std::uint64_t> bell_numbers(int up_to) {
  std::vector<std::uint64_t> bell = {1};
  std::vector<std::uint64_t> row = {1};
  for (int n = 1; n <= up_to; ++n) {
    std::vector<std::uint64_t> next = {row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
    bell.push_back(row.front());
  }
  return bell;
}

}  // namespace

TEST_CASE("bell triangle oracle sanity") {
  const auto bell = bell_numbers(12);
  CHECK(bell[2] == 2);
  CHECK(bell[3] == 5);
  CHECK(bell[4] == 15);
  CHECK(bell[10] == 115975);
  CHECK(bell[12] == 4213597);
}

TEST_CASE("partition counts match Bell(n) - 1 for n <= 8") {
  const auto bell = bell_numbers(8);
  for (int n = 2; n <= 8; ++n) {
    PartitionEnumerator en(n);
    Partition p;
    std::uint64_t count = 0;
    while (en.next(p)) ++count;
    INFO("n = " << n);
    CHECK(count == bell[static_cast<size_t>(n)] - 1);
  }
}

TEST_CASE("small partition sequences are exact") {
  CHECK(all_partitions(2).size() == 1);
  CHECK(all_partitions(2)[0].to_string() == "{0}|{1}");

  const auto p3 = all_partitions(3);
  REQUIRE(p3.size() == 4);
  CHECK(p3[0].to_string() == "{0,1}|{2}");
  CHECK(p3[1].to_string() == "{0,2}|{1}");
  CHECK(p3[2].to_string() == "{0}|{1,2}");
  CHECK(p3[3].to_string() == "{0}|{1}|{2}");

  CHECK(all_partitions(4).size() == 14);
  CHECK_THROWS_AS(PartitionEnumerator(1), DomainError);
}

TEST_CASE("bipartition counts and order") {
  CHECK(all_bipartitions(2).size() == 1);
  CHECK(all_bipartitions(4).size() == 7);

  const auto b3 = all_bipartitions(3);
  REQUIRE(b3.size() == 3);
  CHECK(b3[0].to_string() == "{0,1}|{2}");
  CHECK(b3[1].to_string() == "{0,2}|{1}");
  CHECK(b3[2].to_string() == "{0}|{1,2}");
  CHECK_THROWS_AS(BipartitionEnumerator(1), DomainError);
}

TEST_CASE("bipartitions are the two-part subsequence of the partition order") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<Partition> two_part;
    for (const Partition& p : all_partitions(n))
      if (p.part_count() == 2) two_part.push_back(p);
    const auto bi = all_bipartitions(n);
    INFO("n = " << n);
    REQUIRE(bi.size() == two_part.size());
    for (size_t i = 0; i < bi.size(); ++i) CHECK(bi[i] == two_part[i]);
  }
}

TEST_CASE("every emitted partition is canonical, covering, and unique") {
  for (int n = 2; n <= 7; ++n) {
    std::set<std::string> seen;
    for (const Partition& p : all_partitions(n)) {
      CHECK(p.part_count() >= 2);
      CHECK(p.part_count() <= n);
      NodeMask all = 0;
      int first_use = 0;
      for (int node = 0; node < n; ++node) {
        const int part = p.part_of(node);
        CHECK(part <= first_use);  // restricted growth: ids appear in order
        if (part == first_use) ++first_use;
        all |= NodeMask{1} << node;
      }
      CHECK(first_use == p.part_count());
      for (int part = 0; part < p.part_count(); ++part)
        CHECK(mask_size(p.part_mask(part)) >= 1);
      CHECK(all == full_mask(n));
      CHECK(seen.insert(p.to_string()).second);
    }
  }
}

TEST_CASE("restrict_state extracts part digits in order") {
  const StateSpace two = StateSpace::binary(2);
  CHECK(restrict_state(two, two.parse_state("10"), 0b01) == 1);
  CHECK(restrict_state(two, two.parse_state("10"), 0b10) == 0);

  const StateSpace four = StateSpace::binary(4);
  const State s = four.parse_state("0110");
  CHECK(restrict_state(four, s, 0b0110) == four.subspace(0b0110).parse_state("11"));
  CHECK_THROWS_AS(restrict_state(four, s, 0), DomainError);
  CHECK_THROWS_AS(restrict_state(four, s, 0b10000), DomainError);
}

TEST_CASE("from_assignment canonicalizes part ids") {
  const Partition p = Partition::from_assignment({1, 0, 1});
  CHECK(p.to_string() == "{0,2}|{1}");
  CHECK(p.part_of(0) == 0);
  CHECK(p.part_of(1) == 1);
  CHECK(p == Partition::from_assignment({0, 1, 0}));
  CHECK_THROWS_AS(Partition::from_assignment({0, 0, 0}), DomainError);
  CHECK_THROWS_AS(Partition::from_assignment({0}), DomainError);
  CHECK_THROWS_AS(Partition::from_assignment({0, 5, 1}), DomainError);
}

TEST_CASE("bipartition constructor and string round trip") {
  const Partition p = Partition::bipartition(4, 0b0101);
  CHECK(p.to_string() == "{0,2}|{1,3}");
  CHECK(Partition::from_string("{0,2}|{1,3}", 4) == p);
  CHECK(Partition::from_string(p.to_string(), 4).part_mask(0) == 0b0101);
  CHECK_THROWS_AS(Partition::bipartition(4, 0), DomainError);
  CHECK_THROWS_AS(Partition::bipartition(4, 0b1111), DomainError);
  CHECK_THROWS_AS(Partition::from_string("{0}|{1", 2), DomainError);
  CHECK_THROWS_AS(Partition::from_string("{0}|{0,1}", 2), DomainError);
  CHECK_THROWS_AS(Partition::from_string("{0}", 2), DomainError);
}
