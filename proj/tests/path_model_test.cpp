// Copyright 2026 The wigner-deform Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "wigner/errors.hpp"
#include "wigner/path_model.hpp"
#include "wigner/philox.hpp"

namespace wigner {
namespace {

using enum Instant;

const ClosedPath kNine = ClosedPath::make({1, 2, 1, 3, 4, 5, 6, 3, 1}, 6);

// Brute force over all 2^L step words, independent of the library enumerator.
std::uint64_t brute_force_count(int m, int l) {
  const int length = l + 2 * m;
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << length); ++mask) {
    int level = 0;
    int downs = 0;
    bool ok = true;
    for (int t = 0; t < length && ok; ++t) {
      const bool up = (mask >> (length - 1 - t)) & 1u;
      level += up ? 1 : -1;
      downs += up ? 0 : 1;
      ok = level >= 0;
    }
    if (ok && downs == m && level == l) ++count;
  }
  return count;
}

TEST(ClosedPath, RejectsOpenPathsAndBadLabels) {
  EXPECT_THROW(ClosedPath::make({1, 2, 3}, 3), DomainError);
  EXPECT_THROW(ClosedPath::make({1, 4, 1}, 3), DomainError);
  EXPECT_THROW(ClosedPath::make({1}, 3), DomainError);
  EXPECT_EQ(parse_path("1,2,1"), ClosedPath::make({1, 2, 1}, 2));
  EXPECT_EQ(to_string(kNine), "1,2,1,3,4,5,6,3,1");
}

TEST(ClassifyInstants, SmallExamples) {
  EXPECT_EQ(classify_instants(ClosedPath::make({1, 2, 1})), (std::vector{marked, unmarked}));
  EXPECT_EQ(classify_instants(ClosedPath::make({1, 2, 3, 1})),
            (std::vector{marked, marked, marked}));
}

TEST(ClassifyInstants, NineVertexExample) {
  const auto kinds = classify_instants(kNine);
  const std::vector<Instant> expected{marked, unmarked, marked, marked,
                                      marked, marked,   marked, unmarked};
  EXPECT_EQ(kinds, expected);
}

TEST(ClassifyInstants, LoopIsAnOrdinaryEdge) {
  EXPECT_EQ(classify_instants(ClosedPath::make({1, 1, 1})), (std::vector{marked, unmarked}));
}

TEST(TrajectoryOf, Examples) {
  EXPECT_EQ(trajectory_of(ClosedPath::make({1, 2, 1})).str(), "UD");
  const auto triangle = trajectory_of(ClosedPath::make({1, 2, 3, 1}));
  EXPECT_EQ(triangle.str(), "UUU");
  EXPECT_EQ(triangle.end_level(), 3);
  const auto x = trajectory_of(kNine);
  EXPECT_EQ(x.str(), "UDUUUUUD");
  EXPECT_EQ(x.end_level(), 4);
  EXPECT_EQ(x.m(), 2);
  EXPECT_EQ(x.l(), 4);
}

TEST(Trajectory, RejectsNegativePrefixAndBadSteps) {
  EXPECT_THROW(Trajectory::parse("DU"), DomainError);
  EXPECT_THROW(Trajectory(std::vector<int>{1, 0}), DomainError);
  EXPECT_EQ(Trajectory::parse("UUD").levels(), (std::vector<int>{0, 1, 2, 1}));
}

TEST(EnumerateTrajectories, Examples) {
  const auto single = enumerate_trajectories(1, 0);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].str(), "UD");

  std::vector<std::string> words;
  for (const auto& x : enumerate_trajectories(1, 2)) words.push_back(x.str());
  EXPECT_EQ(words, (std::vector<std::string>{"UUUD", "UUDU", "UDUU"}));
  EXPECT_EQ(enumerate_trajectories(3, 0).size(), 5u);
  EXPECT_THROW(enumerate_trajectories(16, 0), SizeGuardError);
}

TEST(CountTrajectories, Examples) {
  EXPECT_EQ(count_trajectories(1, 2), 3);
  EXPECT_EQ(count_trajectories(2, 2), 9);
  EXPECT_EQ(binomial(6, 4) - binomial(6, 1), 9);
  EXPECT_EQ(count_trajectories(3, 0), 5);
  EXPECT_EQ(count_trajectories(-1, 2), 0);
}

TEST(CountTrajectories, AllFormsAgreeUpToLength14) {
  for (int m = 0; 2 * m <= 14; ++m) {
    for (int l = 0; l + 2 * m <= 14; ++l) {
      const BigInt enumerated = enumerate_trajectories(m, l).size();
      EXPECT_EQ(enumerated, count_trajectories(m, l)) << m << "," << l;
      EXPECT_EQ(enumerated, count_trajectories_factorial(m, l)) << m << "," << l;
      EXPECT_EQ(enumerated, BigInt(brute_force_count(m, l))) << m << "," << l;
    }
  }
}

TEST(LastStepSplit, Examples) {
  const auto split = last_step_split(1, 2);
  EXPECT_EQ(split.up, 2);
  EXPECT_EQ(split.down, 1);
  const auto dyck = last_step_split(3, 0);
  EXPECT_EQ(dyck.up, 0);
  EXPECT_EQ(dyck.down, count_trajectories(2, 1));
  const auto rising = last_step_split(0, 5);
  EXPECT_EQ(rising.up, 1);
  EXPECT_EQ(rising.down, 0);
}

TEST(LastStepSplit, SumsToCountAndMatchesFinalStepTally) {
  for (int m = 0; 2 * m <= 12; ++m) {
    for (int l = 0; l + 2 * m <= 12; ++l) {
      if (l + 2 * m == 0) continue;
      const auto split = last_step_split(m, l);
      EXPECT_EQ(split.up + split.down, count_trajectories(m, l));
      BigInt ups = 0;
      for (const auto& x : enumerate_trajectories(m, l)) ups += x.steps().back() == 1 ? 1 : 0;
      EXPECT_EQ(split.up, ups);
    }
  }
}

TEST(PathType, Examples) {
  auto counts = path_type(ClosedPath::make({1, 2, 1}, 5)).counts;
  EXPECT_EQ(counts, (std::vector<std::size_t>{4, 1}));
  counts = path_type(ClosedPath::make({1, 2, 3, 1}, 5)).counts;
  EXPECT_EQ(counts, (std::vector<std::size_t>{2, 3, 0, 0}));
  const auto t = path_type(kNine);
  ASSERT_GE(t.counts.size(), 3u);
  EXPECT_EQ(t.counts[0], 1u);
  EXPECT_EQ(t.counts[1], 4u);
  EXPECT_EQ(t.counts[2], 1u);
  EXPECT_EQ(t.self_intersections(), 1u);
  EXPECT_EQ(t.light_intersection_vertices(), 1u);
  EXPECT_EQ(t.heavy_vertices(), 0u);
}

TEST(IsSimple, Examples) {
  EXPECT_TRUE(is_simple(ClosedPath::make({1, 2, 3, 1})));
  EXPECT_FALSE(is_simple(ClosedPath::make({1, 2, 1, 2, 1})));
  EXPECT_TRUE(is_simple(ClosedPath::make({1, 2, 1})));
}

TEST(OriginMarked, ExposesEveryMarkedOccurrence) {
  EXPECT_TRUE(origin_marked(ClosedPath::make({1, 2, 3, 1})));
  EXPECT_FALSE(origin_marked(ClosedPath::make({1, 2, 1})));
  // Returns to 1 at instants 2 and 4 close edge {1,2} an even number of times.
  EXPECT_TRUE(marked_origin_instants(ClosedPath::make({1, 2, 1, 2, 1})).empty());
  EXPECT_EQ(marked_origin_instants(ClosedPath::make({1, 2, 3, 1, 2, 3, 1})),
            (std::vector<std::size_t>{3}));
  EXPECT_EQ(marked_origin_instants(ClosedPath::make({1, 2, 3, 1, 4, 5, 1})),
            (std::vector<std::size_t>{3, 6}));
}

TEST(VertexStats, Examples) {
  const auto a = vertex_stats(ClosedPath::make({1, 2, 1}));
  EXPECT_EQ(a.max_type, 1);
  EXPECT_TRUE(a.nonclosed.empty());
  EXPECT_EQ(a.odd_edge_count, 0);
  EXPECT_EQ(vertex_stats(ClosedPath::make({1, 2, 3, 1})).odd_edge_count, 3);
  EXPECT_EQ(vertex_stats(kNine).odd_edge_count, 4);
}

TEST(PathProperties, RandomPathsSatisfyTypeAndClassInvariants) {
  PhiloxStream rng(2026, 7);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t length = 1 + rng.below(10);
    const int n = 2 + static_cast<int>(rng.below(4));
    const auto path = random_closed_path(rng, length, n);
    const auto x = trajectory_of(path);
    const auto type = path_type(path);
    ASSERT_EQ(type.n(), static_cast<std::size_t>(n));
    ASSERT_EQ(type.marked_total(), static_cast<std::size_t>(x.l() + x.m()));
    ASSERT_EQ(vertex_stats(path).odd_edge_count, x.end_level()) << to_string(path);
    const auto kinds = classify_instants(path);
    ASSERT_EQ(std::count(kinds.begin(), kinds.end(), marked), x.l() + x.m());
    ASSERT_EQ(std::count(kinds.begin(), kinds.end(), unmarked), x.m());
  }
}

TEST(UnorderedEdges, SortedMultisetAndTotals) {
  const auto edges = unordered_edges(ClosedPath::make({1, 2, 1, 3, 1}));
  EXPECT_EQ(edges, (std::vector<std::pair<int, int>>{{1, 2}, {1, 2}, {1, 3}, {1, 3}}));
  EXPECT_EQ(edge_totals_at_instants(kNine), (std::vector<int>{2, 2, 2, 1, 1, 1, 1, 2}));
}

}  // namespace
}  // namespace wigner
