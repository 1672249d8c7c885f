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


#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wigner/bigint.hpp"
#include "wigner/philox.hpp"

namespace wigner {

//---------------------------------------------------------------------------//
/*!
 * Closed path i_0, i_1, ..., i_L = i_0 on the vertex set {1, ..., ambient_n}.
 * Loops (i_{j+1} = i_j) are allowed and treated as ordinary unordered edges.
 */
struct ClosedPath {
  std::vector<int> vertices;
  int ambient_n = 0;

  /// Validates closure, length >= 1 and that every vertex is in range.
  static ClosedPath make(std::vector<int> vertices, int ambient_n);
  /// Ambient dimension defaults to the largest vertex label.
  static ClosedPath make(std::vector<int> vertices);

  std::size_t length() const { return vertices.size() - 1; }
  int origin() const { return vertices.front(); }

  friend bool operator==(const ClosedPath&, const ClosedPath&) = default;
};

/// "1,2,1"
std::string to_string(const ClosedPath& path);
ClosedPath parse_path(std::string_view text, int ambient_n = 0);

enum class Instant { marked, unmarked };

/// Instant j (1-based, as position j - 1 of the result) is marked iff the
/// unordered edge {i_{j-1}, i_j} has been traversed an odd number of times
/// up to and including j.
std::vector<Instant> classify_instants(const ClosedPath& path);

//---------------------------------------------------------------------------//
/*!
 * Walk with steps +1 (U) and -1 (D) that never goes below zero. m is the
 * number of down steps and l the final level, so the length is l + 2m.
 */
class Trajectory {
 public:
  Trajectory() = default;
  /// Throws DomainError on a step outside {+1, -1} or a negative prefix.
  explicit Trajectory(std::vector<int> steps);
  /// Parses a string over {U, D}.
  static Trajectory parse(std::string_view text);

  const std::vector<int>& steps() const { return steps_; }
  int length() const { return static_cast<int>(steps_.size()); }
  int end_level() const { return end_level_; }
  int m() const { return (length() - end_level_) / 2; }
  int l() const { return end_level_; }

  /// x(0), ..., x(L).
  std::vector<int> levels() const;
  std::string str() const;

  friend auto operator<=>(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<int> steps_;
  int end_level_ = 0;
};

Trajectory trajectory_of(const ClosedPath& path);

/// Largest l + 2m accepted by enumerate_trajectories.
inline constexpr int kMaxEnumeratedLength = 30;

/// All of T_{m,l}, lexicographic with U before D. Throws SizeGuardError when
/// l + 2m exceeds kMaxEnumeratedLength.
std::vector<Trajectory> enumerate_trajectories(int m, int l);

/// |T_{m,l}| = C(L, l+m) - C(L, m-1); zero if m < 0 or l < 0.
BigInt count_trajectories(int m, int l);
/// L! (l+1) / ((l+m+1)! m!), the same number by the factorial route.
BigInt count_trajectories_factorial(int m, int l);

struct StepSplit {
  BigInt up;    // trajectories of T_{m,l} whose last step is U: |T_{m,l-1}|
  BigInt down;  // last step D: |T_{m-1,l+1}|
};

StepSplit last_step_split(int m, int l);

//---------------------------------------------------------------------------//
/*!
 * counts[k] = N_k, the number of vertices of {1..N} occurring at exactly k
 * marked instants. sum_k N_k = N and sum_k k N_k = l + m.
 */
struct PathType {
  std::vector<std::size_t> counts;

  std::size_t n() const;
  std::size_t marked_total() const;
  /// M = sum_{k >= 2} (k - 1) N_k
  std::size_t self_intersections() const;
  /// M1 = sum_{k >= 11} N_k
  std::size_t heavy_vertices() const;
  /// M2 = sum_{k=2}^{10} N_k
  std::size_t light_intersection_vertices() const;
};

/// counts has length l + m + 1.
PathType path_type(const ClosedPath& path);

/// No marked instant lands on a vertex already reached at an earlier marked
/// instant.
bool is_simple(const ClosedPath& path);

/// Marked instants j with i_j = i_0, in increasing order. The origin is
/// marked iff this is nonempty.
std::vector<std::size_t> marked_origin_instants(const ClosedPath& path);
bool origin_marked(const ClosedPath& path);

struct VertexStats {
  int max_type = 0;               // max k with N_k > 0
  int max_marked_out_degree = 0;  // max_v #{marked j : i_{j-1} = v}
  std::vector<int> nonclosed;     // sorted
  int odd_edge_count = 0;
};

/// A vertex is non-closed when it occurs at two or more marked instants and,
/// at some unmarked instant leaving it, more than one incident edge has odd
/// count so far (several ways to return).
VertexStats vertex_stats(const ClosedPath& path);

/// Sorted multiset of unordered edges {min, max}, one entry per traversal.
std::vector<std::pair<int, int>> unordered_edges(const ClosedPath& path);

/// For each instant j = 1..L (position j - 1), the total number of
/// traversals of the edge {i_{j-1}, i_j} over the whole path.
std::vector<int> edge_totals_at_instants(const ClosedPath& path);

/// Draws i_0..i_L uniformly from {1..n} and rejects until i_L = i_0.
ClosedPath random_closed_path(PhiloxStream& rng, std::size_t length, int n);

}  // namespace wigner
