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

#include <cstddef>
#include <optional>
#include <string>

#include "wigner/path_model.hpp"
#include "wigner/philox.hpp"
#include "wigner/report.hpp"

namespace wigner {

//---------------------------------------------------------------------------//
/*!
 * Rotation of a last-step-down path so that it starts right after the first
 * traversal of its first odd edge (v, w). shift_k is the instant of that
 * traversal and level_p the trajectory level just before it, i.e. the
 * number of edges opened and not yet closed before the cut.
 */
struct CorrespondenceResult {
  ClosedPath image;
  int shift_k = 0;
  int level_p = 0;
};

/// Throws DomainError when the path has no odd edge or ends with a marked step.
CorrespondenceResult to_marked_origin(const ClosedPath& path);

/// Exact inverse. Throws DomainError if (image, shift_k, level_p) is not the
/// image of any path.
ClosedPath from_marked_origin(const CorrespondenceResult& result);

/// With T = L - shift_k: keeps x'(0..T), then appends the last shift_k steps
/// of x' reversed and negated, the first of them turned into an up step.
/// Maps the trajectory of an image path with parameters (m, l, p) into
/// T_{m-p, l+2p}. Throws DomainError unless x'(T) = l + p - 1, x' stays
/// >= l - 1 on [T, L] and ends with an up step.
Trajectory trajectory_surgery(const Trajectory& x_prime, int level_p, int shift_k);

/// First time t at which x reaches `level` and stays >= level afterwards;
/// nullopt if there is none.
std::optional<int> marker_time(const Trajectory& x, int level);

struct SurgeryPreimage {
  Trajectory x_prime;
  int shift_k = 0;
};

/// Recovers (x', shift_k) from x'' in T_{m-p, l+2p} given l and p.
SurgeryPreimage inverse_surgery(const Trajectory& x_double, int l, int level_p);

/// sum_{p=1}^{m} |T_{m-p, l+2p}| == C(2s, m-1) == C(2s, m) - |T_{m,l}|, l + 2m = 2s.
bool verify_count_identity(int m, int l);

/// Construction procedure on two closed paths of the same length L sharing an
/// edge. Output length 2L - 2. Throws DomainError when no edge is shared or
/// the lengths differ.
ClosedPath glue_paths(const ClosedPath& p1, const ClosedPath& p2);

/// #{tau in [0, L_o - window + 1] : x(s) >= x(tau) for s in [tau, tau + window - 1]}.
long k_statistic(const Trajectory& x, int window);

struct PreimageReport {
  int length = 0;
  int vertex_budget = 0;
  std::size_t correlated_pairs = 0;
  std::size_t glued_paths = 0;
  std::size_t failures = 0;
  std::size_t max_preimages = 0;
  double max_ratio = 0.0;  // max preimages / (2 L K_N)
  std::optional<std::string> counterexample;
};

/// Largest accepted L and vertex budget for the exhaustive census.
inline constexpr int kMaxGlueLength = 5;
inline constexpr int kMaxGlueVertices = 5;

/// Glues every ordered correlated pair of closed paths of length L over
/// {1..vertex_budget} and checks #preimages <= 2 L K_N(x) for every glued
/// path, window L.
PreimageReport preimage_bound_check(int length, int vertex_budget);

struct CorrespondenceCensus {
  int max_length = 0;
  int vertex_budget = 0;
  std::size_t paths = 0;
  std::size_t admissible = 0;
  std::size_t failures = 0;
  std::optional<std::string> counterexample;
};

/// Exhaustive check over every closed path of length <= max_length on
/// {1..vertex_budget} with l > 0 and a last step down: image has a marked
/// origin and a last step up, same class and edge multiset, exact round trip,
/// and the surgery lands in T_{m-p, l+2p} with the first-hitting property
/// and is inverted by inverse_surgery.
CorrespondenceCensus verify_correspondence(int max_length, int vertex_budget);

/// Uniform draw from T_{m,l}, step by step with exact reflection counts.
Trajectory sample_trajectory(PhiloxStream& rng, int m, int l);

CheckRecord to_record(const PreimageReport& report);
CheckRecord to_record(const CorrespondenceCensus& census);

}  // namespace wigner
