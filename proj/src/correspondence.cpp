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


#include "wigner/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "wigner/bigint.hpp"
#include "wigner/errors.hpp"

namespace wigner {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

std::vector<int> rotate_left(const ClosedPath& path, std::size_t shift) {
  const std::size_t length = path.length();
  std::vector<int> out(length + 1);
  for (std::size_t t = 0; t < length; ++t) out[t] = path.vertices[(t + shift) % length];
  out[length] = out[0];
  return out;
}

}  // namespace

CorrespondenceResult to_marked_origin(const ClosedPath& path) {
  const auto x = trajectory_of(path);
  if (x.end_level() == 0) throw DomainError("to_marked_origin: path has no odd edge");
  if (x.steps().back() != -1) throw DomainError("to_marked_origin: last step is not down");
  const auto totals = edge_totals_at_instants(path);
  std::size_t j = 1;
  while (totals[j - 1] % 2 == 0) ++j;
  CorrespondenceResult result;
  result.image = ClosedPath{rotate_left(path, j), path.ambient_n};
  result.shift_k = static_cast<int>(j % path.length());
  result.level_p = x.levels()[j - 1];
  return result;
}

ClosedPath from_marked_origin(const CorrespondenceResult& result) {
  const std::size_t length = result.image.length();
  if (result.shift_k < 0 || static_cast<std::size_t>(result.shift_k) >= length) {
    throw DomainError("from_marked_origin: shift out of range");
  }
  const std::size_t back = length - static_cast<std::size_t>(result.shift_k);
  ClosedPath source{rotate_left(result.image, back % length), result.image.ambient_n};
  CorrespondenceResult again;
  try {
    again = to_marked_origin(source);
  } catch (const DomainError&) {
    throw DomainError("from_marked_origin: inconsistent image and shift");
  }
  if (again.image != result.image || again.shift_k != result.shift_k ||
      again.level_p != result.level_p) {
    throw DomainError("from_marked_origin: inconsistent image and shift");
  }
  return source;
}

Trajectory trajectory_surgery(const Trajectory& x_prime, int level_p, int shift_k) {
  const int length = x_prime.length();
  const int l = x_prime.end_level();
  if (shift_k < 1 || shift_k >= length || level_p < 0) {
    throw DomainError("trajectory_surgery: shift or level out of range");
  }
  if (x_prime.steps().back() != 1) throw DomainError("trajectory_surgery: last step is not up");
  const int cut = length - shift_k;
  const auto x = x_prime.levels();
  if (x[static_cast<std::size_t>(cut)] != l + level_p - 1) {
    throw DomainError("trajectory_surgery: level at the cut is not l + p - 1");
  }
  for (int t = cut; t <= length; ++t) {
    if (x[static_cast<std::size_t>(t)] < l - 1) {
      throw DomainError("trajectory_surgery: tail dips below l - 1");
    }
  }
  const auto& steps = x_prime.steps();
  std::vector<int> out(steps.begin(), steps.begin() + cut);
  for (int u = 0; u < shift_k; ++u) {
    out.push_back(u == 0 ? 1 : -steps[static_cast<std::size_t>(length - 1 - u)]);
  }
  return Trajectory(std::move(out));
}

std::optional<int> marker_time(const Trajectory& x, int level) {
  const auto levels = x.levels();
  std::optional<int> found;
  int suffix_min = std::numeric_limits<int>::max();
  for (int t = x.length(); t >= 0; --t) {
    suffix_min = std::min(suffix_min, levels[static_cast<std::size_t>(t)]);
    if (suffix_min < level) break;
    if (levels[static_cast<std::size_t>(t)] == level) found = t;
  }
  return found;
}

SurgeryPreimage inverse_surgery(const Trajectory& x_double, int l, int level_p) {
  const auto hit = marker_time(x_double, l + level_p);
  if (!hit || *hit < 1) throw DomainError("inverse_surgery: no marker time");
  const int length = x_double.length();
  const int cut = *hit - 1;
  const int shift = length - cut;
  const auto& steps = x_double.steps();
  std::vector<int> out(steps.begin(), steps.begin() + cut);
  out.resize(static_cast<std::size_t>(length));
  for (int u = 0; u < shift; ++u) {
    const int tail_step = u == 0 ? -1 : steps[static_cast<std::size_t>(cut + u)];
    out[static_cast<std::size_t>(length - 1 - u)] = -tail_step;
  }
  return {Trajectory(std::move(out)), shift};
}

bool verify_count_identity(int m, int l) {
  if (m < 0 || l < 0 || (l + 2 * m) % 2 != 0) {
    throw DomainError("verify_count_identity: need m, l >= 0 and l even");
  }
  const int two_s = l + 2 * m;
  BigInt lhs = 0;
  for (int p = 1; p <= m; ++p) lhs += count_trajectories(m - p, l + 2 * p);
  return lhs == binomial(two_s, m - 1) && lhs == binomial(two_s, m) - count_trajectories(m, l);
}

ClosedPath glue_paths(const ClosedPath& p1, const ClosedPath& p2) {
  const std::size_t length = p1.length();
  if (p2.length() != length) throw DomainError("glue_paths: paths differ in length");
  const auto edges2 = unordered_edges(p2);
  const auto shared = [&edges2](int a, int b) {
    return std::binary_search(edges2.begin(), edges2.end(), ordered(a, b));
  };
  std::size_t j = 1;
  while (j <= length && !shared(p1.vertices[j - 1], p1.vertices[j])) ++j;
  if (j > length) throw DomainError("glue_paths: the paths share no edge");
  const int v = p1.vertices[j - 1];
  const int w = p1.vertices[j];

  std::size_t k = 1;
  while (ordered(p2.vertices[k - 1], p2.vertices[k]) != ordered(v, w)) ++k;
  const bool same_orientation = p2.vertices[k - 1] == v && p2.vertices[k] == w;

  std::vector<int> out(p1.vertices.begin(), p1.vertices.begin() + static_cast<std::ptrdiff_t>(j));
  out.pop_back();  // p2's walk starts at v
  for (std::size_t step = 0; step < length; ++step) {
    std::size_t position;
    if (same_orientation) {
      position = (k - 1 + length - step) % length;  // backwards from v
    } else {
      position = (k + step) % length;  // forwards from v
    }
    out.push_back(p2.vertices[position]);
  }
  out.insert(out.end(), p1.vertices.begin() + static_cast<std::ptrdiff_t>(j + 1),
             p1.vertices.end());
  return ClosedPath{std::move(out), std::max(p1.ambient_n, p2.ambient_n)};
}

long k_statistic(const Trajectory& x, int window) {
  const int total = x.length();
  if (window < 1 || window > total + 1) throw DomainError("k_statistic: window out of range");
  const auto levels = x.levels();
  long count = 0;
  for (int tau = 0; tau <= total - window + 1; ++tau) {
    const int base = levels[static_cast<std::size_t>(tau)];
    bool ok = true;
    for (int s = tau; s <= tau + window - 1 && ok; ++s) {
      ok = levels[static_cast<std::size_t>(s)] >= base;
    }
    count += ok ? 1 : 0;
  }
  return count;
}

namespace {

// Calls visit(path) for every closed path of the given length over {1..n}.
template <typename Visit>
void for_each_closed_path(int length, int n, Visit&& visit) {
  std::vector<int> vertices(static_cast<std::size_t>(length) + 1, 1);
  while (true) {
    vertices.back() = vertices.front();
    visit(ClosedPath{vertices, n});
    int position = length - 1;
    while (position >= 0 && vertices[static_cast<std::size_t>(position)] == n) {
      vertices[static_cast<std::size_t>(position)] = 1;
      --position;
    }
    if (position < 0) return;
    ++vertices[static_cast<std::size_t>(position)];
  }
}

}  // namespace

PreimageReport preimage_bound_check(int length, int vertex_budget) {
  if (length > kMaxGlueLength || vertex_budget > kMaxGlueVertices) {
    throw SizeGuardError("preimage_bound_check: L or vertex budget above the guard");
  }
  if (length < 2 || vertex_budget < 1) {
    throw DomainError("preimage_bound_check: need L >= 2 and at least one vertex");
  }
  std::vector<ClosedPath> paths;
  std::vector<std::vector<std::pair<int, int>>> edges;
  for_each_closed_path(length, vertex_budget, [&](const ClosedPath& p) {
    paths.push_back(p);
    edges.push_back(unordered_edges(p));
  });

  PreimageReport report;
  report.length = length;
  report.vertex_budget = vertex_budget;
  std::map<std::vector<int>, std::size_t> preimages;
  std::vector<std::pair<int, int>> common;
  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = 0; b < paths.size(); ++b) {
      common.clear();
      std::set_intersection(edges[a].begin(), edges[a].end(), edges[b].begin(), edges[b].end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      ++report.correlated_pairs;
      ++preimages[glue_paths(paths[a], paths[b]).vertices];
    }
  }
  report.glued_paths = preimages.size();
  for (const auto& [vertices, count] : preimages) {
    const ClosedPath glued{vertices, vertex_budget};
    const long k = k_statistic(trajectory_of(glued), length);
    const double bound = 2.0 * length * static_cast<double>(k);
    report.max_preimages = std::max(report.max_preimages, count);
    report.max_ratio = std::max(report.max_ratio, static_cast<double>(count) / bound);
    if (static_cast<double>(count) > bound) {
      ++report.failures;
      if (!report.counterexample) {
        report.counterexample = to_string(glued) + " preimages=" + std::to_string(count) +
                                " K=" + std::to_string(k);
      }
    }
  }
  return report;
}

namespace {

std::optional<std::string> check_admissible(const ClosedPath& path, const Trajectory& x) {
  const int length = x.length();
  const int l = x.end_level();
  const int m = x.m();
  const auto result = to_marked_origin(path);
  if (!origin_marked(result.image)) return "image origin unmarked";
  const auto x_prime = trajectory_of(result.image);
  if (x_prime.steps().back() != 1) return "image last step not up";
  if (x_prime.end_level() != l || x_prime.length() != length) return "class changed";
  if (unordered_edges(result.image) != unordered_edges(path)) return "edge multiset changed";
  const int min_p = origin_marked(path) ? 0 : 1;
  if (result.level_p < min_p) return "level p below its minimum";
  if (from_marked_origin(result) != path) return "round trip failed";

  const int p = result.level_p;
  const auto x_double = trajectory_surgery(x_prime, p, result.shift_k);
  if (x_double.end_level() != l + 2 * p || x_double.m() != m - p) return "surgery class wrong";
  const auto hit = marker_time(x_double, l + p);
  if (!hit || *hit != length - result.shift_k + 1) return "marker time wrong";
  const auto back = inverse_surgery(x_double, l, p);
  if (back.x_prime != x_prime || back.shift_k != result.shift_k) return "surgery not inverted";
  return std::nullopt;
}

}  // namespace

CorrespondenceCensus verify_correspondence(int max_length, int vertex_budget) {
  if (max_length > 12 || vertex_budget > 6) {
    throw SizeGuardError("verify_correspondence: census above the guard");
  }
  CorrespondenceCensus census;
  census.max_length = max_length;
  census.vertex_budget = vertex_budget;
  for (int length = 1; length <= max_length; ++length) {
    for_each_closed_path(length, vertex_budget, [&](const ClosedPath& path) {
      ++census.paths;
      const auto x = trajectory_of(path);
      if (x.end_level() == 0 || x.steps().back() != -1) return;
      ++census.admissible;
      std::optional<std::string> problem;
      try {
        problem = check_admissible(path, x);
      } catch (const DomainError& error) {
        problem = error.what();
      }
      if (problem) {
        ++census.failures;
        if (!census.counterexample) census.counterexample = to_string(path) + ": " + *problem;
      }
    });
  }
  return census;
}

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log of the number of nonnegative walks of r steps from level h to level l.
double log_walks(int h, int r, int l) {
  if ((r + l - h) % 2 != 0) return -std::numeric_limits<double>::infinity();
  const int ups = (r + l - h) / 2;
  if (ups < 0 || ups > r || h < 0) return -std::numeric_limits<double>::infinity();
  const double main = log_binomial(r, ups);
  const int reflected = ups + h + 1;
  if (reflected > r) return main;
  return main + std::log1p(-std::exp(log_binomial(r, reflected) - main));
}

}  // namespace

Trajectory sample_trajectory(PhiloxStream& rng, int m, int l) {
  if (m < 0 || l < 0) throw DomainError("sample_trajectory: m and l must be >= 0");
  const int length = l + 2 * m;
  std::vector<int> steps;
  steps.reserve(static_cast<std::size_t>(length));
  int h = 0;
  for (int r = length; r > 0; --r) {
    const double here = log_walks(h, r, l);
    const double up = log_walks(h + 1, r - 1, l);
    const double p_up = std::exp(up - here);
    const int step = rng.uniform() <= p_up ? 1 : -1;
    steps.push_back(step);
    h += step;
  }
  return Trajectory(std::move(steps));
}

CheckRecord to_record(const PreimageReport& report) {
  CheckRecord record;
  record.check = "glue_preimage_bound";
  record.params = {{"L", report.length}, {"vertices", report.vertex_budget}};
  record.pass = report.failures == 0;
  record.counterexample = report.counterexample;
  record.detail = {{"correlated_pairs", report.correlated_pairs},
                   {"glued_paths", report.glued_paths},
                   {"max_preimages", report.max_preimages},
                   {"max_ratio", report.max_ratio},
                   {"failures", report.failures}};
  return record;
}

CheckRecord to_record(const CorrespondenceCensus& census) {
  CheckRecord record;
  record.check = "marked_origin_correspondence";
  record.params = {{"max_L", census.max_length}, {"vertices", census.vertex_budget}};
  record.pass = census.failures == 0;
  record.counterexample = census.counterexample;
  record.detail = {{"paths", census.paths},
                   {"admissible", census.admissible},
                   {"failures", census.failures}};
  return record;
}

}  // namespace wigner
