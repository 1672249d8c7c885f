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


#include "wigner/path_model.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <utility>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

using Edge = std::pair<int, int>;

Edge edge_of(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Traversal counts of unordered edges. Exhaustive enumerations run over
// tiny vertex sets, where a flat table is much faster than a map.
class EdgeCounter {
 public:
  explicit EdgeCounter(int n) : n_(n) {
    if (n <= kDenseLimit) dense_.assign(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  }

  int increment(int a, int b) {
    if (dense_.empty()) return ++sparse_[edge_of(a, b)];
    return ++dense_[index(a, b)];
  }

  int count(int a, int b) const {
    if (dense_.empty()) {
      const auto it = sparse_.find(edge_of(a, b));
      return it == sparse_.end() ? 0 : it->second;
    }
    return dense_[index(a, b)];
  }

 private:
  static constexpr int kDenseLimit = 64;

  std::size_t index(int a, int b) const {
    const auto [lo, hi] = edge_of(a, b);
    return static_cast<std::size_t>(lo * (n_ + 1) + hi);
  }

  int n_;
  std::vector<int> dense_;
  std::map<Edge, int> sparse_;
};

std::vector<int> distinct_vertices(const ClosedPath& path) {
  std::vector<int> out(path.vertices.begin(), path.vertices.end() - 1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// ClosedPath ---------------------------------------------------------------

ClosedPath ClosedPath::make(std::vector<int> vertices, int ambient_n) {
  if (vertices.size() < 2) throw DomainError("closed path needs at least one step");
  if (vertices.front() != vertices.back()) throw DomainError("path is not closed");
  for (const int v : vertices) {
    if (v < 1 || v > ambient_n) throw DomainError("vertex label out of range");
  }
  return ClosedPath{std::move(vertices), ambient_n};
}

ClosedPath ClosedPath::make(std::vector<int> vertices) {
  const int n = vertices.empty() ? 0 : *std::max_element(vertices.begin(), vertices.end());
  return make(std::move(vertices), n);
}

std::string to_string(const ClosedPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(path.vertices[i]);
  }
  return out;
}

ClosedPath parse_path(std::string_view text, int ambient_n) {
  std::vector<int> vertices;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw DomainError("bad vertex token '" + std::string(token) + "'");
    }
    vertices.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return ambient_n > 0 ? ClosedPath::make(std::move(vertices), ambient_n)
                       : ClosedPath::make(std::move(vertices));
}

std::vector<Instant> classify_instants(const ClosedPath& path) {
  EdgeCounter count(path.ambient_n);
  std::vector<Instant> out;
  out.reserve(path.length());
  for (std::size_t j = 1; j < path.vertices.size(); ++j) {
    const int c = count.increment(path.vertices[j - 1], path.vertices[j]);
    out.push_back(c % 2 == 1 ? Instant::marked : Instant::unmarked);
  }
  return out;
}

// Trajectory ---------------------------------------------------------------

Trajectory::Trajectory(std::vector<int> steps) : steps_(std::move(steps)) {
  int level = 0;
  for (const int s : steps_) {
    if (s != 1 && s != -1) throw DomainError("trajectory steps must be +1 or -1");
    level += s;
    if (level < 0) throw DomainError("trajectory goes below zero");
  }
  end_level_ = level;
}

Trajectory Trajectory::parse(std::string_view text) {
  std::vector<int> steps;
  steps.reserve(text.size());
  for (const char c : text) {
    if (c == 'U') {
      steps.push_back(1);
    } else if (c == 'D') {
      steps.push_back(-1);
    } else {
      throw DomainError("trajectory string must use U and D");
    }
  }
  return Trajectory(std::move(steps));
}

std::vector<int> Trajectory::levels() const {
  std::vector<int> x(steps_.size() + 1, 0);
  for (std::size_t t = 0; t < steps_.size(); ++t) x[t + 1] = x[t] + steps_[t];
  return x;
}

std::string Trajectory::str() const {
  std::string out;
  out.reserve(steps_.size());
  for (const int s : steps_) out += s > 0 ? 'U' : 'D';
  return out;
}

Trajectory trajectory_of(const ClosedPath& path) {
  std::vector<int> steps;
  steps.reserve(path.length());
  for (const auto instant : classify_instants(path)) {
    steps.push_back(instant == Instant::marked ? 1 : -1);
  }
  return Trajectory(std::move(steps));
}

namespace {

void extend(std::vector<int>& prefix, int level, int ups_left, int downs_left,
            std::vector<Trajectory>& out) {
  if (ups_left == 0 && downs_left == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (ups_left > 0) {
    prefix.push_back(1);
    extend(prefix, level + 1, ups_left - 1, downs_left, out);
    prefix.pop_back();
  }
  if (downs_left > 0 && level > 0) {
    prefix.push_back(-1);
    extend(prefix, level - 1, ups_left, downs_left - 1, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Trajectory> enumerate_trajectories(int m, int l) {
  if (m < 0 || l < 0) throw DomainError("enumerate_trajectories: m and l must be >= 0");
  if (l + 2 * m > kMaxEnumeratedLength) {
    throw SizeGuardError("enumerate_trajectories: l + 2m exceeds the enumeration guard");
  }
  std::vector<Trajectory> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(l + 2 * m));
  extend(prefix, 0, l + m, m, out);
  return out;
}

BigInt count_trajectories(int m, int l) {
  if (m < 0 || l < 0) return 0;
  const int length = l + 2 * m;
  return binomial(length, l + m) - binomial(length, m - 1);
}

BigInt count_trajectories_factorial(int m, int l) {
  if (m < 0 || l < 0) return 0;
  const int length = l + 2 * m;
  return factorial(length) * (l + 1) / (factorial(l + m + 1) * factorial(m));
}

StepSplit last_step_split(int m, int l) {
  if (l + 2 * m < 1) throw DomainError("last_step_split: empty trajectory");
  return {count_trajectories(m, l - 1), count_trajectories(m - 1, l + 1)};
}

// PathType -----------------------------------------------------------------

std::size_t PathType::n() const {
  std::size_t total = 0;
  for (const auto c : counts) total += c;
  return total;
}

std::size_t PathType::marked_total() const {
  std::size_t total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) total += k * counts[k];
  return total;
}

std::size_t PathType::self_intersections() const {
  std::size_t total = 0;
  for (std::size_t k = 2; k < counts.size(); ++k) total += (k - 1) * counts[k];
  return total;
}

std::size_t PathType::heavy_vertices() const {
  std::size_t total = 0;
  for (std::size_t k = 11; k < counts.size(); ++k) total += counts[k];
  return total;
}

std::size_t PathType::light_intersection_vertices() const {
  std::size_t total = 0;
  for (std::size_t k = 2; k < counts.size() && k <= 10; ++k) total += counts[k];
  return total;
}

namespace {

// Marked occurrences per vertex, indexed 1..ambient_n.
std::vector<int> marked_occurrences(const ClosedPath& path, const std::vector<Instant>& instants) {
  std::vector<int> hits(static_cast<std::size_t>(path.ambient_n) + 1, 0);
  for (std::size_t j = 1; j < path.vertices.size(); ++j) {
    if (instants[j - 1] == Instant::marked) ++hits[static_cast<std::size_t>(path.vertices[j])];
  }
  return hits;
}

}  // namespace

PathType path_type(const ClosedPath& path) {
  const auto instants = classify_instants(path);
  const auto hits = marked_occurrences(path, instants);
  const auto marked = static_cast<std::size_t>(
      std::count(instants.begin(), instants.end(), Instant::marked));
  PathType type;
  type.counts.assign(marked + 1, 0);
  for (std::size_t v = 1; v < hits.size(); ++v) ++type.counts[static_cast<std::size_t>(hits[v])];
  return type;
}

bool is_simple(const ClosedPath& path) {
  const auto instants = classify_instants(path);
  const auto hits = marked_occurrences(path, instants);
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
}

std::vector<std::size_t> marked_origin_instants(const ClosedPath& path) {
  const auto instants = classify_instants(path);
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j < path.vertices.size(); ++j) {
    if (instants[j - 1] == Instant::marked && path.vertices[j] == path.origin()) out.push_back(j);
  }
  return out;
}

bool origin_marked(const ClosedPath& path) { return !marked_origin_instants(path).empty(); }

VertexStats vertex_stats(const ClosedPath& path) {
  const auto instants = classify_instants(path);
  const auto hits = marked_occurrences(path, instants);
  const auto n = static_cast<std::size_t>(path.ambient_n);
  VertexStats stats;
  for (std::size_t v = 1; v <= n; ++v) stats.max_type = std::max(stats.max_type, hits[v]);

  std::vector<int> out_degree(n + 1, 0);
  std::vector<bool> nonclosed(n + 1, false);
  const auto support = distinct_vertices(path);
  EdgeCounter count(path.ambient_n);
  for (std::size_t j = 1; j < path.vertices.size(); ++j) {
    const int from = path.vertices[j - 1];
    const int to = path.vertices[j];
    if (instants[j - 1] == Instant::marked) {
      ++out_degree[static_cast<std::size_t>(from)];
    } else if (hits[static_cast<std::size_t>(from)] >= 2) {
      int open = 0;
      for (const int u : support) open += count.count(from, u) % 2;
      if (open > 1) nonclosed[static_cast<std::size_t>(from)] = true;
    }
    count.increment(from, to);
  }
  for (std::size_t v = 1; v <= n; ++v) {
    stats.max_marked_out_degree = std::max(stats.max_marked_out_degree, out_degree[v]);
    if (nonclosed[v]) stats.nonclosed.push_back(static_cast<int>(v));
  }
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = a; b < support.size(); ++b) {
      stats.odd_edge_count += count.count(support[a], support[b]) % 2;
    }
  }
  return stats;
}

std::vector<std::pair<int, int>> unordered_edges(const ClosedPath& path) {
  std::vector<std::pair<int, int>> out;
  out.reserve(path.length());
  for (std::size_t j = 1; j < path.vertices.size(); ++j) {
    out.push_back(edge_of(path.vertices[j - 1], path.vertices[j]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> edge_totals_at_instants(const ClosedPath& path) {
  EdgeCounter count(path.ambient_n);
  for (std::size_t j = 1; j < path.vertices.size(); ++j) {
    count.increment(path.vertices[j - 1], path.vertices[j]);
  }
  std::vector<int> out;
  out.reserve(path.length());
  for (std::size_t j = 1; j < path.vertices.size(); ++j) {
    out.push_back(count.count(path.vertices[j - 1], path.vertices[j]));
  }
  return out;
}

ClosedPath random_closed_path(PhiloxStream& rng, std::size_t length, int n) {
  if (length < 1 || n < 1) throw DomainError("random_closed_path: length and n must be >= 1");
  std::vector<int> vertices(length + 1);
  const auto bound = static_cast<std::uint32_t>(n);
  while (true) {
    for (auto& v : vertices) v = static_cast<int>(rng.below(bound)) + 1;
    if (vertices.back() == vertices.front()) return ClosedPath{vertices, n};
  }
}

}  // namespace wigner
