// Copyright 2026 The binagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "binagg/metric.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <random>
#include <tuple>
#include <unordered_map>

namespace binagg {
namespace {

constexpr int kMaxTabulatedIssues = 20;
constexpr int kMaxH2AuditIssues = 14;

void require_space_length(const EvaluationSpace& space, const Evaluation& p) {
  if (p.size() != space.issues()) {
    throw Error("evaluation has " + std::to_string(p.size()) +
                " issues, space has " + std::to_string(space.issues()));
  }
}

void require_weights(const WeightVector& w, int issues) {
  if (w.size() != issues) {
    throw Error("weight vector has " + std::to_string(w.size()) +
                " entries, expected " + std::to_string(issues));
  }
}

}  // namespace

WeightVector::WeightVector(std::vector<Distance> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty() || weights_.size() > kMaxIssues) {
    throw Error("weight vector needs 1.." + std::to_string(kMaxIssues) +
                " entries");
  }
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] < 1) {
      throw Error("weight of issue " + std::to_string(j + 1) +
                  " must be a positive integer, got " +
                  std::to_string(weights_[j]));
    }
  }
  uniform_ = std::all_of(weights_.begin(), weights_.end(),
                         [](Distance w) { return w == 1; });
}

WeightVector WeightVector::uniform(int issues) {
  return WeightVector(std::vector<Distance>(static_cast<std::size_t>(issues), 1));
}

bool WeightVector::is_uniform() const { return uniform_; }

Distance WeightVector::weight_of(Mask diff) const {
  if (uniform_) return std::popcount(diff);
  const int m = size();
  Distance total = 0;
  for (Mask rest = diff; rest != 0; rest &= rest - 1) {
    const int bit = std::countr_zero(rest);
    total += weights_[static_cast<std::size_t>(m - 1 - bit)];
  }
  return total;
}

std::string WeightVector::str() const {
  std::string s;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(weights_[j]);
  }
  return s;
}

Distance weighted_hamming(const Evaluation& x, const Evaluation& y,
                          const WeightVector& weights) {
  require_same_length(x, y);
  require_weights(weights, x.size());
  return weights.distance(x.bits(), y.bits());
}

Distance hamming(const Evaluation& x, const Evaluation& y) {
  require_same_length(x, y);
  return std::popcount(x.bits() ^ y.bits());
}

TieOrder TieOrder::ascending(const EvaluationSpace& space) {
  return from_list(space, {space.feasible().begin(), space.feasible().end()})
      .renamed("ascending");
}

TieOrder TieOrder::descending(const EvaluationSpace& space) {
  std::vector<Mask> order(space.feasible().rbegin(), space.feasible().rend());
  return from_list(space, std::move(order)).renamed("descending");
}

TieOrder TieOrder::shuffled(const EvaluationSpace& space, std::uint64_t seed) {
  std::vector<Mask> order(space.feasible().begin(), space.feasible().end());
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  return from_list(space, std::move(order))
      .renamed("shuffled(seed=" + std::to_string(seed) + ")");
}

TieOrder TieOrder::from_list(const EvaluationSpace& space,
                             std::vector<Mask> best_first) {
  TieOrder t;
  t.sorted_ = best_first;
  std::sort(t.sorted_.begin(), t.sorted_.end());
  if (!std::equal(t.sorted_.begin(), t.sorted_.end(), space.feasible().begin(),
                  space.feasible().end())) {
    throw Error("tie order must list every feasible evaluation exactly once (" +
                std::to_string(space.size()) + " expected, " +
                std::to_string(best_first.size()) + " given)");
  }
  t.ranks_.resize(t.sorted_.size());
  for (std::size_t r = 0; r < best_first.size(); ++r) {
    const auto pos = std::lower_bound(t.sorted_.begin(), t.sorted_.end(),
                                      best_first[r]) -
                     t.sorted_.begin();
    t.ranks_[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(r);
  }
  t.order_ = std::move(best_first);
  t.name_ = "explicit";
  return t;
}

TieOrder TieOrder::with_preferred(const EvaluationSpace& space,
                                  const std::vector<Mask>& preferred) {
  std::vector<Mask> order = preferred;
  for (Mask x : space.feasible()) {
    if (std::find(preferred.begin(), preferred.end(), x) == preferred.end()) {
      order.push_back(x);
    }
  }
  return from_list(space, std::move(order)).renamed("preferred-first");
}

TieOrder TieOrder::renamed(std::string name) && {
  name_ = std::move(name);
  return std::move(*this);
}

std::size_t TieOrder::rank(Mask x) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  if (it == sorted_.end() || *it != x) {
    throw Error("tie order has no rank for infeasible evaluation");
  }
  return ranks_[static_cast<std::size_t>(it - sorted_.begin())];
}

std::vector<Evaluation> nn_set(const EvaluationSpace& space,
                               const Evaluation& p,
                               const WeightVector& weights) {
  require_space_length(space, p);
  require_weights(weights, space.issues());
  const int m = space.issues();
  if (space.contains(p.bits())) return {p};

  // Dijkstra outward from p. A nearest point is never reached through a
  // feasible point (weights are >= 1), so feasible nodes are not expanded.
  using Entry = std::pair<Distance, Mask>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::unordered_map<Mask, Distance> settled;
  frontier.push({0, p.bits()});
  Distance best = std::numeric_limits<Distance>::max();
  std::vector<Mask> found;
  while (!frontier.empty()) {
    const auto [d, x] = frontier.top();
    frontier.pop();
    if (d > best) break;
    if (!settled.emplace(x, d).second) continue;
    if (space.contains(x)) {
      best = d;
      found.push_back(x);
      continue;
    }
    for (int j = 1; j <= m; ++j) {
      const Mask y = x ^ issue_bit(m, j);
      if (!settled.contains(y)) frontier.push({d + weights[j], y});
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<Evaluation> out;
  for (Mask x : found) out.emplace_back(x, m);
  return out;
}

Evaluation nn_select(const EvaluationSpace& space, const Evaluation& p,
                     const WeightVector& weights, const TieOrder& ties) {
  const auto candidates = nn_set(space, p, weights);
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](const Evaluation& a, const Evaluation& b) {
                             return ties.rank(a.bits()) < ties.rank(b.bits());
                           });
}

CorrectionMap::CorrectionMap(const EvaluationSpace& space,
                             const WeightVector& weights, const TieOrder& ties)
    : issues_(space.issues()) {
  require_weights(weights, issues_);
  if (issues_ > kMaxTabulatedIssues) {
    throw Error("correction tables support at most " +
                std::to_string(kMaxTabulatedIssues) + " issues");
  }
  const std::size_t cells = std::size_t{1} << issues_;
  constexpr Distance kInf = std::numeric_limits<Distance>::max();
  constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();
  target_.assign(cells, 0);
  distance_.assign(cells, kInf);
  std::vector<std::size_t> rank(cells, kNoRank);

  // Keys (distance, rank of source) propagate along shortest paths, so each
  // cell ends with the tie-minimal nearest feasible point.
  using Entry = std::tuple<Distance, std::size_t, Mask>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  for (Mask x : space.feasible()) {
    distance_[x] = 0;
    rank[x] = ties.rank(x);
    target_[x] = x;
    frontier.push({0, rank[x], x});
  }
  while (!frontier.empty()) {
    const auto [d, r, x] = frontier.top();
    frontier.pop();
    if (d != distance_[x] || r != rank[x]) continue;
    for (int j = 1; j <= issues_; ++j) {
      const Mask y = x ^ issue_bit(issues_, j);
      const Distance nd = d + weights[j];
      if (std::tie(nd, r) < std::tie(distance_[y], rank[y])) {
        distance_[y] = nd;
        rank[y] = r;
        target_[y] = target_[x];
        frontier.push({nd, r, y});
      }
    }
  }
}

std::optional<H2Violation> check_h2(const Selector& selector,
                                    const EvaluationSpace& space,
                                    const WeightVector& weights) {
  const int m = space.issues();
  if (m > kMaxH2AuditIssues) {
    throw Error("H2 audit supports at most " +
                std::to_string(kMaxH2AuditIssues) + " issues");
  }
  struct Point {
    Mask x;
    Mask chosen;
    std::vector<Mask> nearest;  // sorted
  };
  std::vector<Point> points;
  for (Mask x = 0; x <= full_mask(m); ++x) {
    if (space.contains(x)) continue;
    Point pt{x, 0, {}};
    for (const auto& e : nn_set(space, {x, m}, weights)) {
      pt.nearest.push_back(e.bits());
    }
    const Evaluation chosen = selector({x, m});
    if (chosen.size() != m ||
        !std::binary_search(pt.nearest.begin(), pt.nearest.end(),
                            chosen.bits())) {
      throw Error("not a nearest-neighbor selector: it maps " +
                  mask_string(x, m) + " to " + chosen.str());
    }
    pt.chosen = chosen.bits();
    points.push_back(std::move(pt));
  }
  auto near = [](const Point& p, Mask y) {
    return std::binary_search(p.nearest.begin(), p.nearest.end(), y);
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      const Point& a = points[i];
      const Point& b = points[k];
      if (a.chosen != b.chosen && near(b, a.chosen) && near(a, b.chosen)) {
        return H2Violation{{a.x, m}, {b.x, m}, {a.chosen, m}, {b.chosen, m}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace binagg
