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

#ifndef BINAGG_METRIC_HPP_
#define BINAGG_METRIC_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "binagg/evaluation.hpp"
#include "binagg/space.hpp"

namespace binagg {

using Distance = std::int64_t;

// Unnormalised per-issue Hamming weights, all >= 1. Distances are exact
// integers so ties compare exactly.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<Distance> weights);
  static WeightVector uniform(int issues);

  int size() const { return static_cast<int>(weights_.size()); }
  Distance operator[](int issue) const { return weights_.at(issue - 1); }
  const std::vector<Distance>& values() const { return weights_; }
  bool is_uniform() const;

  // Sum of weights over the set bits of `diff` (an m-issue mask).
  Distance weight_of(Mask diff) const;
  Distance distance(Mask a, Mask b) const { return weight_of(a ^ b); }

  std::string str() const;  // "1,1,2"

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Distance> weights_;  // issue 1 first
  bool uniform_ = true;
};

Distance weighted_hamming(const Evaluation& x, const Evaluation& y,
                          const WeightVector& weights);
Distance hamming(const Evaluation& x, const Evaluation& y);

// Total order over the feasible set of one space, best first.
class TieOrder {
 public:
  TieOrder() = default;

  static TieOrder ascending(const EvaluationSpace& space);
  static TieOrder descending(const EvaluationSpace& space);
  // Fisher-Yates over the ascending order driven by mt19937_64(seed).
  static TieOrder shuffled(const EvaluationSpace& space, std::uint64_t seed);
  // `best_first` must be a permutation of the feasible set.
  static TieOrder from_list(const EvaluationSpace& space,
                            std::vector<Mask> best_first);
  // Listed members first in the given order, the rest ascending.
  static TieOrder with_preferred(const EvaluationSpace& space,
                                 const std::vector<Mask>& preferred);

  std::size_t size() const { return order_.size(); }
  const std::vector<Mask>& best_first() const { return order_; }
  // Rank of a feasible mask (0 = best). Throws for non-members.
  std::size_t rank(Mask x) const;
  bool prefers(Mask a, Mask b) const { return rank(a) < rank(b); }

  const std::string& name() const { return name_; }

 private:
  TieOrder renamed(std::string name) &&;

  std::vector<Mask> order_;
  std::vector<Mask> sorted_;            // ascending masks
  std::vector<std::uint32_t> ranks_;    // rank of sorted_[k]
  std::string name_;
};

// argmin over X of the weighted distance to p; {p} when p is feasible.
// Best-first search outward from p over the hypercube.
std::vector<Evaluation> nn_set(const EvaluationSpace& space,
                               const Evaluation& p,
                               const WeightVector& weights);

// Tie-order-minimal element of nn_set.
Evaluation nn_select(const EvaluationSpace& space, const Evaluation& p,
                     const WeightVector& weights, const TieOrder& ties);

// nn_select tabulated over all of {0,1}^m by a multi-source shortest-path
// sweep from X with (distance, tie rank) keys. Limited to m <= 24.
class CorrectionMap {
 public:
  CorrectionMap(const EvaluationSpace& space, const WeightVector& weights,
                const TieOrder& ties);

  Mask operator()(Mask p) const { return target_[p]; }
  Distance distance(Mask p) const { return distance_[p]; }
  int issues() const { return issues_; }

 private:
  int issues_;
  std::vector<Mask> target_;
  std::vector<Distance> distance_;
};

using Selector = std::function<Evaluation(const Evaluation&)>;

// Two infeasible points sharing nearest neighbours alpha != beta but
// selecting them crosswise.
struct H2Violation {
  Evaluation a, b, alpha, beta;
};

// Audits the non-crossing tie-breaking property over every pair of
// infeasible points. Throws Error if `selector` ever returns a point that is
// not a nearest neighbour.
std::optional<H2Violation> check_h2(const Selector& selector,
                                    const EvaluationSpace& space,
                                    const WeightVector& weights);

}  // namespace binagg

#endif  // BINAGG_METRIC_HPP_
