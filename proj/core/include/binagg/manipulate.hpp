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

#ifndef BINAGG_MANIPULATE_HPP_
#define BINAGG_MANIPULATE_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binagg/aggregate.hpp"
#include "binagg/evaluation.hpp"
#include "binagg/metric.hpp"
#include "binagg/space.hpp"

namespace binagg {

// How w compares to z on one issue from the standpoint of the truthful x^i.
enum class IssueRelation { kPreferableW, kPreferableZ, kIndifferent };

IssueRelation issue_relation(const Evaluation& truth, const Evaluation& z,
                             const Evaluation& w, int issue);
char relation_symbol(IssueRelation relation);  // '+', '-', '='

struct DeviationFlags {
  bool partial = false;
  bool full = false;
  bool hamming = false;
  friend bool operator==(const DeviationFlags&,
                         const DeviationFlags&) = default;
};

DeviationFlags classify_deviation(const Evaluation& truth, const Evaluation& z,
                                  const Evaluation& w,
                                  const WeightVector& weights);

class ManipulationKind {
 public:
  enum class Type { kPartial, kFull, kHamming };

  static ManipulationKind partial() { return ManipulationKind(Type::kPartial); }
  static ManipulationKind full() { return ManipulationKind(Type::kFull); }
  static ManipulationKind hamming(WeightVector weights);
  static ManipulationKind parse(std::string_view text, WeightVector weights);

  Type type() const { return type_; }
  const WeightVector& weights() const { return weights_; }
  std::string str() const;  // "partial", "full", "hamming(1,1,2)"

  // Does moving the outcome from z to w benefit the voter holding `truth`?
  bool holds(Mask truth, Mask z, Mask w) const;

 private:
  explicit ManipulationKind(Type type) : type_(type) {}
  Type type_;
  WeightVector weights_;
};

struct ManipulationWitness {
  Profile profile;
  int voter = 0;  // 0-based
  Evaluation lie;
  Evaluation truthful_outcome;  // z = f(x^i, x^-i)
  Evaluation lied_outcome;      // w = f(y, x^-i)
  ManipulationKind kind = ManipulationKind::partial();

  Evaluation truth() const { return profile.row(voter); }
  std::string relation_string() const;
};

// Text report: rows, voter, lie, outcomes, relation string, distances.
std::string format_witness(const ManipulationWitness& witness);

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;
};

// |X|^n * n * |X|, saturating.
std::uint64_t search_size(const EvaluationSpace& space, int voters);

// Scans profiles in canonical order, voters ascending, lies ascending, and
// returns the first witness; nullopt means the aggregator is free of this
// kind of manipulation at (space, n).
std::optional<ManipulationWitness> find_witness(
    const EvaluationSpace& space, const Aggregator& aggregator,
    const ManipulationKind& kind, const SearchOptions& options = {});

// Visits witnesses in the same order until the visitor returns false.
// Returns the number visited.
std::uint64_t for_each_witness(
    const EvaluationSpace& space, const Aggregator& aggregator,
    const ManipulationKind& kind,
    const std::function<bool(const ManipulationWitness&)>& visit,
    const SearchOptions& options = {});

struct Certificate {
  bool free = false;
  std::optional<ManipulationWitness> witness;
};

Certificate certify(const EvaluationSpace& space, const Aggregator& aggregator,
                    const ManipulationKind& kind,
                    const SearchOptions& options = {});

// Hamming certification for each weight vector in turn; stops at the first
// manipulable one.
struct SweepResult {
  bool free = true;
  std::optional<WeightVector> failing_weights;
  std::optional<ManipulationWitness> witness;
};
SweepResult certify_hamming_sweep(
    const EvaluationSpace& space,
    const std::function<Aggregator(const WeightVector&)>& make_aggregator,
    const std::vector<WeightVector>& weight_battery,
    const SearchOptions& options = {});

// Issues split by (x^i, m(x), m(y)) into rows t = 1..3 and by
// (x^i, f(x), f(y)) into columns k = 1..4:
//   t=1: x^i = m(x) = m(y)   t=2: x^i = m(x) != m(y)   t=3: x^i != m(x) = m(y)
//   k=1: x^i = f(x) = f(y)   k=2: x^i = f(x) != f(y)
//   k=3: x^i = f(y) != f(x)  k=4: x^i != f(x) = f(y)
struct IssuePartition {
  int issues = 0;
  std::array<std::array<Mask, 4>, 3> sets{};

  Mask block(int t, int k) const { return sets.at(t - 1).at(k - 1); }
  Mask row(int t) const;
  std::string str() const;
};

// Throws unless m(x) lies between x^i and m(y).
IssuePartition issue_partition(const ManipulationWitness& witness,
                               const Evaluation& stage_truthful,
                               const Evaluation& stage_lied);
// Computes the stage outputs itself; throws for aggregators without a stage.
IssuePartition issue_partition(const Aggregator& aggregator,
                               const ManipulationWitness& witness);

}  // namespace binagg

#endif  // BINAGG_MANIPULATE_HPP_
