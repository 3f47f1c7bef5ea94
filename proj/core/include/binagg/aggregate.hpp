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

// Aggregators f : X^n -> X. Issue-wise monotone stages (quota rules and
// arbitrary monotone boolean functions per issue), plurality, dictators,
// partition aggregators, nearest-neighbour corrections of stages and the
// Hamming social-welfare maximiser, plus exhaustive structural checks.

#ifndef BINAGG_AGGREGATE_HPP_
#define BINAGG_AGGREGATE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "binagg/evaluation.hpp"
#include "binagg/metric.hpp"
#include "binagg/space.hpp"

namespace binagg {

// g : {0,1}^n -> {0,1}, monotone. The argument is a column mask with voter i
// at bit i.
class MonotoneFunction {
 public:
  MonotoneFunction() = default;

  // [count of ones >= threshold], threshold in 1..n+1 (n+1 is constant 0).
  static MonotoneFunction quota(int voters, int threshold);
  // Throws Error if the table is not monotone.
  static MonotoneFunction from_table(int voters, std::vector<bool> table);
  // Every monotone function of the given arity (20 for three voters),
  // ordered by truth table read as a binary number. Arity <= 4.
  static std::vector<MonotoneFunction> enumerate_all(int voters);

  int voters() const { return voters_; }
  bool operator()(Mask column) const {
    return threshold_ >= 0 ? popcount(column) >= threshold_
                           : table_[column] != 0;
  }
  // Symmetric monotone functions are exactly the quotas.
  bool is_symmetric() const { return threshold_ >= 0; }
  std::optional<int> threshold() const;
  // Truth table, column 0 first; "quota:t/n" past the table limit.
  std::string str() const;

  friend bool operator==(const MonotoneFunction&,
                         const MonotoneFunction&) = default;

 private:
  int voters_ = 0;
  int threshold_ = -1;  // quota threshold, -1 if not symmetric
  std::vector<std::uint8_t> table_;  // empty above kMaxTableVoters
};

// One monotone function per issue: an IIA and monotone map X^n -> {0,1}^m.
class IiaStage {
 public:
  IiaStage() = default;
  explicit IiaStage(std::vector<MonotoneFunction> per_issue);

  static IiaStage majority(int issues, int voters);
  static IiaStage quota(const std::vector<int>& thresholds, int voters);
  static IiaStage unanimity(int issues, int voters);

  int issues() const { return static_cast<int>(per_issue_.size()); }
  int voters() const { return voters_; }
  const MonotoneFunction& issue(int j) const { return per_issue_.at(j - 1); }
  bool anonymous() const;
  // "majority", "quota:2,3,2" or the per-issue truth tables.
  std::string str() const;

  Mask apply(std::span<const Mask> rows) const;

 private:
  std::vector<MonotoneFunction> per_issue_;
  int voters_ = 0;
};

// Majority threshold ceil((n+1)/2).
int majority_threshold(int voters);

Evaluation stage_apply(const IiaStage& stage, const Profile& profile);

// Most frequent row; ties go to the best of the tied rows under `ties`.
Evaluation plurality(const EvaluationSpace& space, const Profile& profile,
                     const TieOrder& ties);

// Issue blocks K_1..K_r (1-based issue numbers), r <= n; voter i owns K_i.
struct Partition {
  std::vector<std::vector<int>> blocks;
  // Throws unless the blocks are disjoint and cover 1..m.
  void validate(int issues, int voters) const;
  std::vector<int> owners(int issues) const;  // owner voter (0-based) per issue
  std::string str() const;                    // "1,2;3"
};

Evaluation partition_apply(const EvaluationSpace& space,
                           const Partition& partition, const Profile& profile);

// Weighted Hamming social-welfare maximiser: the tie-minimal argmin over X
// of the total distance to all rows.
Evaluation swm(const EvaluationSpace& space, const WeightVector& weights,
               const TieOrder& ties, const Profile& profile);

// Argmin over all of {0,1}^m of the total distance (issue-wise majority, ties
// resolved as the majority stage does).
Evaluation unrestricted_minimizer(const Profile& profile);

// Top-k by column sums on a choose(m, k) space; ties by position in
// `candidate_order` (1-based issues, best first; empty = index order).
Evaluation swm_topk(const EvaluationSpace& space, const Profile& profile,
                    const std::vector<int>& candidate_order = {});

// The tie order over choose(m, k) under which swm reproduces swm_topk.
TieOrder induced_topk_order(const EvaluationSpace& space,
                            const std::vector<int>& candidate_order = {});

namespace rule {

struct Dictator {
  int voter = 0;  // 0-based
};
struct Majority {};
struct Quota {
  std::vector<int> thresholds;
};
struct Stage {
  IiaStage stage;
};
using StageSpec = std::variant<Majority, Quota, Stage>;

struct Plurality {};
struct PartitionRule {
  Partition partition;
};
struct NnCorrected {
  StageSpec stage;
};
struct Swm {};

}  // namespace rule

using RuleSpec =
    std::variant<rule::Dictator, rule::Majority, rule::Quota, rule::Stage,
                 rule::Plurality, rule::PartitionRule, rule::NnCorrected,
                 rule::Swm>;

struct AggregatorSpec {
  RuleSpec rule;
  std::optional<WeightVector> weights;       // default uniform
  std::optional<std::vector<Mask>> ties;     // best first; default per rule

  std::string str() const;
};

// Grammar: dictator:<i> | majority | quota:<t1,...,tm> | plurality |
// partition:<K1;K2;...> | nn(majority) | nn(quota:...) | swm
AggregatorSpec parse_aggregator_spec(std::string_view text);

// Inclusion chain of corrected families, strongest membership reported.
enum class Family { kNone, kM, kF, kG, kH, kH2, kH1 };
std::string_view family_name(Family family);

// A bound aggregator: pure, cheap to copy, safe to share across threads.
class Aggregator {
 public:
  using Fn = std::function<Mask(std::span<const Mask>)>;

  static Aggregator bind(const EvaluationSpace& space,
                         const AggregatorSpec& spec, int voters);
  static Aggregator nn_corrected(const EvaluationSpace& space,
                                 const IiaStage& stage,
                                 const WeightVector& weights,
                                 const TieOrder& ties);
  static Aggregator from_function(std::string name, int issues, int voters,
                                  Fn fn);

  Mask apply(std::span<const Mask> rows) const { return impl_->apply(rows); }
  Evaluation operator()(const Profile& profile) const;

  // The IIA stage output m(x) for nn-corrected aggregators.
  bool has_stage() const { return impl_->has_stage(); }
  Mask stage_apply(std::span<const Mask> rows) const {
    return impl_->stage(rows);
  }

  const std::string& name() const { return impl_->name; }
  int issues() const { return impl_->issues; }
  int voters() const { return impl_->voters; }
  Family family() const { return impl_->family; }
  // False only for bare stages, whose output may be infeasible.
  bool consistent() const { return impl_->consistent; }

  struct Impl {
    std::string name;
    int issues = 0;
    int voters = 0;
    Family family = Family::kNone;
    bool consistent = true;
    virtual ~Impl() = default;
    virtual Mask apply(std::span<const Mask> rows) const = 0;
    virtual bool has_stage() const { return false; }
    virtual Mask stage(std::span<const Mask> rows) const;
  };

 private:
  explicit Aggregator(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

enum class StructuralProperty { kIia, kMonotone, kAnonymous, kDictatorial };
std::string_view property_name(StructuralProperty property);
StructuralProperty parse_property(std::string_view text);

struct StructuralVerdict {
  bool holds = false;
  // Counterexample profiles (a pair for iia/monotone/anonymous, one profile
  // per voter for a failed dictatorship check).
  std::vector<Profile> witness;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Exhaustive over X^n in canonical order (row 1 most significant, rows by
// ascending mask). Throws BudgetExceeded when |X|^n exceeds the budget.
StructuralVerdict check_structural(const EvaluationSpace& space,
                                   const Aggregator& aggregator,
                                   StructuralProperty property,
                                   std::uint64_t budget = kDefaultBudget);

}  // namespace binagg

#endif  // BINAGG_AGGREGATE_HPP_
