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

// Feasible evaluation spaces X over {0,1}^m and their combinatorial geometry:
// projections, minimally infeasible partial evaluations (MIPEs), subcube
// intervals and neighbours.

#ifndef BINAGG_SPACE_HPP_
#define BINAGG_SPACE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "binagg/evaluation.hpp"

namespace binagg {

// Ordered alternative pair (p, q); bit 1 on the issue means p is preferred
// to q. Alternatives are 0-based and printed as letters a, b, c, ...
using AlternativePair = std::pair<int, int>;

namespace gen {

struct Explicit {
  int issues = 0;
  std::vector<Mask> members;
};
struct Pref {
  int alternatives = 0;
  // Empty means the canonical orientation (i, j), i < j, in lexicographic
  // pair order.
  std::vector<AlternativePair> orientation;
};
struct Choose {
  int issues = 0;
  int ones = 0;
};
// Simple cycle with `length` (even) vertices embedded in {0,1}^(length/2).
struct Cycle {
  int length = 0;
};
struct Doctrinal {};

}  // namespace gen

using SpaceGenerator =
    std::variant<gen::Explicit, gen::Pref, gen::Choose, gen::Cycle,
                 gen::Doctrinal>;

std::string describe(const SpaceGenerator& generator);

class EvaluationSpace {
 public:
  int issues() const { return issues_; }
  std::size_t size() const { return feasible_.size(); }

  // Sorted ascending, duplicate free.
  std::span<const Mask> feasible() const { return feasible_; }
  std::vector<Evaluation> feasible_evaluations() const;

  bool contains(Mask x) const;
  // Throws on length mismatch.
  bool is_feasible(const Evaluation& x) const;

  // Position of x in feasible(), if feasible.
  std::optional<std::size_t> index_of(Mask x) const;

  // True iff some feasible x has x & support == bits.
  bool partial_feasible(Mask support, Mask bits) const;
  // True iff issues 1..length, set to the high `length` bits of `prefix`
  // (i.e. prefix holds the bits already shifted into place), extend to X.
  bool prefix_feasible(Mask prefix, int length) const;

  const std::vector<std::string>& labels() const { return labels_; }
  const SpaceGenerator& provenance() const { return provenance_; }

  // Orientation for preference spaces, empty otherwise.
  const std::vector<AlternativePair>& orientation() const {
    return orientation_;
  }
  int alternatives() const { return alternatives_; }

 private:
  friend EvaluationSpace make_space(const SpaceGenerator& generator);

  int issues_ = 0;
  std::vector<Mask> feasible_;
  std::vector<bool> membership_;  // dense bitmap when issues_ <= 24
  std::vector<std::string> labels_;
  SpaceGenerator provenance_;
  std::vector<AlternativePair> orientation_;
  int alternatives_ = 0;
};

EvaluationSpace make_space(const SpaceGenerator& generator);

// Profile whose rows are all feasible in `space`; throws naming the first
// offending row otherwise.
Profile make_profile(const EvaluationSpace& space,
                     const std::vector<Evaluation>& rows);
Profile make_profile(const EvaluationSpace& space, std::vector<Mask> rows);

std::vector<AlternativePair> canonical_orientation(int alternatives);

// Strict orders <-> preference evaluations. Orders list alternatives best
// first.
Evaluation encode_order(const EvaluationSpace& pref_space,
                        const std::vector<int>& order);

class InconsistentOrder : public Error {
 public:
  InconsistentOrder(std::string message, std::vector<int> cycle)
      : Error(std::move(message)), cycle_(std::move(cycle)) {}
  // Alternatives a0 > a1 > a2 > a0 witnessing intransitivity.
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

std::vector<int> decode_order(const EvaluationSpace& pref_space,
                              const Evaluation& x);

std::string order_string(const std::vector<int>& order);  // "a>b>d>c"

// K-evaluation: values `bits` on the issue set `support` (both as m-issue
// masks, bits a subset of support).
struct PartialEvaluation {
  int issues = 0;
  Mask support = 0;
  Mask bits = 0;

  std::vector<int> support_issues() const;  // 1-based, ascending
  std::string bit_string() const;           // values on support, in order
  std::string str() const;                  // "K:{1,3} bits:01"
  bool matches(Mask x) const { return (x & support) == bits; }

  friend bool operator==(const PartialEvaluation&,
                         const PartialEvaluation&) = default;
};

// Canonical order: support size, then support as an ascending issue list
// compared lexicographically, then bits.
bool canonical_less(const PartialEvaluation& a, const PartialEvaluation& b);

struct Mipe {
  PartialEvaluation pattern;
  friend bool operator==(const Mipe&, const Mipe&) = default;
};

// Restrictions of X to K (K a non-empty issue mask), ordered by bits.
std::vector<PartialEvaluation> project(const EvaluationSpace& space, Mask K);

bool is_mipe(const EvaluationSpace& space, const PartialEvaluation& a);

// All MIPEs in canonical order. Exhaustive over the 3^m partial
// evaluations; limited to m <= 20.
std::vector<Mipe> enumerate_mipes(const EvaluationSpace& space);

// T_a: every m-bit vector agreeing with a on its support.
std::vector<Evaluation> mipe_set(const EvaluationSpace& space, const Mipe& a);

// MT(x) for infeasible x; throws for feasible x.
std::vector<Mipe> mipe_type(const EvaluationSpace& space, const Evaluation& x);
std::vector<Mipe> mipe_type(const EvaluationSpace& space,
                            std::span<const Mipe> mipes, const Evaluation& x);

// [a, b]: vectors fixed to a wherever a and b agree, ascending.
std::vector<Evaluation> interval(const Evaluation& a, const Evaluation& b);
bool is_between(const Evaluation& a, const Evaluation& c, const Evaluation& b);

constexpr bool between_masks(Mask a, Mask c, Mask b) {
  return ((c ^ a) & ~(a ^ b)) == 0;
}

// True iff [a, b] contains a feasible point.
bool interval_meets(const EvaluationSpace& space, Mask a, Mask b);

// Feasible a with (a, b) disjoint from X, for infeasible b.
std::vector<Evaluation> neighbors(const EvaluationSpace& space,
                                  const Evaluation& b);

}  // namespace binagg

#endif  // BINAGG_SPACE_HPP_
