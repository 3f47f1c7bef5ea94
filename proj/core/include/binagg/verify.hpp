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

// Named verification suites. Each reproduces reference outcomes or checks a
// structural result exhaustively at desk scale and reports per-check
// evidence.

#ifndef BINAGG_VERIFY_HPP_
#define BINAGG_VERIFY_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binagg/aggregate.hpp"
#include "binagg/metric.hpp"
#include "binagg/space.hpp"

namespace binagg {

struct Check {
  std::string label;
  bool passed = false;
  std::string evidence;  // outcome on success, counterexample on failure
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  std::chrono::duration<double> runtime{0};

  bool passed() const;
  std::size_t failures() const;
  // Deterministic text; runtime only when asked for.
  std::string str(bool with_runtime = false) const;
};

struct SuiteInfo {
  std::string name;
  std::vector<std::string> aliases;
  std::string summary;
};

const std::vector<SuiteInfo>& suite_catalog();
// Resolves a suite name or alias; nullopt if unknown.
std::optional<std::string> resolve_suite(std::string_view name);

// Throws Error for unknown names.
SuiteReport run_suite(std::string_view name);

// Shared batteries.
inline constexpr std::uint64_t kShuffleSeed = 0x5eed'0b1a'ce57ULL;
std::vector<TieOrder> tie_battery(const EvaluationSpace& space);
std::vector<WeightVector> weight_battery(int issues);

// Stages drawn from the monotone functions of arity `voters`, seeded.
std::vector<IiaStage> sampled_stages(int issues, int voters, int count,
                                     std::uint64_t seed);

// Lemma checks over a randomised sweep of nn-corrected deviations.
struct LemmaSweepStats {
  std::uint64_t configurations = 0;
  std::uint64_t witnesses = 0;
  std::uint64_t interval_violations = 0;
  std::uint64_t type_violations = 0;
  std::string first_violation;
};
LemmaSweepStats lemma_random_sweep(std::uint64_t configurations,
                                   std::uint64_t seed);
// Hamming witnesses of nn(majority) on pref(4), 3 voters, over the tie and
// weight batteries.
LemmaSweepStats lemma_exhaustive_four_candidates();

}  // namespace binagg

#endif  // BINAGG_VERIFY_HPP_
