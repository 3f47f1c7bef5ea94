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

// Built-in spaces and the reference profiles used by the verification suites
// and the CLI aliases.

#ifndef BINAGG_FIXTURES_HPP_
#define BINAGG_FIXTURES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binagg/evaluation.hpp"
#include "binagg/metric.hpp"
#include "binagg/space.hpp"

namespace binagg::fixtures {

// Three alternatives, issues a>b, b>c, c>a.
EvaluationSpace pref3();
// Four alternatives, issues a>b, b>c, c>a, a>d, b>d, c>d.
EvaluationSpace pref4();
// r = p AND q.
EvaluationSpace doctrinal();
// Linear classifiers of the four unit-square corners: {0,1}^4 minus
// {0110, 1001}.
EvaluationSpace classifier4();
EvaluationSpace cycle6();
EvaluationSpace choose(int m, int k);
// The whole cube; every issue-wise rule is consistent on it.
EvaluationSpace cube(int m);

// pref3, doctrinal, classifier4, cycle6, choose(4,2).
std::vector<std::pair<std::string, EvaluationSpace>> standard_spaces();

// Built-in aliases: pref3, pref4, doctrinal, classifier4, cycle6, choose4-2
// (and chooseM-K generally), cubeM.
std::optional<EvaluationSpace> builtin_space(std::string_view alias);
std::vector<std::string> builtin_aliases();

// Four-candidate reference profile: judges a>b>d>c, b>c>a>d, d>c>a>b.
Profile four_candidate_profile();
// Same with judge 2 reporting b>c>d>a.
Profile four_candidate_deviation();
// Tie order ranking a>b>d>c, then b>a>d>c, then c>a>b>d ahead of the
// rest (ascending).
TieOrder four_candidate_ties(const EvaluationSpace& pref4_space);

// X = {110000, 001000, 000111}.
EvaluationSpace welfare_separation_space();
// 3 x 110000, 2 x 001000, 4 x 000111.
Profile welfare_profile_a();
// 3 of each.
Profile welfare_profile_b();

}  // namespace binagg::fixtures

#endif  // BINAGG_FIXTURES_HPP_
