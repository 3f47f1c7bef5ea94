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

#include "binagg/fixtures.hpp"

#include <charconv>

namespace binagg::fixtures {
namespace {

enum Alt { a, b, c, d };

std::vector<Mask> masks(std::initializer_list<const char*> rows) {
  std::vector<Mask> out;
  for (const char* r : rows) out.push_back(parse_mask(r));
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

EvaluationSpace pref3() {
  return make_space(gen::Pref{3, {{a, b}, {b, c}, {c, a}}});
}

EvaluationSpace pref4() {
  return make_space(
      gen::Pref{4, {{a, b}, {b, c}, {c, a}, {a, d}, {b, d}, {c, d}}});
}

EvaluationSpace doctrinal() { return make_space(gen::Doctrinal{}); }

EvaluationSpace classifier4() {
  std::vector<Mask> members;
  for (Mask x = 0; x < 16; ++x) {
    if (x != 0b0110 && x != 0b1001) members.push_back(x);
  }
  return make_space(gen::Explicit{4, std::move(members)});
}

EvaluationSpace cycle6() { return make_space(gen::Cycle{6}); }

EvaluationSpace choose(int m, int k) { return make_space(gen::Choose{m, k}); }

EvaluationSpace cube(int m) {
  std::vector<Mask> members;
  for (Mask x = 0; x <= full_mask(m); ++x) members.push_back(x);
  return make_space(gen::Explicit{m, std::move(members)});
}

std::vector<std::pair<std::string, EvaluationSpace>> standard_spaces() {
  return {{"pref3", pref3()},
          {"doctrinal", doctrinal()},
          {"classifier4", classifier4()},
          {"cycle6", cycle6()},
          {"choose4-2", choose(4, 2)}};
}

std::optional<EvaluationSpace> builtin_space(std::string_view alias) {
  if (alias == "pref3") return pref3();
  if (alias == "pref4") return pref4();
  if (alias == "doctrinal") return doctrinal();
  if (alias == "classifier4") return classifier4();
  if (alias == "cycle6") return cycle6();
  if (alias.starts_with("choose")) {
    const auto rest = alias.substr(6);
    const auto dash = rest.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    const auto m = to_int(rest.substr(0, dash));
    const auto k = to_int(rest.substr(dash + 1));
    if (!m || !k) return std::nullopt;
    return choose(*m, *k);
  }
  if (alias.starts_with("cube")) {
    const auto m = to_int(alias.substr(4));
    if (!m || *m < 1 || *m > 20) return std::nullopt;
    return cube(*m);
  }
  return std::nullopt;
}

std::vector<std::string> builtin_aliases() {
  return {"pref3",     "pref4",     "doctrinal", "classifier4",
          "cycle6",    "choose4-2", "chooseM-K", "cubeM"};
}

Profile four_candidate_profile() {
  const auto X = pref4();
  return make_profile(X, std::vector<Evaluation>{encode_order(X, {a, b, d, c}),
                                                 encode_order(X, {b, c, a, d}),
                                                 encode_order(X, {d, c, a, b})});
}

Profile four_candidate_deviation() {
  const auto X = pref4();
  return four_candidate_profile().with_row(1,
                                           encode_order(X, {b, c, d, a}).bits());
}

TieOrder four_candidate_ties(const EvaluationSpace& space) {
  return TieOrder::with_preferred(space,
                                  {encode_order(space, {a, b, d, c}).bits(),
                                   encode_order(space, {b, a, d, c}).bits(),
                                   encode_order(space, {c, a, b, d}).bits()});
}

EvaluationSpace welfare_separation_space() {
  return make_space(gen::Explicit{6, masks({"110000", "001000", "000111"})});
}

Profile welfare_profile_a() {
  return make_profile(welfare_separation_space(),
                      masks({"110000", "110000", "110000", "001000", "001000",
                             "000111", "000111", "000111", "000111"}));
}

Profile welfare_profile_b() {
  return make_profile(welfare_separation_space(),
                      masks({"110000", "110000", "110000", "001000", "001000",
                             "001000", "000111", "000111", "000111"}));
}

}  // namespace binagg::fixtures
