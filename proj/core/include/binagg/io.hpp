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

// Line-oriented text formats.
//
//   space file:    "space explicit" then one m-character 0/1 row per line,
//                  or "space pref <k> [ab bc ca ...]", "space choose <m> <k>",
//                  "space cycle <length>", "space doctrinal".
//   profile file:  "profile <n> <m>" then n rows.
//   weights file:  one line of m positive integers.
//   tie order:     |X| rows, best first.
//
// Blank lines and lines starting with '#' are skipped. Issue 1 is the
// leftmost character.

#ifndef BINAGG_IO_HPP_
#define BINAGG_IO_HPP_

#include <istream>
#include <string>
#include <vector>

#include "binagg/evaluation.hpp"
#include "binagg/metric.hpp"
#include "binagg/space.hpp"

namespace binagg {

class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

// `source` names the input in error messages.
SpaceGenerator read_space(std::istream& in, const std::string& source);
Profile read_profile(std::istream& in, const std::string& source,
                     const EvaluationSpace& space);
WeightVector read_weights(std::istream& in, const std::string& source,
                          int issues);
TieOrder read_tie_order(std::istream& in, const std::string& source,
                        const EvaluationSpace& space);

SpaceGenerator load_space(const std::string& path);
Profile load_profile(const std::string& path, const EvaluationSpace& space);
WeightVector load_weights(const std::string& path, int issues);
TieOrder load_tie_order(const std::string& path, const EvaluationSpace& space);

}  // namespace binagg

#endif  // BINAGG_IO_HPP_
