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

#include "binagg/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace binagg {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> words;
};

// Non-blank, non-comment lines split on whitespace.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream words(text);
    Line line{number, {}};
    for (std::string w; words >> w;) line.words.push_back(w);
    if (line.words.empty() || line.words.front().starts_with('#')) continue;
    out.push_back(std::move(line));
  }
  return out;
}

long long to_number(const std::string& source, const Line& line,
                    const std::string& word, const std::string& what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || p != word.data() + word.size()) {
    throw ParseError(source, line.number,
                     "expected an integer for " + what + ", got '" + word +
                         "'");
  }
  return v;
}

Mask to_row(const std::string& source, const Line& line, int issues) {
  if (line.words.size() != 1) {
    throw ParseError(source, line.number,
                     "expected one 0/1 string per line");
  }
  const std::string& w = line.words.front();
  if (static_cast<int>(w.size()) != issues) {
    throw ParseError(source, line.number,
                     "row '" + w + "' has " + std::to_string(w.size()) +
                         " characters, expected " + std::to_string(issues));
  }
  try {
    return parse_mask(w);
  } catch (const Error& e) {
    throw ParseError(source, line.number, e.what());
  }
}

void expect_words(const std::string& source, const Line& line,
                  std::size_t count, const std::string& form) {
  if (line.words.size() != count) {
    throw ParseError(source, line.number, "expected '" + form + "'");
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line,
                       const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what),
      source_(source),
      line_(line) {}

SpaceGenerator read_space(std::istream& in, const std::string& source) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(source, 1, "empty space file");
  const Line& head = lines.front();
  if (head.words.front() != "space" || head.words.size() < 2) {
    throw ParseError(source, head.number,
                     "first line must be 'space <generator>'");
  }
  const std::string& kind = head.words[1];
  auto number = [&](std::size_t k, const std::string& what) {
    const long long v = to_number(source, head, head.words[k], what);
    if (v < 0 || v > 1000) {
      throw ParseError(source, head.number, what + " out of range");
    }
    return static_cast<int>(v);
  };

  if (kind == "explicit") {
    expect_words(source, head, 2, "space explicit");
    if (lines.size() < 2) {
      throw ParseError(source, head.number, "explicit space has no members");
    }
    const int m = static_cast<int>(lines[1].words.front().size());
    if (m < 1 || m > kMaxIssues) {
      throw ParseError(source, lines[1].number,
                       "rows need 1.." + std::to_string(kMaxIssues) +
                           " characters");
    }
    gen::Explicit g{m, {}};
    for (std::size_t k = 1; k < lines.size(); ++k) {
      g.members.push_back(to_row(source, lines[k], m));
    }
    return g;
  }
  if (lines.size() > 1) {
    throw ParseError(source, lines[1].number,
                     "only explicit spaces list members");
  }
  if (kind == "pref") {
    if (head.words.size() < 3) {
      throw ParseError(source, head.number, "expected 'space pref <k> [pairs]'");
    }
    gen::Pref g{number(2, "alternative count"), {}};
    for (std::size_t k = 3; k < head.words.size(); ++k) {
      const std::string& pair = head.words[k];
      if (pair.size() != 2 || pair[0] < 'a' || pair[0] > 'z' ||
          pair[1] < 'a' || pair[1] > 'z') {
        throw ParseError(source, head.number,
                         "orientation pair '" + pair +
                             "' must be two letters such as ab");
      }
      g.orientation.emplace_back(pair[0] - 'a', pair[1] - 'a');
    }
    return g;
  }
  if (kind == "choose") {
    expect_words(source, head, 4, "space choose <m> <k>");
    return gen::Choose{number(2, "issue count"), number(3, "ones")};
  }
  if (kind == "cycle") {
    expect_words(source, head, 3, "space cycle <length>");
    return gen::Cycle{number(2, "cycle length")};
  }
  if (kind == "doctrinal") {
    expect_words(source, head, 2, "space doctrinal");
    return gen::Doctrinal{};
  }
  throw ParseError(source, head.number,
                   "unknown generator '" + kind +
                       "'; expected explicit, pref, choose, cycle or doctrinal");
}

Profile read_profile(std::istream& in, const std::string& source,
                     const EvaluationSpace& space) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(source, 1, "empty profile file");
  const Line& head = lines.front();
  if (head.words.size() != 3 || head.words[0] != "profile") {
    throw ParseError(source, head.number, "first line must be 'profile <n> <m>'");
  }
  const long long n = to_number(source, head, head.words[1], "voter count");
  const long long m = to_number(source, head, head.words[2], "issue count");
  if (n < 1 || n > 64) {
    throw ParseError(source, head.number, "voter count must lie in 1..64");
  }
  if (m != space.issues()) {
    throw ParseError(source, head.number,
                     "profile has " + std::to_string(m) +
                         " issues, space has " +
                         std::to_string(space.issues()));
  }
  if (static_cast<long long>(lines.size()) - 1 != n) {
    throw ParseError(source, head.number,
                     "header announces " + std::to_string(n) + " rows, found " +
                         std::to_string(lines.size() - 1));
  }
  std::vector<Mask> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Mask row = to_row(source, lines[k], space.issues());
    if (!space.contains(row)) {
      throw ParseError(source, lines[k].number,
                       "row " + mask_string(row, space.issues()) +
                           " is not feasible in the space");
    }
    rows.push_back(row);
  }
  return Profile(space.issues(), std::move(rows));
}

WeightVector read_weights(std::istream& in, const std::string& source,
                          int issues) {
  const auto lines = read_lines(in);
  if (lines.size() != 1) {
    throw ParseError(source, lines.empty() ? 1 : lines[1].number,
                     "weights file must hold exactly one line");
  }
  const Line& line = lines.front();
  if (static_cast<int>(line.words.size()) != issues) {
    throw ParseError(source, line.number,
                     "expected " + std::to_string(issues) + " weights, got " +
                         std::to_string(line.words.size()));
  }
  std::vector<Distance> w;
  for (const auto& word : line.words) {
    const long long v = to_number(source, line, word, "weight");
    if (v < 1) {
      throw ParseError(source, line.number,
                       "weights must be positive integers, got " + word);
    }
    w.push_back(v);
  }
  return WeightVector(std::move(w));
}

TieOrder read_tie_order(std::istream& in, const std::string& source,
                        const EvaluationSpace& space) {
  const auto lines = read_lines(in);
  std::vector<Mask> order;
  for (const auto& line : lines) {
    const Mask row = to_row(source, line, space.issues());
    if (!space.contains(row)) {
      throw ParseError(source, line.number,
                       "row " + mask_string(row, space.issues()) +
                           " is not feasible in the space");
    }
    order.push_back(row);
  }
  try {
    return TieOrder::from_list(space, std::move(order));
  } catch (const Error& e) {
    throw ParseError(source, lines.empty() ? 1 : lines.back().number,
                     e.what());
  }
}

SpaceGenerator load_space(const std::string& path) {
  auto in = open(path);
  return read_space(in, path);
}

Profile load_profile(const std::string& path, const EvaluationSpace& space) {
  auto in = open(path);
  return read_profile(in, path, space);
}

WeightVector load_weights(const std::string& path, int issues) {
  auto in = open(path);
  return read_weights(in, path, issues);
}

TieOrder load_tie_order(const std::string& path, const EvaluationSpace& space) {
  auto in = open(path);
  return read_tie_order(in, path, space);
}

}  // namespace binagg
