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

#include "binagg/evaluation.hpp"

#include <limits>
#include <string>

namespace binagg {

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : Error("search needs " + std::to_string(required) +
            " aggregator evaluations, budget is " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

std::string mask_string(Mask bits, int m) {
  std::string out(static_cast<std::size_t>(m), '0');
  for (int j = 1; j <= m; ++j) {
    if (bits & issue_bit(m, j)) out[j - 1] = '1';
  }
  return out;
}

Mask parse_mask(std::string_view text) {
  if (text.empty() || text.size() > kMaxIssues) {
    throw Error("evaluation must have 1.." + std::to_string(kMaxIssues) +
                " characters, got " + std::to_string(text.size()));
  }
  Mask bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error("evaluation '" + std::string(text) +
                  "' contains a character other than 0/1");
    }
    bits = (bits << 1) | static_cast<Mask>(c == '1');
  }
  return bits;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) out = saturating_mul(out, base);
  return out;
}

Evaluation::Evaluation(Mask bits, int size) : bits_(bits), size_(size) {
  if (size < 0 || size > kMaxIssues) {
    throw Error("evaluation length " + std::to_string(size) +
                " outside 0.." + std::to_string(kMaxIssues));
  }
  if ((bits & ~full_mask(size)) != 0) {
    throw Error("bits do not fit in " + std::to_string(size) + " issues");
  }
}

Evaluation Evaluation::parse(std::string_view text) {
  return {parse_mask(text), static_cast<int>(text.size())};
}

bool Evaluation::operator[](int issue) const {
  if (issue < 1 || issue > size_) {
    throw Error("issue " + std::to_string(issue) + " outside 1.." +
                std::to_string(size_));
  }
  return (bits_ & issue_bit(size_, issue)) != 0;
}

Evaluation Evaluation::flipped(int issue) const {
  (void)(*this)[issue];
  return {bits_ ^ issue_bit(size_, issue), size_};
}

void require_same_length(const Evaluation& a, const Evaluation& b) {
  if (a.size() != b.size()) {
    throw Error("length mismatch: " + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()));
  }
}

Profile::Profile(int issues, std::vector<Mask> rows)
    : issues_(issues), rows_(std::move(rows)) {
  if (issues < 1 || issues > kMaxIssues) {
    throw Error("profile issue count " + std::to_string(issues) +
                " outside 1.." + std::to_string(kMaxIssues));
  }
  if (rows_.empty()) throw Error("profile needs at least one voter");
  for (Mask row : rows_) {
    if ((row & ~full_mask(issues)) != 0) {
      throw Error("profile row does not fit in " + std::to_string(issues) +
                  " issues");
    }
  }
}

Profile::Profile(const std::vector<Evaluation>& rows) {
  if (rows.empty()) throw Error("profile needs at least one voter");
  issues_ = rows.front().size();
  for (const auto& r : rows) {
    require_same_length(rows.front(), r);
    rows_.push_back(r.bits());
  }
  *this = Profile(issues_, rows_);
}

Mask Profile::column(int issue) const {
  const Mask bit = issue_bit(issues_, issue);
  Mask col = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] & bit) col |= Mask{1} << i;
  }
  return col;
}

Profile Profile::with_row(int voter, Mask replacement) const {
  Profile out = *this;
  out.rows_.at(voter) = replacement;
  return out;
}

}  // namespace binagg
