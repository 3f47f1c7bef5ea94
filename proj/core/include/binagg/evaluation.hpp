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

#ifndef BINAGG_EVALUATION_HPP_
#define BINAGG_EVALUATION_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace binagg {

// Bit vectors over m <= 64 issues. Issue 1 is the most significant of the m
// low bits, so numeric order on masks equals lexicographic order on the
// printed 0/1 strings.
using Mask = std::uint64_t;

inline constexpr int kMaxIssues = 64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by exhaustive searches whose size exceeds the caller's budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

constexpr Mask full_mask(int m) {
  return m >= 64 ? ~Mask{0} : (Mask{1} << m) - 1;
}

// Bit of issue `issue` (1-based) in an m-issue mask.
constexpr Mask issue_bit(int m, int issue) {
  return Mask{1} << (m - issue);
}

inline int popcount(Mask x) { return std::popcount(x); }

std::string mask_string(Mask bits, int m);
Mask parse_mask(std::string_view text);  // throws Error on non-0/1 chars

// Saturating product used for search-size bounds.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, int exponent);

class Evaluation {
 public:
  Evaluation() = default;
  Evaluation(Mask bits, int size);

  static Evaluation parse(std::string_view text);

  int size() const { return size_; }
  Mask bits() const { return bits_; }

  // 1-based issue access.
  bool operator[](int issue) const;
  Evaluation flipped(int issue) const;

  std::string str() const { return mask_string(bits_, size_); }

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
  friend std::strong_ordering operator<=>(const Evaluation& a,
                                          const Evaluation& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  Mask bits_ = 0;
  int size_ = 0;
};

// Throws Error naming both lengths when they differ.
void require_same_length(const Evaluation& a, const Evaluation& b);

// n rows over m issues. Row feasibility is checked by the space-aware
// factory in space.hpp; this type only enforces shape.
class Profile {
 public:
  Profile() = default;
  Profile(int issues, std::vector<Mask> rows);
  explicit Profile(const std::vector<Evaluation>& rows);

  int issues() const { return issues_; }
  int voters() const { return static_cast<int>(rows_.size()); }
  std::span<const Mask> rows() const { return rows_; }
  Evaluation row(int voter) const { return {rows_.at(voter), issues_}; }

  // Column of issue j as an n-bit mask, voter i at bit i.
  Mask column(int issue) const;

  Profile with_row(int voter, Mask replacement) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  int issues_ = 0;
  std::vector<Mask> rows_;
};

}  // namespace binagg

#endif  // BINAGG_EVALUATION_HPP_
