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

// Internal: walks X^n in canonical order. The profile index is the base-|X|
// number whose most significant digit is row 1.

#ifndef BINAGG_SRC_PROFILE_CURSOR_HPP_
#define BINAGG_SRC_PROFILE_CURSOR_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "binagg/evaluation.hpp"

namespace binagg::detail {

class ProfileCursor {
 public:
  ProfileCursor(std::span<const Mask> feasible, int voters)
      : feasible_(feasible),
        digits_(static_cast<std::size_t>(voters), 0),
        rows_(static_cast<std::size_t>(voters), feasible.front()),
        stride_(static_cast<std::size_t>(voters), 1) {
    for (int i = voters - 2; i >= 0; --i) {
      stride_[i] = stride_[i + 1] * feasible.size();
    }
  }

  std::span<const Mask> rows() const { return rows_; }
  std::vector<Mask>& mutable_rows() { return rows_; }
  std::uint32_t digit(int voter) const { return digits_[voter]; }
  std::uint64_t index() const { return index_; }
  // Index step for moving voter i by one position in X.
  std::uint64_t stride(int voter) const { return stride_[voter]; }

  bool next() {
    for (int i = static_cast<int>(digits_.size()) - 1; i >= 0; --i) {
      if (++digits_[i] < feasible_.size()) {
        rows_[i] = feasible_[digits_[i]];
        ++index_;
        return true;
      }
      digits_[i] = 0;
      rows_[i] = feasible_.front();
    }
    return false;
  }

 private:
  std::span<const Mask> feasible_;
  std::vector<std::uint32_t> digits_;
  std::vector<Mask> rows_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t index_ = 0;
};

// |X|^n outcomes, indexed like ProfileCursor::index().
template <typename Apply>
std::vector<Mask> outcome_table(std::span<const Mask> feasible, int voters,
                                Apply&& apply) {
  std::vector<Mask> table;
  table.reserve(saturating_pow(feasible.size(), voters));
  ProfileCursor cursor(feasible, voters);
  do {
    table.push_back(apply(cursor.rows()));
  } while (cursor.next());
  return table;
}

inline constexpr std::uint64_t kMaxOutcomeTable = std::uint64_t{1} << 22;

}  // namespace binagg::detail

#endif  // BINAGG_SRC_PROFILE_CURSOR_HPP_
