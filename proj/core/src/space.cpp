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

#include "binagg/space.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

namespace binagg {
namespace {

constexpr int kDenseMembershipIssues = 24;
constexpr int kMaxPrefAlternatives = 8;
constexpr int kMaxMipeIssues = 16;
constexpr std::size_t kMaxGeneratedMembers = std::size_t{1} << 24;

char alternative_letter(int a) { return static_cast<char>('a' + a); }

std::string pair_label(const AlternativePair& p) {
  return std::string{alternative_letter(p.first), '>',
                     alternative_letter(p.second)};
}

std::vector<std::string> numbered_labels(const std::string& prefix, int m) {
  std::vector<std::string> out;
  for (int j = 1; j <= m; ++j) out.push_back(prefix + std::to_string(j));
  return out;
}

void check_issue_count(int m) {
  if (m < 1 || m > kMaxIssues) {
    throw Error("issue count " + std::to_string(m) + " outside 1.." +
                std::to_string(kMaxIssues));
  }
}

void validate_orientation(int k, const std::vector<AlternativePair>& pairs) {
  const std::size_t expected = static_cast<std::size_t>(k * (k - 1) / 2);
  if (pairs.size() != expected) {
    throw Error("orientation for " + std::to_string(k) + " alternatives needs " +
                std::to_string(expected) + " pairs, got " +
                std::to_string(pairs.size()));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [p, q] : pairs) {
    if (p < 0 || q < 0 || p >= k || q >= k || p == q) {
      throw Error("orientation pair (" + std::to_string(p) + "," +
                  std::to_string(q) + ") is not a pair of distinct alternatives");
    }
    if (!seen.insert({std::min(p, q), std::max(p, q)}).second) {
      throw Error("orientation repeats the pair " + pair_label({p, q}));
    }
  }
}

// beats[p][q] = index (0-based) of the issue comparing p and q, and whether
// bit 1 on it means p > q.
struct PairIndex {
  std::vector<std::vector<int>> issue;
  std::vector<std::vector<bool>> forward;
};

PairIndex index_pairs(int k, const std::vector<AlternativePair>& pairs) {
  PairIndex idx{std::vector<std::vector<int>>(k, std::vector<int>(k, -1)),
                std::vector<std::vector<bool>>(k, std::vector<bool>(k))};
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto [p, q] = pairs[j];
    idx.issue[p][q] = idx.issue[q][p] = static_cast<int>(j);
    idx.forward[p][q] = true;
    idx.forward[q][p] = false;
  }
  return idx;
}

bool prefers(const PairIndex& idx, int m, Mask x, int p, int q) {
  const int j = idx.issue[p][q];
  const bool bit = (x & issue_bit(m, j + 1)) != 0;
  return idx.forward[p][q] ? bit : !bit;
}

Mask encode_with(const PairIndex& idx, int m, const std::vector<int>& order) {
  std::vector<int> position(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) position[order[r]] = r;
  Mask x = 0;
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t q = 0; q < order.size(); ++q) {
      if (p == q) continue;
      const int j = idx.issue[p][q];
      if (idx.forward[p][q] && position[p] < position[q]) {
        x |= issue_bit(m, j + 1);
      }
    }
  }
  return x;
}

template <typename F>
void for_each_submask(Mask set, F&& f) {
  // Ascending numeric order.
  Mask s = 0;
  while (true) {
    f(s);
    if (s == set) break;
    s = (s - set) & set;
  }
}

}  // namespace

std::string describe(const SpaceGenerator& generator) {
  struct Visitor {
    std::string operator()(const gen::Explicit& g) const {
      return "explicit(m=" + std::to_string(g.issues) + ")";
    }
    std::string operator()(const gen::Pref& g) const {
      std::string s = "pref(" + std::to_string(g.alternatives);
      if (!g.orientation.empty()) {
        s += ";";
        for (const auto& [p, q] : g.orientation) {
          s += ' ';
          s += alternative_letter(p);
          s += alternative_letter(q);
        }
      }
      return s + ")";
    }
    std::string operator()(const gen::Choose& g) const {
      return "choose(" + std::to_string(g.issues) + "," +
             std::to_string(g.ones) + ")";
    }
    std::string operator()(const gen::Cycle& g) const {
      return "cycle(" + std::to_string(g.length) + ")";
    }
    std::string operator()(const gen::Doctrinal&) const { return "doctrinal"; }
  };
  return std::visit(Visitor{}, generator);
}

std::vector<AlternativePair> canonical_orientation(int alternatives) {
  std::vector<AlternativePair> out;
  for (int p = 0; p < alternatives; ++p) {
    for (int q = p + 1; q < alternatives; ++q) out.emplace_back(p, q);
  }
  return out;
}

EvaluationSpace make_space(const SpaceGenerator& generator) {
  EvaluationSpace s;
  s.provenance_ = generator;

  if (const auto* g = std::get_if<gen::Explicit>(&generator)) {
    check_issue_count(g->issues);
    if (g->members.empty()) throw Error("explicit space has no members");
    for (Mask x : g->members) {
      if ((x & ~full_mask(g->issues)) != 0) {
        throw Error("explicit member does not fit in " +
                    std::to_string(g->issues) + " issues");
      }
    }
    s.issues_ = g->issues;
    s.feasible_ = g->members;
    s.labels_ = numbered_labels("x", g->issues);
  } else if (const auto* g = std::get_if<gen::Pref>(&generator)) {
    const int k = g->alternatives;
    if (k < 2) throw Error("preference space needs k >= 2 alternatives");
    if (k > kMaxPrefAlternatives) {
      throw Error("preference space supports at most " +
                  std::to_string(kMaxPrefAlternatives) + " alternatives");
    }
    auto pairs = g->orientation.empty() ? canonical_orientation(k)
                                        : g->orientation;
    validate_orientation(k, pairs);
    s.issues_ = k * (k - 1) / 2;
    const PairIndex idx = index_pairs(k, pairs);
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    do {
      s.feasible_.push_back(encode_with(idx, s.issues_, order));
    } while (std::next_permutation(order.begin(), order.end()));
    for (const auto& p : pairs) s.labels_.push_back(pair_label(p));
    s.orientation_ = std::move(pairs);
    s.alternatives_ = k;
    s.provenance_ = gen::Pref{k, s.orientation_};
  } else if (const auto* g = std::get_if<gen::Choose>(&generator)) {
    check_issue_count(g->issues);
    if (g->ones < 0 || g->ones > g->issues) {
      throw Error("choose(" + std::to_string(g->issues) + "," +
                  std::to_string(g->ones) + "): k must lie in 0..m");
    }
    s.issues_ = g->issues;
    // Gosper's hack over k-subsets.
    if (g->ones == 0) {
      s.feasible_.push_back(0);
    } else {
      Mask x = full_mask(g->ones);
      const Mask limit = full_mask(g->issues);
      while (true) {
        s.feasible_.push_back(x);
        if (s.feasible_.size() > kMaxGeneratedMembers) {
          throw Error("choose space too large to enumerate");
        }
        const Mask c = x & (~x + 1);
        const Mask r = x + c;
        if (r == 0 || r > limit) break;
        x = (((r ^ x) >> 2) / c) | r;
        if (x > limit) break;
      }
    }
    s.labels_ = numbered_labels("c", g->issues);
  } else if (const auto* g = std::get_if<gen::Cycle>(&generator)) {
    if (g->length < 2 || g->length % 2 != 0) {
      throw Error("cycle length must be even and >= 2, got " +
                  std::to_string(g->length));
    }
    const int t = g->length / 2;
    check_issue_count(t);
    // 1^i 0^(t-i), i = 0..t, then 0^(t-i) 1^i, i = 1..t-1.
    for (int i = 0; i <= t; ++i) {
      s.feasible_.push_back(i == 0 ? 0 : full_mask(i) << (t - i));
    }
    for (int i = 1; i < t; ++i) s.feasible_.push_back(full_mask(i));
    s.issues_ = t;
    s.labels_ = numbered_labels("e", t);
  } else {
    s.issues_ = 3;
    s.feasible_ = {0b000, 0b010, 0b100, 0b111};
    s.labels_ = {"p", "q", "r=p&q"};
  }

  std::sort(s.feasible_.begin(), s.feasible_.end());
  s.feasible_.erase(std::unique(s.feasible_.begin(), s.feasible_.end()),
                    s.feasible_.end());
  if (s.issues_ <= kDenseMembershipIssues) {
    s.membership_.assign(std::size_t{1} << s.issues_, false);
    for (Mask x : s.feasible_) s.membership_[x] = true;
  }
  return s;
}

std::vector<Evaluation> EvaluationSpace::feasible_evaluations() const {
  std::vector<Evaluation> out;
  out.reserve(feasible_.size());
  for (Mask x : feasible_) out.emplace_back(x, issues_);
  return out;
}

bool EvaluationSpace::contains(Mask x) const {
  if ((x & ~full_mask(issues_)) != 0) return false;
  if (!membership_.empty()) return membership_[x];
  return std::binary_search(feasible_.begin(), feasible_.end(), x);
}

bool EvaluationSpace::is_feasible(const Evaluation& x) const {
  if (x.size() != issues_) {
    throw Error("evaluation has " + std::to_string(x.size()) +
                " issues, space has " + std::to_string(issues_));
  }
  return contains(x.bits());
}

std::optional<std::size_t> EvaluationSpace::index_of(Mask x) const {
  auto it = std::lower_bound(feasible_.begin(), feasible_.end(), x);
  if (it == feasible_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - feasible_.begin());
}

bool EvaluationSpace::partial_feasible(Mask support, Mask bits) const {
  return std::any_of(feasible_.begin(), feasible_.end(),
                     [&](Mask x) { return (x & support) == bits; });
}

bool EvaluationSpace::prefix_feasible(Mask prefix, int length) const {
  const Mask tail = full_mask(issues_ - length);
  const Mask lo = prefix & ~tail;
  auto it = std::lower_bound(feasible_.begin(), feasible_.end(), lo);
  return it != feasible_.end() && (*it & ~tail) == lo;
}

Profile make_profile(const EvaluationSpace& space, std::vector<Mask> rows) {
  Profile p(space.issues(), std::move(rows));
  for (int i = 0; i < p.voters(); ++i) {
    if (!space.contains(p.rows()[i])) {
      throw Error("profile row " + std::to_string(i + 1) + " (" +
                  mask_string(p.rows()[i], space.issues()) +
                  ") is not feasible");
    }
  }
  return p;
}

Profile make_profile(const EvaluationSpace& space,
                     const std::vector<Evaluation>& rows) {
  std::vector<Mask> masks;
  for (const auto& r : rows) {
    if (r.size() != space.issues()) {
      throw Error("profile row has " + std::to_string(r.size()) +
                  " issues, space has " + std::to_string(space.issues()));
    }
    masks.push_back(r.bits());
  }
  return make_profile(space, std::move(masks));
}

namespace {

void require_pref(const EvaluationSpace& space) {
  if (space.alternatives() == 0) {
    throw Error("operation needs a preference space, got " +
                describe(space.provenance()));
  }
}

}  // namespace

Evaluation encode_order(const EvaluationSpace& pref_space,
                        const std::vector<int>& order) {
  require_pref(pref_space);
  const int k = pref_space.alternatives();
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(k);
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) {
    throw Error("order is not a permutation of the " + std::to_string(k) +
                " alternatives");
  }
  const PairIndex idx = index_pairs(k, pref_space.orientation());
  return {encode_with(idx, pref_space.issues(), order), pref_space.issues()};
}

std::vector<int> decode_order(const EvaluationSpace& pref_space,
                              const Evaluation& x) {
  require_pref(pref_space);
  if (x.size() != pref_space.issues()) {
    throw Error("evaluation has " + std::to_string(x.size()) +
                " issues, space has " + std::to_string(pref_space.issues()));
  }
  const int k = pref_space.alternatives();
  const int m = pref_space.issues();
  const PairIndex idx = index_pairs(k, pref_space.orientation());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c) {
        if (a == b || b == c || a == c) continue;
        if (prefers(idx, m, x.bits(), a, b) &&
            prefers(idx, m, x.bits(), b, c) &&
            prefers(idx, m, x.bits(), c, a)) {
          std::vector<int> cycle{a, b, c};
          throw InconsistentOrder(
              "no consistent order: " + x.str() + " contains the cycle " +
                  order_string(cycle) + ">" + alternative_letter(a),
              cycle);
        }
      }
    }
  }
  // A tournament without 3-cycles is transitive: rank by wins.
  std::vector<int> wins(k, 0);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      if (p != q && prefers(idx, m, x.bits(), p, q)) ++wins[p];
    }
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int p, int q) { return wins[p] > wins[q]; });
  return order;
}

std::string order_string(const std::vector<int>& order) {
  std::string s;
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r) s += '>';
    s += alternative_letter(order[r]);
  }
  return s;
}

std::vector<int> PartialEvaluation::support_issues() const {
  std::vector<int> out;
  for (int j = 1; j <= issues; ++j) {
    if (support & issue_bit(issues, j)) out.push_back(j);
  }
  return out;
}

std::string PartialEvaluation::bit_string() const {
  std::string s;
  for (int j : support_issues()) s += (bits & issue_bit(issues, j)) ? '1' : '0';
  return s;
}

std::string PartialEvaluation::str() const {
  std::ostringstream os;
  os << "K:{";
  bool first = true;
  for (int j : support_issues()) {
    if (!first) os << ',';
    os << j;
    first = false;
  }
  os << "} bits:" << bit_string();
  return os.str();
}

bool canonical_less(const PartialEvaluation& a, const PartialEvaluation& b) {
  const int pa = popcount(a.support), pb = popcount(b.support);
  if (pa != pb) return pa < pb;
  // Equal-size issue sets: the lexicographically smaller issue list has the
  // larger mask (issue 1 is the high bit).
  if (a.support != b.support) return a.support > b.support;
  return a.bits < b.bits;
}

std::vector<PartialEvaluation> project(const EvaluationSpace& space, Mask K) {
  if (K == 0) throw Error("projection needs a non-empty issue set");
  if ((K & ~full_mask(space.issues())) != 0) {
    throw Error("projection issue set exceeds the space's issues");
  }
  std::vector<Mask> patterns;
  for (Mask x : space.feasible()) patterns.push_back(x & K);
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()),
                 patterns.end());
  std::vector<PartialEvaluation> out;
  for (Mask a : patterns) out.push_back({space.issues(), K, a});
  return out;
}

bool is_mipe(const EvaluationSpace& space, const PartialEvaluation& a) {
  if (a.issues != space.issues() || a.support == 0 ||
      (a.bits & ~a.support) != 0) {
    return false;
  }
  if (space.partial_feasible(a.support, a.bits)) return false;
  // Feasibility is inherited by restrictions, so maximal proper subsets
  // suffice.
  for (Mask rest = a.support; rest != 0; rest &= rest - 1) {
    const Mask bit = rest & (~rest + 1);
    if (!space.partial_feasible(a.support & ~bit, a.bits & ~bit)) return false;
  }
  return true;
}

std::vector<Mipe> enumerate_mipes(const EvaluationSpace& space) {
  const int m = space.issues();
  if (m > kMaxMipeIssues) {
    throw Error("MIPE enumeration supports at most " +
                std::to_string(kMaxMipeIssues) + " issues");
  }
  auto projection = [&](Mask K) {
    std::vector<Mask> p;
    p.reserve(space.size());
    for (Mask x : space.feasible()) p.push_back(x & K);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  };
  auto contains = [](const std::vector<Mask>& sorted, Mask a) {
    return std::binary_search(sorted.begin(), sorted.end(), a);
  };

  std::vector<Mipe> out;
  for (Mask K = 1; K <= full_mask(m); ++K) {
    const auto here = projection(K);
    if (here.size() == (std::size_t{1} << popcount(K))) continue;
    std::vector<std::pair<Mask, std::vector<Mask>>> below;
    for (Mask rest = K; rest != 0; rest &= rest - 1) {
      const Mask bit = rest & (~rest + 1);
      below.emplace_back(bit, projection(K & ~bit));
    }
    for_each_submask(K, [&](Mask a) {
      if (contains(here, a)) return;
      for (const auto& [bit, proj] : below) {
        if (!contains(proj, a & ~bit)) return;
      }
      out.push_back({PartialEvaluation{m, K, a}});
    });
  }
  std::sort(out.begin(), out.end(), [](const Mipe& a, const Mipe& b) {
    return canonical_less(a.pattern, b.pattern);
  });
  return out;
}

std::vector<Evaluation> mipe_set(const EvaluationSpace& space, const Mipe& a) {
  if (!is_mipe(space, a.pattern)) {
    throw Error(a.pattern.str() + " is not a MIPE of " +
                describe(space.provenance()));
  }
  const int m = space.issues();
  const Mask free = full_mask(m) & ~a.pattern.support;
  std::vector<Evaluation> out;
  for_each_submask(free, [&](Mask s) { out.emplace_back(a.pattern.bits | s, m); });
  return out;
}

std::vector<Mipe> mipe_type(const EvaluationSpace& space,
                            std::span<const Mipe> mipes, const Evaluation& x) {
  if (space.is_feasible(x)) {
    throw Error("MIPE type is defined for infeasible evaluations only; " +
                x.str() + " is feasible");
  }
  std::vector<Mipe> out;
  for (const auto& a : mipes) {
    if (a.pattern.matches(x.bits())) out.push_back(a);
  }
  return out;
}

std::vector<Mipe> mipe_type(const EvaluationSpace& space, const Evaluation& x) {
  const auto mipes = enumerate_mipes(space);
  return mipe_type(space, mipes, x);
}

std::vector<Evaluation> interval(const Evaluation& a, const Evaluation& b) {
  require_same_length(a, b);
  const Mask diff = a.bits() ^ b.bits();
  const Mask fixed = a.bits() & ~diff;
  std::vector<Evaluation> out;
  for_each_submask(diff, [&](Mask s) { out.emplace_back(fixed | s, a.size()); });
  return out;
}

bool is_between(const Evaluation& a, const Evaluation& c, const Evaluation& b) {
  require_same_length(a, b);
  require_same_length(a, c);
  return between_masks(a.bits(), c.bits(), b.bits());
}

bool interval_meets(const EvaluationSpace& space, Mask a, Mask b) {
  return std::any_of(space.feasible().begin(), space.feasible().end(),
                     [&](Mask x) { return between_masks(a, x, b); });
}

std::vector<Evaluation> neighbors(const EvaluationSpace& space,
                                  const Evaluation& b) {
  if (space.is_feasible(b)) {
    throw Error("neighbours are defined for infeasible points; " + b.str() +
                " is feasible");
  }
  std::vector<Evaluation> out;
  for (Mask a : space.feasible()) {
    const bool blocked =
        std::any_of(space.feasible().begin(), space.feasible().end(),
                    [&](Mask t) {
                      return t != a && between_masks(a, t, b.bits());
                    });
    if (!blocked) out.emplace_back(a, space.issues());
  }
  return out;
}

}  // namespace binagg
