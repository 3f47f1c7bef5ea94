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

#include "binagg/aggregate.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "profile_cursor.hpp"

namespace binagg {
namespace {

constexpr int kMaxTableVoters = 20;
constexpr int kMaxEnumeratedArity = 4;
constexpr int kMaxVoters = 64;

std::string join_ints(const std::vector<int>& values, char sep) {
  std::string s;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) s += sep;
    s += std::to_string(values[k]);
  }
  return s;
}

void require_voters(int voters) {
  if (voters < 1 || voters > kMaxVoters) {
    throw Error("voter count " + std::to_string(voters) + " outside 1.." +
                std::to_string(kMaxVoters));
  }
}

void require_rows(std::span<const Mask> rows, int voters) {
  if (static_cast<int>(rows.size()) != voters) {
    throw Error("profile has " + std::to_string(rows.size()) +
                " rows, aggregator expects " + std::to_string(voters));
  }
}

Mask column_of(std::span<const Mask> rows, Mask bit) {
  Mask col = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] & bit) col |= Mask{1} << i;
  }
  return col;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

int parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  if (text.empty() || text.size() > 9 ||
      !std::all_of(text.begin(), text.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error("expected a non-negative integer for " + std::string(what) +
                ", got '" + std::string(text) + "'");
  }
  return std::stoi(std::string(text));
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_int(part, what));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MonotoneFunction

MonotoneFunction MonotoneFunction::quota(int voters, int threshold) {
  require_voters(voters);
  if (threshold < 1 || threshold > voters + 1) {
    throw Error("quota threshold " + std::to_string(threshold) +
                " outside 1.." + std::to_string(voters + 1));
  }
  MonotoneFunction g;
  g.voters_ = voters;
  g.threshold_ = threshold;
  if (voters <= kMaxTableVoters) {
    g.table_.resize(std::size_t{1} << voters);
    for (Mask c = 0; c < g.table_.size(); ++c) {
      g.table_[c] = popcount(c) >= threshold;
    }
  }
  return g;
}

MonotoneFunction MonotoneFunction::from_table(int voters,
                                              std::vector<bool> table) {
  require_voters(voters);
  if (voters > kMaxTableVoters) {
    throw Error("truth tables support at most " +
                std::to_string(kMaxTableVoters) + " voters");
  }
  const std::size_t cells = std::size_t{1} << voters;
  if (table.size() != cells) {
    throw Error("truth table for " + std::to_string(voters) + " voters needs " +
                std::to_string(cells) + " entries, got " +
                std::to_string(table.size()));
  }
  MonotoneFunction g;
  g.voters_ = voters;
  g.table_.assign(table.begin(), table.end());
  for (Mask c = 0; c < cells; ++c) {
    for (int i = 0; i < voters; ++i) {
      const Mask up = c | (Mask{1} << i);
      if (g.table_[c] > g.table_[up]) {
        throw Error("truth table is not monotone: g(" + mask_string(c, voters) +
                    ")=1 but g(" + mask_string(up, voters) + ")=0");
      }
    }
  }
  // A symmetric monotone table is a quota; store it as one.
  std::vector<int> by_count(static_cast<std::size_t>(voters) + 1, -1);
  bool symmetric = true;
  for (Mask c = 0; c < cells && symmetric; ++c) {
    int& seen = by_count[popcount(c)];
    if (seen < 0) seen = g.table_[c];
    symmetric = seen == g.table_[c];
  }
  if (symmetric) {
    int t = voters + 1;
    while (t > 0 && by_count[t - 1] == 1) --t;
    g.threshold_ = t;  // 0 is the constant-1 function
  }
  return g;
}

std::vector<MonotoneFunction> MonotoneFunction::enumerate_all(int voters) {
  if (voters < 1 || voters > kMaxEnumeratedArity) {
    throw Error("monotone enumeration supports arity 1.." +
                std::to_string(kMaxEnumeratedArity));
  }
  const std::size_t cells = std::size_t{1} << voters;
  std::vector<MonotoneFunction> out;
  // Table read as a binary number, column 0 most significant.
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
    std::vector<bool> table(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      table[c] = (code >> (cells - 1 - c)) & 1;
    }
    bool monotone = true;
    for (std::size_t c = 0; c < cells && monotone; ++c) {
      for (int i = 0; i < voters; ++i) {
        if (table[c] && !table[c | (std::size_t{1} << i)]) {
          monotone = false;
          break;
        }
      }
    }
    if (monotone) out.push_back(from_table(voters, std::move(table)));
  }
  return out;
}

std::optional<int> MonotoneFunction::threshold() const {
  if (threshold_ < 0) return std::nullopt;
  return threshold_;
}

std::string MonotoneFunction::str() const {
  if (table_.empty()) {
    return "quota:" + std::to_string(threshold_) + "/" +
           std::to_string(voters_);
  }
  std::string s;
  for (auto v : table_) s += v ? '1' : '0';
  return s;
}

// ---------------------------------------------------------------------------
// IiaStage

IiaStage::IiaStage(std::vector<MonotoneFunction> per_issue)
    : per_issue_(std::move(per_issue)) {
  if (per_issue_.empty() || per_issue_.size() > kMaxIssues) {
    throw Error("stage needs 1.." + std::to_string(kMaxIssues) + " issues");
  }
  voters_ = per_issue_.front().voters();
  for (const auto& g : per_issue_) {
    if (g.voters() != voters_) {
      throw Error("stage mixes arities " + std::to_string(voters_) + " and " +
                  std::to_string(g.voters()));
    }
  }
}

IiaStage IiaStage::majority(int issues, int voters) {
  return IiaStage(std::vector<MonotoneFunction>(
      static_cast<std::size_t>(issues),
      MonotoneFunction::quota(voters, majority_threshold(voters))));
}

IiaStage IiaStage::quota(const std::vector<int>& thresholds, int voters) {
  std::vector<MonotoneFunction> fs;
  for (int t : thresholds) fs.push_back(MonotoneFunction::quota(voters, t));
  return IiaStage(std::move(fs));
}

IiaStage IiaStage::unanimity(int issues, int voters) {
  return quota(std::vector<int>(static_cast<std::size_t>(issues), voters),
               voters);
}

bool IiaStage::anonymous() const {
  return std::all_of(per_issue_.begin(), per_issue_.end(),
                     [](const MonotoneFunction& g) { return g.is_symmetric(); });
}

std::string IiaStage::str() const {
  if (anonymous()) {
    std::vector<int> ts;
    for (const auto& g : per_issue_) ts.push_back(*g.threshold());
    const int maj = majority_threshold(voters_);
    if (std::all_of(ts.begin(), ts.end(), [&](int t) { return t == maj; })) {
      return "majority";
    }
    return "quota:" + join_ints(ts, ',');
  }
  std::string s = "stage:";
  for (std::size_t j = 0; j < per_issue_.size(); ++j) {
    if (j) s += ',';
    s += per_issue_[j].str();
  }
  return s;
}

Mask IiaStage::apply(std::span<const Mask> rows) const {
  require_rows(rows, voters_);
  const int m = issues();
  Mask out = 0;
  for (int j = 1; j <= m; ++j) {
    const Mask bit = issue_bit(m, j);
    if (per_issue_[j - 1](column_of(rows, bit))) out |= bit;
  }
  return out;
}

int majority_threshold(int voters) { return (voters + 2) / 2; }

Evaluation stage_apply(const IiaStage& stage, const Profile& profile) {
  if (profile.issues() != stage.issues()) {
    throw Error("profile has " + std::to_string(profile.issues()) +
                " issues, stage expects " + std::to_string(stage.issues()));
  }
  return {stage.apply(profile.rows()), stage.issues()};
}

// ---------------------------------------------------------------------------
// Plurality, partitions

namespace {

Mask plurality_mask(std::span<const Mask> rows, const TieOrder& ties) {
  Mask best = rows.front();
  std::size_t best_count = 0;
  std::size_t best_rank = 0;
  for (Mask candidate : rows) {
    const auto count = static_cast<std::size_t>(
        std::count(rows.begin(), rows.end(), candidate));
    const std::size_t r = ties.rank(candidate);
    if (count > best_count || (count == best_count && r < best_rank)) {
      best = candidate;
      best_count = count;
      best_rank = r;
    }
  }
  return best;
}

}  // namespace

Evaluation plurality(const EvaluationSpace& space, const Profile& profile,
                     const TieOrder& ties) {
  if (profile.issues() != space.issues()) {
    throw Error("profile and space disagree on the issue count");
  }
  return {plurality_mask(profile.rows(), ties), space.issues()};
}

void Partition::validate(int issues, int voters) const {
  if (blocks.empty() || static_cast<int>(blocks.size()) > voters) {
    throw Error("partition has " + std::to_string(blocks.size()) +
                " blocks; need 1.." + std::to_string(voters) +
                " (one per voter at most)");
  }
  std::vector<int> seen(static_cast<std::size_t>(issues) + 1, 0);
  for (const auto& block : blocks) {
    for (int j : block) {
      if (j < 1 || j > issues) {
        throw Error("partition issue " + std::to_string(j) + " outside 1.." +
                    std::to_string(issues));
      }
      if (seen[j]++) {
        throw Error("partition lists issue " + std::to_string(j) + " twice");
      }
    }
  }
  for (int j = 1; j <= issues; ++j) {
    if (!seen[j]) {
      throw Error("partition does not cover issue " + std::to_string(j));
    }
  }
}

std::vector<int> Partition::owners(int issues) const {
  std::vector<int> out(static_cast<std::size_t>(issues), -1);
  for (std::size_t v = 0; v < blocks.size(); ++v) {
    for (int j : blocks[v]) out.at(j - 1) = static_cast<int>(v);
  }
  return out;
}

std::string Partition::str() const {
  std::string s;
  for (std::size_t v = 0; v < blocks.size(); ++v) {
    if (v) s += ';';
    s += join_ints(blocks[v], ',');
  }
  return s;
}

namespace {

Mask partition_mask(const EvaluationSpace& space, const std::vector<int>& owner,
                    std::span<const Mask> rows) {
  const int m = space.issues();
  Mask out = 0;
  for (int j = 1; j <= m; ++j) {
    const Mask bit = issue_bit(m, j);
    const Mask wanted = out | (rows[owner[j - 1]] & bit);
    if (space.prefix_feasible(wanted, j)) {
      out = wanted;
    } else {
      out = wanted ^ bit;
      if (!space.prefix_feasible(out, j)) {
        throw Error("partition aggregator reached an infeasible prefix at "
                    "issue " + std::to_string(j));
      }
    }
  }
  return out;
}

}  // namespace

Evaluation partition_apply(const EvaluationSpace& space,
                           const Partition& partition, const Profile& profile) {
  if (profile.issues() != space.issues()) {
    throw Error("profile and space disagree on the issue count");
  }
  partition.validate(space.issues(), profile.voters());
  return {partition_mask(space, partition.owners(space.issues()),
                         profile.rows()),
          space.issues()};
}

// ---------------------------------------------------------------------------
// Welfare maximisers

namespace {

// Minimises sum_j w_j * (x_j ? n - c_j : c_j) over `order`, first minimum
// wins. The constant sum_j w_j c_j is dropped.
Mask swm_mask(std::span<const Mask> order, const WeightVector& weights,
              std::span<const Mask> rows) {
  const int m = weights.size();
  const auto n = static_cast<Distance>(rows.size());
  std::vector<Distance> delta(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    const Distance c = popcount(column_of(rows, issue_bit(m, j)));
    delta[m - j] = weights[j] * (n - 2 * c);  // indexed by bit position
  }
  Mask best = order.front();
  Distance best_total = std::numeric_limits<Distance>::max();
  for (Mask x : order) {
    Distance total = 0;
    for (Mask rest = x; rest; rest &= rest - 1) {
      total += delta[std::countr_zero(rest)];
    }
    if (total < best_total) {
      best_total = total;
      best = x;
    }
  }
  return best;
}

const gen::Choose& require_choose(const EvaluationSpace& space) {
  const auto* g = std::get_if<gen::Choose>(&space.provenance());
  if (!g) throw Error("top-k selection needs a choose(m, k) space");
  return *g;
}

std::vector<int> candidate_positions(int m, const std::vector<int>& order) {
  std::vector<int> pos(static_cast<std::size_t>(m) + 1, -1);
  if (order.empty()) {
    for (int j = 1; j <= m; ++j) pos[j] = j - 1;
    return pos;
  }
  if (static_cast<int>(order.size()) != m) {
    throw Error("candidate order lists " + std::to_string(order.size()) +
                " candidates, space has " + std::to_string(m));
  }
  for (std::size_t r = 0; r < order.size(); ++r) {
    const int j = order[r];
    if (j < 1 || j > m || pos[j] >= 0) {
      throw Error("candidate order must be a permutation of 1.." +
                  std::to_string(m));
    }
    pos[j] = static_cast<int>(r);
  }
  return pos;
}

}  // namespace

Evaluation swm(const EvaluationSpace& space, const WeightVector& weights,
               const TieOrder& ties, const Profile& profile) {
  if (profile.issues() != space.issues() || weights.size() != space.issues()) {
    throw Error("profile, weights and space disagree on the issue count");
  }
  return {swm_mask(ties.best_first(), weights, profile.rows()),
          space.issues()};
}

Evaluation unrestricted_minimizer(const Profile& profile) {
  const int m = profile.issues();
  const int t = majority_threshold(profile.voters());
  Mask out = 0;
  for (int j = 1; j <= m; ++j) {
    if (popcount(profile.column(j)) >= t) out |= issue_bit(m, j);
  }
  return {out, m};
}

Evaluation swm_topk(const EvaluationSpace& space, const Profile& profile,
                    const std::vector<int>& candidate_order) {
  const auto& g = require_choose(space);
  const int m = g.issues;
  if (profile.issues() != m) {
    throw Error("profile and space disagree on the issue count");
  }
  const auto pos = candidate_positions(m, candidate_order);
  std::vector<int> candidates(static_cast<std::size_t>(m));
  std::iota(candidates.begin(), candidates.end(), 1);
  std::vector<int> sums(static_cast<std::size_t>(m) + 1);
  for (int j = 1; j <= m; ++j) sums[j] = popcount(profile.column(j));
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (sums[a] != sums[b]) return sums[a] > sums[b];
    return pos[a] < pos[b];
  });
  Mask out = 0;
  for (int r = 0; r < g.ones; ++r) out |= issue_bit(m, candidates[r]);
  return {out, m};
}

TieOrder induced_topk_order(const EvaluationSpace& space,
                            const std::vector<int>& candidate_order) {
  const int m = require_choose(space).issues;
  const auto pos = candidate_positions(m, candidate_order);
  auto key = [&](Mask x) {
    std::vector<int> members;
    for (int j = 1; j <= m; ++j) {
      if (x & issue_bit(m, j)) members.push_back(pos[j]);
    }
    std::sort(members.begin(), members.end());
    return members;
  };
  std::vector<std::pair<std::vector<int>, Mask>> keyed;
  for (Mask x : space.feasible()) keyed.emplace_back(key(x), x);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Mask> order;
  for (const auto& [k, x] : keyed) order.push_back(x);
  return TieOrder::from_list(space, std::move(order));
}

// ---------------------------------------------------------------------------
// Specs

namespace {

std::string stage_spec_str(const rule::StageSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, rule::Majority>) {
          return "majority";
        } else if constexpr (std::is_same_v<T, rule::Quota>) {
          return "quota:" + join_ints(s.thresholds, ',');
        } else {
          return s.stage.str();
        }
      },
      spec);
}

std::optional<rule::StageSpec> parse_stage(std::string_view text) {
  if (text == "majority") return rule::Majority{};
  if (text.starts_with("quota:")) {
    auto ts = parse_int_list(text.substr(6), "quota threshold");
    if (ts.empty()) throw Error("quota needs at least one threshold");
    return rule::Quota{std::move(ts)};
  }
  return std::nullopt;
}

}  // namespace

std::string AggregatorSpec::str() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, rule::Dictator>) {
          return "dictator:" + std::to_string(r.voter + 1);
        } else if constexpr (std::is_same_v<T, rule::Majority> ||
                             std::is_same_v<T, rule::Quota> ||
                             std::is_same_v<T, rule::Stage>) {
          return stage_spec_str(r);
        } else if constexpr (std::is_same_v<T, rule::Plurality>) {
          return "plurality";
        } else if constexpr (std::is_same_v<T, rule::PartitionRule>) {
          return "partition:" + r.partition.str();
        } else if constexpr (std::is_same_v<T, rule::NnCorrected>) {
          return "nn(" + stage_spec_str(r.stage) + ")";
        } else {
          return "swm";
        }
      },
      rule);
}

AggregatorSpec parse_aggregator_spec(std::string_view text) {
  const std::string_view t = trim(text);
  AggregatorSpec spec;
  if (auto stage = parse_stage(t)) {
    std::visit([&](auto s) { spec.rule = std::move(s); }, std::move(*stage));
    return spec;
  }
  if (t == "plurality") {
    spec.rule = rule::Plurality{};
  } else if (t == "swm") {
    spec.rule = rule::Swm{};
  } else if (t.starts_with("dictator:")) {
    const int voter = parse_int(t.substr(9), "dictator voter");
    if (voter < 1) throw Error("dictator voter numbers start at 1");
    spec.rule = rule::Dictator{voter - 1};
  } else if (t.starts_with("partition:")) {
    Partition p;
    for (auto block : split(t.substr(10), ';')) {
      p.blocks.push_back(parse_int_list(block, "partition issue"));
    }
    spec.rule = rule::PartitionRule{std::move(p)};
  } else if (t.starts_with("nn(") && t.ends_with(")")) {
    auto inner = parse_stage(trim(t.substr(3, t.size() - 4)));
    if (!inner) {
      throw Error("nn(...) wraps majority or quota:<t1,...>, got '" +
                  std::string(t) + "'");
    }
    spec.rule = rule::NnCorrected{std::move(*inner)};
  } else {
    throw Error("unknown aggregator '" + std::string(t) +
                "'; expected dictator:<i>, majority, quota:<t1,...>, "
                "plurality, partition:<K1;K2;...>, nn(majority), "
                "nn(quota:...) or swm");
  }
  return spec;
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kNone: return "none";
    case Family::kM: return "M";
    case Family::kF: return "F";
    case Family::kG: return "G";
    case Family::kH: return "H";
    case Family::kH2: return "H2";
    case Family::kH1: return "H1";
  }
  return "none";
}

// ---------------------------------------------------------------------------
// Aggregator implementations

Mask Aggregator::Impl::stage(std::span<const Mask>) const {
  throw Error("aggregator '" + name + "' has no IIA stage");
}

namespace {

using Impl = Aggregator::Impl;

struct FunctionImpl final : Impl {
  Aggregator::Fn fn;
  Mask apply(std::span<const Mask> rows) const override {
    require_rows(rows, voters);
    return fn(rows);
  }
};

struct DictatorImpl final : Impl {
  int voter = 0;
  Mask apply(std::span<const Mask> rows) const override {
    require_rows(rows, voters);
    return rows[voter];
  }
};

struct StageImpl final : Impl {
  IiaStage stage_fn;
  Mask apply(std::span<const Mask> rows) const override {
    return stage_fn.apply(rows);
  }
  bool has_stage() const override { return true; }
  Mask stage(std::span<const Mask> rows) const override {
    return stage_fn.apply(rows);
  }
};

struct PluralityImpl final : Impl {
  TieOrder ties;
  Mask apply(std::span<const Mask> rows) const override {
    require_rows(rows, voters);
    return plurality_mask(rows, ties);
  }
};

struct PartitionImpl final : Impl {
  EvaluationSpace space;
  std::vector<int> owner;
  Mask apply(std::span<const Mask> rows) const override {
    require_rows(rows, voters);
    return partition_mask(space, owner, rows);
  }
};

struct NnImpl final : Impl {
  IiaStage stage_fn;
  EvaluationSpace space;
  WeightVector weights;
  TieOrder ties;
  std::optional<CorrectionMap> table;

  Mask apply(std::span<const Mask> rows) const override {
    const Mask v = stage_fn.apply(rows);
    if (table) return (*table)(v);
    if (space.contains(v)) return v;
    return nn_select(space, {v, issues}, weights, ties).bits();
  }
  bool has_stage() const override { return true; }
  Mask stage(std::span<const Mask> rows) const override {
    return stage_fn.apply(rows);
  }
};

struct SwmImpl final : Impl {
  WeightVector weights;
  std::vector<Mask> order;
  Mask apply(std::span<const Mask> rows) const override {
    require_rows(rows, voters);
    return swm_mask(order, weights, rows);
  }
};

IiaStage make_stage(const rule::StageSpec& spec, int issues, int voters) {
  return std::visit(
      [&](const auto& s) -> IiaStage {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, rule::Majority>) {
          return IiaStage::majority(issues, voters);
        } else if constexpr (std::is_same_v<T, rule::Quota>) {
          if (static_cast<int>(s.thresholds.size()) != issues) {
            throw Error("quota lists " + std::to_string(s.thresholds.size()) +
                        " thresholds for " + std::to_string(issues) +
                        " issues");
          }
          return IiaStage::quota(s.thresholds, voters);
        } else {
          if (s.stage.issues() != issues || s.stage.voters() != voters) {
            throw Error("stage arity (" + std::to_string(s.stage.issues()) +
                        " issues, " + std::to_string(s.stage.voters()) +
                        " voters) does not match (" + std::to_string(issues) +
                        ", " + std::to_string(voters) + ")");
          }
          return s.stage;
        }
      },
      spec);
}

bool is_ascending(const EvaluationSpace& space, const TieOrder& ties) {
  return std::equal(ties.best_first().begin(), ties.best_first().end(),
                    space.feasible().begin(), space.feasible().end());
}

}  // namespace

Aggregator Aggregator::bind(const EvaluationSpace& space,
                            const AggregatorSpec& spec, int voters) {
  require_voters(voters);
  const int m = space.issues();
  const WeightVector weights = spec.weights.value_or(WeightVector::uniform(m));
  if (weights.size() != m) {
    throw Error("weight vector has " + std::to_string(weights.size()) +
                " entries, space has " + std::to_string(m) + " issues");
  }
  auto ties_or = [&](TieOrder fallback) {
    return spec.ties ? TieOrder::from_list(space, *spec.ties) : fallback;
  };
  const std::string name = spec.str();

  auto finish = [&](auto impl, Family family, bool consistent) {
    impl->name = name;
    impl->issues = m;
    impl->voters = voters;
    impl->family = family;
    impl->consistent = consistent;
    return Aggregator(std::move(impl));
  };

  return std::visit(
      [&](const auto& r) -> Aggregator {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, rule::Dictator>) {
          if (r.voter < 0 || r.voter >= voters) {
            throw Error("dictator voter " + std::to_string(r.voter + 1) +
                        " outside 1.." + std::to_string(voters));
          }
          auto impl = std::make_shared<DictatorImpl>();
          impl->voter = r.voter;
          return finish(std::move(impl), Family::kM, true);
        } else if constexpr (std::is_same_v<T, rule::Majority> ||
                             std::is_same_v<T, rule::Quota> ||
                             std::is_same_v<T, rule::Stage>) {
          auto impl = std::make_shared<StageImpl>();
          impl->stage_fn = make_stage(r, m, voters);
          return finish(std::move(impl), Family::kM, false);
        } else if constexpr (std::is_same_v<T, rule::Plurality>) {
          auto impl = std::make_shared<PluralityImpl>();
          impl->ties = ties_or(TieOrder::descending(space));
          return finish(std::move(impl), Family::kNone, true);
        } else if constexpr (std::is_same_v<T, rule::PartitionRule>) {
          r.partition.validate(m, voters);
          auto impl = std::make_shared<PartitionImpl>();
          impl->space = space;
          impl->owner = r.partition.owners(m);
          return finish(std::move(impl), Family::kNone, true);
        } else if constexpr (std::is_same_v<T, rule::NnCorrected>) {
          Aggregator out = nn_corrected(space, make_stage(r.stage, m, voters),
                                        weights,
                                        ties_or(TieOrder::ascending(space)));
          return out;
        } else {
          auto impl = std::make_shared<SwmImpl>();
          impl->weights = weights;
          impl->order = ties_or(TieOrder::ascending(space)).best_first();
          return finish(std::move(impl), Family::kF, true);
        }
      },
      spec.rule);
}

Aggregator Aggregator::nn_corrected(const EvaluationSpace& space,
                                    const IiaStage& stage,
                                    const WeightVector& weights,
                                    const TieOrder& ties) {
  if (stage.issues() != space.issues()) {
    throw Error("stage has " + std::to_string(stage.issues()) +
                " issues, space has " + std::to_string(space.issues()));
  }
  if (weights.size() != space.issues()) {
    throw Error("weight vector has " + std::to_string(weights.size()) +
                " entries, space has " + std::to_string(space.issues()) +
                " issues");
  }
  if (ties.size() != space.size()) {
    throw Error("tie order does not rank this space");
  }
  auto impl = std::make_shared<NnImpl>();
  impl->name = "nn(" + stage.str() + ")";
  impl->issues = space.issues();
  impl->voters = stage.voters();
  impl->family = is_ascending(space, ties) ? Family::kH1 : Family::kH2;
  impl->consistent = true;
  impl->stage_fn = stage;
  impl->space = space;
  impl->weights = weights;
  impl->ties = ties;
  if (space.issues() <= 20) impl->table.emplace(space, weights, ties);
  return Aggregator(std::move(impl));
}

Aggregator Aggregator::from_function(std::string name, int issues, int voters,
                                     Fn fn) {
  require_voters(voters);
  auto impl = std::make_shared<FunctionImpl>();
  impl->name = std::move(name);
  impl->issues = issues;
  impl->voters = voters;
  impl->fn = std::move(fn);
  return Aggregator(std::move(impl));
}

Evaluation Aggregator::operator()(const Profile& profile) const {
  if (profile.issues() != issues()) {
    throw Error("profile has " + std::to_string(profile.issues()) +
                " issues, aggregator expects " + std::to_string(issues()));
  }
  return {apply(profile.rows()), issues()};
}

// ---------------------------------------------------------------------------
// Structural checks

std::string_view property_name(StructuralProperty property) {
  switch (property) {
    case StructuralProperty::kIia: return "iia";
    case StructuralProperty::kMonotone: return "monotone";
    case StructuralProperty::kAnonymous: return "anonymous";
    case StructuralProperty::kDictatorial: return "dictatorial";
  }
  return "iia";
}

StructuralProperty parse_property(std::string_view text) {
  for (auto p : {StructuralProperty::kIia, StructuralProperty::kMonotone,
                 StructuralProperty::kAnonymous,
                 StructuralProperty::kDictatorial}) {
    if (property_name(p) == text) return p;
  }
  throw Error("unknown property '" + std::string(text) +
              "'; expected iia, monotone, anonymous or dictatorial");
}

namespace {

Profile to_profile(int m, std::span<const Mask> rows) {
  return Profile(m, std::vector<Mask>(rows.begin(), rows.end()));
}

StructuralVerdict check_iia(const EvaluationSpace& space, const Aggregator& f) {
  const int m = space.issues();
  const int n = f.voters();
  // Per issue: column -> (first profile index, its rows, f_j there).
  struct Seen {
    std::vector<Mask> rows;
    bool value;
  };
  std::vector<std::unordered_map<Mask, Seen>> seen(static_cast<std::size_t>(m));
  detail::ProfileCursor cursor(space.feasible(), n);
  do {
    const Mask out = f.apply(cursor.rows());
    for (int j = 1; j <= m; ++j) {
      const Mask bit = issue_bit(m, j);
      const Mask col = column_of(cursor.rows(), bit);
      const bool value = (out & bit) != 0;
      auto [it, fresh] = seen[j - 1].try_emplace(
          col, Seen{{cursor.rows().begin(), cursor.rows().end()}, value});
      if (!fresh && it->second.value != value) {
        StructuralVerdict v;
        v.witness = {Profile(m, it->second.rows), to_profile(m, cursor.rows())};
        v.detail = "issue " + std::to_string(j) + ": column " +
                   mask_string(col, n) + " yields " +
                   (it->second.value ? "1" : "0") + " then " +
                   (value ? "1" : "0");
        return v;
      }
    }
  } while (cursor.next());
  return {true, {}, "every issue depends only on its own column"};
}

StructuralVerdict check_monotone(const EvaluationSpace& space,
                                 const Aggregator& f) {
  const int m = space.issues();
  const int n = f.voters();
  const auto X = space.feasible();
  const bool tabulate =
      saturating_pow(X.size(), n) <= detail::kMaxOutcomeTable;
  std::vector<Mask> table;
  if (tabulate) {
    table = detail::outcome_table(X, n, [&](auto rows) { return f.apply(rows); });
  }
  detail::ProfileCursor cursor(X, n);
  std::vector<Mask> lied;
  do {
    const Mask fx = tabulate ? table[cursor.index()] : f.apply(cursor.rows());
    for (int i = 0; i < n; ++i) {
      const Mask truth = cursor.rows()[i];
      for (std::size_t d = 0; d < X.size(); ++d) {
        const Mask y = X[d];
        if (y == truth) continue;
        Mask fy;
        if (tabulate) {
          fy = table[cursor.index() + (d - cursor.digit(i)) * cursor.stride(i)];
        } else {
          lied.assign(cursor.rows().begin(), cursor.rows().end());
          lied[i] = y;
          fy = f.apply(lied);
        }
        // Social bit moved against the voter's move on a changed issue.
        const Mask bad = (truth ^ y) & (fx ^ fy) & ~(fy ^ truth);
        if (bad) {
          const int j = m - (63 - std::countl_zero(bad));
          StructuralVerdict v;
          auto rows = std::vector<Mask>(cursor.rows().begin(),
                                        cursor.rows().end());
          v.witness = {Profile(m, rows), Profile(m, rows).with_row(i, y)};
          v.detail = "voter " + std::to_string(i + 1) + " moves issue " +
                     std::to_string(j) + " to " +
                     ((y & issue_bit(m, j)) ? "1" : "0") +
                     " and the outcome moves it to " +
                     ((fy & issue_bit(m, j)) ? "1" : "0");
          return v;
        }
      }
    }
  } while (cursor.next());
  return {true, {}, "no issue moves against a voter"};
}

StructuralVerdict check_anonymous(const EvaluationSpace& space,
                                  const Aggregator& f) {
  const int m = space.issues();
  const int n = f.voters();
  detail::ProfileCursor cursor(space.feasible(), n);
  std::vector<Mask> swapped;
  do {
    const Mask fx = f.apply(cursor.rows());
    for (int i = 0; i + 1 < n; ++i) {
      if (cursor.rows()[i] == cursor.rows()[i + 1]) continue;
      swapped.assign(cursor.rows().begin(), cursor.rows().end());
      std::swap(swapped[i], swapped[i + 1]);
      const Mask fy = f.apply(swapped);
      if (fx != fy) {
        StructuralVerdict v;
        v.witness = {to_profile(m, cursor.rows()), Profile(m, swapped)};
        v.detail = "swapping voters " + std::to_string(i + 1) + " and " +
                   std::to_string(i + 2) + " changes " + mask_string(fx, m) +
                   " to " + mask_string(fy, m);
        return v;
      }
    }
  } while (cursor.next());
  return {true, {}, "invariant under voter transpositions"};
}

StructuralVerdict check_dictatorial(const EvaluationSpace& space,
                                    const Aggregator& f) {
  const int m = space.issues();
  const int n = f.voters();
  std::vector<std::optional<Profile>> refuted(static_cast<std::size_t>(n));
  int alive = n;
  detail::ProfileCursor cursor(space.feasible(), n);
  do {
    const Mask out = f.apply(cursor.rows());
    for (int i = 0; i < n; ++i) {
      if (!refuted[i] && cursor.rows()[i] != out) {
        refuted[i] = to_profile(m, cursor.rows());
        --alive;
      }
    }
  } while (alive > 0 && cursor.next());
  for (int i = 0; i < n; ++i) {
    if (!refuted[i]) {
      return {true, {}, "voter " + std::to_string(i + 1) + " is a dictator"};
    }
  }
  StructuralVerdict v;
  for (auto& p : refuted) v.witness.push_back(std::move(*p));
  v.detail = "each voter is overruled in some profile";
  return v;
}

}  // namespace

StructuralVerdict check_structural(const EvaluationSpace& space,
                                   const Aggregator& aggregator,
                                   StructuralProperty property,
                                   std::uint64_t budget) {
  if (aggregator.issues() != space.issues()) {
    throw Error("aggregator has " + std::to_string(aggregator.issues()) +
                " issues, space has " + std::to_string(space.issues()));
  }
  const int n = aggregator.voters();
  std::uint64_t required = saturating_pow(space.size(), n);
  if (property == StructuralProperty::kAnonymous) {
    required = saturating_mul(required, static_cast<std::uint64_t>(n));
  } else if (property == StructuralProperty::kMonotone) {
    required = saturating_mul(required, saturating_mul(n, space.size()));
  }
  if (required > budget) throw BudgetExceeded(required, budget);
  switch (property) {
    case StructuralProperty::kIia: return check_iia(space, aggregator);
    case StructuralProperty::kMonotone:
      return check_monotone(space, aggregator);
    case StructuralProperty::kAnonymous:
      return check_anonymous(space, aggregator);
    case StructuralProperty::kDictatorial:
      return check_dictatorial(space, aggregator);
  }
  return {};
}

}  // namespace binagg
