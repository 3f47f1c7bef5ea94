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

#include "binagg/manipulate.hpp"

#include <sstream>

#include "profile_cursor.hpp"

namespace binagg {

IssueRelation issue_relation(const Evaluation& truth, const Evaluation& z,
                             const Evaluation& w, int issue) {
  require_same_length(truth, z);
  require_same_length(truth, w);
  if (w[issue] == z[issue]) return IssueRelation::kIndifferent;
  return w[issue] == truth[issue] ? IssueRelation::kPreferableW
                                  : IssueRelation::kPreferableZ;
}

char relation_symbol(IssueRelation relation) {
  switch (relation) {
    case IssueRelation::kPreferableW: return '+';
    case IssueRelation::kPreferableZ: return '-';
    case IssueRelation::kIndifferent: return '=';
  }
  return '=';
}

DeviationFlags classify_deviation(const Evaluation& truth, const Evaluation& z,
                                  const Evaluation& w,
                                  const WeightVector& weights) {
  require_same_length(truth, z);
  require_same_length(truth, w);
  const Mask x = truth.bits();
  const Mask changed = z.bits() ^ w.bits();
  const Mask gain = changed & ~(w.bits() ^ x);
  const Mask loss = changed & (w.bits() ^ x);
  DeviationFlags flags;
  flags.partial = gain != 0;
  flags.full = gain != 0 && loss == 0;
  flags.hamming = weighted_hamming(truth, w, weights) <
                  weighted_hamming(truth, z, weights);
  return flags;
}

ManipulationKind ManipulationKind::hamming(WeightVector weights) {
  ManipulationKind k(Type::kHamming);
  k.weights_ = std::move(weights);
  return k;
}

ManipulationKind ManipulationKind::parse(std::string_view text,
                                         WeightVector weights) {
  if (text == "partial") return partial();
  if (text == "full") return full();
  if (text == "hamming") return hamming(std::move(weights));
  throw Error("unknown manipulation kind '" + std::string(text) +
              "'; expected partial, full or hamming");
}

std::string ManipulationKind::str() const {
  switch (type_) {
    case Type::kPartial: return "partial";
    case Type::kFull: return "full";
    case Type::kHamming: return "hamming(" + weights_.str() + ")";
  }
  return "partial";
}

bool ManipulationKind::holds(Mask truth, Mask z, Mask w) const {
  const Mask changed = z ^ w;
  const Mask gain = changed & ~(w ^ truth);
  switch (type_) {
    case Type::kPartial: return gain != 0;
    case Type::kFull: return gain != 0 && (changed & (w ^ truth)) == 0;
    case Type::kHamming:
      return weights_.weight_of(truth ^ w) < weights_.weight_of(truth ^ z);
  }
  return false;
}

std::string ManipulationWitness::relation_string() const {
  const Evaluation x = truth();
  std::string s;
  for (int j = 1; j <= x.size(); ++j) {
    s += relation_symbol(issue_relation(x, truthful_outcome, lied_outcome, j));
  }
  return s;
}

std::string format_witness(const ManipulationWitness& w) {
  const Evaluation x = w.truth();
  const WeightVector weights = w.kind.type() == ManipulationKind::Type::kHamming
                                   ? w.kind.weights()
                                   : WeightVector::uniform(x.size());
  std::ostringstream out;
  out << "kind: " << w.kind.str() << '\n';
  out << "profile:\n";
  for (int i = 0; i < w.profile.voters(); ++i) {
    out << "  " << w.profile.row(i).str() << '\n';
  }
  out << "voter: " << w.voter + 1 << '\n';
  out << "truth: " << x.str() << '\n';
  out << "lie: " << w.lie.str() << '\n';
  out << "z: " << w.truthful_outcome.str()
      << "  d=" << weighted_hamming(x, w.truthful_outcome, weights) << '\n';
  out << "w: " << w.lied_outcome.str()
      << "  d=" << weighted_hamming(x, w.lied_outcome, weights) << '\n';
  out << "relation: " << w.relation_string() << '\n';
  return out.str();
}

std::uint64_t search_size(const EvaluationSpace& space, int voters) {
  return saturating_mul(
      saturating_pow(space.size(), voters),
      saturating_mul(static_cast<std::uint64_t>(voters), space.size()));
}

std::uint64_t for_each_witness(
    const EvaluationSpace& space, const Aggregator& aggregator,
    const ManipulationKind& kind,
    const std::function<bool(const ManipulationWitness&)>& visit,
    const SearchOptions& options) {
  const int m = space.issues();
  const int n = aggregator.voters();
  if (aggregator.issues() != m) {
    throw Error("aggregator has " + std::to_string(aggregator.issues()) +
                " issues, space has " + std::to_string(m));
  }
  if (kind.type() == ManipulationKind::Type::kHamming &&
      kind.weights().size() != m) {
    throw Error("hamming weights have " +
                std::to_string(kind.weights().size()) + " entries, space has " +
                std::to_string(m) + " issues");
  }
  const std::uint64_t required = search_size(space, n);
  if (required > options.budget) throw BudgetExceeded(required, options.budget);

  const auto X = space.feasible();
  const bool tabulate =
      saturating_pow(X.size(), n) <= detail::kMaxOutcomeTable;
  std::vector<Mask> table;
  if (tabulate) {
    table = detail::outcome_table(
        X, n, [&](auto rows) { return aggregator.apply(rows); });
  }

  std::uint64_t visited = 0;
  detail::ProfileCursor cursor(X, n);
  std::vector<Mask> lied;
  do {
    const Mask z = tabulate ? table[cursor.index()]
                            : aggregator.apply(cursor.rows());
    for (int i = 0; i < n; ++i) {
      const Mask truth = cursor.rows()[i];
      for (std::size_t d = 0; d < X.size(); ++d) {
        const Mask y = X[d];
        if (y == truth) continue;
        Mask w;
        if (tabulate) {
          w = table[cursor.index() + (d - cursor.digit(i)) * cursor.stride(i)];
        } else {
          lied.assign(cursor.rows().begin(), cursor.rows().end());
          lied[i] = y;
          w = aggregator.apply(lied);
        }
        if (!kind.holds(truth, z, w)) continue;
        ++visited;
        ManipulationWitness witness{
            Profile(m, {cursor.rows().begin(), cursor.rows().end()}),
            i,
            {y, m},
            {z, m},
            {w, m},
            kind};
        if (!visit(witness)) return visited;
      }
    }
  } while (cursor.next());
  return visited;
}

std::optional<ManipulationWitness> find_witness(
    const EvaluationSpace& space, const Aggregator& aggregator,
    const ManipulationKind& kind, const SearchOptions& options) {
  std::optional<ManipulationWitness> found;
  for_each_witness(
      space, aggregator, kind,
      [&](const ManipulationWitness& w) {
        found = w;
        return false;
      },
      options);
  return found;
}

Certificate certify(const EvaluationSpace& space, const Aggregator& aggregator,
                    const ManipulationKind& kind,
                    const SearchOptions& options) {
  Certificate c;
  c.witness = find_witness(space, aggregator, kind, options);
  c.free = !c.witness;
  return c;
}

SweepResult certify_hamming_sweep(
    const EvaluationSpace& space,
    const std::function<Aggregator(const WeightVector&)>& make_aggregator,
    const std::vector<WeightVector>& weight_battery,
    const SearchOptions& options) {
  SweepResult result;
  for (const auto& w : weight_battery) {
    auto c = certify(space, make_aggregator(w), ManipulationKind::hamming(w),
                     options);
    if (!c.free) {
      result.free = false;
      result.failing_weights = w;
      result.witness = std::move(c.witness);
      return result;
    }
  }
  return result;
}

Mask IssuePartition::row(int t) const {
  Mask out = 0;
  for (Mask s : sets.at(t - 1)) out |= s;
  return out;
}

std::string IssuePartition::str() const {
  std::string s;
  for (int t = 1; t <= 3; ++t) {
    for (int k = 1; k <= 4; ++k) {
      if (!s.empty()) s += ' ';
      s += "A" + std::to_string(t) + std::to_string(k) + "={";
      bool first = true;
      for (int j = 1; j <= issues; ++j) {
        if (block(t, k) & issue_bit(issues, j)) {
          if (!first) s += ',';
          s += std::to_string(j);
          first = false;
        }
      }
      s += '}';
    }
  }
  return s;
}

IssuePartition issue_partition(const ManipulationWitness& witness,
                               const Evaluation& stage_truthful,
                               const Evaluation& stage_lied) {
  const Evaluation x = witness.truth();
  require_same_length(x, stage_truthful);
  require_same_length(x, stage_lied);
  const Mask xi = x.bits();
  const Mask v = stage_truthful.bits();
  const Mask u = stage_lied.bits();
  const Mask z = witness.truthful_outcome.bits();
  const Mask w = witness.lied_outcome.bits();
  if (!between_masks(xi, v, u)) {
    throw Error("stage output " + stage_truthful.str() +
                " is not between the truth " + x.str() + " and " +
                stage_lied.str() + "; the stage is not monotone and IIA");
  }
  const int m = x.size();
  const Mask all = full_mask(m);
  const std::array<Mask, 3> rows = {
      ~(xi ^ v) & ~(v ^ u) & all,  // x = v = u
      ~(xi ^ v) & (v ^ u) & all,   // x = v != u
      (xi ^ v) & ~(v ^ u) & all,   // x != v = u
  };
  const std::array<Mask, 4> cols = {
      ~(xi ^ z) & ~(z ^ w) & all,  // x = z = w
      ~(xi ^ z) & (z ^ w) & all,   // x = z != w
      ~(xi ^ w) & (z ^ w) & all,   // x = w != z
      (xi ^ z) & ~(z ^ w) & all,   // x != z = w
  };
  IssuePartition p;
  p.issues = m;
  for (int t = 0; t < 3; ++t) {
    for (int k = 0; k < 4; ++k) p.sets[t][k] = rows[t] & cols[k];
  }
  return p;
}

IssuePartition issue_partition(const Aggregator& aggregator,
                               const ManipulationWitness& witness) {
  if (!aggregator.has_stage()) {
    throw Error("aggregator '" + aggregator.name() +
                "' is not a corrected IIA stage");
  }
  const int m = aggregator.issues();
  const auto rows = witness.profile.rows();
  std::vector<Mask> lied(rows.begin(), rows.end());
  lied.at(witness.voter) = witness.lie.bits();
  return issue_partition(witness, {aggregator.stage_apply(rows), m},
                         {aggregator.stage_apply(lied), m});
}

}  // namespace binagg
