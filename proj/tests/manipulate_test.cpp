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

#include <gtest/gtest.h>

#include "binagg/fixtures.hpp"
#include "binagg/manipulate.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace binagg {
namespace {

using Type = ManipulationKind::Type;

Evaluation E(const char* s) { return Evaluation::parse(s); }

Aggregator bind(const EvaluationSpace& s, const char* spec, int n) {
  return Aggregator::bind(s, parse_aggregator_spec(spec), n);
}

DeviationFlags flags(const char* x, const char* z, const char* w) {
  return classify_deviation(E(x), E(z), E(w), WeightVector::uniform(3));
}

TEST(IssueRelation, Examples) {
  EXPECT_EQ(issue_relation(E("011"), E("101"), E("001"), 1),
            IssueRelation::kPreferableW);
  EXPECT_EQ(issue_relation(E("011"), E("101"), E("001"), 3),
            IssueRelation::kIndifferent);
  EXPECT_EQ(issue_relation(E("011"), E("110"), E("101"), 2),
            IssueRelation::kPreferableZ);
  EXPECT_EQ(relation_symbol(IssueRelation::kPreferableW), '+');
  EXPECT_EQ(relation_symbol(IssueRelation::kPreferableZ), '-');
  EXPECT_EQ(relation_symbol(IssueRelation::kIndifferent), '=');
}

TEST(ClassifyDeviation, ThreeScenarios) {
  EXPECT_EQ(flags("011", "110", "101"), (DeviationFlags{true, false, false}));
  EXPECT_EQ(flags("011", "101", "010"), (DeviationFlags{true, false, true}));
  EXPECT_EQ(flags("011", "101", "001"), (DeviationFlags{true, true, true}));
  EXPECT_EQ(flags("011", "101", "101"), (DeviationFlags{}));
}

TEST(ClassifyDeviation, WeightsChangeTheHammingVerdict) {
  // Gains issue 1, loses issue 3.
  const auto x = E("101"), z = E("001"), w = E("100");
  EXPECT_FALSE(classify_deviation(x, z, w, WeightVector::uniform(3)).hamming);
  EXPECT_TRUE(classify_deviation(x, z, w, WeightVector({2, 1, 1})).hamming);
  EXPECT_FALSE(classify_deviation(x, z, w, WeightVector({1, 1, 2})).hamming);
}

TEST(ManipulationKind, ParseAndPrint) {
  EXPECT_EQ(ManipulationKind::parse("full", WeightVector::uniform(2)).str(),
            "full");
  EXPECT_EQ(
      ManipulationKind::parse("hamming", WeightVector({1, 3})).str(),
      "hamming(1,3)");
  EXPECT_THROW(ManipulationKind::parse("strong", WeightVector::uniform(2)),
               Error);
}

TEST(FindWitness, PluralityIsHammingManipulable) {
  const auto s = fixtures::pref3();
  const auto f = bind(s, "plurality", 3);
  const auto kind = ManipulationKind::hamming(WeightVector::uniform(3));
  const auto w = find_witness(s, f, kind);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(f(w->profile), w->truthful_outcome);
  EXPECT_EQ(f(w->profile.with_row(w->voter, w->lie.bits())), w->lied_outcome);
  EXPECT_TRUE(kind.holds(w->truth().bits(), w->truthful_outcome.bits(),
                         w->lied_outcome.bits()));
  const auto naive = oracle::find_witness(s, f, Type::kHamming,
                                          WeightVector::uniform(3));
  ASSERT_TRUE(naive.has_value());
  EXPECT_EQ(std::vector<Mask>(w->profile.rows().begin(), w->profile.rows().end()),
            naive->rows);
  EXPECT_EQ(w->voter, naive->voter);
  EXPECT_EQ(w->lie.bits(), naive->lie);

  // The deviation between the first two plurality tables is a partial
  // manipulation only: both outcomes sit at distance 2 from 011.
  const Profile before(3, {0b110, 0b011, 0b101});
  const auto z = f(before);
  const auto after = f(before.with_row(1, 0b101));
  EXPECT_EQ(z.str(), "110");
  EXPECT_EQ(after.str(), "101");
  EXPECT_TRUE(ManipulationKind::partial().holds(0b011, z.bits(), after.bits()));
  EXPECT_FALSE(kind.holds(0b011, z.bits(), after.bits()));
}

TEST(FindWitness, FourCandidateDeviationIsHammingWitness) {
  const auto s = fixtures::pref4();
  const auto f = Aggregator::nn_corrected(s, IiaStage::majority(6, 3),
                                          WeightVector::uniform(6),
                                          fixtures::four_candidate_ties(s));
  const auto kind = ManipulationKind::hamming(WeightVector::uniform(6));
  EXPECT_TRUE(find_witness(s, f, kind).has_value());
  const auto x = fixtures::four_candidate_profile();
  const auto y = fixtures::four_candidate_deviation();
  const auto truth = x.row(1);
  EXPECT_EQ(hamming(truth, f(x)), 3);
  EXPECT_EQ(hamming(truth, f(y)), 2);
  EXPECT_TRUE(kind.holds(truth.bits(), f(x).bits(), f(y).bits()));
}

TEST(FindWitness, DictatorIsFree) {
  for (const auto& [name, s] : fixtures::standard_spaces()) {
    if (s.issues() > 6) continue;
    const auto f = bind(s, "dictator:1", 2);
    for (const auto& k :
         {ManipulationKind::partial(), ManipulationKind::full(),
          ManipulationKind::hamming(WeightVector::uniform(s.issues()))}) {
      EXPECT_TRUE(certify(s, f, k).free) << name << ' ' << k.str();
    }
  }
}

TEST(FindWitness, BudgetIsEnforced) {
  const auto s = fixtures::pref4();
  EXPECT_EQ(search_size(s, 3), 24u * 24 * 24 * 3 * 24);
  EXPECT_THROW(find_witness(s, bind(s, "plurality", 3),
                            ManipulationKind::partial(), {1000}),
               BudgetExceeded);
  try {
    find_witness(s, bind(s, "plurality", 3), ManipulationKind::partial(), {10});
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), search_size(s, 3));
    EXPECT_EQ(e.budget(), 10u);
  }
}

TEST(FindWitness, UnanimityStageIsPartialFreeOnDoctrinalSpace) {
  const auto s = fixtures::doctrinal();
  EXPECT_TRUE(
      certify(s, bind(s, "quota:3,3,3", 3), ManipulationKind::partial()).free);
  EXPECT_FALSE(
      certify(fixtures::pref3(), bind(fixtures::pref3(), "plurality", 3),
              ManipulationKind::partial())
          .free);
}

TEST(Certify, PartitionAndWelfareExamples) {
  const auto s = fixtures::choose(4, 2);
  const auto topk = induced_topk_order(s);
  auto spec = parse_aggregator_spec("swm");
  spec.ties = topk.best_first();
  const auto f = Aggregator::bind(s, spec, 3);
  EXPECT_TRUE(certify(s, f, ManipulationKind::hamming(WeightVector::uniform(4)))
                  .free);
  const auto p = fixtures::pref3();
  EXPECT_TRUE(
      certify(p, bind(p, "partition:1,2;3", 2), ManipulationKind::full()).free);
}

TEST(Certify, SweepReportsFailingWeights) {
  const auto s = fixtures::pref3();
  const auto make = [&](const WeightVector&) {
    return bind(s, "plurality", 3);
  };
  const auto r = certify_hamming_sweep(
      s, make, {WeightVector::uniform(3), WeightVector({2, 1, 1})});
  EXPECT_FALSE(r.free);
  ASSERT_TRUE(r.failing_weights.has_value());
  EXPECT_EQ(*r.failing_weights, WeightVector::uniform(3));
}

TEST(ForEachWitness, VisitsInOrderAndStops) {
  const auto s = fixtures::pref3();
  const auto f = bind(s, "plurality", 3);
  int visits = 0;
  for_each_witness(s, f, ManipulationKind::partial(),
                   [&](const ManipulationWitness&) { return ++visits < 5; });
  EXPECT_EQ(visits, 5);
}

TEST(FormatWitness, Layout) {
  const auto x = fixtures::four_candidate_profile();
  ManipulationWitness w{x,
                        1,
                        fixtures::four_candidate_deviation().row(1),
                        E("110110"),
                        E("011010"),
                        ManipulationKind::hamming(WeightVector::uniform(6))};
  EXPECT_EQ(w.relation_string(), "+=+-==");
  EXPECT_EQ(format_witness(w),
            "kind: hamming(1,1,1,1,1,1)\n"
            "profile:\n"
            "  110110\n"
            "  011111\n"
            "  101000\n"
            "voter: 2\n"
            "truth: 011111\n"
            "lie: 011011\n"
            "z: 110110  d=3\n"
            "w: 011010  d=2\n"
            "relation: +=+-==\n");
}

TEST(IssuePartition, FourCandidateDeviation) {
  const auto s = fixtures::pref4();
  const auto f = Aggregator::nn_corrected(s, IiaStage::majority(6, 3),
                                          WeightVector::uniform(6),
                                          fixtures::four_candidate_ties(s));
  const auto x = fixtures::four_candidate_profile();
  ManipulationWitness w{x,
                        1,
                        fixtures::four_candidate_deviation().row(1),
                        f(x),
                        f(fixtures::four_candidate_deviation()),
                        ManipulationKind::hamming(WeightVector::uniform(6))};
  const auto p = issue_partition(f, w);
  EXPECT_EQ(p.row(2), issue_bit(6, 4));
  EXPECT_EQ(p.row(1) | p.row(2) | p.row(3), full_mask(6));
  EXPECT_THROW(issue_partition(bind(s, "swm", 3), w), Error);
}

TEST(IssuePartition, UnchangedStageOutputLeavesMiddleRowEmpty) {
  const auto w = ManipulationWitness{Profile(3, {0b110, 0b011, 0b101}),
                                     0,
                                     E("101"),
                                     E("011"),
                                     E("101"),
                                     ManipulationKind::partial()};
  const auto p = issue_partition(w, E("111"), E("111"));
  EXPECT_EQ(p.row(2), 0u);
  EXPECT_THROW(issue_partition(w, E("011"), E("111")), Error);
}

// Properties.

TEST(ManipulateProperties, ImplicationChainOnRandomTriples) {
  arb::Rng rng(41);
  for (int trial = 0; trial < 5000; ++trial) {
    const int m = rng.uniform(1, 10);
    const Evaluation x(rng.mask(m), m), z(rng.mask(m), m), w(rng.mask(m), m);
    const auto full = classify_deviation(x, z, w, WeightVector::uniform(m));
    for (int k = 0; k < 4; ++k) {
      const auto weights = arb::weights(rng, m, 6);
      const auto f = classify_deviation(x, z, w, weights);
      if (full.full) {
        EXPECT_TRUE(f.hamming);
      }
      if (f.hamming) {
        EXPECT_TRUE(f.partial);
      }
      EXPECT_EQ(f.partial, full.partial);
      EXPECT_EQ(f.full, full.full);
      // Agreement with the mask-level predicate.
      EXPECT_EQ(ManipulationKind::hamming(weights).holds(x.bits(), z.bits(),
                                                         w.bits()),
                f.hamming);
    }
    EXPECT_EQ(ManipulationKind::partial().holds(x.bits(), z.bits(), w.bits()),
              full.partial);
    EXPECT_EQ(ManipulationKind::full().holds(x.bits(), z.bits(), w.bits()),
              full.full);
  }
}

TEST(ManipulateProperties, UnchangedOutcomeIsNeverAManipulation) {
  arb::Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = rng.uniform(1, 10);
    const Evaluation x(rng.mask(m), m), z(rng.mask(m), m);
    EXPECT_EQ(classify_deviation(x, z, z, arb::weights(rng, m)),
              DeviationFlags{});
  }
}

TEST(ManipulateProperties, WitnessesSatisfyTheirInvariants) {
  arb::Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform(2, 4);
    const auto s = arb::space(rng, m, 0.6);
    const auto f = bind(s, "plurality", 3);
    const auto kind = ManipulationKind::hamming(arb::weights(rng, m, 2));
    for_each_witness(s, f, kind, [&](const ManipulationWitness& w) {
      EXPECT_EQ(f(w.profile), w.truthful_outcome);
      EXPECT_EQ(f(w.profile.with_row(w.voter, w.lie.bits())), w.lied_outcome);
      const auto fl = classify_deviation(w.truth(), w.truthful_outcome,
                                         w.lied_outcome, kind.weights());
      EXPECT_TRUE(fl.hamming && fl.partial);
      EXPECT_NE(w.truthful_outcome, w.lied_outcome);
      return true;
    });
  }
}

TEST(ManipulateProperties, SearchMatchesNestedLoopOracle) {
  arb::Rng rng(44);
  const char* specs[] = {"plurality", "swm", "nn(majority)", "dictator:2",
                         "nn(quota:1,1,1)"};
  for (int trial = 0; trial < 60; ++trial) {
    const int m = rng.uniform(2, 3);
    const auto s = arb::space(rng, m, 0.6);
    const int n = rng.uniform(2, 3);
    const char* spec = specs[trial % 5];
    if (std::string(spec) == "nn(quota:1,1,1)" && m != 3) continue;
    auto as = parse_aggregator_spec(spec);
    as.ties = arb::ties(rng, s).best_first();
    const auto w = arb::weights(rng, m, 2);
    as.weights = w;
    const auto f = Aggregator::bind(s, as, n);
    for (Type type : {Type::kPartial, Type::kFull, Type::kHamming}) {
      const auto kind = type == Type::kPartial ? ManipulationKind::partial()
                        : type == Type::kFull  ? ManipulationKind::full()
                                               : ManipulationKind::hamming(w);
      const auto got = find_witness(s, f, kind);
      const auto want = oracle::find_witness(s, f, type, w);
      ASSERT_EQ(got.has_value(), want.has_value()) << spec << ' ' << kind.str();
      if (!got) continue;
      EXPECT_EQ(std::vector<Mask>(got->profile.rows().begin(),
                                  got->profile.rows().end()),
                want->rows);
      EXPECT_EQ(got->voter, want->voter);
      EXPECT_EQ(got->lie.bits(), want->lie);
    }
  }
}

TEST(ManipulateProperties, IssuePartitionCoversEveryIssueOnce) {
  arb::Rng rng(45);
  int seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.uniform(3, 5);
    const auto s = arb::space(rng, m, 0.5);
    const auto f = Aggregator::nn_corrected(s, arb::stage(rng, m, 3),
                                            WeightVector::uniform(m),
                                            arb::ties(rng, s));
    for_each_witness(s, f, ManipulationKind::partial(),
                     [&](const ManipulationWitness& w) {
                       const auto p = issue_partition(f, w);
                       Mask all = 0;
                       for (int t = 1; t <= 3; ++t) {
                         for (int k = 1; k <= 4; ++k) {
                           EXPECT_EQ(all & p.block(t, k), 0u);
                           all |= p.block(t, k);
                         }
                       }
                       EXPECT_EQ(all, full_mask(m));
                       ++seen;
                       return seen % 50 != 0;
                     });
  }
  EXPECT_GT(seen, 0);
}

}  // namespace
}  // namespace binagg
