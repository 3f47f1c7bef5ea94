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

#include <algorithm>
#include <map>

#include "binagg/aggregate.hpp"
#include "binagg/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace binagg {
namespace {

Evaluation E(const char* s) { return Evaluation::parse(s); }

Profile P(std::initializer_list<const char*> rows) {
  std::vector<Evaluation> es;
  for (const char* r : rows) es.push_back(E(r));
  return Profile(es);
}

Aggregator bind(const EvaluationSpace& s, const char* spec, int n) {
  return Aggregator::bind(s, parse_aggregator_spec(spec), n);
}

std::vector<std::string> row_strings(const Profile& p) {
  std::vector<std::string> out;
  for (int i = 0; i < p.voters(); ++i) out.push_back(p.row(i).str());
  return out;
}

TEST(MonotoneFunction, EnumerationCountsAndOrder) {
  EXPECT_EQ(MonotoneFunction::enumerate_all(1).size(), 3u);
  EXPECT_EQ(MonotoneFunction::enumerate_all(2).size(), 6u);
  const auto all3 = MonotoneFunction::enumerate_all(3);
  EXPECT_EQ(all3.size(), 20u);
  EXPECT_EQ(MonotoneFunction::enumerate_all(4).size(), 168u);
  for (std::size_t k = 1; k < all3.size(); ++k) {
    EXPECT_LT(all3[k - 1].str(), all3[k].str());
  }
  // Independent monotonicity check on every table.
  for (const auto& f : all3) {
    for (Mask a = 0; a < 8; ++a) {
      for (Mask b = 0; b < 8; ++b) {
        if ((a & b) == a) {
          EXPECT_LE(f(a), f(b));
        }
      }
    }
  }
}

TEST(MonotoneFunction, QuotaAndTables) {
  const auto maj = MonotoneFunction::quota(3, 2);
  EXPECT_TRUE(maj.is_symmetric());
  EXPECT_EQ(maj.threshold(), 2);
  EXPECT_FALSE(maj(0b100));
  EXPECT_TRUE(maj(0b101));
  EXPECT_THROW(MonotoneFunction::quota(3, 5), Error);
  EXPECT_THROW(MonotoneFunction::from_table(2, {true, false, false, true}),
               Error);
  const auto first = MonotoneFunction::from_table(2, {false, true, false, true});
  EXPECT_FALSE(first.is_symmetric());
  EXPECT_TRUE(first(0b01));
  EXPECT_FALSE(first(0b10));
  EXPECT_TRUE(MonotoneFunction::from_table(2, {false, false, false, true})
                  .is_symmetric());
}

TEST(StageApply, ParadoxProfiles) {
  const auto maj = IiaStage::majority(3, 3);
  EXPECT_EQ(stage_apply(maj, P({"110", "011", "101"})).str(), "111");
  EXPECT_EQ(stage_apply(maj, P({"010", "100", "111"})).str(), "110");
  EXPECT_THROW(stage_apply(maj, P({"10", "01", "11"})), Error);
  EXPECT_THROW(stage_apply(maj, P({"101", "011"})), Error);
}

TEST(StageApply, UnanimityStaysInDoctrinalSpace) {
  const auto s = fixtures::doctrinal();
  const auto all = IiaStage::unanimity(3, 3);
  for (Mask a : s.feasible()) {
    for (Mask b : s.feasible()) {
      for (Mask c : s.feasible()) {
        EXPECT_TRUE(s.contains(all.apply(std::vector<Mask>{a, b, c})));
      }
    }
  }
}

TEST(MajorityThreshold, EvenVotersNeedStrictMajority) {
  EXPECT_EQ(majority_threshold(3), 2);
  EXPECT_EQ(majority_threshold(4), 3);
  EXPECT_EQ(majority_threshold(1), 1);
}

TEST(Plurality, ThreeTables) {
  const auto s = fixtures::pref3();
  const auto t = TieOrder::descending(s);
  EXPECT_EQ(plurality(s, P({"110", "011", "101"}), t).str(), "110");
  EXPECT_EQ(plurality(s, P({"110", "101", "101"}), t).str(), "101");
  EXPECT_EQ(plurality(s, P({"101", "011", "010"}), t).str(), "101");
  EXPECT_EQ(bind(s, "plurality", 3)(P({"110", "011", "101"})).str(), "110");
}

TEST(Partition, InductiveCorrection) {
  const auto s = fixtures::pref3();
  const Partition p{{{1, 2}, {3}}};
  EXPECT_EQ(partition_apply(s, p, P({"110", "011"})).str(), "110");
  EXPECT_EQ(partition_apply(s, p, P({"110", "010"})).str(), "110");
  EXPECT_EQ(partition_apply(s, p, P({"100", "011"})).str(), "101");
  const Partition all{{{1, 2, 3}, {}}};
  EXPECT_EQ(partition_apply(s, all, P({"011", "100"})).str(), "011");
  EXPECT_EQ(p.str(), "1,2;3");
  EXPECT_EQ(p.owners(3), (std::vector<int>{0, 0, 1}));
}

TEST(Partition, Validation) {
  EXPECT_THROW((Partition{{{1}, {1, 2, 3}}}.validate(3, 2)), Error);
  EXPECT_THROW((Partition{{{1}, {3}}}.validate(3, 2)), Error);
  EXPECT_THROW((Partition{{{1}, {2}, {3}}}.validate(3, 2)), Error);
  EXPECT_THROW((Partition{{{0, 1}, {2, 3}}}.validate(3, 2)), Error);
  EXPECT_NO_THROW((Partition{{{1}, {2, 3}}}.validate(3, 2)));
}

TEST(NnCorrected, FourCandidateTables) {
  const auto s = fixtures::pref4();
  const auto f = Aggregator::nn_corrected(s, IiaStage::majority(6, 3),
                                          WeightVector::uniform(6),
                                          fixtures::four_candidate_ties(s));
  const auto x = fixtures::four_candidate_profile();
  const auto y = fixtures::four_candidate_deviation();
  EXPECT_EQ(Evaluation(f.stage_apply(x.rows()), 6).str(), "111110");
  EXPECT_EQ(f(x).str(), "110110");
  EXPECT_EQ(Evaluation(f.stage_apply(y.rows()), 6).str(), "111010");
  EXPECT_EQ(f(y).str(), "011010");
  for (const auto& t : {TieOrder::ascending(s), TieOrder::descending(s),
                        TieOrder::shuffled(s, 5)}) {
    const auto g = Aggregator::nn_corrected(s, IiaStage::majority(6, 3),
                                            WeightVector::uniform(6), t);
    EXPECT_EQ(g(y).str(), "011010");
  }
  EXPECT_EQ(row_strings(x),
            (std::vector<std::string>{"110110", "011111", "101000"}));
}

TEST(Swm, SeparationFixture) {
  const auto s = fixtures::welfare_separation_space();
  const auto w = WeightVector::uniform(6);
  const auto t = TieOrder::ascending(s);
  const auto a = fixtures::welfare_profile_a();
  const auto b = fixtures::welfare_profile_b();
  EXPECT_EQ(swm(s, w, t, a).str(), "000111");
  EXPECT_EQ(swm(s, w, t, b).str(), "001000");
  EXPECT_EQ(unrestricted_minimizer(a).str(), "000000");
  EXPECT_EQ(unrestricted_minimizer(b).str(), "000000");
  EXPECT_EQ(a.voters(), 9);
  EXPECT_EQ(b.voters(), 9);
}

TEST(Swm, UnanimousProfileReturnsTheRow) {
  const auto s = fixtures::cycle6();
  for (Mask x : s.feasible()) {
    const Profile p(s.issues(), {x, x, x});
    EXPECT_EQ(swm(s, WeightVector::uniform(s.issues()), TieOrder::descending(s),
                  p)
                  .bits(),
              x);
  }
}

TEST(SwmTopk, Examples) {
  const auto s = fixtures::choose(4, 2);
  EXPECT_EQ(swm_topk(s, P({"1100", "1100", "1010"})).str(), "1100");
  EXPECT_EQ(swm_topk(s, P({"1100", "1010", "0110"})).str(), "1100");
  EXPECT_EQ(swm_topk(s, P({"1100", "1010", "0110"}), {3, 2, 1, 4}).str(),
            "0110");
  EXPECT_THROW(swm_topk(fixtures::pref3(), P({"110"})), Error);
  EXPECT_THROW(swm_topk(s, P({"1100"}), {1, 2, 3}), Error);
}

TEST(SwmTopk, AgreesWithGenericSwmOnEveryProfile) {
  for (auto [m, k] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{4, 1}}) {
    const auto s = fixtures::choose(m, k);
    const auto w = WeightVector::uniform(m);
    const auto t = induced_topk_order(s);
    const auto X = s.feasible();
    int seen = 0;
    for (Mask a : X) {
      for (Mask b : X) {
        for (Mask c : X) {
          const Profile p(m, {a, b, c});
          const auto top = swm_topk(s, p);
          ASSERT_EQ(top, swm(s, w, t, p));
          ASSERT_EQ(top.str(),
                    oracle::swm(s, w, t.best_first(), row_strings(p)));
          ++seen;
        }
      }
    }
    EXPECT_EQ(seen, static_cast<int>(X.size() * X.size() * X.size()));
  }
}

TEST(AggregatorSpec, ParseAndPrint) {
  for (const char* text :
       {"dictator:2", "majority", "quota:1,2,3", "plurality",
        "partition:1,2;3", "nn(majority)", "nn(quota:2,2,2)", "swm"}) {
    EXPECT_EQ(parse_aggregator_spec(text).str(), text);
  }
  EXPECT_EQ(parse_aggregator_spec("  swm ").str(), "swm");
  for (const char* bad : {"", "bogus", "quota:", "quota:1,x", "dictator:0",
                          "nn(plurality)", "nn(majority", "partition:1;;x"}) {
    EXPECT_THROW(parse_aggregator_spec(bad), Error) << bad;
  }
}

TEST(Aggregator, BindChecksArity) {
  const auto s = fixtures::doctrinal();
  EXPECT_THROW(bind(s, "quota:1,2", 3), Error);
  EXPECT_THROW(bind(s, "dictator:4", 3), Error);
  EXPECT_THROW(bind(s, "partition:1;2", 2), Error);
  EXPECT_EQ(bind(s, "quota:3,3,3", 3)(P({"010", "100", "111"})).str(), "000");
  EXPECT_THROW(bind(s, "majority", 3)(P({"010", "100"})), Error);
}

TEST(Aggregator, Families) {
  const auto s = fixtures::pref3();
  EXPECT_EQ(family_name(bind(s, "dictator:1", 3).family()), "M");
  EXPECT_TRUE(bind(s, "dictator:1", 3).consistent());
  EXPECT_EQ(family_name(bind(s, "majority", 3).family()), "M");
  EXPECT_FALSE(bind(s, "majority", 3).consistent());
  EXPECT_EQ(family_name(bind(s, "nn(majority)", 3).family()), "H1");
  auto spec = parse_aggregator_spec("nn(majority)");
  spec.ties = TieOrder::descending(s).best_first();
  EXPECT_EQ(family_name(Aggregator::bind(s, spec, 3).family()), "H2");
  EXPECT_EQ(family_name(bind(s, "swm", 3).family()), "F");
  EXPECT_EQ(family_name(bind(s, "plurality", 3).family()), "none");
  EXPECT_TRUE(bind(s, "nn(majority)", 3).has_stage());
  EXPECT_FALSE(bind(s, "swm", 3).has_stage());
}

TEST(Aggregator, FromFunction) {
  const auto f = Aggregator::from_function(
      "first", 3, 2, [](std::span<const Mask> rows) { return rows[0]; });
  EXPECT_EQ(f.name(), "first");
  EXPECT_EQ(f(P({"101", "010"})).str(), "101");
}

TEST(CheckStructural, Examples) {
  const auto s = fixtures::pref3();
  const auto iia = check_structural(s, bind(s, "majority", 3),
                                    StructuralProperty::kIia);
  EXPECT_TRUE(iia.holds);
  EXPECT_TRUE(iia.witness.empty());

  const auto plur = check_structural(s, bind(s, "plurality", 3),
                                     StructuralProperty::kIia);
  ASSERT_FALSE(plur.holds);
  ASSERT_EQ(plur.witness.size(), 2u);
  // The pair agrees on some column but the outcome differs there.
  const auto f = bind(s, "plurality", 3);
  const auto& a = plur.witness[0];
  const auto& b = plur.witness[1];
  bool shown = false;
  for (int j = 1; j <= 3; ++j) {
    if (a.column(j) == b.column(j) && f(a)[j] != f(b)[j]) shown = true;
  }
  EXPECT_TRUE(shown);

  for (const auto& [name, sp] : fixtures::standard_spaces()) {
    if (sp.issues() > 6) continue;
    EXPECT_TRUE(check_structural(sp, bind(sp, "dictator:1", 3),
                                 StructuralProperty::kDictatorial)
                    .holds)
        << name;
  }
  EXPECT_FALSE(check_structural(s, bind(s, "majority", 3),
                                StructuralProperty::kDictatorial)
                   .holds);
  EXPECT_TRUE(check_structural(s, bind(s, "majority", 3),
                               StructuralProperty::kAnonymous)
                  .holds);
  EXPECT_FALSE(check_structural(s, bind(s, "dictator:2", 3),
                                StructuralProperty::kAnonymous)
                   .holds);
  EXPECT_TRUE(check_structural(s, bind(s, "quota:1,2,3", 3),
                               StructuralProperty::kMonotone)
                  .holds);
}

TEST(CheckStructural, BudgetIsEnforced) {
  const auto s = fixtures::pref4();
  EXPECT_THROW(check_structural(s, bind(s, "majority", 3),
                                StructuralProperty::kIia, 100),
               BudgetExceeded);
}

TEST(CheckStructural, PropertyNames) {
  EXPECT_EQ(parse_property("monotone"), StructuralProperty::kMonotone);
  EXPECT_EQ(property_name(StructuralProperty::kDictatorial), "dictatorial");
  EXPECT_THROW(parse_property("fair"), Error);
}

// Properties.

// Brute-force IIA: outcome on issue j is a function of column j.
bool oracle_iia(const EvaluationSpace& s, const Aggregator& f) {
  const int m = s.issues();
  const auto X = s.feasible();
  std::vector<std::map<Mask, bool>> seen(static_cast<std::size_t>(m) + 1);
  for (Mask a : X) {
    for (Mask b : X) {
      const Profile p(m, {a, b});
      const auto z = f(p);
      for (int j = 1; j <= m; ++j) {
        auto [it, fresh] = seen[j].emplace(p.column(j), z[j]);
        if (!fresh && it->second != z[j]) return false;
      }
    }
  }
  return true;
}

TEST(AggregateProperties, IiaCheckerMatchesBruteForce) {
  arb::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.uniform(2, 4);
    const auto s = arb::space(rng, m, 0.6);
    const std::string part = m == 2 ? "partition:1;2" : "partition:1;2,3";
    for (const std::string spec :
         {"dictator:1", "plurality", "swm", "nn(majority)", part.c_str()}) {
      if (spec.starts_with("partition") && m > 3) continue;
      const auto f = bind(s, spec.c_str(), 2);
      EXPECT_EQ(check_structural(s, f, StructuralProperty::kIia).holds,
                oracle_iia(s, f))
          << spec;
    }
  }
}

TEST(AggregateProperties, ConsistentRulesStayFeasible) {
  arb::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(2, 6);
    const auto s = arb::space(rng, m, 0.4);
    const int n = 3;
    std::vector<Aggregator> fs{bind(s, "plurality", n), bind(s, "swm", n),
                               bind(s, "nn(majority)", n),
                               bind(s, "dictator:3", n)};
    Partition part;
    part.blocks.resize(n);
    for (int j = 1; j <= m; ++j) {
      part.blocks[rng.uniform(0, n - 1)].push_back(j);
    }
    AggregatorSpec ps{rule::PartitionRule{part}, {}, {}};
    fs.push_back(Aggregator::bind(s, ps, n));
    const auto p = Profile(m, arb::profile_rows(rng, s, n));
    for (const auto& f : fs) {
      EXPECT_TRUE(s.contains(f.apply(p.rows()))) << f.name();
    }
  }
}

TEST(AggregateProperties, MonotoneStagesKeepOutcomeBetween) {
  arb::Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(1, 6);
    const auto stage = arb::stage(rng, m, 3);
    const Mask full = full_mask(m);
    const int i = rng.uniform(0, 2);
    std::vector<Mask> x{rng.mask(m) & full, rng.mask(m) & full,
                        rng.mask(m) & full};
    for (Mask lie = 0; lie <= full; ++lie) {
      auto y = x;
      y[i] = lie;
      const Mask mx = stage.apply(x);
      const Mask my = stage.apply(y);
      ASSERT_TRUE(between_masks(x[i], mx, my))
          << mask_string(x[i], m) << ' ' << mask_string(mx, m) << ' '
          << mask_string(my, m);
    }
  }
}

TEST(AggregateProperties, NnCorrectionIsIdentityOnFeasibleStageOutput) {
  arb::Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(2, 6);
    const auto s = arb::space(rng, m, 0.5);
    const auto stage = arb::stage(rng, m, 3);
    const auto w = arb::weights(rng, m, 3);
    const auto t = arb::ties(rng, s);
    const auto f = Aggregator::nn_corrected(s, stage, w, t);
    const auto rows = arb::profile_rows(rng, s, 3);
    const Mask v = stage.apply(rows);
    const auto want = oracle::nn_select(s, mask_string(v, m), w, t.best_first());
    EXPECT_EQ(mask_string(f.apply(rows), m), want);
    if (s.contains(v)) {
      EXPECT_EQ(f.apply(rows), v);
    }
  }
}

TEST(AggregateProperties, NnCorrectionMapsPassH2) {
  arb::Rng rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform(2, 6);
    const auto s = arb::space(rng, m, 0.5);
    const auto w = arb::weights(rng, m, 2);
    const auto t = arb::ties(rng, s);
    const auto f = Aggregator::nn_corrected(s, IiaStage::majority(m, 1), w, t);
    // One voter and the majority stage make f the correction map itself.
    const Selector sel = [&](const Evaluation& p) {
      return Evaluation(f.apply(std::vector<Mask>{p.bits()}), m);
    };
    EXPECT_FALSE(check_h2(sel, s, w).has_value());
  }
}

TEST(AggregateProperties, SwmIsAnonymousAndMatchesNaiveSum) {
  arb::Rng rng(36);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = rng.uniform(2, 7);
    const auto s = arb::space(rng, m, 0.3);
    const auto w = arb::weights(rng, m, 3);
    const auto t = arb::ties(rng, s);
    const int n = rng.uniform(1, 6);
    auto rows = arb::profile_rows(rng, s, n);
    const auto z = swm(s, w, t, Profile(m, rows));
    std::vector<std::string> rs;
    for (Mask r : rows) rs.push_back(mask_string(r, m));
    EXPECT_EQ(z.str(), oracle::swm(s, w, t.best_first(), rs));
    std::shuffle(rows.begin(), rows.end(), rng.engine());
    EXPECT_EQ(swm(s, w, t, Profile(m, rows)), z);
  }
}

TEST(AggregateProperties, SwmReturnsFeasibleUnrestrictedMinimizer) {
  arb::Rng rng(37);
  int hits = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = rng.uniform(2, 6);
    const auto s = arb::space(rng, m, 0.7);
    const int n = 2 * rng.uniform(0, 2) + 1;  // odd: no issue-wise ties
    const auto rows = arb::profile_rows(rng, s, n);
    const Profile p(m, rows);
    const auto u = unrestricted_minimizer(p);
    // Weighted majority with uniform weights is plain majority.
    EXPECT_EQ(u.bits(), IiaStage::majority(m, n).apply(rows));
    if (s.contains(u.bits())) {
      ++hits;
      EXPECT_EQ(swm(s, WeightVector::uniform(m), arb::ties(rng, s), p), u);
    }
  }
  EXPECT_GT(hits, 50);
}

TEST(AggregateProperties, SeparationNeedsTheWholeProfile) {
  const auto s = fixtures::welfare_separation_space();
  const auto a = fixtures::welfare_profile_a();
  const auto b = fixtures::welfare_profile_b();
  const auto maj = IiaStage::majority(6, 9);
  EXPECT_EQ(stage_apply(maj, a), stage_apply(maj, b));
  EXPECT_NE(swm(s, WeightVector::uniform(6), TieOrder::ascending(s), a),
            swm(s, WeightVector::uniform(6), TieOrder::ascending(s), b));
}

}  // namespace
}  // namespace binagg
