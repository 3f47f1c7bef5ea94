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

#include "binagg/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "binagg/fixtures.hpp"
#include "binagg/manipulate.hpp"
#include "profile_cursor.hpp"

namespace binagg {
namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  explicit Recorder(std::string name) { report_.name = std::move(name); }

  void check(std::string label, bool passed, std::string evidence) {
    report_.checks.push_back({std::move(label), passed, std::move(evidence)});
  }
  void expect_eq(std::string label, const std::string& got,
                 const std::string& want) {
    check(std::move(label), got == want,
          got == want ? got : "got " + got + ", expected " + want);
  }

  SuiteReport take() { return std::move(report_); }

 private:
  SuiteReport report_;
};

std::string rows_string(const Profile& p) {
  std::string s;
  for (int i = 0; i < p.voters(); ++i) {
    if (i) s += '|';
    s += p.row(i).str();
  }
  return s;
}

std::string witness_line(const ManipulationWitness& w) {
  return "voter " + std::to_string(w.voter + 1) + " reports " + w.lie.str() +
         " instead of " + w.truth().str() + " in " + rows_string(w.profile) +
         ": " + w.truthful_outcome.str() + " -> " + w.lied_outcome.str() +
         " [" + w.relation_string() + "]";
}

std::vector<Partition> partition_battery(int m, int n) {
  std::vector<Partition> out;
  auto range = [](int lo, int hi) {
    std::vector<int> v;
    for (int j = lo; j <= hi; ++j) v.push_back(j);
    return v;
  };
  out.push_back({{range(1, m)}});
  if (m >= 2) {
    out.push_back({{range(1, m - 1), {m}}});
    out.push_back({{{m}, range(1, m - 1)}});
    std::vector<int> odd, even;
    for (int j = 1; j <= m; ++j) (j % 2 ? odd : even).push_back(j);
    out.push_back({{odd, even}});
  }
  if (n >= 3 && m >= 3) {
    const int a = m / 3, b = 2 * m / 3;
    out.push_back({{range(1, a), range(a + 1, b), range(b + 1, m)}});
    std::vector<std::vector<int>> rr(3);
    for (int j = 1; j <= m; ++j) rr[(j - 1) % 3].push_back(j);
    out.push_back({rr});
    out.push_back({{range(1, m - 2), {m - 1}, {m}}});
  }
  std::set<std::string> seen;
  std::vector<Partition> unique;
  for (auto& p : out) {
    if (seen.insert(p.str()).second) unique.push_back(std::move(p));
  }
  return unique;
}

AggregatorSpec spec_of(RuleSpec rule) { return {std::move(rule), {}, {}}; }

// ---------------------------------------------------------------------------

SuiteReport reference_tables() {
  Recorder r("reference-tables");
  const auto pref3 = fixtures::pref3();
  const auto doctrinal = fixtures::doctrinal();
  auto rows = [](std::initializer_list<const char*> xs) {
    std::vector<Mask> out;
    for (const char* x : xs) out.push_back(parse_mask(x));
    return out;
  };

  const auto condorcet = make_profile(pref3, rows({"110", "011", "101"}));
  r.expect_eq("condorcet profile, majority stage",
              stage_apply(IiaStage::majority(3, 3), condorcet).str(), "111");
  const auto doctrinal_profile =
      make_profile(doctrinal, rows({"010", "100", "111"}));
  r.expect_eq("doctrinal profile, majority stage",
              stage_apply(IiaStage::majority(3, 3), doctrinal_profile).str(),
              "110");

  const auto desc = TieOrder::descending(pref3);
  const std::vector<std::pair<std::vector<Mask>, std::string>> plural = {
      {rows({"110", "011", "101"}), "110"},
      {rows({"110", "101", "101"}), "101"},
      {rows({"101", "011", "010"}), "101"}};
  for (std::size_t k = 0; k < plural.size(); ++k) {
    const auto p = make_profile(pref3, plural[k].first);
    r.expect_eq("plurality profile " + std::to_string(k + 1) + " (" +
                    rows_string(p) + ")",
                plurality(pref3, p, desc).str(), plural[k].second);
  }

  const auto pref4 = fixtures::pref4();
  const auto ties = fixtures::four_candidate_ties(pref4);
  const auto uniform = WeightVector::uniform(6);
  const auto nn = Aggregator::nn_corrected(pref4, IiaStage::majority(6, 3),
                                           uniform, ties);
  const auto truthful = fixtures::four_candidate_profile();
  const auto deviated = fixtures::four_candidate_deviation();
  r.expect_eq("four candidates, rows", rows_string(truthful),
              "110110|011111|101000");
  r.expect_eq("four candidates, majority stage",
              stage_apply(IiaStage::majority(6, 3), truthful).str(), "111110");
  r.expect_eq("four candidates, nearest-neighbour outcome",
              nn(truthful).str(), "110110");
  r.expect_eq("four candidates, outcome order",
              order_string(decode_order(pref4, nn(truthful))), "a>b>d>c");
  r.expect_eq("judge 2 deviation, rows", rows_string(deviated),
              "110110|011011|101000");
  r.expect_eq("judge 2 deviation, majority stage",
              stage_apply(IiaStage::majority(6, 3), deviated).str(), "111010");
  r.expect_eq("judge 2 deviation, nearest-neighbour outcome",
              nn(deviated).str(), "011010");
  r.expect_eq("judge 2 deviation, outcome order",
              order_string(decode_order(pref4, nn(deviated))), "b>d>c>a");

  const auto sep = fixtures::welfare_separation_space();
  const auto asc = TieOrder::ascending(sep);
  const auto pa = fixtures::welfare_profile_a();
  const auto pb = fixtures::welfare_profile_b();
  r.expect_eq("welfare profile 3/2/4, maximiser",
              swm(sep, WeightVector::uniform(6), asc, pa).str(), "000111");
  r.expect_eq("welfare profile 3/3/3, maximiser",
              swm(sep, WeightVector::uniform(6), asc, pb).str(), "001000");
  r.expect_eq("welfare profile 3/2/4, unrestricted minimiser",
              unrestricted_minimizer(pa).str(), "000000");
  r.expect_eq("welfare profile 3/3/3, unrestricted minimiser",
              unrestricted_minimizer(pb).str(), "000000");
  return r.take();
}

SuiteReport partition_full_free() {
  Recorder r("partition-full-free");
  for (const auto& [name, space] : fixtures::standard_spaces()) {
    for (int n = 2; n <= 3; ++n) {
      const auto battery = partition_battery(space.issues(), n);
      std::string failure;
      for (const auto& p : battery) {
        const auto f =
            Aggregator::bind(space, spec_of(rule::PartitionRule{p}), n);
        const auto c = certify(space, f, ManipulationKind::full());
        if (!c.free) {
          failure = "partition:" + p.str() + " " + witness_line(*c.witness);
          break;
        }
      }
      r.check(name + ", n=" + std::to_string(n), failure.empty(),
              failure.empty() ? std::to_string(battery.size()) +
                                    " partitions full-free"
                              : failure);
    }
  }
  return r.take();
}

Aggregator non_monotone_rule() {
  // Issue 1 is the negated majority, issue 2 the majority.
  return Aggregator::from_function(
      "not-majority", 2, 3, [](std::span<const Mask> rows) {
        int c1 = 0, c2 = 0;
        for (Mask x : rows) {
          c1 += (x >> 1) & 1;
          c2 += x & 1;
        }
        return static_cast<Mask>((c1 < 2 ? 2 : 0) | (c2 >= 2 ? 1 : 0));
      });
}

Aggregator non_iia_rule() {
  // Issue 1 uses majority when issue 2 carries a majority, unanimity
  // otherwise.
  return Aggregator::from_function(
      "context-quota", 2, 3, [](std::span<const Mask> rows) {
        int c1 = 0, c2 = 0;
        for (Mask x : rows) {
          c1 += (x >> 1) & 1;
          c2 += x & 1;
        }
        const int t1 = c2 >= 2 ? 2 : 3;
        return static_cast<Mask>((c1 >= t1 ? 2 : 0) | (c2 >= 2 ? 1 : 0));
      });
}

SuiteReport partial_iff_iia_monotone() {
  Recorder r("partial-iff-iia-monotone");
  const auto doctrinal = fixtures::doctrinal();
  const auto pref3 = fixtures::pref3();
  const auto cube2 = fixtures::cube(2);

  {
    const auto f = Aggregator::bind(doctrinal, spec_of(rule::Quota{{3, 3, 3}}), 3);
    const auto c = certify(doctrinal, f, ManipulationKind::partial());
    r.check("unanimity on doctrinal, n=3, partial-free", c.free,
            c.free ? "free" : witness_line(*c.witness));
  }
  {
    const auto f = Aggregator::bind(pref3, spec_of(rule::Plurality{}), 3);
    const auto w = find_witness(pref3, f, ManipulationKind::partial());
    r.check("plurality on pref3, n=3, partial witness", w.has_value(),
            w ? witness_line(*w) : "no witness found");
  }
  {
    const auto f = non_monotone_rule();
    const auto mono =
        check_structural(cube2, f, StructuralProperty::kMonotone);
    const auto w = find_witness(cube2, f, ManipulationKind::partial());
    r.check("non-monotone perturbation on cube2, partial witness",
            !mono.holds && w.has_value(),
            w ? witness_line(*w) + "; " + mono.detail : "no witness found");
  }
  {
    const auto f = non_iia_rule();
    const auto iia = check_structural(cube2, f, StructuralProperty::kIia);
    const auto w = find_witness(cube2, f, ManipulationKind::partial());
    r.check("non-IIA perturbation on cube2, partial witness",
            !iia.holds && w.has_value(),
            w ? witness_line(*w) + "; " + iia.detail : "no witness found");
  }

  // Both directions on a mixed battery of consistent aggregators.
  struct Case {
    std::string label;
    EvaluationSpace space;
    Aggregator f;
  };
  const auto cube3 = fixtures::cube(3);
  std::vector<Case> cases = {
      {"doctrinal dictator:2", doctrinal,
       Aggregator::bind(doctrinal, spec_of(rule::Dictator{1}), 3)},
      {"doctrinal quota:3,3,3", doctrinal,
       Aggregator::bind(doctrinal, spec_of(rule::Quota{{3, 3, 3}}), 3)},
      {"doctrinal swm", doctrinal,
       Aggregator::bind(doctrinal, spec_of(rule::Swm{}), 3)},
      {"pref3 plurality", pref3,
       Aggregator::bind(pref3, spec_of(rule::Plurality{}), 3)},
      {"pref3 nn(majority)", pref3,
       Aggregator::bind(pref3, spec_of(rule::NnCorrected{rule::Majority{}}), 3)},
      {"pref3 partition:1,2;3", pref3,
       Aggregator::bind(pref3, spec_of(rule::PartitionRule{{{{1, 2}, {3}}}}),
                        3)},
      {"cube3 majority", cube3,
       Aggregator::bind(cube3, spec_of(rule::Majority{}), 3)},
      {"cube3 quota:1,2,3", cube3,
       Aggregator::bind(cube3, spec_of(rule::Quota{{1, 2, 3}}), 3)},
      {"cube2 not-majority", cube2, non_monotone_rule()},
      {"cube2 context-quota", cube2, non_iia_rule()},
  };
  for (const auto& c : cases) {
    const bool free = certify(c.space, c.f, ManipulationKind::partial()).free;
    const bool iia =
        check_structural(c.space, c.f, StructuralProperty::kIia).holds;
    const bool mono =
        check_structural(c.space, c.f, StructuralProperty::kMonotone).holds;
    r.check(c.label + ": partial-free iff IIA and monotone",
            free == (iia && mono),
            std::string("partial-free=") + (free ? "yes" : "no") +
                " iia=" + (iia ? "yes" : "no") +
                " monotone=" + (mono ? "yes" : "no"));
  }
  return r.take();
}

SuiteReport nn_full_free() {
  Recorder r("nn-full-free");
  for (const auto& [name, space] : fixtures::standard_spaces()) {
    const int m = space.issues();
    std::vector<std::pair<std::string, IiaStage>> stages = {
        {"majority", IiaStage::majority(m, 3)}};
    const auto sampled = sampled_stages(m, 3, 5, kShuffleSeed);
    for (std::size_t k = 0; k < sampled.size(); ++k) {
      stages.emplace_back("sampled stage " + std::to_string(k + 1),
                          sampled[k]);
    }
    const auto ties = tie_battery(space);
    const auto weights = weight_battery(m);
    for (const auto& [label, stage] : stages) {
      std::string failure;
      int configurations = 0;
      int anonymity_checks = 0;
      for (const auto& t : ties) {
        for (const auto& w : weights) {
          const auto f = Aggregator::nn_corrected(space, stage, w, t);
          ++configurations;
          const auto c = certify(space, f, ManipulationKind::full());
          if (!c.free) {
            failure = "ties=" + t.name() + " weights=" + w.str() + " " +
                      witness_line(*c.witness);
            break;
          }
          if (stage.anonymous()) {
            const auto v =
                check_structural(space, f, StructuralProperty::kAnonymous);
            ++anonymity_checks;
            if (!v.holds) {
              failure = "ties=" + t.name() + " weights=" + w.str() +
                        " not anonymous: " + v.detail;
              break;
            }
          }
        }
        if (!failure.empty()) break;
      }
      std::string evidence = std::to_string(configurations) +
                             " configurations full-free";
      if (anonymity_checks) evidence += ", anonymous in all";
      r.check(name + " " + label + " (" + stage.str() + ")", failure.empty(),
              failure.empty() ? evidence : failure);
    }
  }
  return r.take();
}

SuiteReport welfare_full_free() {
  Recorder r("welfare-full-free");
  std::mt19937_64 rng(kShuffleSeed);
  for (const auto& [name, space] : fixtures::standard_spaces()) {
    const int m = space.issues();
    std::string failure;
    int configurations = 0;
    for (const auto& t : tie_battery(space)) {
      for (const auto& w : weight_battery(m)) {
        AggregatorSpec spec{rule::Swm{}, w, t.best_first()};
        const auto f = Aggregator::bind(space, spec, 3);
        ++configurations;
        const auto c = certify(space, f, ManipulationKind::full());
        if (!c.free) {
          failure = "ties=" + t.name() + " weights=" + w.str() + " " +
                    witness_line(*c.witness);
          break;
        }
      }
      if (!failure.empty()) break;
    }
    r.check(name + " swm full-free", failure.empty(),
            failure.empty()
                ? std::to_string(configurations) + " configurations full-free"
                : failure);

    // Row permutations: exhaustive transpositions plus random full shuffles.
    std::string anon_failure;
    for (const auto& w : weight_battery(m)) {
      AggregatorSpec spec{rule::Swm{}, w, {}};
      const auto f = Aggregator::bind(space, spec, 3);
      const auto v = check_structural(space, f, StructuralProperty::kAnonymous);
      if (!v.holds) {
        anon_failure = "weights=" + w.str() + " " + v.detail;
        break;
      }
      for (int k = 0; k < 1000 && anon_failure.empty(); ++k) {
        std::vector<Mask> rows;
        for (int i = 0; i < 3; ++i) {
          rows.push_back(space.feasible()[rng() % space.size()]);
        }
        const Mask base = f.apply(rows);
        std::vector<Mask> perm = rows;
        std::sort(perm.begin(), perm.end());
        do {
          if (f.apply(perm) != base) {
            anon_failure = "weights=" + w.str() + " profile " +
                           rows_string(Profile(m, rows)) +
                           " changes under permutation";
            break;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      if (!anon_failure.empty()) break;
    }
    r.check(name + " swm anonymous", anon_failure.empty(),
            anon_failure.empty()
                ? "exhaustive transpositions and 1000 random profiles per "
                  "weight vector"
                : anon_failure);
  }
  return r.take();
}

void lemma_checks(Recorder& r, bool interval_side) {
  const auto exhaustive = lemma_exhaustive_four_candidates();
  const auto sweep = lemma_random_sweep(100'000, kShuffleSeed);
  auto report = [&](const std::string& label, const LemmaSweepStats& s) {
    const std::uint64_t bad =
        interval_side ? s.interval_violations : s.type_violations;
    std::string evidence = std::to_string(s.witnesses) +
                           " hamming witnesses over " +
                           std::to_string(s.configurations) +
                           " configurations, " + std::to_string(bad) +
                           " violations";
    if (bad) evidence += "; first: " + s.first_violation;
    r.check(label, bad == 0 && s.witnesses > 0, evidence);
  };
  report("pref4 majority stage, all witnesses per tie order and weights",
         exhaustive);
  report("pref4 random stages, profiles and deviations", sweep);
}

SuiteReport witness_interval() {
  Recorder r("witness-interval");
  lemma_checks(r, true);
  return r.take();
}

SuiteReport witness_mipe_type() {
  Recorder r("witness-mipe-type");
  lemma_checks(r, false);
  return r.take();
}

SuiteReport three_alternative_hamming_free() {
  Recorder r("three-alternative-hamming-free");
  const auto space = fixtures::pref3();
  const auto all = MonotoneFunction::enumerate_all(3);
  std::vector<IiaStage> stages;
  for (const auto& g1 : all) {
    for (const auto& g2 : all) {
      for (const auto& g3 : all) stages.push_back(IiaStage({g1, g2, g3}));
    }
  }
  for (const auto& t : tie_battery(space)) {
    for (const auto& w : weight_battery(3)) {
      const auto kind = ManipulationKind::hamming(w);
      std::size_t free = 0;
      std::string failure;
      for (const auto& stage : stages) {
        const auto f = Aggregator::nn_corrected(space, stage, w, t);
        const auto c = certify(space, f, kind);
        if (c.free) {
          ++free;
        } else if (failure.empty()) {
          failure = stage.str() + " " + witness_line(*c.witness);
        }
      }
      r.check("ties=" + t.name() + " weights=" + w.str(),
              free == stages.size(),
              std::to_string(free) + "/" + std::to_string(stages.size()) +
                  " stages hamming-free" +
                  (failure.empty() ? "" : "; first: " + failure));
    }
  }
  return r.take();
}

SuiteReport four_alternative_hamming() {
  Recorder r("four-alternative-hamming");
  const auto space = fixtures::pref4();
  const auto uniform = WeightVector::uniform(6);
  const auto kind = ManipulationKind::hamming(uniform);
  const auto truthful = fixtures::four_candidate_profile();
  const auto deviated = fixtures::four_candidate_deviation();
  const Mask truth = truthful.rows()[1];

  for (const auto& t : tie_battery(space)) {
    const auto f = Aggregator::nn_corrected(space, IiaStage::majority(6, 3),
                                            uniform, t);
    const auto w = find_witness(space, f, kind);
    r.check("ties=" + t.name() + ": hunt finds a hamming witness",
            w.has_value(), w ? witness_line(*w) : "free");

    const Mask z = f.apply(truthful.rows());
    const Mask lied = f.apply(deviated.rows());
    const Distance dz = uniform.distance(truth, z);
    const Distance dw = uniform.distance(truth, lied);
    const bool ok = kind.holds(truth, z, lied);
    r.check("ties=" + t.name() + ": judge 2 deviation is a hamming witness",
            ok && dz == 3 && dw == 2,
            mask_string(z, 6) + " -> " + mask_string(lied, 6) +
                ", d(truth, z)=" + std::to_string(dz) +
                ", d(truth, w)=" + std::to_string(dw));
  }
  return r.take();
}

SuiteReport committee_hamming_free() {
  Recorder r("committee-hamming-free");
  for (int m : {4, 5}) {
    const auto space = fixtures::choose(m, 2);
    const std::string name = "choose" + std::to_string(m) + "-2";
    const auto lexical = induced_topk_order(space);
    AggregatorSpec spec{rule::Swm{}, {}, lexical.best_first()};
    const auto f = Aggregator::bind(space, spec, 3);
    const auto c = certify(space, f, ManipulationKind::hamming(
                                         WeightVector::uniform(m)));
    r.check(name + " swm, lexical ties, hamming-free", c.free,
            c.free ? "free" : witness_line(*c.witness));

    std::uint64_t profiles = 0;
    std::string mismatch;
    detail::ProfileCursor cursor(space.feasible(), 3);
    do {
      ++profiles;
      const Profile p(m, {cursor.rows().begin(), cursor.rows().end()});
      const Mask a = f.apply(cursor.rows());
      const Mask b = swm_topk(space, p).bits();
      if (a != b && mismatch.empty()) {
        mismatch = rows_string(p) + ": swm " + mask_string(a, m) +
                   ", top-k " + mask_string(b, m);
      }
    } while (cursor.next());
    r.check(name + " swm agrees with top-k selection", mismatch.empty(),
            mismatch.empty() ? std::to_string(profiles) + " profiles agree"
                             : mismatch);
  }
  return r.take();
}

struct SuiteEntry {
  SuiteInfo info;
  std::function<SuiteReport()> run;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries = {
      {{"reference-tables", {"tables"},
        "worked examples: majority paradoxes, plurality, four-candidate "
        "correction, welfare separation"},
       reference_tables},
      {{"partition-full-free", {"prop4.1"},
        "partition aggregators admit no full manipulation"},
       partition_full_free},
      {{"partial-iff-iia-monotone", {"thm3.1"},
        "partial-manipulation freeness coincides with IIA plus monotonicity"},
       partial_iff_iia_monotone},
      {{"nn-full-free", {"thm4.2"},
        "nearest-neighbour corrected monotone IIA stages are full-free"},
       nn_full_free},
      {{"welfare-full-free", {"thm4.3"},
        "Hamming welfare maximiser is full-free and anonymous"},
       welfare_full_free},
      {{"witness-interval", {"lemma5.4"},
        "stage outputs around a Hamming witness span no feasible point"},
       witness_interval},
      {{"witness-mipe-type", {"lemma5.5"},
        "stage outputs around a Hamming witness differ in MIPE type"},
       witness_mipe_type},
      {{"three-alternative-hamming-free", {"claim5.6"},
        "every corrected monotone stage on three alternatives is "
        "Hamming-free"},
       three_alternative_hamming_free},
      {{"four-alternative-hamming", {"claim5.7"},
        "corrected majority on four alternatives is Hamming-manipulable"},
       four_alternative_hamming},
      {{"committee-hamming-free", {"claim5.8"},
        "welfare maximiser on k-of-m committees is Hamming-free"},
       committee_hamming_free},
  };
  return entries;
}

}  // namespace

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(),
                    [](const Check& c) { return !c.passed; }));
}

std::string SuiteReport::str(bool with_runtime) const {
  std::ostringstream out;
  out << "suite " << name << '\n';
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.label << ": " << c.evidence
        << '\n';
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << " ("
      << checks.size() - failures() << '/' << checks.size()
      << " checks passed)\n";
  if (with_runtime) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", runtime.count());
    out << "runtime: " << buf << " s\n";
  }
  return out.str();
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

std::optional<std::string> resolve_suite(std::string_view name) {
  for (const auto& info : suite_catalog()) {
    if (info.name == name ||
        std::find(info.aliases.begin(), info.aliases.end(), name) !=
            info.aliases.end()) {
      return info.name;
    }
  }
  return std::nullopt;
}

SuiteReport run_suite(std::string_view name) {
  const auto resolved = resolve_suite(name);
  if (!resolved) {
    std::string known;
    for (const auto& info : suite_catalog()) {
      known += (known.empty() ? "" : ", ") + info.name;
    }
    throw Error("unknown suite '" + std::string(name) + "'; known: " + known);
  }
  for (const auto& e : registry()) {
    if (e.info.name != *resolved) continue;
    const auto start = Clock::now();
    SuiteReport report = e.run();
    report.runtime = Clock::now() - start;
    return report;
  }
  throw Error("suite registry out of sync");
}

std::vector<TieOrder> tie_battery(const EvaluationSpace& space) {
  std::vector<TieOrder> out = {TieOrder::ascending(space),
                               TieOrder::descending(space),
                               TieOrder::shuffled(space, kShuffleSeed)};
  const auto pref4 = fixtures::pref4();
  if (space.alternatives() == 4 && space.orientation() == pref4.orientation()) {
    out.push_back(fixtures::four_candidate_ties(space));
  }
  return out;
}

std::vector<WeightVector> weight_battery(int issues) {
  std::vector<Distance> first(static_cast<std::size_t>(issues), 1);
  std::vector<Distance> last = first;
  first.front() = 2;
  last.back() = 2;
  return {WeightVector::uniform(issues), WeightVector(first),
          WeightVector(last)};
}

std::vector<IiaStage> sampled_stages(int issues, int voters, int count,
                                     std::uint64_t seed) {
  const auto all = MonotoneFunction::enumerate_all(voters);
  std::mt19937_64 rng(seed);
  std::vector<IiaStage> out;
  for (int k = 0; k < count; ++k) {
    std::vector<MonotoneFunction> per_issue;
    for (int j = 0; j < issues; ++j) per_issue.push_back(all[rng() % all.size()]);
    out.emplace_back(std::move(per_issue));
  }
  return out;
}

namespace {

// MIPE type of every mask as a bitset over the space's MIPE list.
std::vector<std::uint64_t> mipe_type_table(const EvaluationSpace& space) {
  const auto mipes = enumerate_mipes(space);
  if (mipes.size() > 64) throw Error("too many MIPEs for a type bitset");
  std::vector<std::uint64_t> table(std::size_t{1} << space.issues(), 0);
  for (Mask x = 0; x < table.size(); ++x) {
    for (std::size_t k = 0; k < mipes.size(); ++k) {
      if (mipes[k].pattern.matches(x)) table[x] |= std::uint64_t{1} << k;
    }
  }
  return table;
}

struct LemmaProbe {
  const EvaluationSpace& space;
  const std::vector<std::uint64_t>& types;
  LemmaSweepStats& stats;

  void witness(Mask v, Mask u, const std::string& where) {
    ++stats.witnesses;
    const int m = space.issues();
    if (interval_meets(space, v, u)) {
      if (!stats.interval_violations && !stats.type_violations) {
        stats.first_violation = where + " interval [" + mask_string(v, m) +
                                ", " + mask_string(u, m) + "] meets X";
      }
      ++stats.interval_violations;
    }
    const bool both_infeasible = !space.contains(v) && !space.contains(u);
    if (!both_infeasible || types[v] == types[u]) {
      if (!stats.interval_violations && !stats.type_violations) {
        stats.first_violation = where + " stage outputs " + mask_string(v, m) +
                                " and " + mask_string(u, m) +
                                (both_infeasible ? " share a MIPE type"
                                                 : " include a feasible point");
      }
      ++stats.type_violations;
    }
  }
};

}  // namespace

LemmaSweepStats lemma_random_sweep(std::uint64_t configurations,
                                   std::uint64_t seed) {
  const auto space = fixtures::pref4();
  const int m = space.issues();
  const int n = 3;
  const auto types = mipe_type_table(space);
  const auto all = MonotoneFunction::enumerate_all(n);
  const auto ties = tie_battery(space);
  const auto weights = weight_battery(m);
  const auto X = space.feasible();

  LemmaSweepStats stats;
  LemmaProbe probe{space, types, stats};
  std::mt19937_64 rng(seed);
  for (std::uint64_t c = 0; c < configurations; ++c) {
    std::vector<MonotoneFunction> per_issue;
    for (int j = 0; j < m; ++j) per_issue.push_back(all[rng() % all.size()]);
    const IiaStage stage(std::move(per_issue));
    const auto& t = ties[rng() % ties.size()];
    const auto& w = weights[rng() % weights.size()];
    std::vector<Mask> rows(n);
    for (auto& row : rows) row = X[rng() % X.size()];
    ++stats.configurations;

    const auto f = Aggregator::nn_corrected(space, stage, w, t);
    const auto kind = ManipulationKind::hamming(w);
    const Mask v = f.stage_apply(rows);
    const Mask z = f.apply(rows);
    std::vector<Mask> lied = rows;
    for (int i = 0; i < n; ++i) {
      for (Mask y : X) {
        if (y == rows[i]) continue;
        lied[i] = y;
        const Mask out = f.apply(lied);
        if (kind.holds(rows[i], z, out)) {
          probe.witness(v, f.stage_apply(lied),
                        "[" + stage.str() + " ties=" + t.name() +
                            " weights=" + w.str() + " profile " +
                            rows_string(Profile(m, rows)) + " voter " +
                            std::to_string(i + 1) + " lie " +
                            mask_string(y, m) + "]");
        }
      }
      lied[i] = rows[i];
    }
  }
  return stats;
}

LemmaSweepStats lemma_exhaustive_four_candidates() {
  const auto space = fixtures::pref4();
  const int m = space.issues();
  const auto types = mipe_type_table(space);
  LemmaSweepStats stats;
  LemmaProbe probe{space, types, stats};
  for (const auto& t : tie_battery(space)) {
    for (const auto& w : weight_battery(m)) {
      ++stats.configurations;
      const auto f =
          Aggregator::nn_corrected(space, IiaStage::majority(m, 3), w, t);
      for_each_witness(space, f, ManipulationKind::hamming(w),
                       [&](const ManipulationWitness& wit) {
                         const auto rows = wit.profile.rows();
                         std::vector<Mask> lied(rows.begin(), rows.end());
                         lied[wit.voter] = wit.lie.bits();
                         probe.witness(f.stage_apply(rows), f.stage_apply(lied),
                                       "[ties=" + t.name() + " weights=" +
                                           w.str() + " " + witness_line(wit) +
                                           "]");
                         return true;
                       });
    }
  }
  return stats;
}

}  // namespace binagg
