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

#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>

#include "binagg/aggregate.hpp"
#include "binagg/fixtures.hpp"
#include "binagg/io.hpp"
#include "binagg/manipulate.hpp"
#include "binagg/space.hpp"
#include "binagg/verify.hpp"

namespace binagg::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string space;
  std::string aggregator;
  std::string profile;
  std::string weights;
  std::string tieorder;
  std::string kind = "hamming";
  std::string property;
  std::string suite;
  int voters = 0;
  std::uint64_t budget = kDefaultBudget;
  bool timing = false;
  bool list = false;
};

// Thrown for bad flag values; reported with the flag name.
class FlagError : public Error {
 public:
  FlagError(const std::string& flag, const std::string& what)
      : Error(flag + ": " + what) {}
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) out.push_back(part);
  return out;
}

bool is_file(const std::string& path) {
  std::error_code ec;
  return fs::is_regular_file(path, ec);
}

EvaluationSpace load_space_arg(const std::string& arg) {
  if (auto s = fixtures::builtin_space(arg)) return *s;
  if (!is_file(arg)) {
    std::string aliases;
    for (const auto& a : fixtures::builtin_aliases()) {
      aliases += (aliases.empty() ? "" : ", ") + a;
    }
    throw FlagError("--space", "'" + arg +
                                   "' is neither a built-in space (" +
                                   aliases + ") nor a readable file");
  }
  return make_space(load_space(arg));
}

// File path, or inline comma-separated rows such as 010,100,111.
Profile load_profile_arg(const std::string& arg, const EvaluationSpace& space) {
  if (is_file(arg)) return load_profile(arg, space);
  std::vector<Evaluation> rows;
  try {
    for (const auto& r : split_commas(arg)) rows.push_back(Evaluation::parse(r));
    return make_profile(space, rows);
  } catch (const Error& e) {
    throw FlagError("--profile", "'" + arg +
                                     "' is not a readable file or a valid "
                                     "inline profile (" + e.what() + ")");
  }
}

WeightVector load_weights_arg(const std::string& arg, int issues) {
  if (is_file(arg)) return load_weights(arg, issues);
  std::vector<Distance> w;
  try {
    for (const auto& p : split_commas(arg)) {
      std::size_t used = 0;
      w.push_back(std::stoll(p, &used));
      if (used != p.size()) throw Error("bad number '" + p + "'");
    }
    if (static_cast<int>(w.size()) != issues) {
      throw Error(std::to_string(w.size()) + " weights for " +
                  std::to_string(issues) + " issues");
    }
    return WeightVector(std::move(w));
  } catch (const std::exception& e) {
    throw FlagError("--weights", "'" + arg +
                                     "' is not a readable file or a valid "
                                     "inline weight list (" + e.what() + ")");
  }
}

std::vector<Mask> load_ties_arg(const std::string& arg,
                                const EvaluationSpace& space) {
  if (is_file(arg)) return load_tie_order(arg, space).best_first();
  std::vector<Mask> order;
  try {
    for (const auto& r : split_commas(arg)) {
      const auto e = Evaluation::parse(r);
      if (e.size() != space.issues()) throw Error("row length mismatch");
      order.push_back(e.bits());
    }
    return TieOrder::from_list(space, order).best_first();
  } catch (const Error& e) {
    throw FlagError("--tieorder", "'" + arg +
                                      "' is not a readable file or a valid "
                                      "inline tie order (" + e.what() + ")");
  }
}

Aggregator bind_aggregator(const Options& o, const EvaluationSpace& space,
                           int voters) {
  AggregatorSpec spec;
  try {
    spec = parse_aggregator_spec(o.aggregator);
  } catch (const Error& e) {
    throw FlagError("--aggregator", e.what());
  }
  if (!o.weights.empty()) {
    spec.weights = load_weights_arg(o.weights, space.issues());
  }
  if (!o.tieorder.empty()) spec.ties = load_ties_arg(o.tieorder, space);
  try {
    return Aggregator::bind(space, spec, voters);
  } catch (const Error& e) {
    throw FlagError("--aggregator", e.what());
  }
}

std::string rows_line(const Profile& p) {
  std::string s;
  for (int i = 0; i < p.voters(); ++i) {
    if (i) s += ' ';
    s += p.row(i).str();
  }
  return s;
}

int cmd_space_info(const Options& o, std::ostream& out) {
  const auto space = load_space_arg(o.space);
  out << "provenance: " << describe(space.provenance()) << '\n';
  out << "issues: " << space.issues() << '\n';
  out << "feasible: " << space.size() << '\n';
  out << "labels:";
  for (const auto& l : space.labels()) out << ' ' << l;
  out << '\n';
  return kOk;
}

int cmd_space_mipes(const Options& o, std::ostream& out) {
  const auto space = load_space_arg(o.space);
  for (const auto& a : enumerate_mipes(space)) out << a.pattern.str() << '\n';
  return kOk;
}

int cmd_run(const Options& o, std::ostream& out) {
  const auto space = load_space_arg(o.space);
  const auto profile = load_profile_arg(o.profile, space);
  const auto f = bind_aggregator(o, space, profile.voters());
  out << f(profile).str() << '\n';
  return kOk;
}

int cmd_hunt(const Options& o, std::ostream& out) {
  const auto space = load_space_arg(o.space);
  const auto f = bind_aggregator(o, space, o.voters);
  const WeightVector w = o.weights.empty()
                             ? WeightVector::uniform(space.issues())
                             : load_weights_arg(o.weights, space.issues());
  const auto kind = ManipulationKind::parse(o.kind, w);
  const auto witness = find_witness(space, f, kind, {o.budget});
  if (!witness) {
    out << "FREE\n";
  } else {
    out << "MANIPULABLE\n" << format_witness(*witness);
  }
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto space = load_space_arg(o.space);
  const auto f = bind_aggregator(o, space, o.voters);
  StructuralProperty property;
  try {
    property = parse_property(o.property);
  } catch (const Error& e) {
    throw FlagError("--property", e.what());
  }
  const auto v = check_structural(space, f, property, o.budget);
  out << property_name(property) << ": " << (v.holds ? "HOLDS" : "FAILS")
      << '\n';
  out << "detail: " << v.detail << '\n';
  for (std::size_t k = 0; k < v.witness.size(); ++k) {
    out << "witness " << k + 1 << ": " << rows_line(v.witness[k]) << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.list) {
    for (const auto& info : suite_catalog()) {
      out << info.name;
      for (const auto& a : info.aliases) out << " (" << a << ")";
      out << ": " << info.summary << '\n';
    }
    return kOk;
  }
  if (o.suite.empty()) throw FlagError("--suite", "a suite name is required");
  std::vector<std::string> names;
  if (o.suite == "all") {
    for (const auto& info : suite_catalog()) names.push_back(info.name);
  } else {
    if (!resolve_suite(o.suite)) {
      std::string known;
      for (const auto& info : suite_catalog()) {
        known += (known.empty() ? "" : ", ") + info.name;
        for (const auto& a : info.aliases) known += ", " + a;
      }
      throw FlagError("--suite", "unknown suite '" + o.suite + "'; known: " +
                                     known + ", all");
    }
    names.push_back(o.suite);
  }
  bool passed = true;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto report = run_suite(names[k]);
    if (k) out << '\n';
    out << report.str(o.timing);
    passed = passed && report.passed();
  }
  return passed ? kOk : kSuiteFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Aggregation of binary evaluations over constrained spaces",
               "binagg"};
  app.require_subcommand(1);

  auto add_space = [&](CLI::App* c) {
    c->add_option("--space", o.space,
                  "built-in space alias or space file")
        ->required();
  };
  auto add_aggregator = [&](CLI::App* c) {
    c->add_option("--aggregator", o.aggregator,
                  "dictator:<i> | majority | quota:<t1,...> | plurality | "
                  "partition:<K1;K2;...> | nn(majority) | nn(quota:...) | swm")
        ->required();
    c->add_option("--weights", o.weights,
                  "weights file or inline list such as 1,1,2");
    c->add_option("--tieorder", o.tieorder,
                  "tie-order file or inline rows, best first");
  };
  auto add_voters = [&](CLI::App* c) {
    c->add_option("-n,--voters", o.voters, "number of voters")
        ->required()
        ->check(CLI::Range(1, 64));
    c->add_option("--budget", o.budget,
                  "cap on aggregator evaluations")
        ->check(CLI::PositiveNumber);
  };

  auto* space = app.add_subcommand("space", "inspect an evaluation space");
  space->require_subcommand(1);
  auto* info = space->add_subcommand("info", "issue count, size, labels");
  add_space(info);
  auto* mipes = space->add_subcommand("mipes", "list MIPEs in canonical order");
  add_space(mipes);

  auto* run_cmd = app.add_subcommand("run", "aggregate one profile");
  add_space(run_cmd);
  add_aggregator(run_cmd);
  run_cmd->add_option("--profile", o.profile,
                      "profile file or inline rows such as 010,100,111")
      ->required();

  auto* hunt = app.add_subcommand("hunt", "search for a manipulation");
  add_space(hunt);
  add_aggregator(hunt);
  add_voters(hunt);
  hunt->add_option("--kind", o.kind, "partial, full or hamming")
      ->check(CLI::IsMember({"partial", "full", "hamming"}));

  auto* check = app.add_subcommand("check", "check a structural property");
  add_space(check);
  add_aggregator(check);
  add_voters(check);
  check->add_option("--property", o.property,
                    "iia, monotone, anonymous or dictatorial")
      ->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite, "suite name, alias or 'all'");
  verify->add_flag("--list", o.list, "list the suites");
  verify->add_flag("--timing", o.timing, "append runtimes to the report");

  if (argc > 1 && argv[1][0] != '-' && !app.get_subcommand_no_throw(argv[1])) {
    err << "error: unknown subcommand '" << argv[1]
        << "'; expected space, run, hunt, check or verify\n";
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return cmd_space_info(o, out);
    if (*mipes) return cmd_space_mipes(o, out);
    if (*run_cmd) return cmd_run(o, out);
    if (*hunt) return cmd_hunt(o, out);
    if (*check) return cmd_check(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget)\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace binagg::cli
