// Copyright 2026 The rankagg Authors
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

// rankagg command-line driver.
//
//   rankagg gen-data --config gen.json --out DIR
//   rankagg train --dataset DIR --surrogate reg --k 10 --out DIR
//   rankagg sweep-k --dataset DIR --ks 1,5,25 --ns 20000 --reps 3 --out F.csv
//   rankagg demo-inconsistency --phi hinge [--difference] --out F.json
//   rankagg aggregate --judgments F.json --method borda --out F.json
//
// Exit codes: 0 success, 2 usage or config error, 3 algorithmic failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rankagg/aggregation.h"
#include "rankagg/consistency.h"
#include "rankagg/datagen.h"
#include "rankagg/experiment.h"
#include "rankagg/judgments_io.h"
#include "rankagg/letor.h"
#include "rankagg/loss_objects.h"
#include "rankagg/optimizer.h"
#include "rankagg/types.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rankagg {
namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAlgorithm = 3;

constexpr char kLetorFile[] = "data.letor";
constexpr char kJudgmentsFile[] = "judgments.json";
constexpr char kGeneratorFile[] = "generator.json";
constexpr char kModelFile[] = "model.json";
constexpr char kTraceFile[] = "trace.csv";

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void WriteJsonFile(const fs::path& path, const json& j) {
  std::ofstream out = OpenOutput(path);
  out << j.dump(2) << "\n";
}

json VectorToJson(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json MatrixToJson(const Matrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    std::vector<double> row(a.cols());
    for (int j = 0; j < a.cols(); ++j) row[j] = a(i, j);
    rows.push_back(row);
  }
  return rows;
}

QueryDataset LoadDataset(const fs::path& dir) {
  const fs::path letor = dir / kLetorFile;
  std::ifstream in(letor);
  if (!in) throw Error("cannot open " + letor.string());
  QueryDataset data = LetorParse(in);
  const fs::path side = dir / kJudgmentsFile;
  if (fs::exists(side)) AttachJudgmentsFromJson(ReadJsonFile(side), data);
  data.Validate();
  return data;
}

// ---------------------------------------------------------------- gen-data

struct GenDataArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int RunGenData(const GenDataArgs& args) {
  GeneratorConfig cfg = GeneratorConfig::FromJson(ReadJsonFile(args.config));
  if (args.seed.has_value()) cfg.seed = *args.seed;
  cfg.Validate();
  const SyntheticProblem problem = GenerateDataset(cfg);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  {
    std::ofstream out = OpenOutput(dir / kLetorFile);
    LetorSerialize(problem.data, out);
  }
  WriteJsonFile(dir / kJudgmentsFile, JudgmentsToJson(problem.data));
  json gen = {{"schema_version", kSchemaVersion},
              {"m", cfg.m},
              {"d", cfg.d},
              {"num_queries", cfg.num_queries},
              {"seed", cfg.seed},
              {"noise_sd", cfg.noise.noise_sd},
              {"jump", cfg.noise.jump},
              {"relevance_scale", cfg.noise.scale},
              {"theta_star", VectorToJson(problem.theta_star)},
              {"theta_jump", VectorToJson(problem.theta_jump)}};
  if (cfg.beta.has_value()) gen["beta"] = *cfg.beta;
  if (cfg.n_pairs.has_value()) gen["n_pairs"] = *cfg.n_pairs;
  if (cfg.n_sessions.has_value()) gen["n_sessions"] = *cfg.n_sessions;
  WriteJsonFile(dir / kGeneratorFile, gen);
  std::cerr << "wrote " << problem.data.queries.size() << " queries, "
            << problem.data.total_judgments() << " judgments to " << dir
            << "\n";
  return 0;
}

// ------------------------------------------------------------------- train

enum class JudgmentKind { kNone, kPairs, kSessions, kAdjacency };

JudgmentKind KindOf(const QueryDataset& data) {
  JudgmentKind kind = JudgmentKind::kNone;
  for (const Query& q : data.queries) {
    for (const PreferenceJudgment& j : q.judgments) {
      JudgmentKind k = JudgmentKind::kAdjacency;
      if (std::holds_alternative<ComparisonPreference>(j)) {
        k = JudgmentKind::kPairs;
      } else if (std::holds_alternative<ClickRecord>(j)) {
        k = JudgmentKind::kSessions;
      }
      if (kind != JudgmentKind::kNone && kind != k) {
        throw Error("dataset mixes judgment types");
      }
      kind = k;
    }
  }
  return kind;
}

const char* KindName(JudgmentKind k) {
  switch (k) {
    case JudgmentKind::kNone:
      return "none";
    case JudgmentKind::kPairs:
      return "pairs";
    case JudgmentKind::kSessions:
      return "sessions";
    case JudgmentKind::kAdjacency:
      return "adjacency";
  }
  return "?";
}

std::vector<std::string> SurrogateNames() {
  std::vector<std::string> names = {"reg", "logistic"};
  for (const char* phi : {"hinge", "logistic", "exponential", "squared_hinge"}) {
    names.push_back(std::string("zhang-") + phi);
    names.push_back(std::string("pairwise-") + phi);
    names.push_back(std::string("margin-") + phi);
    names.push_back(std::string("difference-") + phi);
  }
  return names;
}

const std::vector<std::string>& StructureNames() {
  static const std::vector<std::string> kNames = {
      "log-odds", "thurstone", "borda", "ammar-shah", "cascade-mle",
      "average",  "identity"};
  return kNames;
}

StructureFunction MakeStructure(const std::string& name, double c) {
  if (name == "log-odds") return LogOddsStructure(c);
  if (name == "thurstone") return ThurstoneStructure(c);
  if (name == "borda") return BordaStructure(c);
  if (name == "ammar-shah") return AmmarShahStructure();
  if (name == "cascade-mle") return CascadeMleStructure();
  if (name == "average") return AveragedAdjacencyStructure();
  if (name == "identity") return IdentityStructure();
  throw Error("unknown structure '" + name + "'; valid: " +
              JoinNames(StructureNames()));
}

struct SurrogateChoice {
  SurrogatePtr surrogate;
  std::string structure;  // default structure name
  std::vector<JudgmentKind> accepts;
};

SurrogateChoice ChooseSurrogate(const std::string& name, JudgmentKind kind,
                                const GainFunction& gain,
                                const DiscountFunction& discount) {
  const std::string score_structure =
      kind == JudgmentKind::kSessions ? "cascade-mle" : "log-odds";
  if (name == "reg") {
    return {MakeNdcgRegressionSurrogate(gain, discount), score_structure,
            {JudgmentKind::kPairs, JudgmentKind::kSessions}};
  }
  if (name == "logistic") {
    return {MakeBtlLogisticSurrogate(), "identity", {JudgmentKind::kPairs}};
  }
  const auto dash = name.find('-');
  if (dash != std::string::npos) {
    const std::string family = name.substr(0, dash);
    const std::string phi_name = name.substr(dash + 1);
    auto phi = [&]() {
      try {
        return ConvexPhi::FromName(phi_name);
      } catch (const Error&) {
        throw Error("unknown surrogate '" + name + "'; valid: " +
                    JoinNames(SurrogateNames()));
      }
    };
    if (family == "zhang") {
      return {MakeZhangNdcgSurrogate(gain, discount, phi()), score_structure,
              {JudgmentKind::kPairs, JudgmentKind::kSessions}};
    }
    if (family == "pairwise") {
      return {MakePairwisePhiSurrogate(phi()), "average",
              {JudgmentKind::kAdjacency}};
    }
    if (family == "margin") {
      return {MakeMarginSurrogate(phi()), "average",
              {JudgmentKind::kAdjacency}};
    }
    if (family == "difference") {
      return {MakeDifferenceSurrogate(phi()), "average",
              {JudgmentKind::kAdjacency}};
    }
  }
  throw Error("unknown surrogate '" + name + "'; valid: " +
              JoinNames(SurrogateNames()));
}

struct TrainArgs {
  std::string dataset;
  std::string surrogate = "reg";
  std::string structure;
  int k = 1;
  double lambda = 1e-3;
  std::string schedule = "inv_t";
  double step_scale = 1.0;
  std::int64_t iters = 10000;
  std::uint64_t seed = 0;
  double smoothing = 1.0;
  std::string gain = "exp2";
  std::string discount = "log1p";
  std::string out;
};

bool AllHaveRelevances(const QueryDataset& data) {
  for (const Query& q : data.queries) {
    if (!q.relevances.has_value() || q.m() < 2) return false;
  }
  return !data.empty();
}

int RunTrain(const TrainArgs& args) {
  const GainFunction gain = GainFunction::FromName(args.gain);
  const DiscountFunction discount = DiscountFunction::FromName(args.discount);
  const StepSchedule schedule =
      StepSchedule::FromName(args.schedule, args.step_scale);
  schedule.Validate();
  if (args.k < 1) throw Error("--k must be >= 1");
  if (args.iters < 1) throw Error("--iters must be >= 1");
  if (!(args.lambda >= 0.0)) throw Error("--lambda must be >= 0");

  const QueryDataset data = LoadDataset(args.dataset);
  const JudgmentKind kind = KindOf(data);
  if (kind == JudgmentKind::kNone) throw Error("dataset carries no judgments");
  const SurrogateChoice choice =
      ChooseSurrogate(args.surrogate, kind, gain, discount);
  if (std::find(choice.accepts.begin(), choice.accepts.end(), kind) ==
      choice.accepts.end()) {
    throw Error("surrogate '" + args.surrogate + "' does not accept " +
                KindName(kind) + " judgments");
  }
  if (args.surrogate == "logistic" && args.k != 1) {
    throw Error("the logistic surrogate scores single comparisons; use --k 1");
  }
  const std::string structure =
      args.structure.empty() ? choice.structure : args.structure;
  const StructureFunction sfn = MakeStructure(structure, args.smoothing);

  UStatConfig ucfg;
  ucfg.k = args.k;
  ucfg.seed = args.seed;
  const TrainReport report =
      ProxSgdTrain(data, ucfg, *choice.surrogate, sfn, args.lambda, schedule,
                   args.iters, args.seed);

  json model = {{"schema_version", kSchemaVersion},
                {"surrogate", args.surrogate},
                {"structure", structure},
                {"judgments", KindName(kind)},
                {"k", args.k},
                {"lambda", args.lambda},
                {"schedule", schedule.name()},
                {"step_scale", schedule.c},
                {"smoothing", args.smoothing},
                {"gain", gain.name()},
                {"discount", discount.name()},
                {"iterations", report.iterations},
                {"seed", report.seed},
                {"theta_avg", VectorToJson(report.theta_avg)},
                {"theta_last", VectorToJson(report.theta_last)}};
  if (AllHaveRelevances(data)) {
    model["ndcg_risk"] = NdcgRisk(report.theta_avg, data, LimitingScores(data),
                                  gain, discount);
  }
  const fs::path dir(args.out);
  fs::create_directories(dir);
  WriteJsonFile(dir / kModelFile, model);
  std::ofstream trace = OpenOutput(dir / kTraceFile);
  trace << "schema_version,iteration,moving_avg_loss\n";
  trace.precision(17);
  for (const GapCheckpoint& c : report.gap_trace) {
    trace << kSchemaVersion << "," << c.iteration << "," << c.moving_avg_loss
          << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- sweep-k

struct SweepArgs {
  std::string dataset;
  std::vector<int> ks = {1, 5, 25, 100};
  std::vector<int> ns = {20000};
  std::vector<std::uint64_t> seeds;
  int reps = 1;
  std::uint64_t seed = 0;
  double lambda = 1e-3;
  std::string schedule = "inv_t";
  double step_scale = 5.0;
  std::int64_t iters = 50000;
  double smoothing = 1.0;
  std::string out;
};

int RunSweep(const SweepArgs& args) {
  RankingExperimentConfig cfg;
  cfg.lambda = args.lambda;
  cfg.schedule = StepSchedule::FromName(args.schedule, args.step_scale);
  cfg.schedule.Validate();
  cfg.iterations = args.iters;
  cfg.smoothing = args.smoothing;
  if (args.iters < 1) throw Error("--iters must be >= 1");
  if (!(args.smoothing > 0.0)) throw Error("--smoothing must be > 0");
  for (int k : args.ks) {
    if (k < 1) throw Error("--ks entries must be >= 1");
  }
  for (int n : args.ns) {
    if (n < 1) throw Error("--ns entries must be >= 1");
  }
  std::vector<std::uint64_t> seeds = args.seeds;
  if (seeds.empty()) {
    if (args.reps < 1) throw Error("--reps must be >= 1");
    for (int r = 0; r < args.reps; ++r) seeds.push_back(args.seed + r);
  }

  const QueryDataset data = LoadDataset(args.dataset);
  if (!AllHaveRelevances(data)) {
    throw Error("sweep-k needs true relevances on every query (m >= 2)");
  }
  const std::vector<SweepRow> rows =
      SweepK(data, args.ks, args.ns, seeds, cfg);

  std::ofstream out = OpenOutput(args.out);
  out << "schema_version,n,k,seed,ndcg_risk_reg,ndcg_risk_log,ndcg_risk_full\n";
  out.precision(17);
  for (const SweepRow& r : rows) {
    out << kSchemaVersion << "," << r.n << "," << r.k << "," << r.seed << ","
        << r.ndcg_risk_reg << "," << r.ndcg_risk_log << "," << r.ndcg_risk_full
        << "\n";
  }
  return 0;
}

// ------------------------------------------------------ demo-inconsistency

struct DemoArgs {
  std::string phi = "hinge";
  bool margin = false;
  bool difference = false;
  std::uint64_t seed = 0;
  int max_candidates = 10000;
  std::string out;
};

int RunDemo(const DemoArgs& args) {
  static const std::vector<std::string> kPhis = {"hinge", "logistic",
                                                 "exponential"};
  if (std::find(kPhis.begin(), kPhis.end(), args.phi) == kPhis.end()) {
    throw Error("unknown phi '" + args.phi + "'; valid: " + JoinNames(kPhis));
  }
  if (args.max_candidates < 1) throw Error("--max-candidates must be >= 1");
  PairSurrogateSpec spec;
  spec.kind =
      args.margin ? PairSurrogateKind::kMargin : PairSurrogateKind::kPairwisePhi;
  spec.phi = ConvexPhi::FromName(args.phi);
  SearchConfig search;
  search.max_candidates = args.max_candidates;

  std::optional<CounterexampleResult> found;
  try {
    found = ConstructLowNoiseCounterexample(spec, search, args.seed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAlgorithmFailure) throw;
    std::cerr << "search for " << spec.name() << " (seed " << args.seed
              << "): " << e.what() << "\n";
    if (!args.out.empty()) {
      WriteJsonFile(args.out, {{"schema_version", kSchemaVersion},
                               {"search_surrogate", spec.name()},
                               {"seed", args.seed},
                               {"status", "exhausted"},
                               {"message", e.what()}});
    }
    throw;
  }

  json doc = {{"schema_version", kSchemaVersion},
              {"search_surrogate", spec.name()},
              {"seed", args.seed},
              {"status", "found"},
              {"candidates_tried", found->candidates_tried},
              {"low_noise_candidates", found->low_noise_candidates}};
  if (args.difference) {
    PairSurrogateSpec diff;
    diff.kind = PairSurrogateKind::kDifference;
    diff.phi = spec.phi;
    const TargetLossPtr target = MakePairwiseEdgeLoss();
    doc["search_report"] = found->report.ToJson();
    doc["report"] =
        MakeInconsistencyReport(found->law, diff, *target, search.report)
            .ToJson();
  } else {
    doc["report"] = found->report.ToJson();
  }
  std::cerr << doc["report"]["surrogate"].get<std::string>() << ": "
            << doc["report"]["verdicts"]["verdict"].get<std::string>()
            << " after " << found->candidates_tried << " candidates\n";
  if (args.out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    WriteJsonFile(args.out, doc);
  }
  return 0;
}

// --------------------------------------------------------------- aggregate

const std::vector<std::string>& MethodNames() {
  static const std::vector<std::string> kNames = {
      "average",     "btl",         "thurstone", "borda",
      "ammar-shah",  "eigenvector", "cascade-mle", "log-odds"};
  return kNames;
}

JudgmentKind MethodInput(const std::string& method) {
  if (method == "average") return JudgmentKind::kAdjacency;
  if (method == "cascade-mle") return JudgmentKind::kSessions;
  return JudgmentKind::kPairs;
}

struct AggregateArgs {
  std::string judgments;
  std::string method;
  double smoothing = 1.0;
  double tol = 1e-12;
  int max_iter = 10000;
  std::string out;
};

json AggregateQuery(const Query& q, const AggregateArgs& args) {
  JudgmentRefs refs;
  for (const PreferenceJudgment& j : q.judgments) refs.push_back(&j);
  const int m = q.m();
  const std::string& method = args.method;
  json out = {{"query_id", q.query_id},
              {"m", m},
              {"judgments", q.judgments.size()}};
  if (method == "average") {
    if (refs.empty()) {
      out["adjacency"] = nullptr;
      return out;
    }
    out["adjacency"] =
        MatrixToJson(AverageAdjacency(CollectAdjacencies(refs)).weights());
    return out;
  }
  if (method == "cascade-mle") {
    const CascadeEstimate est = CascadeMle(CollectClicks(refs), m);
    out["scores"] = VectorToJson(est.probabilities.scores);
    out["clicks"] = est.clicks;
    out["examinations"] = est.examinations;
    std::vector<bool> examined(m);
    for (int i = 0; i < m; ++i) examined[i] = est.examined(i);
    out["examined"] = examined;
    return out;
  }
  const std::vector<ComparisonPreference> pairs = CollectComparisons(refs);
  if (method == "btl") {
    const SkewSymmetricAggregate agg = BtlLogOdds(pairs, m, args.smoothing);
    out["a"] = MatrixToJson(agg.a());
    out["mask"] = MatrixToJson(agg.mask());
    return out;
  }
  ScoreStructure s;
  if (method == "thurstone") {
    s = ThurstoneMostellerScores(BtlLogOdds(pairs, m, args.smoothing));
  } else if (method == "borda") {
    s = BordaScores(BtlLogOdds(pairs, m, args.smoothing));
  } else if (method == "ammar-shah") {
    s = AmmarShahScores(pairs, m);
  } else if (method == "eigenvector") {
    s = EigenvectorScores(ReciprocalRatios(pairs, m, args.smoothing), args.tol,
                          args.max_iter);
  } else {
    s = EmpiricalLogOddsScores(pairs, m, args.smoothing);
  }
  out["scores"] = VectorToJson(s.scores);
  return out;
}

int RunAggregate(const AggregateArgs& args) {
  const auto& names = MethodNames();
  if (std::find(names.begin(), names.end(), args.method) == names.end()) {
    throw Error("unknown method '" + args.method + "'; valid: " +
                JoinNames(names));
  }
  const QueryDataset data =
      DatasetFromJudgmentsJson(ReadJsonFile(args.judgments));
  const JudgmentKind kind = KindOf(data);
  const JudgmentKind want = MethodInput(args.method);
  if (kind != JudgmentKind::kNone && kind != want) {
    throw Error("method '" + args.method + "' needs " + KindName(want) +
                " judgments, file has " + KindName(kind));
  }
  json queries = json::array();
  for (const Query& q : data.queries) queries.push_back(AggregateQuery(q, args));
  json doc = {{"schema_version", kSchemaVersion},
              {"method", args.method},
              {"smoothing", args.smoothing},
              {"queries", queries}};
  if (args.out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    WriteJsonFile(args.out, doc);
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"rankagg: learning rankings from partial preferences"};
  app.require_subcommand(1);

  GenDataArgs gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen-data", "Generate a synthetic dataset (LETOR + judgments sidecar)");
  gen_cmd->add_option("--config", gen.config, "Generator JSON config")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "Override the config seed");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  TrainArgs train;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Fit a linear scorer by proximal SGD");
  train_cmd->add_option("--dataset", train.dataset, "Dataset directory")
      ->required();
  train_cmd->add_option("--surrogate", train.surrogate,
                        "reg, logistic, {zhang,pairwise,margin,difference}-"
                        "<phi>")
      ->capture_default_str();
  train_cmd->add_option("--structure", train.structure,
                        "Override the structure function");
  train_cmd->add_option("--k", train.k, "U-statistic order")
      ->capture_default_str();
  train_cmd->add_option("--lambda", train.lambda, "l2 weight")
      ->capture_default_str();
  train_cmd->add_option("--schedule", train.schedule, "inv_t or inv_sqrt_t")
      ->capture_default_str();
  train_cmd->add_option("--step-scale", train.step_scale, "Step scale c")
      ->capture_default_str();
  train_cmd->add_option("--iters", train.iters, "Iterations T")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed)->capture_default_str();
  train_cmd->add_option("--smoothing", train.smoothing,
                        "Log-odds smoothing c")
      ->capture_default_str();
  train_cmd->add_option("--gain", train.gain)->capture_default_str();
  train_cmd->add_option("--discount", train.discount)->capture_default_str();
  train_cmd->add_option("--out", train.out, "Output directory")->required();

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep-k", "NDCG risk of regression fits across orders k");
  sweep_cmd->add_option("--dataset", sweep.dataset, "Dataset directory")
      ->required();
  sweep_cmd->add_option("--ks", sweep.ks, "Orders k")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--ns", sweep.ns, "Pair counts n")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--seeds", sweep.seeds, "Explicit seed list")
      ->delimiter(',');
  sweep_cmd->add_option("--reps", sweep.reps, "Seeds seed..seed+reps-1")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
  sweep_cmd->add_option("--lambda", sweep.lambda)->capture_default_str();
  sweep_cmd->add_option("--schedule", sweep.schedule)->capture_default_str();
  sweep_cmd->add_option("--step-scale", sweep.step_scale)
      ->capture_default_str();
  sweep_cmd->add_option("--iters", sweep.iters)->capture_default_str();
  sweep_cmd->add_option("--smoothing", sweep.smoothing)->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "Output CSV")->required();

  DemoArgs demo;
  CLI::App* demo_cmd = app.add_subcommand(
      "demo-inconsistency",
      "Search a low-noise instance where a pairwise surrogate is inconsistent");
  demo_cmd->add_option("--phi", demo.phi, "hinge, logistic or exponential")
      ->capture_default_str();
  demo_cmd->add_flag("--margin", demo.margin,
                     "Search with the margin surrogate instead");
  demo_cmd->add_flag("--difference", demo.difference,
                     "Report the difference surrogate on the found instance");
  demo_cmd->add_option("--seed", demo.seed)->capture_default_str();
  demo_cmd->add_option("--max-candidates", demo.max_candidates)
      ->capture_default_str();
  demo_cmd->add_option("--out", demo.out, "Report JSON (stdout if absent)");

  AggregateArgs agg;
  CLI::App* agg_cmd =
      app.add_subcommand("aggregate", "Aggregate judgments per query");
  agg_cmd->add_option("--judgments", agg.judgments, "Judgments sidecar JSON")
      ->required();
  agg_cmd->add_option("--method", agg.method, JoinNames(MethodNames()))
      ->required();
  agg_cmd->add_option("--smoothing", agg.smoothing)->capture_default_str();
  agg_cmd->add_option("--tol", agg.tol, "Eigenvector tolerance")
      ->capture_default_str();
  agg_cmd->add_option("--max-iter", agg.max_iter, "Eigenvector iterations")
      ->capture_default_str();
  agg_cmd->add_option("--out", agg.out, "Scores JSON (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return RunGenData(gen);
    if (*train_cmd) return RunTrain(train);
    if (*sweep_cmd) return RunSweep(sweep);
    if (*demo_cmd) return RunDemo(demo);
    if (*agg_cmd) return RunAggregate(agg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kAlgorithmFailure ? kExitAlgorithm
                                                    : kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace rankagg

int main(int argc, char** argv) { return rankagg::Main(argc, argv); }
