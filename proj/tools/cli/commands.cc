// Copyright 2026 The stylomatch Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "stylomatch/atomic_file.h"
#include "stylomatch/calibration.h"
#include "stylomatch/clean.h"
#include "stylomatch/corpus.h"
#include "stylomatch/encoder.h"
#include "stylomatch/error.h"
#include "stylomatch/evalkit.h"
#include "stylomatch/featurizer.h"
#include "stylomatch/model_io.h"
#include "stylomatch/scan.h"
#include "stylomatch/synthetic.h"
#include "stylomatch/trainer.h"

namespace stylomatch::cli {
namespace {

namespace fs = std::filesystem;

struct CleanArgs {
  std::string in;
  std::string out;
  std::string rules = "hex,comments";
};

struct SplitArgs {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

struct TrainArgs {
  std::string corpus;
  std::string repr;
  std::string featurizer = "ngram";
  std::string out;
  std::string log;
  std::size_t max_features = kDefaultMaxFeatures;
  std::size_t hidden_dim = 64;
  std::size_t output_dim = 768;
  std::size_t hidden_layers = 1;
  SplitArgs split;
  TrainConfig train;
};

struct EvalArgs {
  std::string corpus;
  std::string model;
  std::string repr;
  std::string out;
  std::string scores_out;
  std::string subset = "eval";
  double theta = 0.84;
  std::size_t pairs_per_class = 1000;
  std::size_t token_limit = kDefaultTokenLimit;
  SplitArgs split;
};

struct CalibrateArgs {
  std::string scores;
  std::string out;
  std::string domain = "distance";
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

struct ScanArgs {
  std::string model;
  std::string old_corpus;
  std::string new_corpus;
  std::string scores;
  std::string out;
  std::string csv;
  std::optional<double> theta;
  ScanConfig cfg;
  std::uint64_t seed = 0;
};

struct EmbedArgs {
  std::string corpus;
  std::string model;
  std::string repr;
  std::string out;
  std::size_t token_limit = kDefaultTokenLimit;
  std::uint64_t seed = 0;
};

struct SynthArgs {
  std::string out;
  synthetic::CorpusOptions options;
};

// Every sample must carry the representation a command works on.
void RequireRepresentation(std::span<const FunctionSample> samples,
                           const std::string& repr) {
  if (!IsKnownRepresentation(repr)) {
    throw InvalidArgument("unknown representation '" + repr + "'");
  }
  for (const FunctionSample& s : samples) {
    if (s.repr(repr) == nullptr) {
      throw DataError("function '" + s.function_id +
                      "' lacks representation '" + repr + "'");
    }
  }
}

std::vector<double> ReadScores(const std::string& path) {
  const std::string text = ReadFile(path);
  std::vector<double> scores;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(line.substr(start), &used);
      if (line.find_first_not_of(" \t\r", start + used) != std::string::npos ||
          !std::isfinite(v)) {
        throw std::invalid_argument("trailing characters");
      }
      scores.push_back(v);
    } catch (const std::exception&) {
      throw DataError("score file " + path + " line " +
                      std::to_string(line_no) + ": not a number");
    }
  }
  return scores;
}

std::string FormatScores(std::span<const double> scores) {
  std::ostringstream out;
  out.precision(17);
  for (double s : scores) out << s << '\n';
  return out.str();
}

std::vector<LabeledSample> SelectSubset(const std::vector<LabeledSample>& all,
                                        const std::string& subset,
                                        const SplitArgs& split) {
  if (subset == "all") return all;
  const AuthorSplit s = SplitByAuthor(all, split.train_fraction, split.seed);
  return FilterByAuthors(all, subset == "train" ? s.train_authors
                                                : s.eval_authors);
}

int DoClean(const CleanArgs& a, std::ostream& out, std::ostream& err) {
  const std::set<CleaningRule> rules = ParseRules(a.rules);
  std::vector<FunctionSample> corpus = LoadCorpus(a.in);
  std::vector<std::string> warnings;
  for (FunctionSample& s : corpus) CleanSample(s, rules, &warnings);
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
  SaveCorpus(a.out, corpus);
  out << "cleaned " << corpus.size() << " functions\n";
  return kExitOk;
}

int DoTrain(const TrainArgs& a, std::ostream& out, std::ostream&) {
  const FeaturizerKind kind = ParseFeaturizerKind(a.featurizer);
  const std::vector<FunctionSample> corpus = LoadCorpus(a.corpus);
  RequireRepresentation(corpus, a.repr);
  const std::vector<LabeledSample> labeled = LabelSamples(corpus);
  const AuthorSplit split =
      SplitByAuthor(labeled, a.split.train_fraction, a.split.seed);
  const std::vector<LabeledSample> train_set =
      FilterByAuthors(labeled, split.train_authors);

  std::vector<std::string> docs;
  docs.reserve(train_set.size());
  for (const LabeledSample& s : train_set) {
    docs.push_back(TruncateTokens(*s.sample.repr(a.repr), a.train.token_limit));
  }
  const FittedFeaturizer featurizer = FitFeaturizer(kind, docs, a.max_features);

  EncoderConfig config;
  config.input_dim = featurizer.dimension();
  config.hidden_dim = a.hidden_dim;
  config.output_dim = a.output_dim;
  config.num_hidden_layers = a.hidden_layers;
  config.init_seed = a.split.seed;
  EncoderModel model = InitEncoder(config);

  TrainConfig cfg = a.train;
  cfg.seed = a.split.seed;
  std::vector<EpochRecord> log;
  if (cfg.epochs > 0) {
    TrainResult result = Train(std::move(model), train_set, featurizer, a.repr, cfg);
    model = std::move(result.model);
    log = std::move(result.log);
  }
  SaveModel(model, featurizer, a.out);
  std::string log_path = a.log;
  if (log_path.empty()) {
    log_path = fs::path(a.out).replace_extension(".log.jsonl").string();
  }
  WriteFileAtomic(log_path, FormatTrainingLog(log));
  out << "trained on " << train_set.size() << " functions from "
      << split.train_authors.size() << " authors; " << featurizer.dimension()
      << " features; model written to " << a.out << '\n';
  return kExitOk;
}

int DoEval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const ModelBundle bundle = LoadModel(a.model);
  const std::vector<FunctionSample> corpus = LoadCorpus(a.corpus);
  RequireRepresentation(corpus, a.repr);
  const std::vector<LabeledSample> subset =
      SelectSubset(LabelSamples(corpus), a.subset, a.split);
  const std::vector<SamplePair> pairs =
      SamplePairs(subset, a.pairs_per_class, a.split.seed);
  const std::vector<ScoredPair> scored = ScorePairs(
      bundle.encoder, bundle.featurizer, subset, pairs, a.repr, a.token_limit);
  const MetricsReport report = Evaluate(scored, a.theta);
  for (const std::string& w : report.metrics.warnings) {
    err << "warning: " << w << '\n';
  }
  WriteFileAtomic(a.out, MetricsReportToJson(report));
  if (!a.scores_out.empty()) {
    std::vector<double> same;
    for (const ScoredPair& p : scored) {
      if (p.pair.label == PairLabel::kSame) same.push_back(p.score);
    }
    WriteFileAtomic(a.scores_out, FormatScores(same));
  }
  out << "auroc " << report.auroc << " over " << report.positive_pairs
      << " positive and " << report.negative_pairs << " negative pairs\n";
  return kExitOk;
}

int DoCalibrate(const CalibrateArgs& a, std::ostream& out, std::ostream&) {
  const std::vector<double> scores = ReadScores(a.scores);
  const Calibration c = DeriveThreshold(scores, a.n, ParseScoreDomain(a.domain));
  WriteFileAtomic(a.out, CalibrationToJson(c));
  out << "theta " << c.threshold.value << " (" << ToString(c.fit.domain)
      << ", n=" << c.threshold.n << ")\n";
  return kExitOk;
}

int DoScan(const ScanArgs& a, std::ostream& out, std::ostream&) {
  const ModelBundle bundle = LoadModel(a.model);
  const std::vector<FunctionSample> old = LoadCorpus(a.old_corpus);
  const std::vector<FunctionSample> updated = LoadCorpus(a.new_corpus);
  ScanConfig cfg = a.cfg;
  cfg.manual_theta = a.theta;
  std::vector<double> scores;
  if (!a.scores.empty()) scores = ReadScores(a.scores);
  const ScanReport report =
      ScanUpdate(bundle.encoder, bundle.featurizer, old, updated, cfg, scores);
  WriteFileAtomic(a.out, ScanReportToJson(report));
  if (!a.csv.empty()) WriteFileAtomic(a.csv, ScanReportToCsv(report));
  const auto flagged = std::count_if(report.entries.begin(), report.entries.end(),
                                     [](const ScanEntry& e) { return e.flagged; });
  out << report.entries.size() << " changed functions, " << flagged
      << " flagged (theta " << report.theta.value << ")\n";
  return kExitOk;
}

int DoEmbed(const EmbedArgs& a, std::ostream& out, std::ostream&) {
  const ModelBundle bundle = LoadModel(a.model);
  const std::vector<FunctionSample> corpus = LoadCorpus(a.corpus);
  RequireRepresentation(corpus, a.repr);
  const std::vector<LabeledSample> labeled = LabelSamples(corpus);
  DumpEmbeddings(bundle.encoder, bundle.featurizer, labeled, a.repr, a.out,
                 a.token_limit);
  out << "embedded " << labeled.size() << " functions\n";
  return kExitOk;
}

int DoSynth(const SynthArgs& a, std::ostream& out, std::ostream&) {
  const synthetic::SyntheticCorpus corpus = synthetic::GenerateCorpus(a.options);
  SaveCorpus(a.out, corpus.samples);
  out << "wrote " << corpus.samples.size() << " synthetic functions\n";
  return kExitOk;
}

// Expands `--config FILE` into flags placed right after the subcommand so
// explicit flags, which come later, win.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw CLI::ValidationError("--config needs a file");
  const std::string path = *(it + 1);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw DataError("config file must hold a JSON object");

  std::vector<std::string> flags;
  for (const auto& [key, value] : cfg.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back("--" + key);
    } else if (value.is_string()) {
      flags.push_back("--" + key);
      flags.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      flags.push_back("--" + key);
      flags.push_back(value.dump());
    } else {
      throw DataError("config key '" + key + "' must be a scalar");
    }
  }
  std::vector<std::string> out;
  for (auto a = args.begin(); a != args.end(); ++a) {
    if (a == it) {
      ++a;
      continue;
    }
    out.push_back(*a);
    // args[0] is the program, args[1] the subcommand.
    if (out.size() == 2) out.insert(out.end(), flags.begin(), flags.end());
  }
  return out;
}

}  // namespace

int Run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Function-level code authorship verification for binaries",
               "stylomatch"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CleanArgs clean;
  auto* c = app.add_subcommand("clean", "Write *_clean representations");
  c->add_option("--in", clean.in, "Input corpus (JSON lines)")->required();
  c->add_option("--out", clean.out, "Output corpus")->required();
  c->add_option("--rules", clean.rules, "Comma list: hex, comments");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Fit featurizer and train the encoder");
  t->add_option("--corpus", train.corpus)->required();
  t->add_option("--repr", train.repr, "Representation name")->required();
  t->add_option("--featurizer", train.featurizer, "tfidf or ngram");
  t->add_option("--out", train.out, "Model file")->required();
  t->add_option("--log", train.log, "Training log (JSON lines)");
  t->add_option("--seed", train.split.seed);
  t->add_option("--epochs", train.train.epochs);
  t->add_option("--train-fraction", train.split.train_fraction);
  t->add_option("--max-features", train.max_features);
  t->add_option("--hidden-dim", train.hidden_dim);
  t->add_option("--output-dim", train.output_dim);
  t->add_option("--hidden-layers", train.hidden_layers);
  t->add_option("--temperature", train.train.temperature);
  t->add_option("--batch-authors", train.train.batch_authors);
  t->add_option("--samples-per-author", train.train.samples_per_author);
  t->add_option("--learning-rate", train.train.learning_rate);
  t->add_option("--token-limit", train.train.token_limit);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score same-binary pairs and report metrics");
  e->add_option("--corpus", eval.corpus)->required();
  e->add_option("--model", eval.model)->required();
  e->add_option("--repr", eval.repr)->required();
  e->add_option("--out", eval.out, "Metrics report (JSON)")->required();
  e->add_option("--scores-out", eval.scores_out,
                "Write same-author pair similarities, one per line");
  e->add_option("--subset", eval.subset, "eval, train or all authors");
  e->add_option("--theta", eval.theta);
  e->add_option("--pairs-per-class", eval.pairs_per_class);
  e->add_option("--seed", eval.split.seed);
  e->add_option("--train-fraction", eval.split.train_fraction);
  e->add_option("--token-limit", eval.token_limit);

  CalibrateArgs calib;
  auto* k = app.add_subcommand("calibrate", "Derive the expected-minimum threshold");
  k->add_option("--scores", calib.scores, "Same-author similarities")->required();
  k->add_option("--n", calib.n, "Number of comparisons");
  k->add_option("--domain", calib.domain, "similarity or distance");
  k->add_option("--out", calib.out)->required();
  k->add_option("--seed", calib.seed);

  ScanArgs scan;
  auto* s = app.add_subcommand("scan", "Flag changed functions with unfamiliar style");
  s->add_option("--model", scan.model)->required();
  s->add_option("--old", scan.old_corpus)->required();
  s->add_option("--new", scan.new_corpus)->required();
  s->add_option("--repr", scan.cfg.representation);
  s->add_option("--scores", scan.scores, "Same-author similarities for calibration");
  s->add_option("--theta", scan.theta, "Fixed distance threshold");
  s->add_option("--min-instructions", scan.cfg.min_instruction_count);
  s->add_option("--token-limit", scan.cfg.token_limit);
  s->add_option("--out", scan.out, "Scan report (JSON)")->required();
  s->add_option("--csv", scan.csv, "Optional CSV summary");
  s->add_option("--seed", scan.seed);

  EmbedArgs embed;
  auto* m = app.add_subcommand("embed", "Dump embeddings as JSON lines");
  m->add_option("--corpus", embed.corpus)->required();
  m->add_option("--model", embed.model)->required();
  m->add_option("--repr", embed.repr)->required();
  m->add_option("--out", embed.out)->required();
  m->add_option("--token-limit", embed.token_limit);
  m->add_option("--seed", embed.seed);

  SynthArgs synth;
  auto* y = app.add_subcommand("synth", "Generate a synthetic corpus");
  y->add_option("--out", synth.out)->required();
  y->add_option("--authors", synth.options.authors);
  y->add_option("--functions", synth.options.functions_per_author);
  y->add_option("--binaries", synth.options.binaries);
  y->add_option("--seed", synth.options.seed);

  try {
    std::vector<std::string> args = ExpandConfig(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
    if (*c) ParseRules(clean.rules);
    if (*t) ParseFeaturizerKind(train.featurizer);
    if (*e && eval.subset != "eval" && eval.subset != "train" &&
        eval.subset != "all") {
      throw InvalidArgument("--subset must be eval, train or all");
    }
    if (*k) ParseScoreDomain(calib.domain);
    if (*s && scan.theta.has_value() == !scan.scores.empty()) {
      throw InvalidArgument("scan needs exactly one of --theta or --scores");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const InvalidArgument& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitDataError;
  }

  try {
    if (*c) return DoClean(clean, out, err);
    if (*t) return DoTrain(train, out, err);
    if (*e) return DoEval(eval, out, err);
    if (*k) return DoCalibrate(calib, out, err);
    if (*s) return DoScan(scan, out, err);
    if (*m) return DoEmbed(embed, out, err);
    if (*y) return DoSynth(synth, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

int Run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return Run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace stylomatch::cli
