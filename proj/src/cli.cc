// Copyright 2026 The phirisk Authors.
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
#include "phirisk/cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "phirisk/corpus.h"
#include "phirisk/error.h"
#include "phirisk/eval.h"
#include "phirisk/features.h"
#include "phirisk/model_io.h"
#include "phirisk/segment.h"
#include "phirisk/synth.h"

namespace phirisk {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string input;
  std::string output;
  std::uint64_t seed = 42;
  std::size_t k = 5;
  std::string features = "bow";
  std::string model = "lsvm";
  std::string embeddings;
  std::string glob = "*.xml";
  std::string format = "table";
  bool lenient = false;
  bool group_by_document = false;
  std::optional<double> binarize_at;
  bool tie_high = false;
  bool save_model = false;
  SynthConfig synth;
};

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Prints per-file failures; returns true when there were any.
bool report_failures(const CorpusLoad& load, std::ostream& err) {
  for (const auto& w : load.warnings) err << "warning: " << w << "\n";
  for (const auto& f : load.failures) err << "error: " << f.file << ": " << f.message << "\n";
  return !load.failures.empty();
}

CorpusLoad load(const Flags& flags) {
  LoadOptions options;
  options.glob = flags.glob;
  options.parse.lenient = flags.lenient;
  return load_corpus(flags.input, options);
}

int cmd_stats(const Flags& flags, std::ostream& out, std::ostream& err) {
  CorpusLoad corpus = load(flags);
  bool failed = report_failures(corpus, err);
  TagCountReport stats = corpus_stats(corpus.documents);
  if (flags.output.empty()) {
    out << render_stats_csv(stats);
  } else {
    write_file(flags.output, render_stats_csv(stats));
    out << render_stats_table(stats);
  }
  return failed ? kExitData : kExitOk;
}

int cmd_prepare(const Flags& flags, std::ostream& out, std::ostream& err) {
  if (flags.output.empty()) throw UsageError("prepare needs --output");
  CorpusLoad corpus = load(flags);
  bool failed = report_failures(corpus, err);
  std::vector<SentenceRecord> records = label_corpus(corpus.documents);
  std::ostringstream jsonl;
  write_jsonl(jsonl, records);
  write_file(flags.output, jsonl.str());
  out << render_label_summary(corpus_label_summary(records));
  return failed ? kExitData : kExitOk;
}

template <typename T, typename Parse, typename All>
std::vector<T> parse_list(const std::string& list, Parse parse, const All& all,
                          const char* what) {
  if (list == "all") return std::vector<T>(all.begin(), all.end());
  std::vector<T> out;
  std::stringstream stream(list);
  std::string item;
  while (std::getline(stream, item, ',')) {
    auto value = parse(item);
    if (!value) throw UsageError(std::string("unknown ") + what + " '" + item + "'");
    if (std::find(out.begin(), out.end(), *value) == out.end()) out.push_back(*value);
  }
  if (out.empty()) throw UsageError(std::string("no ") + what + " given");
  return out;
}

int cmd_cv(const Flags& flags, std::ostream& out, std::ostream& err) {
  constexpr std::array<FeatureKind, 2> kAllFeatures = {FeatureKind::kBow,
                                                       FeatureKind::kEmbedding};
  auto features = parse_list<FeatureKind>(flags.features, parse_feature_kind, kAllFeatures,
                                          "feature kind");
  auto models = parse_list<ModelKind>(flags.model, parse_model_kind, kAllModelKinds, "model");
  bool needs_embeddings =
      std::find(features.begin(), features.end(), FeatureKind::kEmbedding) != features.end();
  if (needs_embeddings && flags.embeddings.empty()) {
    throw UsageError("--features w2v requires --embeddings");
  }
  if (flags.output.empty()) throw UsageError("cv needs --output");

  // Either a corpus directory or the JSONL written by prepare.
  std::vector<SentenceRecord> records;
  bool failed = false;
  if (fs::is_directory(flags.input)) {
    CorpusLoad corpus = load(flags);
    failed = report_failures(corpus, err);
    records = label_corpus(corpus.documents);
  } else {
    std::ifstream in(flags.input, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + flags.input);
    records = read_jsonl(in);
  }
  EmbeddingTable table;
  if (needs_embeddings) table = load_embeddings(flags.embeddings);

  CvOptions options;
  options.k = flags.k;
  options.seed = flags.seed;
  options.strategy = flags.group_by_document ? FoldStrategy::kDocumentGrouped
                                             : FoldStrategy::kStratifiedSentence;
  options.train.bnb.binarize_at = flags.binarize_at;
  options.train.set_seed(flags.seed);
  options.predict.tie_high = flags.tie_high;
  options.embeddings = &table;

  fs::path dir = flags.output;
  std::vector<EvalReport> reports;
  bool warned = false;
  for (FeatureKind f : features) {
    for (ModelKind m : models) {
      std::string run = std::string(feature_kind_name(f)) + "_" + std::string(model_kind_name(m));
      try {
        EvalReport report = cross_validate(records, f, m, options);
        write_file(dir / (run + ".json"), render_report(report, "json"));
        write_file(dir / (run + ".csv"), render_report(report, "folds"));
        for (const auto& w : report.warnings) {
          err << "warning: " << run << ": " << w << "\n";
          warned = true;
        }
        if (flags.save_model) {
          std::unique_ptr<Featurizer> featurizer;
          if (f == FeatureKind::kEmbedding) {
            featurizer = std::make_unique<EmbeddingFeaturizer>(table);
          } else {
            featurizer = std::make_unique<BowFeaturizer>();
          }
          auto fitted = featurizer->fit(records);
          std::vector<int> y;
          for (const auto& r : records) y.push_back(r.label);
          ModelBundle bundle{train_model(m, fitted->transform(records), y, options.train),
                             fitted->fingerprint(), flags.seed};
          write_file(dir / (run + ".model.json"), save_model_json(bundle));
        }
        reports.push_back(std::move(report));
      } catch (const Error& e) {
        err << "error: " << run << ": " << e.what() << "\n";
        failed = true;
      }
    }
  }
  write_file(dir / "summary.csv", render_report(reports, "csv"));
  out << render_report(reports, "table");
  if (failed) return kExitData;
  return warned ? kExitConvergence : kExitOk;
}

int cmd_synth(const Flags& flags, std::ostream& out, std::ostream& /*err*/) {
  if (flags.output.empty()) throw UsageError("synth needs --output");
  SynthConfig config = flags.synth;
  config.seed = flags.seed;
  write_synthetic_corpus(config, flags.output);
  GroundTruthLedger ledger = ledger_from_json(read_file(fs::path(flags.output) / "ledger.json"));
  out << "wrote " << config.notes << " notes to " << flags.output << "\n"
      << render_label_summary(ledger.labels);
  return kExitOk;
}

int cmd_report(const Flags& flags, std::ostream& out, std::ostream& /*err*/) {
  std::vector<fs::path> files;
  if (fs::is_directory(flags.input)) {
    for (const auto& entry : fs::directory_iterator(flags.input)) {
      const fs::path& p = entry.path();
      std::string name = p.filename().string();
      if (p.extension() == ".json" && name.find(".model.") == std::string::npos) {
        files.push_back(p);
      }
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(flags.input);
  }
  std::vector<EvalReport> reports;
  for (const auto& file : files) {
    for (auto& r : parse_reports_json(read_file(file))) reports.push_back(std::move(r));
  }
  // Same row order as cv: features, then models, in their declared order.
  auto rank = [](const EvalReport& r) {
    auto f = parse_feature_kind(r.meta.features);
    auto m = parse_model_kind(r.meta.model);
    return std::pair(f ? static_cast<int>(*f) : 99, m ? static_cast<int>(*m) : 99);
  };
  std::stable_sort(reports.begin(), reports.end(),
                   [&](const EvalReport& a, const EvalReport& b) { return rank(a) < rank(b); });
  std::string rendered = render_report(reports, flags.format);
  if (flags.output.empty()) {
    out << rendered;
  } else {
    write_file(flags.output, rendered);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentence-level PHI risk classification for i2b2 style clinical notes",
               "phirisk"};
  app.require_subcommand(1);
  Flags flags;

  auto add_input = [&](CLI::App* cmd, const char* help) {
    cmd->add_option("--input", flags.input, help)->required();
  };
  auto add_corpus_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--lenient", flags.lenient, "keep tags whose text disagrees with the note");
    cmd->add_option("--glob", flags.glob, "file name pattern")->capture_default_str();
  };

  CLI::App* stats = app.add_subcommand("stats", "count PHI tags per category");
  add_input(stats, "corpus directory");
  stats->add_option("--output", flags.output, "CSV destination (default: stdout)");
  add_corpus_flags(stats);

  CLI::App* prepare = app.add_subcommand("prepare", "split notes into labeled sentences");
  add_input(prepare, "corpus directory");
  prepare->add_option("--output", flags.output, "JSONL destination")->required();
  add_corpus_flags(prepare);

  CLI::App* cv = app.add_subcommand("cv", "cross-validate feature/model pairs");
  add_input(cv, "corpus directory or JSONL from prepare");
  add_corpus_flags(cv);
  cv->add_option("--output", flags.output, "report directory")->required();
  cv->add_option("--seed", flags.seed, "random seed")->capture_default_str();
  cv->add_option("--k", flags.k, "number of folds")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  cv->add_option("--features", flags.features, "bow, w2v, a comma list or all")
      ->capture_default_str();
  cv->add_option("--model", flags.model, "bnb, gnb, ada, rf, lsvm, svm, a comma list or all")
      ->capture_default_str();
  cv->add_option("--embeddings", flags.embeddings, "word vectors in text format");
  cv->add_flag("--group-by-document", flags.group_by_document,
               "keep all sentences of a note in one fold");
  cv->add_option("--binarize-at", flags.binarize_at,
                 "Bernoulli NB: values above this count as present");
  cv->add_flag("--tie-high", flags.tie_high, "scores on the threshold predict high risk");
  cv->add_flag("--save-model", flags.save_model, "also save a model fit on all sentences");

  CLI::App* synth = app.add_subcommand("synth", "write a synthetic corpus with ground truth");
  synth->add_option("--output", flags.output, "output directory")->required();
  synth->add_option("--seed", flags.seed, "random seed")->capture_default_str();
  synth->add_option("--notes", flags.synth.notes, "number of notes")->capture_default_str();
  synth->add_option("--min-sentences", flags.synth.min_sentences)->capture_default_str();
  synth->add_option("--max-sentences", flags.synth.max_sentences)->capture_default_str();
  synth->add_option("--high-fraction", flags.synth.high_fraction,
                    "share of sentences holding PHI")
      ->capture_default_str();
  synth->add_option("--header-rate", flags.synth.header_rate)->capture_default_str();
  synth->add_option("--embedding-dim", flags.synth.embedding_dim)->capture_default_str();

  CLI::App* report = app.add_subcommand("report", "render saved cv reports");
  add_input(report, "report JSON file or cv output directory");
  report->add_option("--output", flags.output, "destination (default: stdout)");
  report->add_option("--format", flags.format, "csv, folds, confusion, table or json")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (stats->parsed()) return cmd_stats(flags, out, err);
    if (prepare->parsed()) return cmd_prepare(flags, out, err);
    if (cv->parsed()) return cmd_cv(flags, out, err);
    if (synth->parsed()) return cmd_synth(flags, out, err);
    return cmd_report(flags, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidConfig || e.code() == ErrorCode::kUnknownFormat
               ? kExitUsage
               : kExitData;
  }
}

}  // namespace phirisk
