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
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "phirisk/synth.h"
#include "test_support.h"

using namespace phirisk;

TEST_SUITE("synth") {

TEST_CASE("a low-only note has no tags") {
  SynthConfig config;
  config.seed = 7;
  config.notes = 1;
  config.min_sentences = 3;
  config.max_sentences = 3;
  config.high_fraction = 0.0;
  config.header_rate = 0.0;
  auto corpus = generate_corpus(config);
  REQUIRE(corpus.documents.size() == 1);
  CHECK(corpus.documents[0].doc_id == "synth-0001");
  CHECK(corpus.documents[0].tags.empty());
  auto records = label_sentences(corpus.documents[0]);
  REQUIRE(records.size() == 3);
  for (const auto& r : records) CHECK(r.label == 0);
  CHECK(corpus.ledger.labels == LabelSummary{3, 0, 3});
}

TEST_CASE("generation is deterministic") {
  SynthConfig config;
  config.seed = 11;
  config.notes = 15;
  auto a = generate_corpus(config);
  auto b = generate_corpus(config);
  CHECK(a.documents == b.documents);
  CHECK(ledger_to_json(a.ledger) == ledger_to_json(b.ledger));

  config.seed = 12;
  CHECK(generate_corpus(config).documents != a.documents);

  testing::TempDir one("synth-a");
  testing::TempDir two("synth-b");
  config.seed = 11;
  write_synthetic_corpus(config, one.path());
  write_synthetic_corpus(config, two.path());
  for (const char* file : {"ledger.json", "embeddings.txt", "corpus/synth-0001.xml",
                           "corpus/synth-0015.xml"}) {
    CHECK(testing::read(one.path() / file) == testing::read(two.path() / file));
  }
}

TEST_CASE("the pipeline recovers the ledger exactly") {
  for (std::uint64_t seed : {1u, 7u, 42u}) {
    SynthConfig config;
    config.seed = seed;
    config.notes = 25;
    config.header_rate = 0.3;
    auto corpus = generate_corpus(config);
    REQUIRE(corpus.ledger.documents.size() == corpus.documents.size());
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
      // Round trip through XML as the command line would.
      const RawDocument& generated = corpus.documents[d];
      RawDocument doc = parse_document(serialize_document(generated), generated.doc_id);
      CHECK(doc == generated);
      const LedgerDocument& truth = corpus.ledger.documents[d];
      CHECK(truth.doc_id == doc.doc_id);
      CHECK(truth.tags == doc.tags);
      auto records = label_sentences(doc);
      REQUIRE(records.size() == truth.sentences.size());
      for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].start == truth.sentences[i].start);
        CHECK(records[i].end == truth.sentences[i].end);
        CHECK(records[i].label == truth.labels[i]);
      }
    }
    CHECK(corpus_stats(corpus.documents) == corpus.ledger.counts);
    auto records = label_corpus(corpus.documents);
    CHECK(corpus_label_summary(records) == corpus.ledger.labels);
  }
}

TEST_CASE("the high fraction is honored") {
  for (double fraction : {0.2, 0.48, 0.8}) {
    SynthConfig config;
    config.seed = 3;
    config.notes = 150;
    config.high_fraction = fraction;
    auto ledger = generate_corpus(config).ledger;
    double n = static_cast<double>(ledger.labels.total);
    double observed = static_cast<double>(ledger.labels.high) / n;
    double expected = fraction;
    double se = std::sqrt(expected * (1 - expected) / n);
    CHECK(std::abs(observed - expected) <= 3 * se);
  }
  SynthConfig all;
  all.notes = 5;
  all.high_fraction = 1.0;
  auto ledger = generate_corpus(all).ledger;
  CHECK(ledger.labels.high == ledger.labels.total);
}

TEST_CASE("category weights steer tag counts") {
  SynthConfig config;
  config.notes = 20;
  config.high_fraction = 1.0;
  config.category_weights.fill(0.0);
  config.category_weights[category_index(PhiCategory::kZip)] = 1.0;
  auto ledger = generate_corpus(config).ledger;
  CHECK(ledger.counts.total > 0);
  CHECK(ledger.counts.count(PhiCategory::kZip) == ledger.counts.total);
}

TEST_CASE("embeddings") {
  SynthConfig config;
  config.embedding_dim = 8;
  auto table = generate_embeddings(config);
  CHECK(table.dimension() == 8);
  CHECK(table.size() > 50);
  std::ostringstream out;
  write_embeddings(out, table);
  std::string text = out.str();
  CHECK(text.rfind(std::to_string(table.size()) + " 8\n", 0) == 0);
  std::istringstream in(text);
  CHECK(read_embeddings(in) == table);
  CHECK(generate_embeddings(config) == table);
}

TEST_CASE("configuration validation") {
  auto bad = [](auto edit) {
    SynthConfig config;
    edit(config);
    return testing::error_of([&] { config.validate(); });
  };
  CHECK(bad([](SynthConfig& c) { c.notes = 0; }) == ErrorCode::kInvalidConfig);
  CHECK(bad([](SynthConfig& c) { c.min_sentences = 0; }) == ErrorCode::kInvalidConfig);
  CHECK(bad([](SynthConfig& c) { c.max_sentences = 2; }) == ErrorCode::kInvalidConfig);
  CHECK(bad([](SynthConfig& c) { c.high_fraction = 1.5; }) == ErrorCode::kInvalidConfig);
  CHECK(bad([](SynthConfig& c) { c.high_fraction = -0.1; }) == ErrorCode::kInvalidConfig);
  CHECK(bad([](SynthConfig& c) { c.category_weights.fill(0.0); }) ==
        ErrorCode::kInvalidConfig);
  CHECK(bad([](SynthConfig& c) { c.embedding_dim = 0; }) == ErrorCode::kInvalidConfig);
  SynthConfig ok;
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("ledger json round trip") {
  SynthConfig config;
  config.seed = 5;
  config.notes = 6;
  auto ledger = generate_corpus(config).ledger;
  CHECK(ledger_from_json(ledger_to_json(ledger)) == ledger);
  CHECK(testing::error_of([] { ledger_from_json("{"); }) == ErrorCode::kMalformedRecord);
}

}  // TEST_SUITE
