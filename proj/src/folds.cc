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
#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

#include "phirisk/error.h"
#include "phirisk/eval.h"
#include "phirisk/rng.h"

namespace phirisk {

std::string_view fold_strategy_name(FoldStrategy strategy) {
  switch (strategy) {
    case FoldStrategy::kStratifiedSentence: return "stratified-sentence";
    case FoldStrategy::kDocumentGrouped: return "document-grouped";
  }
  return "?";
}

std::optional<FoldStrategy> parse_fold_strategy(std::string_view name) {
  if (name == "stratified-sentence") return FoldStrategy::kStratifiedSentence;
  if (name == "document-grouped") return FoldStrategy::kDocumentGrouped;
  return std::nullopt;
}

std::vector<std::size_t> FoldAssignment::test_indices(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i) {
    if (fold[i] == f) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i) {
    if (fold[i] != f) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::sizes() const {
  std::vector<std::size_t> out(k, 0);
  for (std::size_t f : fold) ++out[f];
  return out;
}

FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k,
                                std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kTooFewSamples, "k must be at least 2");
  std::array<std::vector<std::size_t>, 2> members;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(ErrorCode::kMalformedRecord, "label outside {0, 1} at " + std::to_string(i));
    }
    members[labels[i]].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (members[c].size() < k) {
      throw Error(ErrorCode::kTooFewSamples,
                  "class " + std::to_string(c) + " has " + std::to_string(members[c].size()) +
                      " samples, fewer than k = " + std::to_string(k));
    }
  }

  FoldAssignment out{k, std::vector<std::size_t>(labels.size(), 0), seed,
                     FoldStrategy::kStratifiedSentence};
  std::size_t position = 0;
  for (int c = 0; c < 2; ++c) {
    Rng rng(derive_seed(seed, "stratified-kfold", static_cast<std::uint64_t>(c)));
    rng.shuffle(std::span<std::size_t>(members[c]));
    for (std::size_t i : members[c]) out.fold[i] = position++ % k;
  }
  return out;
}

FoldAssignment group_kfold(std::span<const std::string> groups, std::size_t k,
                           std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kTooFewSamples, "k must be at least 2");
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> id;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto [it, inserted] = id.emplace(groups[i], names.size());
    if (inserted) {
      names.push_back(groups[i]);
      members.emplace_back();
    }
    members[it->second].push_back(i);
  }
  if (names.size() < k) {
    throw Error(ErrorCode::kTooFewSamples, std::to_string(names.size()) +
                                               " groups, fewer than k = " + std::to_string(k));
  }

  // Sort by name first so the result does not depend on input order.
  std::vector<std::size_t> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
  Rng rng(derive_seed(seed, "group-kfold"));
  rng.shuffle(std::span<std::size_t>(order));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return members[a].size() > members[b].size();
  });

  FoldAssignment out{k, std::vector<std::size_t>(groups.size(), 0), seed,
                     FoldStrategy::kDocumentGrouped};
  std::vector<std::size_t> load(k, 0);
  for (std::size_t g : order) {
    std::size_t f = static_cast<std::size_t>(
        std::min_element(load.begin(), load.end()) - load.begin());
    for (std::size_t i : members[g]) out.fold[i] = f;
    load[f] += members[g].size();
  }
  return out;
}

FoldAssignment make_folds(std::span<const SentenceRecord> records, std::size_t k,
                          std::uint64_t seed, FoldStrategy strategy) {
  if (strategy == FoldStrategy::kDocumentGrouped) {
    std::vector<std::string> groups;
    groups.reserve(records.size());
    for (const auto& r : records) groups.push_back(r.doc_id);
    return group_kfold(groups, k, seed);
  }
  std::vector<int> labels;
  labels.reserve(records.size());
  for (const auto& r : records) labels.push_back(r.label);
  return stratified_kfold(labels, k, seed);
}

}  // namespace phirisk
