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
#include "phirisk/corpus.h"

#include <expat.h>
#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <tuple>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "phirisk/parallel.h"
#include "phirisk/text.h"

namespace phirisk {
namespace {

struct RawTag {
  std::string element;
  std::vector<std::pair<std::string, std::string>> attributes;
  long line = 0;

  const std::string* find(std::string_view name) const {
    for (const auto& [key, value] : attributes) {
      if (key == name) return &value;
    }
    return nullptr;
  }
};

// Collected while expat walks the document; validated afterwards so that no
// exception crosses the C callbacks.
struct ParseState {
  XML_Parser parser = nullptr;
  int depth = 0;
  int text_depth = 0;  // depth of the open TEXT element, 0 when closed
  int tags_depth = 0;  // depth of the open TAGS element, 0 when closed
  int text_sections = 0;
  int tags_sections = 0;
  std::string text;
  std::vector<RawTag> tags;
};

void on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  auto* state = static_cast<ParseState*>(user);
  ++state->depth;
  std::string_view element(name);
  if (state->tags_depth != 0) {
    if (state->depth == state->tags_depth + 1) {
      RawTag tag;
      tag.element = element;
      tag.line = static_cast<long>(XML_GetCurrentLineNumber(state->parser));
      for (int i = 0; atts[i] != nullptr; i += 2) {
        tag.attributes.emplace_back(atts[i], atts[i + 1]);
      }
      state->tags.push_back(std::move(tag));
    }
    return;
  }
  if (state->text_depth != 0) return;
  if (element == "TEXT") {
    state->text_depth = state->depth;
    ++state->text_sections;
  } else if (element == "TAGS") {
    state->tags_depth = state->depth;
    ++state->tags_sections;
  }
}

void on_end(void* user, const XML_Char* /*name*/) {
  auto* state = static_cast<ParseState*>(user);
  if (state->depth == state->text_depth) state->text_depth = 0;
  if (state->depth == state->tags_depth) state->tags_depth = 0;
  --state->depth;
}

void on_characters(void* user, const XML_Char* data, int length) {
  auto* state = static_cast<ParseState*>(user);
  if (state->text_depth != 0) {
    state->text.append(data, static_cast<std::size_t>(length));
  }
}

std::optional<std::size_t> parse_offset(std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    return std::nullopt;
  }
  return out;
}

// Attribute-value normalization in XML turns literal tabs and newlines into
// spaces, so a literal read back from a compliant parser may differ from the
// span in whitespace only.
bool literal_matches(std::string_view span, std::string_view literal) {
  if (span == literal) return true;
  std::string normalized = normalize_newlines(literal);
  if (span == normalized) return true;
  if (span.size() != literal.size()) return false;
  for (std::size_t i = 0; i < span.size(); ++i) {
    char a = span[i];
    char b = literal[i];
    if (a == b) continue;
    if (is_ascii_space(a) && is_ascii_space(b)) continue;
    return false;
  }
  return true;
}

std::string describe(const RawTag& tag) {
  std::ostringstream out;
  out << "<" << tag.element;
  if (const auto* id = tag.find("id")) out << " id=\"" << *id << "\"";
  out << "> at line " << tag.line;
  return out.str();
}

PhiCategory resolve_category(const RawTag& tag) {
  if (auto leaf = parse_category(tag.element)) return *leaf;
  if (auto parent = parse_parent(tag.element)) {
    if (const auto* type = tag.find("TYPE")) {
      if (auto leaf = parse_category(*type); leaf && parent_of(*leaf) == *parent) {
        return *leaf;
      }
      throw Error(ErrorCode::kUnknownCategory,
                  describe(tag) + ": TYPE \"" + *type +
                      "\" is not a known leaf of " + tag.element);
    }
  }
  throw Error(ErrorCode::kUnknownCategory,
              describe(tag) + ": unknown tag name \"" + tag.element + "\"");
}

const std::string& require(const RawTag& tag, std::string_view name) {
  const auto* value = tag.find(name);
  if (value == nullptr) {
    throw Error(ErrorCode::kMalformedXml,
                describe(tag) + ": missing attribute \"" + std::string(name) + "\"");
  }
  return *value;
}

void append_escaped_attribute(std::string& out, std::string_view value) {
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out.push_back(c);
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

RawDocument parse_document(std::string_view xml_bytes, std::string doc_id,
                           const ParseOptions& options,
                           std::vector<std::string>* warnings) {
  if (!is_valid_utf8(xml_bytes)) {
    throw Error(ErrorCode::kMalformedXml, doc_id + ": input is not valid UTF-8");
  }

  ParseState state;
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_characters);
  if (XML_Parse(parser.get(), xml_bytes.data(), static_cast<int>(xml_bytes.size()),
                XML_TRUE) == XML_STATUS_ERROR) {
    std::ostringstream message;
    message << doc_id << ": " << XML_ErrorString(XML_GetErrorCode(parser.get()))
            << " at line " << XML_GetCurrentLineNumber(parser.get())
            << ", column " << XML_GetCurrentColumnNumber(parser.get());
    throw Error(ErrorCode::kMalformedXml, message.str());
  }

  if (state.text_sections == 0) {
    throw Error(ErrorCode::kMissingSection, doc_id + ": no TEXT element");
  }
  if (state.tags_sections == 0) {
    throw Error(ErrorCode::kMissingSection, doc_id + ": no TAGS element");
  }
  if (state.text_sections > 1 || state.tags_sections > 1) {
    throw Error(ErrorCode::kMalformedXml,
                doc_id + ": expected exactly one TEXT and one TAGS element");
  }

  RawDocument doc;
  doc.doc_id = std::move(doc_id);
  doc.text = normalize_newlines(state.text);
  CharIndex index(doc.text);

  doc.tags.reserve(state.tags.size());
  for (const RawTag& raw : state.tags) {
    PhiTag tag;
    tag.category = resolve_category(raw);
    tag.tag_id = require(raw, "id");
    tag.literal = require(raw, "text");
    auto start = parse_offset(require(raw, "start"));
    auto end = parse_offset(require(raw, "end"));
    if (!start || !end) {
      throw Error(ErrorCode::kMalformedXml,
                  doc.doc_id + ": " + describe(raw) + ": offsets are not integers");
    }
    if (*start >= *end || *end > index.size()) {
      std::ostringstream message;
      message << doc.doc_id << ": " << describe(raw) << ": span [" << *start
              << ", " << *end << ") outside text of length " << index.size();
      throw Error(ErrorCode::kOffsetOutOfBounds, message.str());
    }
    tag.start = *start;
    tag.end = *end;
    std::string_view span = index.slice(doc.text, tag.start, tag.end);
    if (!literal_matches(span, tag.literal)) {
      std::string message = doc.doc_id + ": " + describe(raw) + ": literal \"" +
                            tag.literal + "\" but text reads \"" +
                            std::string(span) + "\"";
      if (!options.lenient) throw Error(ErrorCode::kLiteralMismatch, message);
      if (warnings != nullptr) warnings->push_back("LiteralMismatch: " + message);
    }
    doc.tags.push_back(std::move(tag));
  }
  std::stable_sort(doc.tags.begin(), doc.tags.end(),
                   [](const PhiTag& a, const PhiTag& b) {
                     return std::tie(a.start, a.end) < std::tie(b.start, b.end);
                   });
  return doc;
}

std::string serialize_document(const RawDocument& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" ?>\n<deIdi2b2>\n<TEXT><![CDATA[";
  // A literal "]]>" cannot appear inside one CDATA section; split it.
  std::string_view text = doc.text;
  for (std::size_t pos; (pos = text.find("]]>")) != std::string_view::npos;) {
    out.append(text.substr(0, pos + 2));
    out += "]]><![CDATA[";
    text.remove_prefix(pos + 2);
  }
  out.append(text);
  out += "]]></TEXT>\n<TAGS>\n";
  for (const PhiTag& tag : doc.tags) {
    std::string_view name = category_name(tag.category);
    out += "<";
    out += name;
    out += " id=\"";
    append_escaped_attribute(out, tag.tag_id);
    out += "\" start=\"" + std::to_string(tag.start) + "\" end=\"" +
           std::to_string(tag.end) + "\" text=\"";
    append_escaped_attribute(out, tag.literal);
    out += "\" TYPE=\"";
    out += name;
    out += "\" comment=\"\" />\n";
  }
  out += "</TAGS>\n</deIdi2b2>\n";
  return out;
}

CorpusLoad load_corpus(const std::filesystem::path& directory,
                       const LoadOptions& options) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw Error(ErrorCode::kIo, directory.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (fnmatch(options.glob.c_str(), name.c_str(), 0) == 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  struct Outcome {
    std::optional<RawDocument> doc;
    std::optional<LoadFailure> failure;
    std::vector<std::string> warnings;
  };
  std::vector<Outcome> outcomes(files.size());
  parallel_for(files.size(), [&](std::size_t i) {
    Outcome& outcome = outcomes[i];
    std::string name = files[i].filename().string();
    try {
      outcome.doc = parse_document(read_file(files[i]), files[i].stem().string(),
                                   options.parse, &outcome.warnings);
    } catch (const Error& e) {
      outcome.failure = LoadFailure{name, e.code(), e.what()};
    }
  });

  CorpusLoad load;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    Outcome& outcome = outcomes[i];
    load.warnings.insert(load.warnings.end(), outcome.warnings.begin(),
                         outcome.warnings.end());
    if (outcome.failure) {
      load.failures.push_back(std::move(*outcome.failure));
    } else if (!seen.insert(outcome.doc->doc_id).second) {
      load.failures.push_back(LoadFailure{files[i].filename().string(),
                                          ErrorCode::kInvalidConfig,
                                          "duplicate doc_id " + outcome.doc->doc_id});
    } else {
      load.documents.push_back(std::move(*outcome.doc));
    }
  }
  std::sort(load.documents.begin(), load.documents.end(),
            [](const RawDocument& a, const RawDocument& b) { return a.doc_id < b.doc_id; });

  if (load.documents.empty()) {
    std::string message = "no parseable documents in " + directory.string();
    for (const auto& failure : load.failures) {
      message += "\n  " + failure.file + ": " + failure.message;
    }
    throw Error(ErrorCode::kEmptyCorpus, message);
  }
  return load;
}

TagCountReport corpus_stats(std::span<const RawDocument> docs) {
  TagCountReport report;
  for (const RawDocument& doc : docs) {
    for (const PhiTag& tag : doc.tags) {
      ++report.counts[category_index(tag.category)];
      ++report.total;
    }
  }
  return report;
}

std::string render_stats_csv(const TagCountReport& report) {
  std::string out = "category,count\n";
  for (PhiCategory category : kAllPhiCategories) {
    out += std::string(category_name(category)) + "," +
           std::to_string(report.count(category)) + "\n";
  }
  out += "TOTAL," + std::to_string(report.total) + "\n";
  return out;
}

std::string render_stats_table(const TagCountReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "Tag Name" << std::right << std::setw(8)
      << "Count" << "\n"
      << std::string(24, '-') << "\n";
  for (PhiCategory category : kAllPhiCategories) {
    out << std::left << std::setw(16) << category_name(category) << std::right
        << std::setw(8) << report.count(category) << "\n";
  }
  out << std::string(24, '-') << "\n"
      << std::left << std::setw(16) << "Total" << std::right << std::setw(8)
      << report.total << "\n";
  return out.str();
}

}  // namespace phirisk
