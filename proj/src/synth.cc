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
#include "phirisk/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "phirisk/error.h"
#include "phirisk/parallel.h"
#include "phirisk/rng.h"
#include "phirisk/text.h"

namespace phirisk {
namespace {

using nlohmann::ordered_json;

// Every template starts with an uppercase letter, ends with a period after an
// ordinary word and has no internal sentence terminator, so the splitter
// recovers it as exactly one sentence.
constexpr std::string_view kLowTemplates[] = {
    "The patient reports feeling well overall.",
    "No acute distress was noted on examination.",
    "Lungs are clear to auscultation bilaterally.",
    "Heart has a regular rate and rhythm without murmurs.",
    "Abdomen is soft and nontender.",
    "Continue current medications as prescribed.",
    "Blood pressure remains well controlled on the current regimen.",
    "Patient denies chest pain or shortness of breath.",
    "Renal function is stable compared with prior values.",
    "Pt. tolerated the procedure without complications.",
    "Will recheck a basic metabolic panel in two weeks.",
    "Encouraged regular exercise and a low sodium diet.",
    "Glucose readings have improved since the last adjustment.",
    "There is mild edema of both lower extremities.",
    "Skin is warm and dry without rashes.",
    "Neurologic examination is nonfocal.",
    "The wound is healing well with no signs of infection.",
    "Pain is controlled with oral analgesics.",
    "Temperature 37.2 °C on arrival with normal saturation.",
    "Continue home medications, e.g. aspirin and a statin.",
    "Hemoglobin A1c is trending down nicely.",
    "Follow up in the outpatient clinic as needed.",
    "Risks and benefits were discussed in detail.",
    "Patient verbalized understanding of the plan.",
    "Cholesterol remains above the target range.",
    "Electrocardiogram shows sinus rhythm with no acute changes.",
    "Weight is unchanged from the previous visit.",
    "Appetite has been good and sleep is adequate.",
    "Vaccinations are up to date.",
    "Mood is stable and affect is appropriate.",
    "Reviewed the medication list and reconciled doses.",
    "Chest radiograph demonstrates no infiltrate.",
    "Insulin dose was reduced by four units.",
    "Denies nausea, vomiting or diarrhea.",
    "Range of motion is full in all joints.",
    "Plan to taper the steroid over one week.",
    "Smoking cessation was strongly encouraged.",
    "Urinalysis is negative for infection.",
    "Symptoms improved after the nebulizer treatment.",
    "No further workup is required at this time.",
};

constexpr std::string_view kHeaders[] = {
    "HISTORY OF PRESENT ILLNESS:",
    "MEDICATIONS:",
    "ALLERGIES:",
    "PHYSICAL EXAMINATION:",
    "ASSESSMENT AND PLAN:",
    "SOCIAL HISTORY:",
    "Review of systems:",
    "Plan:",
};

struct HighTemplate {
  PhiCategory category;
  std::string_view text;  // "{}" marks the slot
};

constexpr HighTemplate kHighTemplates[] = {
    {PhiCategory::kEmail, "Results were forwarded to {} for review."},
    {PhiCategory::kEmail, "The daughter asked for updates by email at {} each week."},
    {PhiCategory::kFax, "Records were faxed to {} this morning."},
    {PhiCategory::kFax, "Please send the consult letter to fax {} when complete."},
    {PhiCategory::kDevice, "The {} pacemaker was interrogated without issue."},
    {PhiCategory::kDevice, "Glucose data were downloaded from the {} meter."},
    {PhiCategory::kLocationOther, "She recently returned from {} after a long trip."},
    {PhiCategory::kLocationOther, "He fell while hiking near {} last weekend."},
    {PhiCategory::kOrganization, "He works as a contractor for {} in the warehouse."},
    {PhiCategory::kOrganization, "Her insurance coverage comes through {} this year."},
    {PhiCategory::kUsername, "Note signed electronically by user {} after review."},
    {PhiCategory::kUsername, "Orders were entered under account {} by the resident."},
    {PhiCategory::kCountry, "The patient emigrated from {} several years ago."},
    {PhiCategory::kCountry, "He traveled to {} for business last month."},
    {PhiCategory::kStreet, "He lives at {} with his daughter."},
    {PhiCategory::kStreet, "Home health visits will take place at {} twice weekly."},
    {PhiCategory::kZip, "Her mailing code on file is {} per registration."},
    {PhiCategory::kZip, "Transportation was arranged to postal code {} after discharge."},
    {PhiCategory::kProfession, "She is employed as a {} at a local firm."},
    {PhiCategory::kProfession, "He retired last year after working as a {} for decades."},
    {PhiCategory::kState, "The family relocated from {} last spring."},
    {PhiCategory::kState, "She grew up in {} before moving here."},
    {PhiCategory::kIdNum, "Insurance member number {} was verified."},
    {PhiCategory::kIdNum, "Prior authorization {} was approved by the payer."},
    {PhiCategory::kPhone, "Please call the clinic at {} with any questions."},
    {PhiCategory::kPhone, "His wife can be reached at {} during the day."},
    {PhiCategory::kCity, "The patient was born in {} and raised nearby."},
    {PhiCategory::kCity, "She commutes from {} for her appointments."},
    {PhiCategory::kMedicalRecord, "Medical record number {} was confirmed at check in."},
    {PhiCategory::kMedicalRecord, "Outside records under chart {} were reviewed."},
    {PhiCategory::kAge, "The patient is a {} year old with chest pain."},
    {PhiCategory::kAge, "Patient is {} years old and lives alone."},
    {PhiCategory::kHospital, "She was transferred from {} for further care."},
    {PhiCategory::kHospital, "He completed cardiac rehabilitation at {} last fall."},
    {PhiCategory::kPatient, "Mr. {} presents for routine follow up."},
    {PhiCategory::kPatient, "The patient {} was seen in the emergency room."},
    {PhiCategory::kDoctor, "Seen by Dr. {} in clinic today."},
    {PhiCategory::kDoctor, "Case discussed with {} from cardiology."},
    {PhiCategory::kDate, "Follow up is scheduled for {} in the clinic."},
    {PhiCategory::kDate, "Admitted on {} with shortness of breath."},
    {PhiCategory::kDate, "Last colonoscopy was performed on {} without findings."},
};

constexpr std::string_view kFirstNames[] = {
    "Zelda", "Quincy", "Alma", "Zoë", "Thaddeus", "Ingrid",
    "Bertram", "Odile", "Casimir", "Wren", "Ignatius", "Philippa",
};
constexpr std::string_view kLastNames[] = {
    "Quarrington", "Zorbel",  "Vexley",   "Zanthorpe", "Quillfeather",
    "Mockridge",   "Zephyrine", "Dunwoody", "Xanthis",   "Plumtree",
};
constexpr std::string_view kHospitals[] = {
    "ZZZ General Hospital", "Zephyr Valley Medical Center", "Quillhaven Community Hospital",
    "Zorbtown Memorial Hospital", "Xanadu Regional Clinic",
};
constexpr std::string_view kOrganizations[] = {
    "ZZZ Logistics Group", "Quasar Widget Works", "Zebulon Freight", "Xylo Data Systems",
};
constexpr std::string_view kLocations[] = {
    "Lake Zorbo Lodge", "the Quonset Zeta Campground", "Zanzibar Ridge Trail",
    "the Xeric Dunes Preserve",
};
constexpr std::string_view kCountries[] = {
    "Zembla", "Freedonia", "Latveria", "Genovia", "Sylvania", "Borduria",
};
constexpr std::string_view kStates[] = {
    "North Zembla", "New Freedonia", "Upper Sylvania", "West Borduria",
};
constexpr std::string_view kCities[] = {
    "Zorbtown", "Quillhaven", "Zanesport", "Xyleborough", "Vexford",
};
constexpr std::string_view kStreetNames[] = {
    "Zephyr Lane", "Quillon Road", "Xenia Avenue", "Zorbel Way", "Vexley Court",
};
constexpr std::string_view kProfessions[] = {
    "zookeeper", "glassblower", "cartographer", "locksmith", "beekeeper", "luthier",
};
constexpr std::string_view kDevices[] = {"Zentrix", "Quantum Pace", "Xylo Sense"};
constexpr std::string_view kMonths[] = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December",
};

template <std::size_t N>
std::string_view pick(Rng& rng, const std::string_view (&items)[N]) {
  return items[rng.below(N)];
}

std::string digits(Rng& rng, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) out += static_cast<char>('0' + rng.below(10));
  return out;
}

std::string two_digits(std::uint64_t value) {
  return (value < 10 ? "0" : "") + std::to_string(value);
}

std::string person(Rng& rng) {
  std::string out(pick(rng, kFirstNames));
  if (rng.bernoulli(0.2)) {
    out += ' ';
    out += static_cast<char>('A' + rng.below(26));
    out += '.';
  }
  out += ' ';
  out += pick(rng, kLastNames);
  return out;
}

std::string username(Rng& rng) {
  std::string out(1, ascii_lower(pick(rng, kFirstNames)[0]));
  for (char c : pick(rng, kLastNames)) out += ascii_lower(c);
  return out + digits(rng, 2);
}

std::string phone(Rng& rng) {
  return "(555) 0" + digits(rng, 2) + "-" + digits(rng, 4);
}

std::string date(Rng& rng) {
  std::uint64_t year = 2080 + rng.below(20);
  std::uint64_t month = 1 + rng.below(12);
  std::uint64_t day = 1 + rng.below(28);
  switch (rng.below(4)) {
    case 0: return std::to_string(year) + "-" + two_digits(month) + "-" + two_digits(day);
    case 1: return two_digits(month) + "/" + two_digits(day) + "/" + std::to_string(year);
    case 2:
      return std::string(kMonths[month - 1]) + " " + std::to_string(day) + ", " +
             std::to_string(year);
    default:
      return std::to_string(day) + " " + std::string(kMonths[month - 1]) + " " +
             std::to_string(year);
  }
}

std::string filler(PhiCategory category, Rng& rng) {
  switch (category) {
    case PhiCategory::kEmail: return username(rng) + "@zzz-mail.example";
    case PhiCategory::kFax:
    case PhiCategory::kPhone: return phone(rng);
    case PhiCategory::kDevice: return std::string(pick(rng, kDevices)) + " " + digits(rng, 4);
    case PhiCategory::kLocationOther: return std::string(pick(rng, kLocations));
    case PhiCategory::kOrganization: return std::string(pick(rng, kOrganizations));
    case PhiCategory::kUsername: return username(rng);
    case PhiCategory::kCountry: return std::string(pick(rng, kCountries));
    case PhiCategory::kStreet:
      return std::to_string(10 + rng.below(990)) + " " + std::string(pick(rng, kStreetNames));
    case PhiCategory::kZip: return "0" + digits(rng, 4);
    case PhiCategory::kProfession: return std::string(pick(rng, kProfessions));
    case PhiCategory::kState: return std::string(pick(rng, kStates));
    case PhiCategory::kIdNum: return "ZZ" + digits(rng, 7);
    case PhiCategory::kCity: return std::string(pick(rng, kCities));
    case PhiCategory::kMedicalRecord: return digits(rng, 8);
    case PhiCategory::kAge: return std::to_string(18 + rng.below(80));
    case PhiCategory::kHospital: return std::string(pick(rng, kHospitals));
    case PhiCategory::kPatient:
    case PhiCategory::kDoctor: return person(rng);
    case PhiCategory::kDate: return date(rng);
  }
  return {};
}

std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

PhiCategory draw_category(const SynthConfig& config, Rng& rng) {
  double total = 0.0;
  for (double w : config.category_weights) total += w;
  double target = rng.uniform() * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < kNumPhiCategories; ++i) {
    if (config.category_weights[i] <= 0.0) continue;
    last = i;
    target -= config.category_weights[i];
    if (target < 0.0) break;
  }
  return kAllPhiCategories[last];
}

const HighTemplate& draw_template(PhiCategory category, Rng& rng) {
  std::vector<const HighTemplate*> matches;
  for (const auto& t : kHighTemplates) {
    if (t.category == category) matches.push_back(&t);
  }
  return *matches[rng.below(matches.size())];
}

std::string doc_name(std::size_t i, std::size_t notes) {
  std::string number = std::to_string(i + 1);
  std::size_t width = std::max<std::size_t>(4, std::to_string(notes).size());
  return "synth-" + std::string(width - number.size(), '0') + number;
}

struct Note {
  RawDocument doc;
  LedgerDocument ledger;
};

Note generate_note(const SynthConfig& config, std::size_t index) {
  Rng rng(derive_seed(config.seed, "synth-note", index));
  Note note;
  note.doc.doc_id = doc_name(index, config.notes);
  note.ledger.doc_id = note.doc.doc_id;

  std::string& text = note.doc.text;
  std::size_t chars = 0;
  auto append = [&](std::string_view s) {
    text.append(s);
    chars += code_points(s);
  };

  std::size_t count =
      config.min_sentences + rng.below(config.max_sentences - config.min_sentences + 1);
  bool previous_header = false;
  for (std::size_t s = 0; s < count; ++s) {
    bool high = rng.bernoulli(config.high_fraction);
    bool header = !high && rng.bernoulli(config.header_rate);
    if (s > 0) {
      if (header) {
        append(rng.bernoulli(0.5) ? "\n\n" : "\n");
      } else if (previous_header) {
        append("\n");
      } else {
        double r = rng.uniform();
        append(r < 0.6 ? " " : r < 0.85 ? "\n" : "\n\n");
      }
    }
    std::size_t start = chars;
    if (high) {
      PhiCategory category = draw_category(config, rng);
      const HighTemplate& t = draw_template(category, rng);
      std::size_t slot = t.text.find("{}");
      append(t.text.substr(0, slot));
      std::string literal = filler(category, rng);
      std::size_t tag_start = chars;
      append(literal);
      note.doc.tags.push_back({"P" + std::to_string(note.doc.tags.size()), category, tag_start,
                               chars, literal});
      append(t.text.substr(slot + 2));
    } else if (header) {
      append(pick(rng, kHeaders));
    } else {
      append(pick(rng, kLowTemplates));
    }
    note.ledger.sentences.push_back({start, chars});
    note.ledger.labels.push_back(high ? 1 : 0);
    previous_header = header;
  }
  append("\n");
  note.ledger.tags = note.doc.tags;
  return note;
}

ordered_json config_json(const SynthConfig& c) {
  ordered_json weights = ordered_json::object();
  for (PhiCategory category : kAllPhiCategories) {
    weights[std::string(category_name(category))] =
        c.category_weights[category_index(category)];
  }
  return {{"seed", c.seed},
          {"notes", c.notes},
          {"min_sentences", c.min_sentences},
          {"max_sentences", c.max_sentences},
          {"high_fraction", c.high_fraction},
          {"header_rate", c.header_rate},
          {"embedding_dim", c.embedding_dim},
          {"category_weights", weights}};
}

SynthConfig config_from_json(const ordered_json& j) {
  SynthConfig c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.notes = j.at("notes").get<std::size_t>();
  c.min_sentences = j.at("min_sentences").get<std::size_t>();
  c.max_sentences = j.at("max_sentences").get<std::size_t>();
  c.high_fraction = j.at("high_fraction").get<double>();
  c.header_rate = j.at("header_rate").get<double>();
  c.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  for (const auto& [name, weight] : j.at("category_weights").items()) {
    auto category = parse_category(name);
    if (!category) throw Error(ErrorCode::kMalformedRecord, "unknown category " + name);
    c.category_weights[category_index(*category)] = weight.get<double>();
  }
  return c;
}

void add_tokens(std::string_view text, std::set<std::string>& out) {
  for (auto& token : tokenize(text)) out.insert(std::move(token));
}

template <std::size_t N>
void add_all(const std::string_view (&items)[N], std::set<std::string>& out) {
  for (std::string_view item : items) add_tokens(item, out);
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kInvalidConfig, why); };
  if (notes < 1) fail("note count must be at least 1");
  if (min_sentences < 1) fail("notes need at least one sentence");
  if (max_sentences < min_sentences) fail("sentence range is empty");
  if (!(high_fraction >= 0.0 && high_fraction <= 1.0)) fail("high fraction must be in [0, 1]");
  if (!(header_rate >= 0.0 && header_rate <= 1.0)) fail("header rate must be in [0, 1]");
  if (embedding_dim < 1) fail("embedding dimension must be at least 1");
  double total = 0.0;
  for (double w : category_weights) {
    if (!std::isfinite(w) || w < 0.0) fail("category weights must be finite and non-negative");
    total += w;
  }
  if (total <= 0.0) fail("category weights are all zero");
}

SynthCorpus generate_corpus(const SynthConfig& config) {
  config.validate();
  std::vector<Note> notes(config.notes);
  parallel_for(config.notes, [&](std::size_t i) { notes[i] = generate_note(config, i); });

  SynthCorpus out;
  out.ledger.config = config;
  for (Note& note : notes) {
    for (const PhiTag& tag : note.doc.tags) {
      ++out.ledger.counts.counts[category_index(tag.category)];
      ++out.ledger.counts.total;
    }
    for (int label : note.ledger.labels) ++(label ? out.ledger.labels.high : out.ledger.labels.low);
    out.documents.push_back(std::move(note.doc));
    out.ledger.documents.push_back(std::move(note.ledger));
  }
  out.ledger.labels.total = out.ledger.labels.low + out.ledger.labels.high;
  return out;
}

EmbeddingTable generate_embeddings(const SynthConfig& config) {
  SynthCorpus corpus = generate_corpus(config);

  std::set<std::string> low, high, all;
  add_all(kLowTemplates, low);
  add_all(kHeaders, low);
  for (const auto& t : kHighTemplates) {
    std::size_t slot = t.text.find("{}");
    add_tokens(t.text.substr(0, slot), high);
    add_tokens(t.text.substr(slot + 2), high);
  }
  add_all(kFirstNames, high);
  add_all(kLastNames, high);
  add_all(kHospitals, high);
  add_all(kOrganizations, high);
  add_all(kLocations, high);
  add_all(kCountries, high);
  add_all(kStates, high);
  add_all(kCities, high);
  add_all(kStreetNames, high);
  add_all(kProfessions, high);
  add_all(kDevices, high);
  add_all(kMonths, high);
  for (const auto& doc : corpus.documents) {
    for (const auto& tag : doc.tags) add_tokens(tag.literal, high);
    add_tokens(doc.text, all);
  }
  all.insert(low.begin(), low.end());
  all.insert(high.begin(), high.end());

  EmbeddingTable table(config.embedding_dim);
  std::vector<double> v(config.embedding_dim);
  for (const std::string& token : all) {
    bool is_low = low.count(token) > 0;
    bool is_high = high.count(token) > 0;
    double center = is_high && !is_low ? 2.0 : is_low && !is_high ? -1.0 : 0.0;
    Rng rng(derive_seed(config.seed, "synth-embedding", fnv1a64(token)));
    for (double& x : v) x = 0.5 * rng.normal();
    v[0] += center;
    table.add(token, v);
  }
  return table;
}

std::string ledger_to_json(const GroundTruthLedger& ledger) {
  ordered_json counts = ordered_json::object();
  for (PhiCategory category : kAllPhiCategories) {
    counts[std::string(category_name(category))] = ledger.counts.count(category);
  }
  counts["TOTAL"] = ledger.counts.total;
  ordered_json docs = ordered_json::array();
  for (const LedgerDocument& d : ledger.documents) {
    ordered_json sentences = ordered_json::array();
    for (std::size_t i = 0; i < d.sentences.size(); ++i) {
      sentences.push_back({d.sentences[i].start, d.sentences[i].end, d.labels[i]});
    }
    ordered_json tags = ordered_json::array();
    for (const PhiTag& t : d.tags) {
      tags.push_back({{"id", t.tag_id},
                      {"category", category_name(t.category)},
                      {"start", t.start},
                      {"end", t.end},
                      {"text", t.literal}});
    }
    docs.push_back({{"doc_id", d.doc_id}, {"sentences", sentences}, {"tags", tags}});
  }
  ordered_json out = {{"config", config_json(ledger.config)},
                      {"counts", counts},
                      {"labels",
                       {{"low", ledger.labels.low},
                        {"high", ledger.labels.high},
                        {"total", ledger.labels.total}}},
                      {"documents", docs}};
  return out.dump(1) + "\n";
}

GroundTruthLedger ledger_from_json(std::string_view text) {
  try {
    ordered_json j = ordered_json::parse(text);
    GroundTruthLedger ledger;
    ledger.config = config_from_json(j.at("config"));
    for (PhiCategory category : kAllPhiCategories) {
      ledger.counts.counts[category_index(category)] =
          j.at("counts").at(std::string(category_name(category))).get<std::size_t>();
    }
    ledger.counts.total = j.at("counts").at("TOTAL").get<std::size_t>();
    ledger.labels.low = j.at("labels").at("low").get<std::size_t>();
    ledger.labels.high = j.at("labels").at("high").get<std::size_t>();
    ledger.labels.total = j.at("labels").at("total").get<std::size_t>();
    for (const auto& d : j.at("documents")) {
      LedgerDocument doc;
      doc.doc_id = d.at("doc_id").get<std::string>();
      for (const auto& s : d.at("sentences")) {
        doc.sentences.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
        doc.labels.push_back(s.at(2).get<int>());
      }
      for (const auto& t : d.at("tags")) {
        auto category = parse_category(t.at("category").get<std::string>());
        if (!category) throw Error(ErrorCode::kMalformedRecord, "unknown category in ledger");
        doc.tags.push_back({t.at("id").get<std::string>(), *category,
                            t.at("start").get<std::size_t>(), t.at("end").get<std::size_t>(),
                            t.at("text").get<std::string>()});
      }
      ledger.documents.push_back(std::move(doc));
    }
    return ledger;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("bad ledger JSON: ") + e.what());
  }
}

void write_synthetic_corpus(const SynthConfig& config, const std::filesystem::path& out) {
  SynthCorpus corpus = generate_corpus(config);
  std::filesystem::path corpus_dir = out / "corpus";
  std::error_code ec;
  std::filesystem::create_directories(corpus_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + corpus_dir.string());
  for (const RawDocument& doc : corpus.documents) {
    write_file(corpus_dir / (doc.doc_id + ".xml"), serialize_document(doc));
  }
  write_file(out / "ledger.json", ledger_to_json(corpus.ledger));
  std::ostringstream embeddings;
  write_embeddings(embeddings, generate_embeddings(config));
  write_file(out / "embeddings.txt", embeddings.str());
}

}  // namespace phirisk
