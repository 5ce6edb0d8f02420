// Copyright 2026 The Concierge Authors.
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

#include "concierge/corpus_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "concierge/textproc.hpp"

namespace concierge::io {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view content) {
  std::vector<Line> lines;
  std::size_t number = 1;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view text = content.substr(pos, end - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    lines.push_back({number++, text});
    pos = end + 1;
  }
  return lines;
}

class Source {
 public:
  explicit Source(fs::path path) : path_(std::move(path)) {}

  [[noreturn]] void fail(std::size_t line, LoadErrorReason reason,
                         std::string detail) const {
    throw LoadError(path_, line, reason, std::move(detail));
  }

  json parse_object(const Line& line) const {
    json value;
    try {
      value = json::parse(line.text);
    } catch (const json::parse_error& e) {
      fail(line.number, LoadErrorReason::kMalformedRecord,
           std::string("invalid JSON: ") + e.what());
    }
    if (!value.is_object()) {
      fail(line.number, LoadErrorReason::kMalformedRecord,
           "expected a JSON object");
    }
    return value;
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Strict field access for one JSON object: every key must be consumed, and
// each accessor checks the JSON type.
class Fields {
 public:
  Fields(const json& object, const Source& source, std::size_t line)
      : object_(object), source_(source), line_(line) {}

  const json* optional(const std::string& key) {
    const auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) {
      if (it != object_.end()) used_.insert(key);
      return nullptr;
    }
    used_.insert(key);
    return &*it;
  }

  const json& required(const std::string& key) {
    const json* value = optional(key);
    if (value == nullptr) malformed("missing field '" + key + "'");
    return *value;
  }

  std::string string(const std::string& key) {
    const json& v = required(key);
    if (!v.is_string()) malformed("field '" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::optional<std::string> optional_string(const std::string& key) {
    const json* v = optional(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) malformed("field '" + key + "' must be a string");
    return v->get<std::string>();
  }

  double number(const std::string& key) {
    const json& v = required(key);
    if (!v.is_number()) malformed("field '" + key + "' must be a number");
    return v.get<double>();
  }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = required(key);
    if (!v.is_number_unsigned()) {
      malformed("field '" + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::vector<std::string> string_list(const std::string& key) {
    const json& v = required(key);
    if (!v.is_array()) malformed("field '" + key + "' must be an array");
    std::vector<std::string> out;
    for (const json& item : v) {
      if (!item.is_string()) {
        malformed("field '" + key + "' must hold strings only");
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  void done() {
    for (const auto& [key, value] : object_.items()) {
      if (!used_.contains(key)) malformed("unknown field '" + key + "'");
    }
  }

  [[noreturn]] void malformed(std::string detail) const {
    source_.fail(line_, LoadErrorReason::kMalformedRecord, std::move(detail));
  }

 private:
  const json& object_;
  const Source& source_;
  std::size_t line_;
  std::set<std::string> used_;
};

// Parses and validates the header line; returns the header object so callers
// can read format-specific header fields.
json read_header(const Source& source, const std::vector<Line>& lines,
                 std::string_view expected_format) {
  if (lines.empty()) {
    source.fail(1, LoadErrorReason::kMalformedRecord, "missing header line");
  }
  json header = source.parse_object(lines.front());
  const auto format = header.find("format");
  const auto version = header.find("version");
  if (format == header.end() || !format->is_string() ||
      format->get<std::string>() != expected_format) {
    source.fail(1, LoadErrorReason::kMalformedRecord,
                "header format must be \"" + std::string(expected_format) + "\"");
  }
  if (version == header.end() || !version->is_number_integer() ||
      version->get<int>() != kFormatVersion) {
    source.fail(1, LoadErrorReason::kMalformedRecord,
                "unsupported format version");
  }
  return header;
}

// Header fields beyond format/version must be consumed by the caller.
Fields header_fields(const json& header, const Source& source) {
  Fields fields(header, source, 1);
  fields.required("format");
  fields.required("version");
  return fields;
}

// Lines are views into *content, which stays put when the Document moves.
struct Document {
  Source source;
  std::unique_ptr<const std::string> content;
  std::vector<Line> lines;
  json header;
};

Document open_document(const fs::path& path, std::string_view format) {
  Document doc{Source(path),
               std::make_unique<const std::string>(read_file(path)), {}, {}};
  doc.lines = split_lines(*doc.content);
  doc.header = read_header(doc.source, doc.lines, format);
  return doc;
}

// Record lines after the header. Blank lines are not allowed.
template <typename Fn>
void for_each_record(const Document& doc, Fn&& fn) {
  for (std::size_t i = 1; i < doc.lines.size(); ++i) {
    const Line& line = doc.lines[i];
    if (line.text.empty()) {
      doc.source.fail(line.number, LoadErrorReason::kMalformedRecord,
                      "blank line");
    }
    fn(line);
  }
}

void plain_header_only(const Document& doc) {
  Fields fields = header_fields(doc.header, doc.source);
  fields.done();
}

bool is_normalized(std::string_view text) {
  return !text.empty() && textproc::normalize(text) == text;
}

bool is_single_token(std::string_view text) {
  const textproc::TokenSequence tokens = textproc::tokenize(text);
  return tokens.size() == 1 && tokens.front() == text;
}

std::string header_line(std::string_view format, json extra = json::object()) {
  extra["format"] = format;
  extra["version"] = kFormatVersion;
  return extra.dump() + "\n";
}

std::string shortest(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

// The body of a single-document file: everything after the header line.
json parse_body(const Document& doc) {
  if (doc.lines.size() < 2) {
    doc.source.fail(1, LoadErrorReason::kMalformedRecord, "missing document body");
  }
  const std::size_t offset =
      static_cast<std::size_t>(doc.lines[1].text.data() - doc.content->data());
  json body;
  try {
    body = json::parse(std::string_view(*doc.content).substr(offset));
  } catch (const json::parse_error& e) {
    doc.source.fail(2, LoadErrorReason::kMalformedRecord,
                    std::string("invalid JSON: ") + e.what());
  }
  if (!body.is_object()) {
    doc.source.fail(2, LoadErrorReason::kMalformedRecord, "expected a JSON object");
  }
  return body;
}

}  // namespace

std::string_view to_string(LoadErrorReason reason) {
  switch (reason) {
    case LoadErrorReason::kMalformedRecord: return "malformed_record";
    case LoadErrorReason::kDuplicateId: return "duplicate_id";
    case LoadErrorReason::kUnknownLabel: return "unknown_label";
    case LoadErrorReason::kInvariantViolation: return "invariant_violation";
  }
  return "?";
}

LoadError::LoadError(fs::path file, std::size_t line, LoadErrorReason reason,
                     std::string detail)
    : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " +
                         std::string(to_string(reason)) + ": " + detail),
      file_(std::move(file)),
      line_(line),
      reason_(reason),
      detail_(std::move(detail)) {}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw LoadError(path, 1, LoadErrorReason::kMalformedRecord,
                    "cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<LabeledIntent> load_labeled_intents(const fs::path& path) {
  const Document doc = open_document(path, format::kIntents);
  plain_header_only(doc);
  std::vector<LabeledIntent> records;
  std::set<std::string> ids;
  for_each_record(doc, [&](const Line& line) {
    const json object = doc.source.parse_object(line);
    Fields fields(object, doc.source, line.number);
    LabeledIntent record{fields.string("id"), fields.string("text"),
                         fields.string("intent")};
    fields.done();
    if (record.id.empty()) fields.malformed("empty id");
    if (!intent::in_taxonomy(record.intent)) {
      doc.source.fail(line.number, LoadErrorReason::kUnknownLabel,
                      "intent '" + record.intent + "' is not in the taxonomy");
    }
    if (!ids.insert(record.id).second) {
      doc.source.fail(line.number, LoadErrorReason::kDuplicateId,
                      "duplicate id '" + record.id + "'");
    }
    records.push_back(std::move(record));
  });
  return records;
}

std::vector<eval::TranscriptPair> load_transcript_pairs(const fs::path& path) {
  const Document doc = open_document(path, format::kTranscripts);
  plain_header_only(doc);
  std::vector<eval::TranscriptPair> pairs;
  std::set<std::string> ids;
  for_each_record(doc, [&](const Line& line) {
    const json object = doc.source.parse_object(line);
    Fields fields(object, doc.source, line.number);
    eval::TranscriptPair pair{fields.string("id"), fields.string("ref"),
                              fields.string("hyp")};
    fields.done();
    if (pair.id.empty()) fields.malformed("empty id");
    if (!ids.insert(pair.id).second) {
      doc.source.fail(line.number, LoadErrorReason::kDuplicateId,
                      "duplicate id '" + pair.id + "'");
    }
    pairs.push_back(std::move(pair));
  });
  return pairs;
}

ner::Gazetteer load_gazetteer(const fs::path& path) {
  const Document doc = open_document(path, format::kGazetteer);
  plain_header_only(doc);
  std::vector<ner::GazetteerEntry> entries;
  std::map<std::string, std::size_t> line_of;
  std::vector<std::size_t> lines;
  for_each_record(doc, [&](const Line& line) {
    const json object = doc.source.parse_object(line);
    Fields fields(object, doc.source, line.number);
    ner::GazetteerEntry entry;
    entry.id = fields.string("id");
    entry.canonical_name = fields.string("name");
    const std::string kind = fields.string("kind");
    entry.aliases = fields.string_list("aliases");
    entry.country_code = fields.string("country");
    entry.prior = fields.number("prior");
    entry.parent_id = fields.optional_string("parent");
    fields.done();

    auto violation = [&](std::string detail) {
      doc.source.fail(line.number, LoadErrorReason::kInvariantViolation,
                      std::move(detail));
    };
    if (entry.id.empty()) fields.malformed("empty id");
    if (entry.canonical_name.empty()) violation("empty name");
    const auto parsed_kind = ner::parse_place_kind(kind);
    if (!parsed_kind) {
      doc.source.fail(line.number, LoadErrorReason::kUnknownLabel,
                      "unknown kind '" + kind + "'");
    }
    entry.kind = *parsed_kind;
    if (!(entry.prior >= 0.0)) violation("prior must be nonnegative");
    if (entry.country_code.size() != 2 ||
        !std::isupper(static_cast<unsigned char>(entry.country_code[0])) ||
        !std::isupper(static_cast<unsigned char>(entry.country_code[1]))) {
      violation("country must be an ISO-3166 alpha-2 code");
    }
    if (entry.aliases.empty()) violation("entry has no aliases");
    for (const std::string& alias : entry.aliases) {
      if (!is_normalized(alias)) violation("alias '" + alias + "' is not normalized");
    }
    if (!line_of.emplace(entry.id, line.number).second) {
      doc.source.fail(line.number, LoadErrorReason::kDuplicateId,
                      "duplicate id '" + entry.id + "'");
    }
    lines.push_back(line.number);
    entries.push_back(std::move(entry));
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& parent = entries[i].parent_id;
    if (parent && !line_of.contains(*parent)) {
      doc.source.fail(lines[i], LoadErrorReason::kInvariantViolation,
                      "unknown parent '" + *parent + "'");
    }
  }
  try {
    return ner::Gazetteer(std::move(entries));
  } catch (const std::invalid_argument& e) {
    doc.source.fail(1, LoadErrorReason::kInvariantViolation, e.what());
  }
}

translation::Lexicon load_lexicon(const fs::path& path) {
  const Document doc = open_document(path, format::kLexicon);
  translation::Lexicon lexicon;
  {
    Fields header = header_fields(doc.header, doc.source);
    const json& language = header.required("language");
    if (!language.is_string() || language.get<std::string>().empty()) {
      header.malformed("header 'language' must be a nonempty string");
    }
    lexicon.source_language = language.get<std::string>();
    header.done();
  }
  for_each_record(doc, [&](const Line& line) {
    const json object = doc.source.parse_object(line);
    Fields fields(object, doc.source, line.number);
    std::string src = fields.string("src");
    std::string dst = fields.string("dst");
    fields.done();
    if (!is_single_token(src)) {
      doc.source.fail(line.number, LoadErrorReason::kInvariantViolation,
                      "source word '" + src + "' is not a normalized token");
    }
    if (!is_normalized(dst)) {
      doc.source.fail(line.number, LoadErrorReason::kInvariantViolation,
                      "target '" + dst + "' is empty or not normalized");
    }
    if (!lexicon.entries.emplace(src, std::move(dst)).second) {
      doc.source.fail(line.number, LoadErrorReason::kDuplicateId,
                      "duplicate source word '" + src + "'");
    }
  });
  return lexicon;
}

std::vector<intent::KeywordRule> load_keywords(const fs::path& path) {
  const Document doc = open_document(path, format::kKeywords);
  plain_header_only(doc);
  std::vector<intent::KeywordRule> rules;
  std::set<std::string> seen;
  for_each_record(doc, [&](const Line& line) {
    const std::size_t tab = line.text.find('\t');
    if (tab == std::string_view::npos ||
        line.text.find('\t', tab + 1) != std::string_view::npos) {
      doc.source.fail(line.number, LoadErrorReason::kMalformedRecord,
                      "expected 'keyword<TAB>target'");
    }
    const std::string keyword(line.text.substr(0, tab));
    const std::string target(line.text.substr(tab + 1));
    if (!is_normalized(keyword)) {
      doc.source.fail(line.number, LoadErrorReason::kInvariantViolation,
                      "keyword '" + keyword + "' is empty or not normalized");
    }
    const auto parsed = intent::parse_keyword_target(target);
    if (!parsed) {
      doc.source.fail(line.number, LoadErrorReason::kUnknownLabel,
                      "unknown target '" + target + "'");
    }
    if (!seen.insert(keyword).second) {
      doc.source.fail(line.number, LoadErrorReason::kDuplicateId,
                      "duplicate keyword '" + keyword + "'");
    }
    rules.push_back({keyword, *parsed});
  });
  return rules;
}

vtt::ConfusionModel load_confusion(const fs::path& path) {
  const Document doc = open_document(path, format::kConfusion);
  vtt::ConfusionModel model;
  {
    Fields header = header_fields(doc.header, doc.source);
    model.insertion_rate = header.number("insertion_rate");
    model.hint_damping = header.number("hint_damping");
    header.done();
    vtt::ConfusionModel probe;
    probe.insertion_rate = model.insertion_rate;
    probe.hint_damping = model.hint_damping;
    if (const std::string problem = probe.check(); !problem.empty()) {
      doc.source.fail(1, LoadErrorReason::kInvariantViolation, problem);
    }
  }
  for_each_record(doc, [&](const Line& line) {
    const std::size_t tab = line.text.find('\t');
    if (tab == std::string_view::npos) {
      doc.source.fail(line.number, LoadErrorReason::kMalformedRecord,
                      "expected 'word<TAB>alt:prob,...'");
    }
    const std::string word(line.text.substr(0, tab));
    if (!is_single_token(word)) {
      doc.source.fail(line.number, LoadErrorReason::kInvariantViolation,
                      "word '" + word + "' is not a normalized token");
    }
    std::vector<vtt::Confusion> row;
    std::string_view rest = line.text.substr(tab + 1);
    while (true) {
      const std::size_t comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const std::size_t colon = item.rfind(':');
      if (colon == std::string_view::npos || colon == 0) {
        doc.source.fail(line.number, LoadErrorReason::kMalformedRecord,
                        "expected 'alt:prob', got '" + std::string(item) + "'");
      }
      vtt::Confusion c;
      c.alternative = std::string(item.substr(0, colon));
      const std::string_view prob = item.substr(colon + 1);
      const auto parsed = std::from_chars(prob.data(), prob.data() + prob.size(),
                                          c.probability);
      if (parsed.ec != std::errc() || parsed.ptr != prob.data() + prob.size()) {
        doc.source.fail(line.number, LoadErrorReason::kMalformedRecord,
                        "bad probability '" + std::string(prob) + "'");
      }
      if (!c.is_deletion() && !is_single_token(c.alternative)) {
        doc.source.fail(line.number, LoadErrorReason::kInvariantViolation,
                        "alternative '" + c.alternative + "' is not normalized");
      }
      row.push_back(std::move(c));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    vtt::ConfusionModel probe;
    probe.entries.emplace(word, row);
    if (const std::string problem = probe.check(); !problem.empty()) {
      doc.source.fail(line.number, LoadErrorReason::kInvariantViolation, problem);
    }
    if (!model.entries.emplace(word, std::move(row)).second) {
      doc.source.fail(line.number, LoadErrorReason::kDuplicateId,
                      "duplicate word '" + word + "'");
    }
  });
  return model;
}

vtt::ReplayCorpus load_replay(const fs::path& path) {
  const Document doc = open_document(path, format::kReplay);
  plain_header_only(doc);
  vtt::ReplayCorpus corpus;
  for_each_record(doc, [&](const Line& line) {
    const json object = doc.source.parse_object(line);
    Fields fields(object, doc.source, line.number);
    const std::string id = fields.string("id");
    vtt::ReplayEntry entry;
    entry.reference = fields.string("ref");
    if (const json* hyps = fields.optional("hyp_by_backend")) {
      if (!hyps->is_object()) fields.malformed("'hyp_by_backend' must be an object");
      for (const auto& [backend, text] : hyps->items()) {
        if (!text.is_string()) {
          fields.malformed("'hyp_by_backend' values must be strings");
        }
        entry.hypothesis_by_backend.emplace(backend, text.get<std::string>());
      }
    }
    fields.done();
    if (id.empty()) fields.malformed("empty id");
    if (!corpus.entries.emplace(id, std::move(entry)).second) {
      doc.source.fail(line.number, LoadErrorReason::kDuplicateId,
                      "duplicate id '" + id + "'");
    }
  });
  return corpus;
}

std::vector<std::string> load_hints(const fs::path& path) {
  const Document doc = open_document(path, format::kHints);
  plain_header_only(doc);
  std::vector<std::string> hints;
  for_each_record(doc, [&](const Line& line) {
    const std::string phrase(line.text);
    if (!is_normalized(phrase)) {
      doc.source.fail(line.number, LoadErrorReason::kInvariantViolation,
                      "hint phrase '" + phrase + "' is not normalized");
    }
    hints.push_back(phrase);
  });
  return hints;
}

intent::LearnedModel load_learned_model(const fs::path& path) {
  const Document doc = open_document(path, format::kLearnedModel);
  plain_header_only(doc);
  const json body = parse_body(doc);
  Fields fields(body, doc.source, 2);
  const double alpha = fields.number("alpha");
  const std::vector<std::string> vocabulary = fields.string_list("vocabulary");
  const json& classes = fields.required("classes");
  fields.done();
  if (!classes.is_object()) fields.malformed("'classes' must be an object");

  std::map<std::string, intent::LearnedModel::ClassCounts> counts;
  for (const auto& [label, table] : classes.items()) {
    if (!table.is_object()) fields.malformed("class '" + label + "' must be an object");
    Fields class_fields(table, doc.source, 2);
    intent::LearnedModel::ClassCounts c;
    c.documents = class_fields.unsigned_integer("documents");
    const json& tokens = class_fields.required("tokens");
    class_fields.done();
    if (!tokens.is_object()) fields.malformed("'tokens' must be an object");
    for (const auto& [token, n] : tokens.items()) {
      if (!n.is_number_unsigned()) {
        fields.malformed("token counts must be nonnegative integers");
      }
      c.tokens.emplace(token, n.get<std::uint64_t>());
    }
    counts.emplace(label, std::move(c));
  }
  try {
    intent::LearnedModel model(std::move(counts), alpha);
    if (model.vocabulary() != vocabulary) {
      doc.source.fail(2, LoadErrorReason::kInvariantViolation,
                      "vocabulary does not match the count tables");
    }
    return model;
  } catch (const std::invalid_argument& e) {
    doc.source.fail(2, LoadErrorReason::kInvariantViolation, e.what());
  }
}

PipelineConfig load_config(const fs::path& path) {
  const Document doc = open_document(path, format::kConfig);
  plain_header_only(doc);
  const json body = parse_body(doc);
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  auto resolve = [&](const std::string& p) {
    const fs::path candidate(p);
    return candidate.is_absolute() ? candidate : base / candidate;
  };

  PipelineConfig config;
  Fields fields(body, doc.source, 2);
  {
    const json& backends = fields.required("backends");
    if (!backends.is_object()) fields.malformed("'backends' must be an object");
    Fields b(backends, doc.source, 2);
    config.vtt_backend = b.string("vtt");
    config.translation_backend = b.string("translation");
    config.ner_backend = b.string("ner");
    config.intent_backend = b.string("intent");
    b.done();
  }
  if (const json* files = fields.optional("files")) {
    if (!files->is_object()) fields.malformed("'files' must be an object");
    Fields f(*files, doc.source, 2);
    auto path_field = [&](const char* key, std::optional<fs::path>& out) {
      if (auto value = f.optional_string(key)) out = resolve(*value);
    };
    path_field("gazetteer", config.gazetteer);
    path_field("keywords", config.keywords);
    path_field("confusion", config.confusion);
    path_field("hints", config.hints);
    path_field("replay", config.replay);
    path_field("learned_model", config.learned_model);
    path_field("request_log", config.request_log);
    if (const json* lexicons = f.optional("lexicons")) {
      if (!lexicons->is_object()) f.malformed("'lexicons' must be an object");
      for (const auto& [language, file] : lexicons->items()) {
        if (!file.is_string()) f.malformed("lexicon paths must be strings");
        config.lexicons.emplace(translation::primary_language(language),
                                resolve(file.get<std::string>()));
      }
    }
    f.done();
  }
  if (auto v = fields.optional_string("default_language")) config.default_language = *v;
  if (fields.optional("seed")) config.seed = fields.unsigned_integer("seed");
  if (auto v = fields.optional_string("replay_backend_name")) {
    config.replay_backend_name = *v;
  }
  if (auto v = fields.optional_string("experiment_salt")) config.experiment_salt = *v;
  if (const json* thresholds = fields.optional("thresholds")) {
    if (!thresholds->is_object()) fields.malformed("'thresholds' must be an object");
    Fields t(*thresholds, doc.source, 2);
    if (t.optional("prebook")) config.prebook_threshold = t.number("prebook");
    if (t.optional("postbook")) config.postbook_threshold = t.number("postbook");
    t.done();
  }
  if (fields.optional("port")) {
    const std::uint64_t port = fields.unsigned_integer("port");
    if (port > 65535) {
      doc.source.fail(2, LoadErrorReason::kInvariantViolation, "port out of range");
    }
    config.port = static_cast<int>(port);
  }
  fields.done();
  if (config.default_language.empty()) {
    doc.source.fail(2, LoadErrorReason::kInvariantViolation,
                    "default_language must not be empty");
  }
  return config;
}

std::string serialize_labeled_intents(const std::vector<LabeledIntent>& records) {
  std::string out = header_line(format::kIntents);
  for (const LabeledIntent& r : records) {
    out += json{{"id", r.id}, {"text", r.text}, {"intent", r.intent}}.dump() + "\n";
  }
  return out;
}

std::string serialize_transcript_pairs(
    const std::vector<eval::TranscriptPair>& pairs) {
  std::string out = header_line(format::kTranscripts);
  for (const eval::TranscriptPair& p : pairs) {
    out += json{{"id", p.id}, {"ref", p.reference}, {"hyp", p.hypothesis}}.dump() +
           "\n";
  }
  return out;
}

std::string serialize_gazetteer(const ner::Gazetteer& gazetteer) {
  std::string out = header_line(format::kGazetteer);
  for (const ner::GazetteerEntry& e : gazetteer.entries()) {
    json record{{"id", e.id},
                {"name", e.canonical_name},
                {"kind", ner::to_string(e.kind)},
                {"aliases", e.aliases},
                {"country", e.country_code},
                {"prior", e.prior}};
    if (e.parent_id) record["parent"] = *e.parent_id;
    out += record.dump() + "\n";
  }
  return out;
}

std::string serialize_lexicon(const translation::Lexicon& lexicon) {
  std::string out =
      header_line(format::kLexicon, json{{"language", lexicon.source_language}});
  for (const auto& [src, dst] : lexicon.entries) {
    out += json{{"src", src}, {"dst", dst}}.dump() + "\n";
  }
  return out;
}

std::string serialize_keywords(const std::vector<intent::KeywordRule>& rules) {
  std::string out = header_line(format::kKeywords);
  for (const intent::KeywordRule& rule : rules) {
    out += rule.keyword + "\t" + intent::keyword_target_name(rule.target) + "\n";
  }
  return out;
}

std::string serialize_confusion(const vtt::ConfusionModel& model) {
  std::string out = header_line(format::kConfusion,
                                json{{"insertion_rate", model.insertion_rate},
                                     {"hint_damping", model.hint_damping}});
  for (const auto& [word, row] : model.entries) {
    out += word + "\t";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i].alternative + ":" + shortest(row[i].probability);
    }
    out += "\n";
  }
  return out;
}

std::string serialize_replay(const vtt::ReplayCorpus& corpus) {
  std::string out = header_line(format::kReplay);
  for (const auto& [id, entry] : corpus.entries) {
    json record{{"id", id}, {"ref", entry.reference}};
    if (!entry.hypothesis_by_backend.empty()) {
      record["hyp_by_backend"] = entry.hypothesis_by_backend;
    }
    out += record.dump() + "\n";
  }
  return out;
}

std::string serialize_hints(const std::vector<std::string>& hints) {
  std::string out = header_line(format::kHints);
  for (const std::string& phrase : hints) out += phrase + "\n";
  return out;
}

std::string serialize_learned_model(const intent::LearnedModel& model) {
  json classes = json::object();
  for (const auto& [label, c] : model.counts()) {
    classes[label] = json{{"documents", c.documents}, {"tokens", c.tokens}};
  }
  json body{{"alpha", model.alpha()},
            {"vocabulary", model.vocabulary()},
            {"classes", classes}};
  return header_line(format::kLearnedModel) + body.dump() + "\n";
}

}  // namespace concierge::io
