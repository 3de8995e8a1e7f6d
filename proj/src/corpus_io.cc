// Copyright 2026 The KBP Authors.
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

#include "kbp/corpus_io.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "kbp/text.h"

namespace kbp {

namespace fs = std::filesystem;

CorpusError::CorpusError(const std::string &path, int line,
                         const std::string &message)
    : std::runtime_error(line > 0 ? path + ":" + std::to_string(line) + ": " + message
                                  : path + ": " + message),
      path_(path),
      line_(line) {}

// ---------------------------------------------------------------------------
// File helpers.

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(path, 0, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

void WriteAll(int fd, std::string_view content, const std::string &path) {
  const char *data = content.data();
  size_t left = content.size();
  while (left > 0) {
    ssize_t n = ::write(fd, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw CorpusError(path, 0, std::string("write failed: ") + std::strerror(errno));
    }
    data += n;
    left -= static_cast<size_t>(n);
  }
}

// Calls fn(line_number, line) for every line of the file, stripping a
// trailing '\r'. The final empty line after a trailing newline is skipped.
void ForEachLine(const std::string &path,
                 const std::function<void(int, std::string_view)> &fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(path, 0, "cannot open file");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(number, line);
  }
}

// Parses each non-blank line as JSON and hands it to fn; errors from fn
// are reported with the line number.
void ForEachJsonLine(const std::string &path,
                     const std::function<void(int, const Json &)> &fn) {
  ForEachLine(path, [&](int number, std::string_view line) {
    if (Trim(line).empty()) return;
    Json json;
    try {
      json = Json::parse(line);
    } catch (const Json::parse_error &e) {
      throw CorpusError(path, number, std::string("malformed JSON: ") + e.what());
    }
    try {
      fn(number, json);
    } catch (const InvalidRecord &e) {
      throw CorpusError(path, number, e.what());
    } catch (const Json::exception &e) {
      throw CorpusError(path, number, e.what());
    } catch (const std::invalid_argument &e) {
      throw CorpusError(path, number, e.what());
    }
  });
}

template <typename T, typename F>
void WriteJsonLines(const std::string &path, const std::vector<T> &items, F to_json) {
  std::string out;
  for (const T &item : items) {
    out += to_json(item).dump();
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

Json PredicateToJson(const Predicate &p) {
  return {{"kind", p.is_iri() ? "iri" : "raw"}, {"value", p.value}};
}

Predicate PredicateFromJson(const Json &json) {
  const std::string kind = json.at("kind").get<std::string>();
  if (kind == "iri") return Predicate::Iri(json.at("value").get<std::string>());
  if (kind == "raw") return Predicate::Raw(json.at("value").get<std::string>());
  throw InvalidRecord("predicate", "unknown kind '" + kind + "'");
}

std::string OptionalString(const Json &json, const char *key) {
  auto it = json.find(key);
  if (it == json.end() || it->is_null()) return "";
  return it->get<std::string>();
}

std::vector<std::string> NfcAll(std::vector<std::string> words) {
  for (std::string &w : words) w = Nfc(w);
  return words;
}

}  // namespace

void WriteFileAtomic(const std::string &path, std::string_view content) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw CorpusError(tmp, 0, std::string("cannot create: ") + std::strerror(errno));
  try {
    WriteAll(fd, content, tmp);
    ::fsync(fd);
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    ::unlink(tmp.c_str());
    throw CorpusError(path, 0, std::string("rename failed: ") + std::strerror(errno));
  }
}

void AppendAtomic(const std::string &path, std::string_view content) {
  if (content.empty()) return;
  int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
  if (fd < 0) throw CorpusError(path, 0, std::string("cannot open: ") + std::strerror(errno));
  struct stat st;
  if (::fstat(fd, &st) != 0) {
    ::close(fd);
    throw CorpusError(path, 0, "stat failed");
  }
  try {
    WriteAll(fd, content, path);
    if (::fsync(fd) != 0) throw CorpusError(path, 0, "fsync failed");
  } catch (...) {
    // No partial lines survive a failed append.
    if (::ftruncate(fd, st.st_size) != 0) {
      ::close(fd);
      throw;
    }
    ::close(fd);
    throw;
  }
  ::close(fd);
}

// ---------------------------------------------------------------------------
// Sentences.

Json SentenceToJson(const AnnotatedSentence &s) {
  Json deps = Json::array();
  for (const DependencyArc &d : s.deps) deps.push_back({{"head", d.head}, {"rel", d.relation}});
  Json links = Json::array();
  for (const EntityLink &l : s.links) {
    links.push_back({{"start", l.start},
                     {"end", l.end},
                     {"entity", l.entity},
                     {"confidence", l.confidence},
                     {"class", l.entity_class}});
  }
  return {{"id", s.id},     {"text", s.text}, {"tokens", s.tokens}, {"pos", s.pos},
          {"ner", s.ner},   {"dep", deps},    {"links", links}};
}

AnnotatedSentence SentenceFromJson(const Json &json) {
  AnnotatedSentence s;
  s.id = OptionalString(json, "id");
  s.text = Nfc(OptionalString(json, "text"));
  s.tokens = NfcAll(json.at("tokens").get<std::vector<std::string>>());
  s.pos = json.at("pos").get<std::vector<std::string>>();
  s.ner = json.at("ner").get<std::vector<std::string>>();
  for (const Json &d : json.at("dep")) {
    s.deps.push_back({d.at("head").get<int>(), d.at("rel").get<std::string>()});
  }
  if (auto it = json.find("links"); it != json.end()) {
    for (const Json &l : *it) {
      s.links.push_back({l.at("start").get<int>(), l.at("end").get<int>(),
                         l.at("entity").get<std::string>(),
                         l.value("confidence", 1.0), OptionalString(l, "class")});
    }
  }
  return s;
}

Json GoldToJson(const GoldRecord &g) {
  Json json = SentenceToJson(g.sentence);
  json["subject"] = g.subject;
  json["object"] = g.object;
  json["predicate"] = g.predicate;
  json["subject_class"] = g.subject_class;
  json["object_class"] = g.object_class;
  return json;
}

GoldRecord GoldFromJson(const Json &json) {
  GoldRecord g;
  g.sentence = SentenceFromJson(json);
  g.subject = json.at("subject").get<std::string>();
  g.object = json.at("object").get<std::string>();
  g.predicate = json.at("predicate").get<std::string>();
  g.subject_class = OptionalString(json, "subject_class");
  g.object_class = OptionalString(json, "object_class");
  return g;
}

std::vector<AnnotatedSentence> LoadSentences(const std::string &path) {
  std::vector<AnnotatedSentence> out;
  ForEachJsonLine(path, [&](int line, const Json &json) {
    AnnotatedSentence s = SentenceFromJson(json);
    if (s.id.empty()) s.id = std::to_string(line);
    ValidateSentence(s);
    out.push_back(std::move(s));
  });
  return out;
}

void WriteSentences(const std::string &path,
                    const std::vector<AnnotatedSentence> &sentences) {
  WriteJsonLines(path, sentences, SentenceToJson);
}

std::vector<GoldRecord> LoadGoldCorpus(const std::string &path, const KbSnapshot *kb) {
  std::vector<GoldRecord> out;
  ForEachJsonLine(path, [&](int line, const Json &json) {
    GoldRecord g = GoldFromJson(json);
    if (g.sentence.id.empty()) g.sentence.id = std::to_string(line);
    ValidateGold(g, kb);
    out.push_back(std::move(g));
  });
  return out;
}

void WriteGoldCorpus(const std::string &path, const std::vector<GoldRecord> &gold) {
  WriteJsonLines(path, gold, GoldToJson);
}

// ---------------------------------------------------------------------------
// KB snapshot.

KbSnapshot LoadKbSnapshot(const std::string &dir) {
  const fs::path root(dir);
  KbSnapshot kb;

  const std::string entities_path = (root / "entities.jsonl").string();
  ForEachJsonLine(entities_path, [&](int, const Json &json) {
    KbEntity e;
    e.iri = json.at("iri").get<std::string>();
    if (e.iri.empty()) throw InvalidRecord("iri", "empty");
    e.surface_forms = NfcAll(json.at("surface_forms").get<std::vector<std::string>>());
    e.entity_class = OptionalString(json, "class");
    kb.entities.push_back(std::move(e));
  });

  const std::string predicates_path = (root / "predicates.txt").string();
  ForEachLine(predicates_path, [&](int, std::string_view line) {
    std::string_view iri = Trim(line);
    if (iri.empty() || iri.front() == '#') return;
    kb.predicates.emplace(iri);
  });

  const std::string facts_path = (root / "facts.tsv").string();
  ForEachLine(facts_path, [&](int number, std::string_view line) {
    if (Trim(line).empty() || line.front() == '#') return;
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 3) {
      throw CorpusError(facts_path, number,
                        "expected 3 columns, got " + std::to_string(cols.size()));
    }
    if (!kb.HasPredicate(cols[1])) {
      throw CorpusError(facts_path, number, "unknown predicate " + cols[1]);
    }
    kb.facts.insert({cols[0], cols[1], cols[2]});
  });

  const std::string mapping_path = (root / "mapping.tsv").string();
  std::map<std::string, int> first_line;
  ForEachLine(mapping_path, [&](int number, std::string_view line) {
    if (Trim(line).empty() || line.front() == '#') return;
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 2) {
      throw CorpusError(mapping_path, number,
                        "expected 2 columns, got " + std::to_string(cols.size()));
    }
    std::string phrase = NormalizePhrase(Nfc(cols[0]));
    std::string iri(Trim(cols[1]));
    if (phrase.empty()) throw CorpusError(mapping_path, number, "empty phrase");
    auto [it, inserted] = first_line.emplace(phrase, number);
    if (!inserted) {
      throw CorpusError(mapping_path, number,
                        "duplicate phrase '" + phrase + "' (lines " +
                            std::to_string(it->second) + " and " +
                            std::to_string(number) + ")");
    }
    if (!kb.HasPredicate(iri)) {
      throw CorpusError(mapping_path, number, "unknown predicate " + iri);
    }
    kb.mapping_table.emplace(phrase, iri);
  });
  return kb;
}

void SaveKbSnapshot(const std::string &dir, const KbSnapshot &kb) {
  const fs::path root(dir);
  fs::create_directories(root);

  std::string entities;
  for (const KbEntity &e : kb.entities) {
    Json json = {{"iri", e.iri}, {"surface_forms", e.surface_forms}};
    if (!e.entity_class.empty()) json["class"] = e.entity_class;
    entities += json.dump() + "\n";
  }
  WriteFileAtomic((root / "entities.jsonl").string(), entities);

  std::string predicates;
  for (const std::string &p : kb.predicates) predicates += p + "\n";
  WriteFileAtomic((root / "predicates.txt").string(), predicates);

  std::string facts;
  for (const Fact &f : kb.facts) facts += f.subject + "\t" + f.predicate + "\t" + f.object + "\n";
  WriteFileAtomic((root / "facts.tsv").string(), facts);

  std::string mapping;
  for (const auto &[phrase, iri] : kb.mapping_table) mapping += phrase + "\t" + iri + "\n";
  WriteFileAtomic((root / "mapping.tsv").string(), mapping);
}

void AppendFact(const std::string &dir, const Fact &fact) {
  AppendAtomic((fs::path(dir) / "facts.tsv").string(),
               fact.subject + "\t" + fact.predicate + "\t" + fact.object + "\n");
}

size_t AppendMinedMappings(const std::string &dir, const KbSnapshot &kb,
                           const std::vector<MappingRow> &rows) {
  std::string out;
  std::set<std::string> written;
  for (const MappingRow &row : rows) {
    if (row.needs_expert || row.iri.empty()) continue;
    std::string phrase = NormalizePhrase(row.phrase);
    if (!kb.HasPredicate(row.iri) || kb.mapping_table.count(phrase)) continue;
    if (!written.insert(phrase).second) continue;
    out += phrase + "\t" + row.iri + "\n";
  }
  if (written.empty()) return 0;
  AppendAtomic((fs::path(dir) / "mapping.tsv").string(), "# mined\n" + out);
  return written.size();
}

// ---------------------------------------------------------------------------
// CFTR.

const char *StageName(Stage stage) {
  switch (stage) {
    case Stage::kExtracted: return "extracted";
    case Stage::kCanonicalized: return "canonicalized";
    case Stage::kFused: return "fused";
    case Stage::kApproved: return "approved";
    case Stage::kRejected: return "rejected";
  }
  return "unknown";
}

Stage ParseStage(std::string_view name) {
  for (Stage s : {Stage::kExtracted, Stage::kCanonicalized, Stage::kFused,
                  Stage::kApproved, Stage::kRejected}) {
    if (name == StageName(s)) return s;
  }
  throw std::invalid_argument("unknown stage '" + std::string(name) + "'");
}

bool CanAdvance(Stage from, Stage to) {
  if (from == Stage::kApproved || from == Stage::kRejected) return false;
  return static_cast<int>(to) > static_cast<int>(from);
}

Json CftrToJson(const CftrRecord &r) {
  const CandidateTriple &t = r.triple;
  Json json = {{"subject", t.subject},
               {"predicate", PredicateToJson(t.predicate)},
               {"object", t.object},
               {"extractor", t.extractor},
               {"confidence", t.confidence},
               {"sentence_id", t.sentence_id},
               {"stage", StageName(r.stage)},
               {"decided_by", r.decided_by}};
  if (!r.decided_at.empty()) json["decided_at"] = r.decided_at;
  return json;
}

CftrRecord CftrFromJson(const Json &json) {
  CftrRecord r;
  CandidateTriple &t = r.triple;
  t.subject = json.at("subject").get<std::string>();
  t.predicate = PredicateFromJson(json.at("predicate"));
  t.object = json.at("object").get<std::string>();
  t.extractor = json.at("extractor").get<std::string>();
  t.confidence = json.at("confidence").get<double>();
  t.sentence_id = OptionalString(json, "sentence_id");
  r.stage = ParseStage(json.at("stage").get<std::string>());
  r.decided_by = OptionalString(json, "decided_by");
  r.decided_at = OptionalString(json, "decided_at");
  ValidateTriple(t);
  return r;
}

size_t CftrAppend(const std::string &path, const std::vector<CftrRecord> &records) {
  if (records.empty()) return 0;
  std::string out;
  for (const CftrRecord &r : records) {
    ValidateTriple(r.triple);
    out += CftrToJson(r).dump();
    out += '\n';
  }
  AppendAtomic(path, out);
  return records.size();
}

std::vector<CftrRecord> CftrScan(const std::string &path, std::optional<Stage> stage) {
  std::vector<CftrRecord> out;
  ForEachJsonLine(path, [&](int, const Json &json) {
    CftrRecord r = CftrFromJson(json);
    if (!stage || r.stage == *stage) out.push_back(std::move(r));
  });
  return out;
}

void CftrWrite(const std::string &path, const std::vector<CftrRecord> &records) {
  WriteJsonLines(path, records, CftrToJson);
}

std::vector<CftrRecord> ToRecords(const std::vector<CandidateTriple> &triples,
                                  Stage stage) {
  std::vector<CftrRecord> out;
  out.reserve(triples.size());
  for (const CandidateTriple &t : triples) out.push_back({t, stage, "", ""});
  return out;
}

std::vector<CandidateTriple> ToTriples(const std::vector<CftrRecord> &records) {
  std::vector<CandidateTriple> out;
  out.reserve(records.size());
  for (const CftrRecord &r : records) out.push_back(r.triple);
  return out;
}

std::vector<CftrRecord> SupportRecords(const FusedTriple &f, Stage stage,
                                       const std::string &decided_by,
                                       const std::string &decided_at) {
  std::vector<CftrRecord> out;
  for (const Support &s : f.supports) {
    CandidateTriple t{f.key.subject, f.key.predicate, f.key.object,
                      s.extractor,   s.confidence,    s.sentence_id};
    out.push_back({std::move(t), stage, decided_by, decided_at});
  }
  return out;
}

std::vector<FusedTriple> GroupFusedRecords(const std::vector<CftrRecord> &records) {
  std::map<TripleKey, FusedTriple> groups;
  for (const CftrRecord &r : records) {
    if (r.stage != Stage::kFused) continue;
    const CandidateTriple &t = r.triple;
    TripleKey key = TripleIdentity(t);
    auto [it, inserted] = groups.try_emplace(key);
    FusedTriple &f = it->second;
    if (inserted) {
      f.key = std::move(key);
      f.fused_confidence = t.confidence;
      f.accepted = true;
    }
    f.supports.push_back({t.extractor, t.confidence, t.sentence_id});
    f.fused_confidence = std::max(f.fused_confidence, t.confidence);
  }
  std::vector<FusedTriple> out;
  out.reserve(groups.size());
  for (auto &[key, f] : groups) out.push_back(std::move(f));
  return out;
}

// ---------------------------------------------------------------------------
// Pattern banks and templates.

Json PatternToJson(const DepPattern &p) {
  Json key = Json::array();
  for (const PatternElement &e : p.key) {
    key.push_back({{"pos", e.pos}, {"head", e.head}, {"rel", e.relation}});
  }
  return {{"key", key},
          {"subject", p.subject},
          {"object", p.object},
          {"predicate", p.predicate},
          {"support", p.support}};
}

DepPattern PatternFromJson(const Json &json) {
  DepPattern p;
  for (const Json &e : json.at("key")) {
    p.key.push_back({e.at("pos").get<std::string>(), e.at("head").get<int>(),
                     e.at("rel").get<std::string>()});
  }
  p.subject = json.value("subject", std::vector<int>{});
  p.object = json.value("object", std::vector<int>{});
  p.predicate = json.value("predicate", std::vector<int>{});
  p.support = json.value("support", 0);
  ValidatePattern(p);
  return p;
}

std::vector<DepPattern> LoadPatternBank(const std::string &path) {
  std::vector<DepPattern> out;
  ForEachJsonLine(path, [&](int, const Json &json) { out.push_back(PatternFromJson(json)); });
  return out;
}

void WritePatternBank(const std::string &path, const std::vector<DepPattern> &bank) {
  WriteJsonLines(path, bank, PatternToJson);
}

std::vector<RelationTemplate> LoadRelationTemplates(const std::string &path) {
  Json json;
  try {
    json = Json::parse(ReadFile(path));
  } catch (const Json::parse_error &e) {
    throw CorpusError(path, 0, std::string("malformed JSON: ") + e.what());
  }
  if (!json.is_array()) throw CorpusError(path, 0, "expected a JSON list of templates");
  std::vector<RelationTemplate> out;
  for (const Json &t : json) {
    try {
      out.emplace_back(t.get<std::string>());
    } catch (const std::exception &e) {
      throw CorpusError(path, 0, e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distant supervision artifacts.

std::vector<DsInstance> LoadDsInstances(const std::string &path) {
  std::vector<DsInstance> out;
  ForEachJsonLine(path, [&](int, const Json &json) {
    DsInstance d;
    d.sentence_id = json.at("sentence_id").get<std::string>();
    d.subject = json.at("subject").get<std::string>();
    d.object = json.at("object").get<std::string>();
    d.predicate = json.at("predicate").get<std::string>();
    const Json &ss = json.at("subject_span");
    const Json &os = json.at("object_span");
    d.subject_span = {ss.at(0).get<int>(), ss.at(1).get<int>()};
    d.object_span = {os.at(0).get<int>(), os.at(1).get<int>()};
    out.push_back(std::move(d));
  });
  return out;
}

void WriteDsInstances(const std::string &path, const std::vector<DsInstance> &instances) {
  WriteJsonLines(path, instances, [](const DsInstance &d) {
    return Json{{"sentence_id", d.sentence_id},
                {"subject", d.subject},
                {"object", d.object},
                {"predicate", d.predicate},
                {"subject_span", {d.subject_span.start, d.subject_span.end}},
                {"object_span", {d.object_span.start, d.object_span.end}}};
  });
}

Json StatsToJson(const PredicateStats &stats) {
  Json json = Json::object();
  for (const auto &[predicate, p] : stats) {
    json[predicate] = {{"frequent_tokens", p.frequent_tokens},
                       {"compound_verbs", p.compound_verbs},
                       {"instance_count", p.instance_count}};
  }
  return json;
}

PredicateStats StatsFromJson(const Json &json) {
  PredicateStats stats;
  for (const auto &[predicate, p] : json.items()) {
    PredicateProfile profile;
    profile.frequent_tokens = p.at("frequent_tokens").get<std::map<std::string, int>>();
    profile.compound_verbs = p.at("compound_verbs").get<std::map<std::string, int>>();
    profile.instance_count = p.at("instance_count").get<int>();
    stats.emplace(predicate, std::move(profile));
  }
  return stats;
}

PredicateStats LoadPredicateStats(const std::string &path) {
  try {
    return StatsFromJson(Json::parse(ReadFile(path)));
  } catch (const Json::exception &e) {
    throw CorpusError(path, 0, e.what());
  }
}

void WritePredicateStats(const std::string &path, const PredicateStats &stats) {
  WriteFileAtomic(path, StatsToJson(stats).dump(2) + "\n");
}

std::set<std::string> LoadStopwords(const std::string &path) {
  std::set<std::string> words;
  ForEachLine(path, [&](int, std::string_view line) {
    std::string_view w = Trim(line);
    if (w.empty() || w.front() == '#') return;
    words.insert(Nfc(w));
  });
  return words;
}

// ---------------------------------------------------------------------------
// Rule mining artifacts.

Json RuleToJson(const ImplicationRule &r) {
  return {{"antecedent", PredicateToJson(r.antecedent)},
          {"consequent", PredicateToJson(r.consequent)},
          {"confidence", r.confidence},
          {"support", r.support}};
}

ImplicationRule RuleFromJson(const Json &json) {
  ImplicationRule r;
  r.antecedent = PredicateFromJson(json.at("antecedent"));
  r.consequent = PredicateFromJson(json.at("consequent"));
  r.confidence = json.at("confidence").get<double>();
  r.support = json.at("support").get<int>();
  if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) {
    throw InvalidRecord("confidence", "outside [0,1]");
  }
  if (r.support < 1) throw InvalidRecord("support", "must be >= 1");
  return r;
}

void WriteRules(const std::string &path, const std::vector<ImplicationRule> &rules) {
  WriteJsonLines(path, rules, RuleToJson);
}

std::vector<ImplicationRule> LoadRules(const std::string &path) {
  std::vector<ImplicationRule> out;
  ForEachJsonLine(path, [&](int, const Json &json) { out.push_back(RuleFromJson(json)); });
  return out;
}

Json ClusteringToJson(const Clustering &c) {
  Json clusters = Json::array();
  for (const PredicateCluster &cluster : c.clusters) {
    Json members = Json::array();
    for (const Predicate &p : cluster.members) members.push_back(PredicateToJson(p));
    Json json = {{"members", members}, {"kind", ClusterKindName(cluster.kind)}};
    if (!cluster.representative.empty()) json["representative"] = cluster.representative;
    clusters.push_back(std::move(json));
  }
  Json rows = Json::array();
  for (const MappingRow &row : c.rows) {
    rows.push_back({{"phrase", row.phrase}, {"iri", row.iri}, {"needs_expert", row.needs_expert}});
  }
  return {{"clusters", clusters}, {"rows", rows}};
}

}  // namespace kbp
