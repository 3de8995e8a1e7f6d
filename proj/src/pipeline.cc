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

#include "kbp/pipeline.h"

#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <unordered_map>

#include "kbp/evaluator.h"
#include "kbp/token_pattern.h"
#include "spdlog/spdlog.h"

namespace kbp {

namespace fs = std::filesystem;

const std::vector<std::string> &AllExtractorIds() {
  static const std::vector<std::string> ids = {
      std::string(kPredPattId),     std::string(kDepPatternId), std::string(kPsieId),
      std::string(kRePersianId),    std::string(kTokenPatternId),
      std::string(kDistantId)};
  return ids;
}

// ---------------------------------------------------------------------------
// Configuration.

namespace {

std::string ResolvePath(const Json &value, const std::string &base_dir) {
  std::string path = value.get<std::string>();
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

template <typename T>
void ReadInto(const Json &object, const char *key, T *out) {
  if (auto it = object.find(key); it != object.end()) *out = it->get<T>();
}

void CheckKeys(const Json &object, const std::set<std::string> &known,
               const std::string &where) {
  if (!object.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto &[key, value] : object.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

PipelineConfig ParsePipelineConfig(const Json &json, const std::string &base_dir) {
  CheckKeys(json,
            {"corpus", "kb", "output_dir", "gold", "rules", "patterns", "templates",
             "stopwords", "extractors", "threshold", "sweep", "max_ngram",
             "min_token_count", "confidences", "distant", "canonicalizer"},
            "config");
  PipelineConfig config;
  try {
    for (const char *key : {"corpus", "kb", "output_dir"}) {
      if (!json.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
    }
    config.corpus = ResolvePath(json["corpus"], base_dir);
    config.kb = ResolvePath(json["kb"], base_dir);
    config.output_dir = ResolvePath(json["output_dir"], base_dir);
    if (json.contains("gold")) config.gold = ResolvePath(json["gold"], base_dir);
    if (json.contains("rules")) config.rules = ResolvePath(json["rules"], base_dir);
    if (json.contains("patterns")) config.patterns = ResolvePath(json["patterns"], base_dir);
    if (json.contains("templates")) config.templates = ResolvePath(json["templates"], base_dir);
    if (json.contains("stopwords")) config.stopwords = ResolvePath(json["stopwords"], base_dir);

    config.extractors = json.value("extractors", std::vector<std::string>{});
    ReadInto(json, "threshold", &config.threshold);
    ReadInto(json, "sweep", &config.sweep);
    ReadInto(json, "max_ngram", &config.max_ngram);
    ReadInto(json, "min_token_count", &config.min_token_count);

    if (auto it = json.find("confidences"); it != json.end()) {
      CheckKeys(*it, {"deppat", "psie", "repersian", "tokpat"}, "confidences");
      ReadInto(*it, "deppat", &config.extractor.dep_pattern_confidence);
      ReadInto(*it, "psie", &config.extractor.psie_confidence);
      ReadInto(*it, "repersian", &config.extractor.repersian_confidence);
      ReadInto(*it, "tokpat", &config.extractor.token_pattern_confidence);
    }
    if (auto it = json.find("distant"); it != json.end()) {
      CheckKeys(*it, {"verb_weight", "min_score"}, "distant");
      ReadInto(*it, "verb_weight", &config.distant.verb_weight);
      ReadInto(*it, "min_score", &config.distant.min_score);
    }
    if (auto it = json.find("canonicalizer"); it != json.end()) {
      CheckKeys(*it, {"verb_weight", "min_score"}, "canonicalizer");
      ReadInto(*it, "verb_weight", &config.canonicalizer.verb_weight);
      ReadInto(*it, "min_score", &config.canonicalizer.min_score);
    }
  } catch (const Json::exception &e) {
    throw ConfigError(e.what());
  }
  config.distant.extractor = config.extractor;
  config.canonicalizer.extractor = config.extractor;

  if (config.extractors.empty()) throw ConfigError("no extractors enabled");
  std::set<std::string> seen;
  for (const std::string &id : config.extractors) {
    const auto &all = AllExtractorIds();
    if (std::find(all.begin(), all.end(), id) == all.end()) {
      throw ConfigError("unknown extractor '" + id + "'");
    }
    if (!seen.insert(id).second) throw ConfigError("extractor '" + id + "' listed twice");
  }
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    throw ConfigError("threshold outside [0,1]");
  }
  if (!std::is_sorted(config.sweep.begin(), config.sweep.end())) {
    throw ConfigError("sweep thresholds must be ascending");
  }
  for (double t : config.sweep) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("sweep threshold outside [0,1]");
  }
  if (config.max_ngram < 1) throw ConfigError("max_ngram must be >= 1");
  if (config.min_token_count < 1) throw ConfigError("min_token_count must be >= 1");
  return config;
}

PipelineConfig LoadPipelineConfig(const std::string &path) {
  Json json;
  try {
    json = Json::parse(ReadFile(path));
  } catch (const Json::parse_error &e) {
    throw ConfigError(path + ": " + e.what());
  }
  return ParsePipelineConfig(json, fs::path(path).parent_path().string());
}

// ---------------------------------------------------------------------------
// Stage helpers.

std::vector<AnnotatedSentence> LinkCorpus(const std::vector<AnnotatedSentence> &corpus,
                                          const KbSnapshot &kb,
                                          const LinkerOptions &options, int jobs) {
  const SurfaceIndex index = BuildSurfaceIndex(kb);
  return ParallelFlatMap(corpus, jobs, [&](const AnnotatedSentence &s) {
    return std::vector<AnnotatedSentence>{LinkEntities(s, index, options)};
  });
}

std::vector<CandidateTriple> RunExtractor(const Extractor &extractor,
                                          const std::vector<AnnotatedSentence> &corpus,
                                          int jobs) {
  return ParallelFlatMap(corpus, jobs,
                         [&](const AnnotatedSentence &s) { return extractor.Extract(s); });
}

CanonicalizeResult CanonicalizeAll(const std::vector<CandidateTriple> &triples,
                                   const std::vector<AnnotatedSentence> &corpus,
                                   const KbSnapshot &kb, const PredicateStats &stats,
                                   const CanonicalizerOptions &options, int jobs) {
  std::unordered_map<std::string, const AnnotatedSentence *> by_id;
  for (const AnnotatedSentence &s : corpus) by_id.emplace(s.id, &s);
  CanonicalizeResult result;
  result.kept = ParallelFlatMap(triples, jobs, [&](const CandidateTriple &t) {
    auto it = by_id.find(t.sentence_id);
    if (it == by_id.end()) {
      throw std::invalid_argument("triple names unknown sentence " + t.sentence_id);
    }
    std::vector<CandidateTriple> out;
    if (auto c = Canonicalize(t, kb, stats, *it->second, options)) out.push_back(std::move(*c));
    return out;
  });
  result.dropped = static_cast<long>(triples.size() - result.kept.size());
  return result;
}

namespace {

Json ReportRow(const ExtractorReport &r) {
  return {{"triples", r.triples},
          {"corrects", r.corrects},
          {"wrongs", r.wrongs},
          {"oso", r.oso},
          {"recalled", r.recalled},
          {"triples_per_sentence", r.triples_per_sentence},
          {"precision", r.metrics.precision},
          {"recall", r.metrics.recall},
          {"f1", r.metrics.f1}};
}

}  // namespace

Json EvaluationReport(const std::vector<CftrRecord> &records,
                      const std::vector<GoldRecord> &gold) {
  GoldIndex index(gold);
  std::map<std::string, std::vector<CandidateTriple>> by_extractor;
  std::vector<CftrRecord> fused;
  for (const CftrRecord &r : records) {
    if (r.stage == Stage::kFused) {
      fused.push_back(r);
    } else if (r.stage == Stage::kExtracted || r.stage == Stage::kCanonicalized) {
      by_extractor[r.triple.extractor].push_back(r.triple);
    }
  }
  Json report = {{"gold_size", static_cast<long>(index.size())}};
  Json rows = Json::object();
  for (const auto &[id, triples] : by_extractor) {
    rows[id] = ReportRow(Evaluate(triples, index));
  }
  report["extractors"] = rows;
  if (!fused.empty()) {
    report["fusion"] = ReportRow(Evaluate(AcceptedCandidates(GroupFusedRecords(fused)), index));
  }
  if (by_extractor.size() >= 2) {
    CommonMatrix m = CommonTriplesMatrix(by_extractor);
    report["matrix"] = {{"extractors", m.extractors}, {"counts", m.counts}};
  }
  return report;
}

std::string SweepCsv(const std::vector<SweepRow> &rows) {
  std::string out = "threshold,precision,recall,f1\n";
  char line[128];
  for (const SweepRow &r : rows) {
    std::snprintf(line, sizeof(line), "%.4f,%.10f,%.10f,%.10f\n", r.threshold,
                  r.metrics.precision, r.metrics.recall, r.metrics.f1);
    out += line;
  }
  return out;
}

// ---------------------------------------------------------------------------
// RunPipeline.

namespace {

std::string OutPath(const PipelineConfig &config, const char *name) {
  return (fs::path(config.output_dir) / name).string();
}

std::vector<std::unique_ptr<Extractor>> MakeExtractors(const PipelineConfig &config,
                                                       const KbSnapshot &kb,
                                                       const PredicateStats &stats) {
  std::vector<std::unique_ptr<Extractor>> out;
  const std::set<std::string> enabled(config.extractors.begin(), config.extractors.end());
  for (const std::string &id : AllExtractorIds()) {
    if (!enabled.count(id)) continue;
    if (id == kPredPattId) {
      out.push_back(std::make_unique<PredPattExtractor>(config.extractor));
    } else if (id == kDepPatternId) {
      std::vector<DepPattern> bank;
      if (config.patterns.empty()) {
        spdlog::warn("deppat enabled without a pattern bank; it will extract nothing");
      } else {
        bank = LoadPatternBank(config.patterns);
      }
      out.push_back(std::make_unique<DepPatternExtractor>(std::move(bank), config.extractor));
    } else if (id == kPsieId) {
      out.push_back(std::make_unique<PsieExtractor>(config.extractor));
    } else if (id == kRePersianId) {
      auto templates = config.templates.empty() ? DefaultRelationTemplates()
                                                : LoadRelationTemplates(config.templates);
      out.push_back(std::make_unique<RePersianExtractor>(std::move(templates), config.extractor));
    } else if (id == kTokenPatternId) {
      std::vector<TokenPatternRule> rules;
      if (config.rules.empty()) {
        spdlog::warn("tokpat enabled without rules; it will extract nothing");
      } else {
        rules = LoadTokenRules(config.rules, kb);
      }
      out.push_back(std::make_unique<TokenPatternExtractor>(std::move(rules), config.extractor));
    } else if (id == kDistantId) {
      out.push_back(std::make_unique<DistantExtractor>(stats, config.distant));
    }
  }
  return out;
}

Json CountRow(const ExtractorReport &r) {
  return {{"triples", r.triples}, {"corrects", r.corrects}, {"wrongs", r.wrongs},
          {"oso", r.oso},         {"recalled", r.recalled}};
}

class StageTracker {
 public:
  explicit StageTracker(const PipelineConfig &config) : config_(config) {}

  void Begin(const std::string &stage) {
    current_ = stage;
    spdlog::info("stage {}", stage);
  }
  void Done(const std::string &output) {
    completed_.push_back({{"stage", current_}, {"output", output}});
  }
  const std::string &current() const { return current_; }

  void WriteStatus(const std::string &status, const std::string &error) const {
    Json json = {{"status", status}, {"completed", completed_}};
    if (!error.empty()) {
      json["failed_stage"] = current_;
      json["error"] = error;
    }
    WriteFileAtomic(OutPath(config_, "status.json"), json.dump(2) + "\n");
  }

 private:
  const PipelineConfig &config_;
  std::string current_ = "setup";
  Json completed_ = Json::array();
};

Json RunStages(const PipelineConfig &config, const RunOptions &options,
               StageTracker *tracker) {
  const int jobs = options.jobs;
  Json summary;

  tracker->Begin("load");
  const KbSnapshot kb = LoadKbSnapshot(config.kb);
  const std::vector<AnnotatedSentence> corpus = LoadSentences(config.corpus);
  std::vector<GoldRecord> gold;
  if (!config.gold.empty()) gold = LoadGoldCorpus(config.gold, &kb);
  std::set<std::string> stopwords;
  if (!config.stopwords.empty()) stopwords = LoadStopwords(config.stopwords);
  summary["sentences"] = corpus.size();

  tracker->Begin("link");
  LinkerOptions linker;
  linker.max_ngram = config.max_ngram;
  const std::vector<AnnotatedSentence> linked = LinkCorpus(corpus, kb, linker, jobs);
  WriteSentences(OutPath(config, "linked.jsonl"), linked);
  long links = 0;
  for (const AnnotatedSentence &s : linked) links += static_cast<long>(s.links.size());
  summary["links"] = links;
  tracker->Done("linked.jsonl");

  tracker->Begin("ds-build");
  const std::vector<DsInstance> instances = BuildDsDataset(linked, kb);
  WriteDsInstances(OutPath(config, "ds_instances.jsonl"), instances);
  summary["ds_instances"] = instances.size();
  tracker->Done("ds_instances.jsonl");

  tracker->Begin("ds-stats");
  StatsOptions stats_options;
  stats_options.min_token_count = config.min_token_count;
  stats_options.extractor = config.extractor;
  const PredicateStats stats =
      ComputePredicateStatistics(instances, linked, stopwords, stats_options);
  WritePredicateStats(OutPath(config, "stats.json"), stats);
  summary["stats_predicates"] = stats.size();
  tracker->Done("stats.json");

  tracker->Begin("extract");
  std::vector<CandidateTriple> extracted;
  Json extracted_counts = Json::object();
  for (const auto &extractor : MakeExtractors(config, kb, stats)) {
    std::vector<CandidateTriple> out = RunExtractor(*extractor, linked, jobs);
    extracted_counts[extractor->id()] = out.size();
    extracted.insert(extracted.end(), out.begin(), out.end());
  }
  CftrWrite(OutPath(config, "extracted.cftr"), ToRecords(extracted, Stage::kExtracted));
  summary["extracted"] = extracted_counts;
  tracker->Done("extracted.cftr");

  tracker->Begin("canonicalize");
  CanonicalizeResult canonical =
      CanonicalizeAll(extracted, linked, kb, stats, config.canonicalizer, jobs);
  CftrWrite(OutPath(config, "canonicalized.cftr"),
            ToRecords(canonical.kept, Stage::kCanonicalized));
  Json canonical_counts = Json::object();
  for (const std::string &id : config.extractors) canonical_counts[id] = 0;
  for (const CandidateTriple &t : canonical.kept) {
    canonical_counts[t.extractor] = canonical_counts[t.extractor].get<long>() + 1;
  }
  summary["canonicalized"] = canonical_counts;
  summary["dropped"] = canonical.dropped;
  tracker->Done("canonicalized.cftr");

  tracker->Begin("fuse");
  const std::vector<FusedTriple> fused = Fuse(canonical.kept, config.threshold);
  std::vector<CftrRecord> fused_records;
  long accepted = 0;
  for (const FusedTriple &f : fused) {
    if (!f.accepted) continue;
    ++accepted;
    auto records = SupportRecords(f, Stage::kFused);
    fused_records.insert(fused_records.end(), records.begin(), records.end());
  }
  CftrWrite(OutPath(config, "fused.cftr"), fused_records);
  summary["fused_groups"] = fused.size();
  summary["accepted"] = accepted;
  tracker->Done("fused.cftr");

  if (!gold.empty()) {
    tracker->Begin("eval");
    std::vector<CftrRecord> all = ToRecords(canonical.kept, Stage::kCanonicalized);
    all.insert(all.end(), fused_records.begin(), fused_records.end());
    Json report = EvaluationReport(all, gold);
    WriteFileAtomic(OutPath(config, "report.json"), report.dump(2) + "\n");
    Json counts = Json::object();
    GoldIndex index(gold);
    std::map<std::string, std::vector<CandidateTriple>> by_extractor;
    for (const CandidateTriple &t : canonical.kept) by_extractor[t.extractor].push_back(t);
    for (const auto &[id, triples] : by_extractor) {
      counts[id] = CountRow(Evaluate(triples, index));
    }
    counts["fusion"] = CountRow(Evaluate(AcceptedCandidates(fused), index));
    summary["evaluation"] = counts;
    tracker->Done("report.json");

    if (!config.sweep.empty()) {
      tracker->Begin("sweep");
      auto rows = SweepThresholds(canonical.kept, gold, config.sweep);
      WriteFileAtomic(OutPath(config, "sweep.csv"), SweepCsv(rows));
      Json accepted_counts = Json::array();
      for (const SweepRow &r : rows) accepted_counts.push_back(r.accepted);
      summary["sweep_accepted"] = accepted_counts;
      tracker->Done("sweep.csv");
    }
  }
  return summary;
}

}  // namespace

RunResult RunPipeline(const PipelineConfig &config, const RunOptions &options) {
  const std::string summary_path = OutPath(config, "summary.json");
  RunResult result;
  if (!options.force && fs::exists(summary_path)) {
    spdlog::info("{} exists; nothing to do (use --force to rerun)", summary_path);
    result.skipped = true;
    result.summary = Json::parse(ReadFile(summary_path));
    return result;
  }
  fs::create_directories(config.output_dir);
  fs::remove(summary_path);

  StageTracker tracker(config);
  try {
    result.summary = RunStages(config, options, &tracker);
  } catch (const std::exception &e) {
    spdlog::error("stage {} failed: {}", tracker.current(), e.what());
    tracker.WriteStatus("failed", e.what());
    throw StageError(tracker.current(), e.what());
  }
  tracker.WriteStatus("ok", "");
  WriteFileAtomic(summary_path, result.summary.dump(2) + "\n");
  return result;
}

}  // namespace kbp
