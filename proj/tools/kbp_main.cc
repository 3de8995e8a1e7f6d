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

// Command-line entry point for every pipeline stage.

#include <cmath>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kbp/canonicalizer.h"
#include "kbp/corpus_io.h"
#include "kbp/distant_supervision.h"
#include "kbp/entity_linker.h"
#include "kbp/evaluator.h"
#include "kbp/extractors.h"
#include "kbp/fusion.h"
#include "kbp/pipeline.h"
#include "kbp/review_service.h"
#include "kbp/text.h"
#include "kbp/token_pattern.h"
#include "spdlog/spdlog.h"

namespace kbp {
namespace {

struct Globals {
  std::string config;
  int jobs = 1;
  bool force = false;
  std::string log_level = "info";
};

// Parses "0,0.1,0.2" and the elided form "0,0.1,...,1", which continues
// the step of the first two values up to the last.
std::vector<double> ParseThresholds(const std::string &text) {
  std::vector<std::string> parts = Split(text, ',');
  std::vector<double> out;
  for (size_t i = 0; i < parts.size(); ++i) {
    std::string part(Trim(parts[i]));
    if (part == "...") {
      if (out.size() != 2 || i + 2 != parts.size()) {
        throw CLI::ValidationError("--thresholds", "'...' needs the form a,b,...,z");
      }
      const double first = out[0];
      const double step = out[1] - out[0];
      const double last = std::stod(std::string(Trim(parts[i + 1])));
      if (!(step > 0)) throw CLI::ValidationError("--thresholds", "step must be positive");
      out.clear();
      for (long k = 0;; ++k) {
        double t = std::round((first + k * step) * 1e9) / 1e9;
        if (t > last + 1e-12) break;
        out.push_back(t);
      }
      return out;
    }
    out.push_back(std::stod(part));
  }
  return out;
}

std::vector<CandidateTriple> CanonicalTriples(const std::vector<CftrRecord> &records) {
  std::vector<CandidateTriple> out;
  for (const CftrRecord &r : records) {
    if (r.stage == Stage::kExtracted || r.stage == Stage::kCanonicalized) {
      out.push_back(r.triple);
    }
  }
  return out;
}

void WriteJson(const std::string &path, const Json &json) {
  WriteFileAtomic(path, json.dump(2) + "\n");
}

ReviewServer *g_server = nullptr;

void HandleSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

}  // namespace

int Main(int argc, char **argv) {
  CLI::App app{"Knowledge-base population pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Pipeline config JSON");
  app.add_option("--jobs", g.jobs, "Worker threads per stage")->check(CLI::PositiveNumber);
  app.add_flag("--force", g.force, "Recompute outputs that already exist");
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

  // link
  struct {
    std::string kb, in, out;
    int max_ngram = 6;
  } link;
  auto *link_cmd = app.add_subcommand("link", "Link entity mentions against the KB");
  link_cmd->add_option("--kb", link.kb)->required();
  link_cmd->add_option("--in", link.in)->required();
  link_cmd->add_option("--out", link.out)->required();
  link_cmd->add_option("--max-ngram", link.max_ngram)->check(CLI::PositiveNumber);

  // extract
  struct {
    std::string module = "all", in, out, rules, patterns, templates, kb, stats;
  } extract;
  auto *extract_cmd = app.add_subcommand("extract", "Run extractors over a linked corpus");
  extract_cmd->add_option("--module", extract.module)
      ->check(CLI::IsMember({"predpatt", "deppat", "psie", "repersian", "tokpat", "distant", "all"}));
  extract_cmd->add_option("--in", extract.in)->required();
  extract_cmd->add_option("--out", extract.out)->required();
  extract_cmd->add_option("--rules", extract.rules, "Token-pattern rule file");
  extract_cmd->add_option("--patterns", extract.patterns, "Annotated dependency pattern bank");
  extract_cmd->add_option("--templates", extract.templates, "POS template list (JSON)");
  extract_cmd->add_option("--kb", extract.kb, "KB directory (validates rule predicates)");
  extract_cmd->add_option("--stats", extract.stats, "Predicate statistics for distant");

  // ds-build / ds-stats
  struct {
    std::string kb, in, out;
  } ds_build;
  auto *ds_build_cmd = app.add_subcommand("ds-build", "Build the distant-supervision dataset");
  ds_build_cmd->add_option("--kb", ds_build.kb)->required();
  ds_build_cmd->add_option("--in", ds_build.in)->required();
  ds_build_cmd->add_option("--out", ds_build.out)->required();

  struct {
    std::string in, corpus, out, stopwords;
    int min_count = 2;
  } ds_stats;
  auto *ds_stats_cmd = app.add_subcommand("ds-stats", "Mine per-predicate statistics");
  ds_stats_cmd->add_option("--in", ds_stats.in)->required();
  ds_stats_cmd->add_option("--corpus", ds_stats.corpus)->required();
  ds_stats_cmd->add_option("--out", ds_stats.out)->required();
  ds_stats_cmd->add_option("--stopwords", ds_stats.stopwords);
  ds_stats_cmd->add_option("--min-count", ds_stats.min_count)->check(CLI::PositiveNumber);

  // canonicalize
  struct {
    std::string kb, stats, in, out, corpus;
  } canon;
  auto *canon_cmd = app.add_subcommand("canonicalize", "Map raw predicates to ontology IRIs");
  canon_cmd->add_option("--kb", canon.kb)->required();
  canon_cmd->add_option("--stats", canon.stats)->required();
  canon_cmd->add_option("--in", canon.in)->required();
  canon_cmd->add_option("--out", canon.out)->required();
  canon_cmd->add_option("--corpus", canon.corpus, "Linked corpus the triples came from")
      ->required();

  // mine-patterns
  struct {
    std::string in, out;
    int min_support = 2;
  } mine_patterns;
  auto *mine_patterns_cmd =
      app.add_subcommand("mine-patterns", "Mine frequent dependency pattern keys");
  mine_patterns_cmd->add_option("--in", mine_patterns.in)->required();
  mine_patterns_cmd->add_option("--out", mine_patterns.out)->required();
  mine_patterns_cmd->add_option("--min-support", mine_patterns.min_support)
      ->check(CLI::PositiveNumber);

  // mine-rules
  struct {
    std::string in, out, kb;
    int min_support = 2;
    double min_confidence = 0.5;
  } mine_rules;
  auto *mine_rules_cmd =
      app.add_subcommand("mine-rules", "Mine implication rules and predicate clusters");
  mine_rules_cmd->add_option("--in", mine_rules.in)->required();
  mine_rules_cmd->add_option("--out", mine_rules.out)->required();
  mine_rules_cmd->add_option("--min-support", mine_rules.min_support)
      ->check(CLI::PositiveNumber);
  mine_rules_cmd->add_option("--min-confidence", mine_rules.min_confidence)
      ->check(CLI::Range(0.0, 1.0));
  mine_rules_cmd->add_option("--kb", mine_rules.kb,
                             "Append mapped rows to this KB's mapping.tsv");

  // fuse / sweep
  struct {
    std::string in, out;
    double threshold = 0.9;
  } fuse;
  auto *fuse_cmd = app.add_subcommand("fuse", "Apply the ensemble gate");
  fuse_cmd->add_option("--in", fuse.in)->required();
  fuse_cmd->add_option("--out", fuse.out)->required();
  fuse_cmd->add_option("--threshold", fuse.threshold)->check(CLI::Range(0.0, 1.0));

  struct {
    std::string in, gold, out, thresholds = "0,0.1,...,1";
  } sweep;
  auto *sweep_cmd = app.add_subcommand("sweep", "Evaluate fusion over a threshold range");
  sweep_cmd->add_option("--in", sweep.in)->required();
  sweep_cmd->add_option("--gold", sweep.gold)->required();
  sweep_cmd->add_option("--out", sweep.out)->required();
  sweep_cmd->add_option("--thresholds", sweep.thresholds);

  // eval
  struct {
    std::vector<std::string> in;
    std::string gold, report;
  } eval;
  auto *eval_cmd = app.add_subcommand("eval", "Score CFTR files against the gold corpus");
  eval_cmd->add_option("--in", eval.in, "CFTR file (repeatable)")->required();
  eval_cmd->add_option("--gold", eval.gold)->required();
  eval_cmd->add_option("--report", eval.report)->required();

  // serve
  struct {
    std::string cftr, kb, host = "127.0.0.1", corpus, enqueue, static_dir;
    int port = 8080;
  } serve;
  auto *serve_cmd = app.add_subcommand("serve", "Serve the expert review queue");
  serve_cmd->add_option("--cftr", serve.cftr, "Review CFTR file")->required();
  serve_cmd->add_option("--kb", serve.kb)->required();
  serve_cmd->add_option("--port", serve.port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", serve.host);
  serve_cmd->add_option("--corpus", serve.corpus, "Sentences shown as item context");
  serve_cmd->add_option("--enqueue", serve.enqueue, "Fused CFTR to add to the queue first");
  serve_cmd->add_option("--static", serve.static_dir, "Static UI assets");

  // run
  auto *run_cmd = app.add_subcommand("run", "Run the whole pipeline from a config file");
  std::string run_output_dir;
  run_cmd->add_option("--output-dir", run_output_dir, "Overrides output_dir of the config");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(g.log_level));
  spdlog::set_pattern("[%l] %v");

  try {
    if (link_cmd->parsed()) {
      const KbSnapshot kb = LoadKbSnapshot(link.kb);
      LinkerOptions options;
      options.max_ngram = link.max_ngram;
      auto linked = LinkCorpus(LoadSentences(link.in), kb, options, g.jobs);
      WriteSentences(link.out, linked);
      spdlog::info("linked {} sentences", linked.size());
    } else if (extract_cmd->parsed()) {
      const auto corpus = LoadSentences(extract.in);
      KbSnapshot kb;
      if (!extract.kb.empty()) kb = LoadKbSnapshot(extract.kb);
      const bool all = extract.module == "all";
      std::vector<std::unique_ptr<Extractor>> extractors;
      ExtractorConfig config;
      if (all || extract.module == kPredPattId) {
        extractors.push_back(std::make_unique<PredPattExtractor>(config));
      }
      if (all || extract.module == kDepPatternId) {
        if (extract.patterns.empty() && !all) {
          throw std::invalid_argument("deppat needs --patterns");
        }
        std::vector<DepPattern> bank;
        if (!extract.patterns.empty()) bank = LoadPatternBank(extract.patterns);
        extractors.push_back(std::make_unique<DepPatternExtractor>(std::move(bank), config));
      }
      if (all || extract.module == kPsieId) {
        extractors.push_back(std::make_unique<PsieExtractor>(config));
      }
      if (all || extract.module == kRePersianId) {
        auto templates = extract.templates.empty() ? DefaultRelationTemplates()
                                                   : LoadRelationTemplates(extract.templates);
        extractors.push_back(std::make_unique<RePersianExtractor>(std::move(templates), config));
      }
      if (all || extract.module == kTokenPatternId) {
        if (extract.rules.empty() && !all) throw std::invalid_argument("tokpat needs --rules");
        std::vector<TokenPatternRule> rules;
        if (!extract.rules.empty()) {
          if (extract.kb.empty()) throw std::invalid_argument("tokpat needs --kb");
          rules = LoadTokenRules(extract.rules, kb);
        }
        extractors.push_back(std::make_unique<TokenPatternExtractor>(std::move(rules), config));
      }
      if (extract.module == kDistantId || (all && !extract.stats.empty())) {
        if (extract.stats.empty()) throw std::invalid_argument("distant needs --stats");
        extractors.push_back(
            std::make_unique<DistantExtractor>(LoadPredicateStats(extract.stats)));
      }
      std::vector<CandidateTriple> triples;
      for (const auto &e : extractors) {
        auto out = RunExtractor(*e, corpus, g.jobs);
        spdlog::info("{}: {} triples", e->id(), out.size());
        triples.insert(triples.end(), out.begin(), out.end());
      }
      CftrWrite(extract.out, ToRecords(triples, Stage::kExtracted));
    } else if (ds_build_cmd->parsed()) {
      auto instances = BuildDsDataset(LoadSentences(ds_build.in), LoadKbSnapshot(ds_build.kb));
      WriteDsInstances(ds_build.out, instances);
      spdlog::info("{} instances", instances.size());
    } else if (ds_stats_cmd->parsed()) {
      std::set<std::string> stopwords;
      if (!ds_stats.stopwords.empty()) stopwords = LoadStopwords(ds_stats.stopwords);
      StatsOptions options;
      options.min_token_count = ds_stats.min_count;
      auto stats = ComputePredicateStatistics(LoadDsInstances(ds_stats.in),
                                              LoadSentences(ds_stats.corpus), stopwords,
                                              options);
      WritePredicateStats(ds_stats.out, stats);
      spdlog::info("statistics for {} predicates", stats.size());
    } else if (canon_cmd->parsed()) {
      auto records = CftrScan(canon.in);
      auto result = CanonicalizeAll(CanonicalTriples(records), LoadSentences(canon.corpus),
                                    LoadKbSnapshot(canon.kb), LoadPredicateStats(canon.stats),
                                    {}, g.jobs);
      CftrWrite(canon.out, ToRecords(result.kept, Stage::kCanonicalized));
      spdlog::info("{} canonicalized, {} dropped", result.kept.size(), result.dropped);
    } else if (mine_patterns_cmd->parsed()) {
      auto bank = MineDependencyPatterns(LoadSentences(mine_patterns.in),
                                         mine_patterns.min_support);
      WritePatternBank(mine_patterns.out, bank);
      spdlog::info("{} patterns", bank.size());
    } else if (mine_rules_cmd->parsed()) {
      auto rules = MineImplicationRules(CanonicalTriples(CftrScan(mine_rules.in)),
                                        mine_rules.min_support, mine_rules.min_confidence);
      Clustering clustering = ClusterPredicates(rules);
      const std::filesystem::path dir(mine_rules.out);
      std::filesystem::create_directories(dir);
      WriteRules((dir / "rules.jsonl").string(), rules);
      WriteJson((dir / "clusters.json").string(), ClusteringToJson(clustering));
      std::string rows;
      for (const MappingRow &row : clustering.rows) {
        rows += row.phrase + "\t" + (row.needs_expert ? "?" : row.iri) + "\n";
      }
      WriteFileAtomic((dir / "mapping_rows.tsv").string(), rows);
      spdlog::info("{} rules, {} clusters, {} rows", rules.size(), clustering.clusters.size(),
                   clustering.rows.size());
      if (!mine_rules.kb.empty()) {
        size_t n = AppendMinedMappings(mine_rules.kb, LoadKbSnapshot(mine_rules.kb),
                                       clustering.rows);
        spdlog::info("appended {} mapping rows to {}", n, mine_rules.kb);
      }
    } else if (fuse_cmd->parsed()) {
      auto fused = Fuse(CanonicalTriples(CftrScan(fuse.in)), fuse.threshold);
      std::vector<CftrRecord> records;
      size_t accepted = 0;
      for (const FusedTriple &f : fused) {
        if (!f.accepted) continue;
        ++accepted;
        auto r = SupportRecords(f, Stage::kFused);
        records.insert(records.end(), r.begin(), r.end());
      }
      CftrWrite(fuse.out, records);
      spdlog::info("{} of {} triples accepted", accepted, fused.size());
    } else if (sweep_cmd->parsed()) {
      auto rows = SweepThresholds(CanonicalTriples(CftrScan(sweep.in)),
                                  LoadGoldCorpus(sweep.gold), ParseThresholds(sweep.thresholds));
      WriteFileAtomic(sweep.out, SweepCsv(rows));
    } else if (eval_cmd->parsed()) {
      std::vector<CftrRecord> records;
      for (const std::string &path : eval.in) {
        auto r = CftrScan(path);
        records.insert(records.end(), r.begin(), r.end());
      }
      WriteJson(eval.report, EvaluationReport(records, LoadGoldCorpus(eval.gold)));
    } else if (serve_cmd->parsed()) {
      ReviewStore store(serve.cftr, serve.kb);
      if (!serve.corpus.empty()) store.AttachCorpus(LoadSentences(serve.corpus));
      if (!serve.enqueue.empty()) {
        size_t n = store.Enqueue(GroupFusedRecords(CftrScan(serve.enqueue, Stage::kFused)));
        spdlog::info("enqueued {} items", n);
      }
      ServerOptions options;
      options.static_dir = serve.static_dir;
      ReviewServer server(&store, options);
      int port = server.Bind(serve.host, serve.port);
      if (port < 0) throw std::runtime_error("cannot bind " + serve.host);
      g_server = &server;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      spdlog::info("serving on http://{}:{}", serve.host, port);
      bool ok = server.Run();
      g_server = nullptr;
      return ok ? 0 : 1;
    } else if (run_cmd->parsed()) {
      if (g.config.empty()) throw std::invalid_argument("run needs --config");
      RunOptions options;
      options.jobs = g.jobs;
      options.force = g.force;
      PipelineConfig config = LoadPipelineConfig(g.config);
      if (!run_output_dir.empty()) config.output_dir = run_output_dir;
      RunResult result = RunPipeline(config, options);
      std::cout << result.summary.dump(2) << "\n";
    }
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}

}  // namespace kbp

int main(int argc, char **argv) { return kbp::Main(argc, argv); }
