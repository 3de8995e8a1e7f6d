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

// End-to-end driver: link, distant-supervision statistics, extraction,
// canonicalization, fusion and evaluation, each stage persisted under the
// output directory. The stage helpers are shared with the command-line
// tool.

#ifndef KBP_PIPELINE_H_
#define KBP_PIPELINE_H_

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kbp/canonicalizer.h"
#include "kbp/corpus_io.h"
#include "kbp/distant_supervision.h"
#include "kbp/entity_linker.h"
#include "kbp/extractors.h"
#include "kbp/fusion.h"

namespace kbp {

// Extractor ids in the order the pipeline runs them.
const std::vector<std::string> &AllExtractorIds();

// Every constant the pipeline uses. Paths are resolved against the
// directory of the config file.
struct PipelineConfig {
  std::string corpus;
  std::string kb;
  std::string output_dir;
  std::string gold;       // optional
  std::string rules;      // token-pattern rules, optional
  std::string patterns;   // annotated pattern bank, optional
  std::string templates;  // POS templates, optional
  std::string stopwords;  // optional
  std::vector<std::string> extractors;
  double threshold = 0.9;
  std::vector<double> sweep;
  int max_ngram = 6;
  int min_token_count = 2;
  ExtractorConfig extractor;
  DistantOptions distant;
  CanonicalizerOptions canonicalizer;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ConfigError for unknown keys, unknown extractors, an empty
// extractor list or a threshold outside [0,1].
PipelineConfig ParsePipelineConfig(const Json &json, const std::string &base_dir);
PipelineConfig LoadPipelineConfig(const std::string &path);

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string &message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

struct RunOptions {
  int jobs = 1;
  bool force = false;
};

struct RunResult {
  bool skipped = false;  // outputs already present
  Json summary;
};

// Runs every stage. When summary.json already exists and force is false,
// nothing is done. On failure status.json names the failed stage and the
// stages whose outputs are complete; the error is rethrown as StageError.
RunResult RunPipeline(const PipelineConfig &config, const RunOptions &options);

// ---------------------------------------------------------------------------
// Stage helpers.

// Applies fn to every item on up to `jobs` threads and concatenates the
// per-item results in input order.
template <typename T, typename F>
auto ParallelFlatMap(const std::vector<T> &items, int jobs, F fn)
    -> decltype(fn(items.front())) {
  using Result = decltype(fn(items.front()));
  std::vector<Result> parts(items.size());
  const size_t workers =
      std::max<size_t>(1, std::min<size_t>(jobs < 1 ? 1 : jobs, items.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < items.size(); ++i) parts[i] = fn(items[i]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (size_t i = w; i < items.size(); i += workers) parts[i] = fn(items[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread &t : threads) t.join();
    for (const std::exception_ptr &e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Result out;
  for (Result &part : parts) {
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<AnnotatedSentence> LinkCorpus(const std::vector<AnnotatedSentence> &corpus,
                                          const KbSnapshot &kb,
                                          const LinkerOptions &options, int jobs);

std::vector<CandidateTriple> RunExtractor(const Extractor &extractor,
                                          const std::vector<AnnotatedSentence> &corpus,
                                          int jobs);

struct CanonicalizeResult {
  std::vector<CandidateTriple> kept;
  long dropped = 0;
};

// Canonicalizes raw triples; IRI triples pass through when the KB knows
// the predicate. Throws std::invalid_argument for unknown sentence ids.
CanonicalizeResult CanonicalizeAll(const std::vector<CandidateTriple> &triples,
                                   const std::vector<AnnotatedSentence> &corpus,
                                   const KbSnapshot &kb, const PredicateStats &stats,
                                   const CanonicalizerOptions &options, int jobs);

// Evaluation report over a CFTR: one row per extractor for records before
// the fused stage, a "fusion" row for fused records, and the pairwise
// common-triples matrix when at least two extractors are present.
Json EvaluationReport(const std::vector<CftrRecord> &records,
                      const std::vector<GoldRecord> &gold);

// "threshold,precision,recall,f1" with one row per sweep row.
std::string SweepCsv(const std::vector<SweepRow> &rows);

}  // namespace kbp

#endif  // KBP_PIPELINE_H_
