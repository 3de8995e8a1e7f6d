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

// Distant supervision: a sentence mentioning two entities that are related
// in the KB is taken as an instance of that relation. The instances feed
// per-predicate token and compound-verb statistics, which drive both the
// overlap-scoring extractor below and the canonicalizer.

#ifndef KBP_DISTANT_SUPERVISION_H_
#define KBP_DISTANT_SUPERVISION_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kbp/core.h"
#include "kbp/dependency_tree.h"
#include "kbp/extractors.h"

namespace kbp {

struct DsInstance {
  std::string sentence_id;
  std::string subject;
  std::string object;
  std::string predicate;
  Span subject_span;
  Span object_span;

  auto operator<=>(const DsInstance &) const = default;
  bool operator==(const DsInstance &) const = default;
};

struct PredicateProfile {
  std::map<std::string, int> frequent_tokens;
  std::map<std::string, int> compound_verbs;
  int instance_count = 0;

  bool operator==(const PredicateProfile &) const = default;
};

// Keyed by predicate IRI.
using PredicateStats = std::map<std::string, PredicateProfile>;

// One instance per ordered pair of non-overlapping link spans (a, b) and
// fact (a.entity, p, b.entity) in the KB.
std::vector<DsInstance> BuildDsDataset(
    const std::vector<AnnotatedSentence> &corpus, const KbSnapshot &kb);

struct StatsOptions {
  int min_token_count = 2;
  ExtractorConfig extractor;
};

// Mergeable raw counts. Pruning happens once, in Finalize, so partial
// accumulators over disjoint instance sets can be merged in any order.
class StatsAccumulator {
 public:
  explicit StatsAccumulator(std::set<std::string> stopwords,
                            StatsOptions options = {});

  void Add(const DsInstance &instance, const AnnotatedSentence &sentence);
  void Merge(const StatsAccumulator &other);
  PredicateStats Finalize() const;

 private:
  std::set<std::string> stopwords_;
  StatsOptions options_;
  PredicateStats counts_;
};

// Throws std::invalid_argument when an instance names a sentence that is
// not in the corpus.
PredicateStats ComputePredicateStatistics(
    const std::vector<DsInstance> &instances,
    const std::vector<AnnotatedSentence> &corpus,
    const std::set<std::string> &stopwords, const StatsOptions &options = {});

// Per-predicate overlap score between a sentence and the statistics:
// distinct normalized sentence tokens found among the frequent tokens
// count token_weight each, distinct compound-verb phrases found among the
// compound verbs count verb_weight each.
struct OverlapScorer {
  int token_weight = 1;
  int verb_weight = 2;
  ExtractorConfig extractor;

  std::map<std::string, int> Score(const AnnotatedSentence &sentence,
                                   const PredicateStats &stats) const;
};

// Highest-scoring predicate, ties to the smaller IRI; nullptr when the
// scores are empty.
const std::pair<const std::string, int> *ArgMax(
    const std::map<std::string, int> &scores);

struct DistantOptions {
  int verb_weight = 2;
  int min_score = 2;
  ExtractorConfig extractor;
};

std::vector<CandidateTriple> ExtractDistant(const AnnotatedSentence &sentence,
                                            const PredicateStats &stats,
                                            const DistantOptions &options = {});

class DistantExtractor : public Extractor {
 public:
  DistantExtractor(PredicateStats stats, DistantOptions options = {})
      : stats_(std::move(stats)), options_(std::move(options)) {}

  std::string id() const override { return std::string(kDistantId); }
  std::vector<CandidateTriple> Extract(
      const AnnotatedSentence &sentence) const override {
    return ExtractDistant(sentence, stats_, options_);
  }

 private:
  PredicateStats stats_;
  DistantOptions options_;
};

}  // namespace kbp

#endif  // KBP_DISTANT_SUPERVISION_H_
