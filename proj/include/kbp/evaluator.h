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

// Evaluation against a gold corpus holding one (subject, predicate, object)
// triple per sentence.
//
// Each candidate is Correct when it equals the gold triple of its sentence,
// Wrong when subject and object match but the predicate differs, and OSO
// (outside the gold set) otherwise. OSO candidates do not count against
// precision. Recall credits each gold sentence at most once.

#ifndef KBP_EVALUATOR_H_
#define KBP_EVALUATOR_H_

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kbp/core.h"

namespace kbp {

enum class Outcome { kCorrect, kWrong, kOso };

const char *OutcomeName(Outcome outcome);

class UnknownSentence : public std::out_of_range {
 public:
  explicit UnknownSentence(const std::string &id)
      : std::out_of_range("sentence " + id + " is not in the gold corpus") {}
};

Outcome ClassifyCandidate(const CandidateTriple &triple, const GoldRecord &gold);

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// precision = corrects / (corrects + wrongs), recall = corrects / gold_size.
// Throws std::invalid_argument when gold_size is not positive.
Metrics ComputeMetrics(long corrects, long wrongs, long gold_size);

// Triples per sentence rounded to four decimals.
double TriplesPerSentence(long total_triples, long sentence_count);

// Gold records by sentence id.
class GoldIndex {
 public:
  explicit GoldIndex(const std::vector<GoldRecord> &gold);

  // Throws UnknownSentence.
  const GoldRecord &at(const std::string &sentence_id) const;
  size_t size() const { return by_id_.size(); }

 private:
  std::unordered_map<std::string, const GoldRecord *> by_id_;
};

struct ExtractorReport {
  long triples = 0;
  long corrects = 0;
  long wrongs = 0;
  long oso = 0;
  // Gold sentences with at least one Correct candidate.
  long recalled = 0;
  double triples_per_sentence = 0.0;
  Metrics metrics;
};

ExtractorReport Evaluate(const std::vector<CandidateTriple> &triples,
                         const GoldIndex &gold);

// Pairwise counts of shared triple identities, over all triples. The
// diagonal is zero.
struct CommonMatrix {
  std::vector<std::string> extractors;  // sorted
  std::vector<std::vector<long>> counts;
};

// Throws std::invalid_argument for fewer than two extractors.
CommonMatrix CommonTriplesMatrix(
    const std::map<std::string, std::vector<CandidateTriple>> &outputs);

}  // namespace kbp

#endif  // KBP_EVALUATOR_H_
