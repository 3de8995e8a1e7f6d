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

// Ensemble gate over canonical candidate triples. A triple is accepted when
// at least two distinct extractors produced it (whatever their
// confidences), or when any single extraction reaches the threshold.

#ifndef KBP_FUSION_H_
#define KBP_FUSION_H_

#include <set>
#include <string>
#include <vector>

#include "kbp/core.h"
#include "kbp/evaluator.h"

namespace kbp {

struct Support {
  std::string extractor;
  double confidence = 0.0;
  std::string sentence_id;

  bool operator==(const Support &) const = default;
};

struct FusedTriple {
  TripleKey key;
  std::vector<Support> supports;  // input order
  double fused_confidence = 0.0;  // max over supports
  bool accepted = false;

  std::set<std::string> extractors() const;
  bool operator==(const FusedTriple &) const = default;
};

// Groups by triple identity; the result is sorted by key and contains
// accepted and rejected groups. Throws std::invalid_argument for raw
// predicates or a threshold outside [0,1].
std::vector<FusedTriple> Fuse(const std::vector<CandidateTriple> &triples,
                              double threshold);

// The two-condition gate on one group.
bool FusionAccepts(const std::vector<Support> &supports, double threshold);

// Expands accepted fused triples back into one candidate per distinct
// (key, sentence) with the fused confidence; used for evaluation.
std::vector<CandidateTriple> AcceptedCandidates(
    const std::vector<FusedTriple> &fused, const std::string &extractor = "fusion");

struct SweepRow {
  double threshold = 0.0;
  Metrics metrics;
  int accepted = 0;
};

// Thresholds must be ascending.
std::vector<SweepRow> SweepThresholds(const std::vector<CandidateTriple> &cftr,
                                      const std::vector<GoldRecord> &gold,
                                      const std::vector<double> &thresholds);

}  // namespace kbp

#endif  // KBP_FUSION_H_
