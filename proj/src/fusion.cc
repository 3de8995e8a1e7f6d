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

#include "kbp/fusion.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kbp {

std::set<std::string> FusedTriple::extractors() const {
  std::set<std::string> ids;
  for (const Support &s : supports) ids.insert(s.extractor);
  return ids;
}

bool FusionAccepts(const std::vector<Support> &supports, double threshold) {
  std::set<std::string> extractors;
  for (const Support &s : supports) {
    extractors.insert(s.extractor);
    if (s.confidence >= threshold) return true;
  }
  return extractors.size() >= 2;
}

std::vector<FusedTriple> Fuse(const std::vector<CandidateTriple> &triples,
                              double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold outside [0,1]");
  }
  std::map<TripleKey, FusedTriple> groups;
  for (const CandidateTriple &t : triples) {
    if (!t.predicate.is_iri()) {
      throw std::invalid_argument("fusion needs canonical predicates, got raw '" +
                                  t.predicate.value + "'");
    }
    TripleKey key = TripleIdentity(t);
    auto [it, inserted] = groups.try_emplace(key);
    FusedTriple &f = it->second;
    if (inserted) {
      f.key = std::move(key);
      f.fused_confidence = t.confidence;
    }
    f.supports.push_back({t.extractor, t.confidence, t.sentence_id});
    f.fused_confidence = std::max(f.fused_confidence, t.confidence);
  }

  std::vector<FusedTriple> fused;
  fused.reserve(groups.size());
  for (auto &[key, f] : groups) {
    f.accepted = FusionAccepts(f.supports, threshold);
    fused.push_back(std::move(f));
  }
  return fused;
}

std::vector<CandidateTriple> AcceptedCandidates(
    const std::vector<FusedTriple> &fused, const std::string &extractor) {
  std::vector<CandidateTriple> out;
  for (const FusedTriple &f : fused) {
    if (!f.accepted) continue;
    std::set<std::string> sentences;
    for (const Support &s : f.supports) {
      if (!sentences.insert(s.sentence_id).second) continue;
      out.push_back({f.key.subject, f.key.predicate, f.key.object, extractor,
                     f.fused_confidence, s.sentence_id});
    }
  }
  return out;
}

std::vector<SweepRow> SweepThresholds(const std::vector<CandidateTriple> &cftr,
                                      const std::vector<GoldRecord> &gold,
                                      const std::vector<double> &thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("thresholds must be ascending");
  }
  GoldIndex index(gold);
  std::vector<SweepRow> rows;
  for (double threshold : thresholds) {
    auto fused = Fuse(cftr, threshold);
    auto accepted = AcceptedCandidates(fused);
    ExtractorReport report = Evaluate(accepted, index);
    SweepRow row;
    row.threshold = threshold;
    row.metrics = report.metrics;
    row.accepted = static_cast<int>(
        std::count_if(fused.begin(), fused.end(),
                      [](const FusedTriple &f) { return f.accepted; }));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kbp
