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

#include "kbp/evaluator.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace kbp {

namespace {

double HarmonicMean(double p, double r) {
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

const char *OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kCorrect: return "correct";
    case Outcome::kWrong: return "wrong";
    case Outcome::kOso: return "oso";
  }
  return "unknown";
}

Outcome ClassifyCandidate(const CandidateTriple &t, const GoldRecord &gold) {
  if (t.subject != gold.subject || t.object != gold.object) return Outcome::kOso;
  if (t.predicate.is_iri() && t.predicate.value == gold.predicate) {
    return Outcome::kCorrect;
  }
  return Outcome::kWrong;
}

Metrics ComputeMetrics(long corrects, long wrongs, long gold_size) {
  if (gold_size <= 0) throw std::invalid_argument("gold_size must be positive");
  if (corrects < 0 || wrongs < 0) throw std::invalid_argument("negative count");
  Metrics m;
  const long judged = corrects + wrongs;
  m.precision = judged > 0 ? static_cast<double>(corrects) / judged : 0.0;
  m.recall = static_cast<double>(corrects) / gold_size;
  m.f1 = HarmonicMean(m.precision, m.recall);
  return m;
}

double TriplesPerSentence(long total_triples, long sentence_count) {
  if (sentence_count <= 0) {
    throw std::invalid_argument("sentence_count must be positive");
  }
  double ratio = static_cast<double>(total_triples) / sentence_count;
  return std::round(ratio * 1e4) / 1e4;
}

GoldIndex::GoldIndex(const std::vector<GoldRecord> &gold) {
  for (const GoldRecord &g : gold) by_id_.emplace(g.sentence.id, &g);
}

const GoldRecord &GoldIndex::at(const std::string &sentence_id) const {
  auto it = by_id_.find(sentence_id);
  if (it == by_id_.end()) throw UnknownSentence(sentence_id);
  return *it->second;
}

ExtractorReport Evaluate(const std::vector<CandidateTriple> &triples,
                         const GoldIndex &gold) {
  if (gold.size() == 0) throw std::invalid_argument("empty gold corpus");
  ExtractorReport report;
  std::set<std::string> recalled;
  for (const CandidateTriple &t : triples) {
    ++report.triples;
    switch (ClassifyCandidate(t, gold.at(t.sentence_id))) {
      case Outcome::kCorrect:
        ++report.corrects;
        recalled.insert(t.sentence_id);
        break;
      case Outcome::kWrong:
        ++report.wrongs;
        break;
      case Outcome::kOso:
        ++report.oso;
        break;
    }
  }
  const long gold_size = static_cast<long>(gold.size());
  report.recalled = static_cast<long>(recalled.size());
  report.triples_per_sentence = TriplesPerSentence(report.triples, gold_size);
  report.metrics = ComputeMetrics(report.corrects, report.wrongs, gold_size);
  report.metrics.recall = static_cast<double>(report.recalled) / gold_size;
  report.metrics.f1 = HarmonicMean(report.metrics.precision, report.metrics.recall);
  return report;
}

CommonMatrix CommonTriplesMatrix(
    const std::map<std::string, std::vector<CandidateTriple>> &outputs) {
  if (outputs.size() < 2) {
    throw std::invalid_argument("need at least two extractors");
  }
  CommonMatrix matrix;
  std::vector<std::set<TripleKey>> keys;
  for (const auto &[id, triples] : outputs) {
    matrix.extractors.push_back(id);
    std::set<TripleKey> k;
    for (const CandidateTriple &t : triples) k.insert(TripleIdentity(t));
    keys.push_back(std::move(k));
  }
  const size_t n = keys.size();
  matrix.counts.assign(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      long shared = 0;
      const auto &small = keys[i].size() <= keys[j].size() ? keys[i] : keys[j];
      const auto &large = keys[i].size() <= keys[j].size() ? keys[j] : keys[i];
      for (const TripleKey &k : small) shared += large.count(k);
      matrix.counts[i][j] = matrix.counts[j][i] = shared;
    }
  }
  return matrix;
}

}  // namespace kbp
