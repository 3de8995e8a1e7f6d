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

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "kbp/evaluator.h"
#include "oracles.h"
#include "test_util.h"

namespace kbp {
namespace {

using testing::MakeTriple;

GoldRecord Gold(const std::string &id, const std::string &s, const std::string &p,
                const std::string &o) {
  GoldRecord g;
  g.sentence.id = id;
  g.subject = s;
  g.predicate = p;
  g.object = o;
  return g;
}

TEST_CASE("candidates are classified against their sentence's gold triple") {
  GoldRecord g = Gold("s", "a", "p:x", "b");
  CHECK(ClassifyCandidate(MakeTriple("a", Predicate::Iri("p:x"), "b", "e", 1, "s"), g) ==
        Outcome::kCorrect);
  CHECK(ClassifyCandidate(MakeTriple("a", Predicate::Iri("p:y"), "b", "e", 1, "s"), g) ==
        Outcome::kWrong);
  // A raw predicate spelled like the IRI is still wrong.
  CHECK(ClassifyCandidate(MakeTriple("a", Predicate::Raw("p:x"), "b", "e", 1, "s"), g) ==
        Outcome::kWrong);
  // Subject and object must both match, in order.
  CHECK(ClassifyCandidate(MakeTriple("b", Predicate::Iri("p:x"), "a", "e", 1, "s"), g) ==
        Outcome::kOso);
  CHECK(ClassifyCandidate(MakeTriple("a", Predicate::Iri("p:x"), "c", "e", 1, "s"), g) ==
        Outcome::kOso);
  CHECK(std::string(OutcomeName(Outcome::kOso)) == "oso");
}

TEST_CASE("metric arithmetic on published module counts") {
  for (const fixtures::PublishedRow &row : fixtures::PublishedRows()) {
    Metrics m = ComputeMetrics(row.corrects, row.wrongs, fixtures::kPublishedGoldSize);
    CHECK(std::abs(m.precision - row.precision) <= 0.00005);
    CHECK(std::abs(m.recall - row.recall) <= 0.00005);
    CHECK(std::abs(m.f1 - row.f1) <= 0.00005);
    CHECK(std::abs(TriplesPerSentence(row.triples, fixtures::kPublishedGoldSize) -
                   row.triples_per_sentence) <= 0.00005);
  }
}

TEST_CASE("metric edge cases") {
  Metrics m = ComputeMetrics(0, 0, 10);
  CHECK(m.precision == 0.0);
  CHECK(m.recall == 0.0);
  CHECK(m.f1 == 0.0);
  CHECK_THROWS_AS(ComputeMetrics(1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(ComputeMetrics(-1, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(TriplesPerSentence(1, 0), std::invalid_argument);
}

TEST_CASE("evaluation partitions every output and recall counts sentences once") {
  std::mt19937 rng(8);
  std::vector<GoldRecord> gold;
  std::map<std::string, oracle::Key> gold_keys;
  for (int i = 0; i < 25; ++i) {
    gold.push_back(Gold("s" + std::to_string(i), "e" + std::to_string(rng() % 12),
                        "p:" + std::to_string(rng() % 4), "e" + std::to_string(rng() % 12)));
    gold_keys[gold.back().sentence.id] = {gold.back().subject, gold.back().predicate,
                                          gold.back().object};
  }
  GoldIndex index(gold);
  for (int round = 0; round < 20; ++round) {
    std::vector<CandidateTriple> triples = oracle::RandomCanonicalTriples(rng, 500, 3, 25);
    // Plant gold hits, some duplicated within one sentence.
    for (int k = 0; k < 10; ++k) {
      const GoldRecord &g = gold[rng() % gold.size()];
      for (int d = 0; d < 2; ++d) {
        triples.push_back(MakeTriple(g.subject, Predicate::Iri(g.predicate), g.object, "x0",
                                     0.5, g.sentence.id));
      }
    }
    ExtractorReport report = Evaluate(triples, index);
    CHECK(report.corrects + report.wrongs + report.oso == report.triples);
    CHECK(report.triples == static_cast<long>(triples.size()));
    oracle::Counts want = oracle::Classify(triples, gold_keys);
    CHECK(report.corrects == want.correct);
    CHECK(report.wrongs == want.wrong);
    CHECK(report.oso == want.oso);
    CHECK(report.recalled == static_cast<long>(want.recalled.size()));
    CHECK(report.recalled <= report.corrects);
    auto [p, r, f] = oracle::Prf(want, 25);
    CHECK(std::abs(report.metrics.precision - p) <= 1e-12);
    CHECK(std::abs(report.metrics.recall - r) <= 1e-12);
    CHECK(std::abs(report.metrics.f1 - f) <= 1e-12);
  }
  std::vector<CandidateTriple> stray = {MakeTriple("a", Predicate::Iri("p"), "b", "x", 1, "zz")};
  CHECK_THROWS_AS(Evaluate(stray, index), UnknownSentence);
}

TEST_CASE("common-triples matrix equals pairwise set intersection") {
  std::mt19937 rng(13);
  std::vector<CandidateTriple> triples = oracle::RandomCanonicalTriples(rng, 800, 5, 10);
  std::map<std::string, std::vector<CandidateTriple>> outputs;
  for (const CandidateTriple &t : triples) outputs[t.extractor].push_back(t);
  CommonMatrix matrix = CommonTriplesMatrix(outputs);
  auto want = oracle::CommonMatrix(triples);
  const size_t n = matrix.extractors.size();
  REQUIRE(n == 5);
  for (size_t i = 0; i < n; ++i) {
    CHECK(matrix.counts[i][i] == 0);
    for (size_t j = 0; j < n; ++j) {
      CHECK(matrix.counts[i][j] == matrix.counts[j][i]);
      CHECK(matrix.counts[i][j] == want.at({matrix.extractors[i], matrix.extractors[j]}));
    }
  }
  outputs.erase(outputs.begin(), std::next(outputs.begin(), 4));
  CHECK_THROWS_AS(CommonTriplesMatrix(outputs), std::invalid_argument);
}

}  // namespace
}  // namespace kbp
