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

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "kbp/extractors.h"
#include "test_util.h"

namespace kbp {
namespace {

using testing::AddLink;
using testing::MakeSentence;

using fixtures::ArgumentFanout;

std::set<std::pair<std::string, std::string>> Pairs(const std::vector<CandidateTriple> &ts) {
  std::set<std::pair<std::string, std::string>> out;
  for (const CandidateTriple &t : ts) out.insert({t.subject, t.object});
  return out;
}

TEST_CASE("PredPatt emits n*(n-1) ordered pairs") {
  CHECK(ExtractPredPatt(ArgumentFanout(0)).empty());
  CHECK(ExtractPredPatt(ArgumentFanout(1)).empty());
  for (int n : {2, 3, 4}) {
    std::vector<CandidateTriple> out = ExtractPredPatt(ArgumentFanout(n));
    CHECK(out.size() == static_cast<size_t>(n * (n - 1)));
    CHECK(Pairs(out).size() == out.size());
    for (const CandidateTriple &t : out) {
      CHECK(t.extractor == "predpatt");
      CHECK(t.predicate == Predicate::Raw("gave"));
      CHECK(t.subject != t.object);
      CHECK(t.confidence == doctest::Approx(1.0 / (n * (n - 1))));
    }
  }
}

TEST_CASE("PredPatt arguments must coincide with a link span") {
  AnnotatedSentence s = ArgumentFanout(2);
  s.links[1].end = 4;  // "Sara book" no longer matches the "Sara" subtree
  CHECK(ExtractPredPatt(s).empty());
}

TEST_CASE("PredPatt keeps auxiliaries and negation in the predicate") {
  AnnotatedSentence s = MakeSentence(
      "n", {"Ali", "has", "not", "visited", "Tehran"},
      {"PROPN", "AUX", "PART", "VERB", "PROPN"}, {4, 4, 4, 0, 4},
      {"nsubj", "aux", "neg", "root", "obj"});
  AddLink(&s, 0, 1, "fkg:Ali");
  AddLink(&s, 4, 5, "fkg:Tehran");
  std::vector<CandidateTriple> out = ExtractPredPatt(s);
  REQUIRE(out.size() == 2);
  CHECK(out[0].predicate == Predicate::Raw("has not visited"));
}

TEST_CASE("ambiguous arguments expand into a scaled cross product") {
  AnnotatedSentence s = ArgumentFanout(2);
  s.links[0].confidence = 0.5;
  AddLink(&s, 0, 1, "fkg:Ali2", 0.5);
  AddLink(&s, 2, 3, "fkg:Sara2", 0.25);
  s.links[1].confidence = 0.75;
  std::vector<CandidateTriple> out = ExtractPredPatt(s);
  CHECK(out.size() == 8);
  double total = 0.0;
  for (const CandidateTriple &t : out) total += t.confidence;
  // Each ordered direction sums to 1/2 times the total link mass (1 * 1).
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("auxiliary and compound verbs do not head predicates") {
  AnnotatedSentence s = MakeSentence("a", {"Ali", "was", "born", "in", "Tehran"},
                                     {"PROPN", "VERB", "VERB", "ADP", "PROPN"},
                                     {3, 3, 0, 5, 3},
                                     {"nsubj:pass", "aux:pass", "root", "case", "obl"});
  DependencyTree tree(s);
  ExtractorConfig config;
  CHECK_FALSE(IsPredicateVerb(s, tree, 1, config));
  CHECK(IsPredicateVerb(s, tree, 2, config));
  CHECK_FALSE(IsPredicateVerb(s, tree, 0, config));
  CHECK(CompoundVerbPhrases(s, config) == std::vector<std::string>{"born"});
}

TEST_CASE("PSIE pairs subjects with objects under the compound verb") {
  AnnotatedSentence s = MakeSentence(
      "p", {"Ali", "set", "up", "Acme", "."}, {"PROPN", "VERB", "ADP", "PROPN", "PUNCT"},
      {2, 0, 2, 2, 2}, {"nsubj", "root", "compound:prt", "obj", "punct"});
  AddLink(&s, 0, 1, "fkg:Ali");
  AddLink(&s, 3, 4, "fkg:Acme", 0.5);
  AddLink(&s, 3, 4, "fkg:Acme2", 0.5);
  std::vector<CandidateTriple> out = ExtractPsie(s);
  REQUIRE(out.size() == 2);
  for (const CandidateTriple &t : out) {
    CHECK(t.subject == "fkg:Ali");
    CHECK(t.predicate == Predicate::Raw("set up"));
    CHECK(t.confidence == doctest::Approx(0.4));
    CHECK(t.extractor == "psie");
  }
  CHECK(CompoundVerbPhrases(s, {}) == std::vector<std::string>{"set up"});

  s.deps[3].relation = "obl";  // no object left
  CHECK(ExtractPsie(s).empty());
}

// ---------------------------------------------------------------------------
// Dependency patterns.

TEST_CASE("mining recovers planted keys with exact supports") {
  std::mt19937 rng(7);
  std::vector<AnnotatedSentence> corpus;
  for (int i = 0; i < 200; ++i) {
    corpus.push_back(
        fixtures::ShapedSentence(static_cast<int>(rng() % fixtures::kShapes), "s" + std::to_string(i), rng));
  }
  std::map<PatternKey, int> oracle;
  for (const AnnotatedSentence &s : corpus) {
    PatternKey key;
    for (int t = 0; t < s.size(); ++t) {
      key.push_back({s.pos[t], s.deps[t].head, s.deps[t].relation});
    }
    ++oracle[key];
  }
  REQUIRE(oracle.size() == 10);

  std::vector<DepPattern> mined = MineDependencyPatterns(corpus, 1);
  REQUIRE(mined.size() == 10);
  for (size_t i = 0; i < mined.size(); ++i) {
    CHECK(mined[i].support == oracle.at(mined[i].key));
    CHECK_FALSE(mined[i].annotated());
    if (i > 0) CHECK(mined[i - 1].support >= mined[i].support);
  }
  const int threshold = 20;
  size_t frequent = 0;
  for (const auto &[key, count] : oracle) frequent += count >= threshold;
  CHECK(MineDependencyPatterns(corpus, threshold).size() == frequent);
}

TEST_CASE("word substitution leaves extracted role positions unchanged") {
  std::mt19937 rng(11);
  for (int shape = 0; shape < fixtures::kShapes; ++shape) {
    AnnotatedSentence base = fixtures::ShapedSentence(shape, "b", rng);
    DepPattern pattern;
    pattern.key = PatternKeyOf(base);
    const int object = fixtures::ShapedObjectPosition(base);
    pattern.subject = {1};
    pattern.object = {object};
    pattern.predicate = {2};
    pattern.support = 1;
    std::vector<DepPattern> bank = {pattern};
    for (int variant = 0; variant < 5; ++variant) {
      AnnotatedSentence s = fixtures::ShapedSentence(shape, "v" + std::to_string(variant), rng);
      REQUIRE(PatternKeyOf(s) == pattern.key);
      // Entities are named after their position, not their words.
      for (int t = 0; t < s.size(); ++t) AddLink(&s, t, t + 1, "pos" + std::to_string(t));
      std::vector<CandidateTriple> out = ExtractDepPattern(s, bank);
      REQUIRE(out.size() == 1);
      CHECK(out[0].subject == "pos0");
      CHECK(out[0].object == "pos" + std::to_string(object - 1));
      CHECK(out[0].predicate == Predicate::Raw(s.tokens[1]));
      CHECK(out[0].confidence == 1.0);
    }
  }
}

TEST_CASE("role arguments use the tightest covering link") {
  AnnotatedSentence s = MakeSentence("t", {"New", "York", "hosts", "UN"},
                                     {"PROPN", "PROPN", "VERB", "PROPN"}, {2, 3, 0, 3},
                                     {"compound", "nsubj", "root", "obj"});
  AddLink(&s, 0, 2, "fkg:NewYork");
  AddLink(&s, 0, 3, "fkg:Wide");
  AddLink(&s, 1, 2, "fkg:York");
  AddLink(&s, 3, 4, "fkg:UN");
  DepPattern p{PatternKeyOf(s), {1, 2}, {4}, {3}, 1};
  std::vector<CandidateTriple> out = ExtractDepPattern(s, {p});
  REQUIRE(out.size() == 1);
  CHECK(out[0].subject == "fkg:NewYork");

  DepPattern unannotated{PatternKeyOf(s), {}, {}, {}, 1};
  CHECK(ExtractDepPattern(s, {unannotated}).empty());
}

TEST_CASE("pattern validation") {
  DepPattern p{{{"A", 0, "root"}, {"B", 1, "x"}}, {1}, {2}, {1}, 1};
  CHECK_NOTHROW(ValidatePattern(p));
  p.object = {1};
  CHECK_THROWS_AS(ValidatePattern(p), InvalidRecord);
  p.object = {3};
  CHECK_THROWS_AS(ValidatePattern(p), InvalidRecord);
}

// ---------------------------------------------------------------------------
// POS templates.

AnnotatedSentence Between() {
  // "Ali was born in the city Tehran , Iran"
  AnnotatedSentence s = MakeSentence(
      "r", {"Ali", "was", "born", "in", "the", "city", "Tehran", ",", "Iran"},
      {"PROPN", "AUX", "VERB", "ADP", "DET", "NOUN", "PROPN", "PUNCT", "PROPN"},
      {3, 3, 0, 7, 7, 7, 3, 9, 7},
      {"nsubj", "aux", "root", "case", "det", "compound", "obl", "punct", "appos"});
  AddLink(&s, 0, 1, "fkg:Ali");
  AddLink(&s, 6, 7, "fkg:Tehran");
  AddLink(&s, 8, 9, "fkg:Iran");
  return s;
}

TEST_CASE("template match lengths respect the limit") {
  AnnotatedSentence s = Between();
  ExtractorConfig config;
  CHECK(RelationTemplate("V").MatchLengths(s, 2, 6, config) == std::vector<int>{1});
  CHECK(RelationTemplate("V P").MatchLengths(s, 2, 6, config) == std::vector<int>{2});
  CHECK(RelationTemplate("V W* P").MatchLengths(s, 2, 6, config) == std::vector<int>{2});
  CHECK(RelationTemplate("V P W*").MatchLengths(s, 2, 6, config) ==
        std::vector<int>{2, 3, 4});
  CHECK(RelationTemplate("V P W*").MatchLengths(s, 2, 4, config) == std::vector<int>{2});
  CHECK(RelationTemplate("P").MatchLengths(s, 2, 6, config).empty());
  CHECK_THROWS_AS(RelationTemplate("X"), std::invalid_argument);
  CHECK_THROWS_AS(RelationTemplate("V**"), std::invalid_argument);
  CHECK_THROWS_AS(RelationTemplate(" "), std::invalid_argument);
}

TEST_CASE("RePersian takes the longest phrase between consecutive mentions") {
  std::vector<CandidateTriple> out =
      ExtractRePersian(Between(), {RelationTemplate("V"), RelationTemplate("V P W*")});
  REQUIRE(out.size() == 1);
  CHECK(out[0].subject == "fkg:Ali");
  CHECK(out[0].object == "fkg:Tehran");
  CHECK(out[0].predicate == Predicate::Raw("born in the city"));
  CHECK(out[0].confidence == doctest::Approx(0.7));
  CHECK(ExtractRePersian(Between(), {RelationTemplate("P")}).empty());
}

// ---------------------------------------------------------------------------
// Token-pattern rules.

TEST_CASE("token rules emit IRI triples for captures on link spans") {
  KbSnapshot kb;
  kb.predicates = {"fkgo:birthPlace"};
  std::vector<TokenPatternRule> rules = {CompileTokenPattern(
      "rule born -> fkgo:birthPlace : (SUBJ: pos:PROPN+) \"was\" \"born\" . (OBJ: pos:PROPN)",
      kb)};
  AnnotatedSentence s = Between();
  s.pos[1] = "AUX";
  std::vector<CandidateTriple> out = ExtractTokenPatterns(s, rules);
  CHECK(out.empty());  // "in" is followed by "the", not a proper noun

  s = MakeSentence("k", {"Ali", "was", "born", "in", "Tehran", "Sara", "was", "born", "in", "Qom"},
                   std::vector<std::string>(10, "PROPN"), {0, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                   std::vector<std::string>(10, "dep"));
  for (int t : {1, 2, 3, 6, 7, 8}) s.pos[t] = "X";
  AddLink(&s, 0, 1, "fkg:Ali");
  AddLink(&s, 4, 5, "fkg:Tehran");
  AddLink(&s, 5, 6, "fkg:Sara");
  AddLink(&s, 9, 10, "fkg:Qom", 0.5);
  out = ExtractTokenPatterns(s, rules);
  REQUIRE(out.size() == 2);
  CHECK(out[0].subject == "fkg:Ali");
  CHECK(out[0].object == "fkg:Tehran");
  CHECK(out[0].predicate == Predicate::Iri("fkgo:birthPlace"));
  CHECK(out[0].confidence == doctest::Approx(0.9));
  CHECK(out[1].subject == "fkg:Sara");
  CHECK(out[1].confidence == doctest::Approx(0.45));
}

}  // namespace
}  // namespace kbp
