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

// Synthetic fixtures shared by the unit tests and the acceptance checks.

#ifndef KBP_TESTS_FIXTURES_H_
#define KBP_TESTS_FIXTURES_H_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kbp/core.h"
#include "kbp/distant_supervision.h"
#include "test_util.h"

namespace kbp::fixtures {

// Published per-module counts over a 22015-sentence gold corpus with
// the reported metrics and triples-per-sentence ratios.
inline constexpr long kPublishedGoldSize = 22015;

struct PublishedRow {
  long corrects, wrongs;
  double precision, recall, f1;
  long triples;
  double triples_per_sentence;
};

inline const std::vector<PublishedRow> &PublishedRows() {
  static const std::vector<PublishedRow> rows = {
      {71, 24, 0.7474, 0.0032, 0.0064, 418, 0.019},
      {4632, 13113, 0.2610, 0.2104, 0.2330, 17745, 0.806},
      {13, 82, 0.1368, 0.0006, 0.0012, 66384, 3.0154},
      {51, 241, 0.1747, 0.0023, 0.0046, 7865, 0.3573},
      {3306, 917, 0.7829, 0.1502, 0.2520, 37351, 1.6966},
      {94, 484, 0.1626, 0.0043, 0.0083, 44809, 2.0354}};
  return rows;
}

// "Ali gave Sara book in Tehran": four argument children of "gave", the
// first `linked` of which carry an entity link.
inline AnnotatedSentence ArgumentFanout(int linked) {
  AnnotatedSentence s = testing::MakeSentence(
      "g", {"Ali", "gave", "Sara", "book", "in", "Tehran"},
      {"PROPN", "VERB", "PROPN", "NOUN", "ADP", "PROPN"}, {2, 0, 2, 2, 6, 2},
      {"nsubj", "root", "iobj", "obj", "case", "obl"});
  const std::vector<std::pair<int, std::string>> args = {
      {0, "fkg:Ali"}, {2, "fkg:Sara"}, {3, "fkg:Book"}, {5, "fkg:Tehran"}};
  for (int i = 0; i < linked; ++i) {
    testing::AddLink(&s, args[i].first, args[i].first + 1, args[i].second);
  }
  return s;
}

inline constexpr int kShapes = 10;

// One of ten tree shapes over "E1 verb ... E2" with random words. The shape
// fixes adverb count, an optional case marker and trailing punctuation.
inline AnnotatedSentence ShapedSentence(int shape, const std::string &id, std::mt19937 &rng) {
  static const std::vector<std::string> nouns = {"Ali", "Sara", "Reza", "Tehran", "Qom"};
  static const std::vector<std::string> verbs = {"saw", "met", "left", "found"};
  auto word = [&](const std::vector<std::string> &v) { return v[rng() % v.size()]; };
  std::vector<std::string> tokens = {word(nouns), word(verbs)};
  std::vector<std::string> pos = {"PROPN", "VERB"};
  std::vector<int> heads = {2, 0};
  std::vector<std::string> rels = {"nsubj", "root"};
  auto push = [&](std::string t, std::string p, int h, std::string r) {
    tokens.push_back(std::move(t));
    pos.push_back(std::move(p));
    heads.push_back(h);
    rels.push_back(std::move(r));
  };
  for (int i = 0; i < shape % 3; ++i) push("very", "ADV", 2, "advmod");
  const bool oblique = shape / 3 % 2 == 1;
  // The case marker attaches to the noun that follows it.
  if (oblique) push("in", "ADP", static_cast<int>(tokens.size()) + 2, "case");
  push(word(nouns), "PROPN", 2, oblique ? "obl" : "obj");
  if (shape >= 6) push(shape == 9 ? "!" : ".", "PUNCT", 2, shape == 9 ? "discourse" : "punct");
  return testing::MakeSentence(id, tokens, pos, heads, rels);
}

// 1-based position of the second noun of a shaped sentence.
inline int ShapedObjectPosition(const AnnotatedSentence &s) {
  return s.pos.back() == "PUNCT" ? s.size() - 1 : s.size();
}

// `total` triples with a planted synonymous pair: raw "led by" and
// p:leader share 40 of their 50 (subject, object) pairs each. p:capital
// and p:seat share all 20 of theirs. The rest is noise over a large
// entity space.
inline std::vector<CandidateTriple> PlantedSynonymTriples(std::mt19937 &rng, size_t total) {
  std::vector<CandidateTriple> triples;
  auto add = [&](const std::string &s, const Predicate &p, const std::string &o) {
    triples.push_back({s, p, o, "x", 0.5, "s"});
  };
  for (int i = 0; i < 40; ++i) {
    const std::string s = "c" + std::to_string(i), o = "l" + std::to_string(i);
    add(s, Predicate::Raw("Led  By"), o);
    add(s, Predicate::Iri("p:leader"), o);
  }
  for (int i = 40; i < 50; ++i) {
    add("c" + std::to_string(i), Predicate::Raw("led by"), "x" + std::to_string(i));
    add("c" + std::to_string(i), Predicate::Iri("p:leader"), "y" + std::to_string(i));
  }
  for (int i = 0; i < 20; ++i) {
    add("k" + std::to_string(i), Predicate::Iri("p:capital"), "m" + std::to_string(i));
    add("k" + std::to_string(i), Predicate::Iri("p:seat"), "m" + std::to_string(i));
  }
  const std::vector<Predicate> noise = {Predicate::Raw("met"), Predicate::Raw("saw"),
                                        Predicate::Iri("p:visit"), Predicate::Iri("p:birth")};
  auto entity = [&] { return "e" + std::to_string(rng() % 400); };
  while (triples.size() < total) add(entity(), noise[rng() % noise.size()], entity());
  return triples;
}

// A flat sentence whose first token is the root verb.
inline AnnotatedSentence VerbFirst(const std::vector<std::string> &tokens) {
  std::vector<int> heads(tokens.size(), 1);
  std::vector<std::string> pos(tokens.size(), "NOUN"), rels(tokens.size(), "dep");
  heads[0] = 0;
  pos[0] = "VERB";
  rels[0] = "root";
  return testing::MakeSentence("s", tokens, pos, heads, rels);
}

// Random step-two canonicalization fixture: statistics over five
// predicates (one outside the KB), a verb-first sentence and weights.
struct ScoringFixture {
  std::vector<std::string> tokens;
  PredicateStats stats;
  int verb_weight = 1;
  int min_score = 1;
};

inline const std::vector<std::string> &ScoringPredicates() {
  static const std::vector<std::string> predicates = {"p:birth", "p:capital", "p:leader",
                                                      "p:visit", "p:outside"};
  return predicates;
}

inline KbSnapshot ScoringKb() {
  KbSnapshot kb;
  kb.predicates = {"p:birth", "p:capital", "p:leader", "p:visit"};
  kb.mapping_table = {{"was born in", "p:birth"}};
  return kb;
}

inline ScoringFixture RandomScoringFixture(std::mt19937 &rng) {
  static const std::vector<std::string> vocab = {"capital", "born", "leads", "visited",
                                                 "city",    "the",  "set",   "up"};
  ScoringFixture f;
  for (const std::string &p : ScoringPredicates()) {
    if (rng() % 4 == 0) continue;
    PredicateProfile &profile = f.stats[p];
    for (const std::string &w : vocab) {
      if (rng() % 3 == 0) profile.frequent_tokens[w] = 2;
      if (rng() % 6 == 0) profile.compound_verbs[w] = 1;
    }
  }
  f.tokens.resize(1 + rng() % 6);
  for (std::string &w : f.tokens) {
    w = vocab[rng() % vocab.size()];
    if (rng() % 4 == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');  // case folding matters
  }
  f.verb_weight = 1 + static_cast<int>(rng() % 3);
  f.min_score = 1 + static_cast<int>(rng() % 2);
  return f;
}

}  // namespace kbp::fixtures

#endif  // KBP_TESTS_FIXTURES_H_
