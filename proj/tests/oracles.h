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

// Brute-force reference computations written directly from the
// definitions, without sharing code with the library.

#ifndef KBP_TESTS_ORACLES_H_
#define KBP_TESTS_ORACLES_H_

#include <cctype>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kbp/core.h"
#include "kbp/distant_supervision.h"

namespace kbp::oracle {

using Key = std::tuple<std::string, std::string, std::string>;  // s, p, o

inline Key KeyOf(const CandidateTriple &t) {
  return {t.subject, t.predicate.value, t.object};
}

// Keys accepted by the two-condition gate: two distinct extractors, or a
// single extraction with confidence >= threshold.
inline std::set<Key> FusionAccepted(const std::vector<CandidateTriple> &triples,
                                    double threshold) {
  std::set<Key> keys;
  for (const CandidateTriple &t : triples) keys.insert(KeyOf(t));
  std::set<Key> accepted;
  for (const Key &k : keys) {
    std::set<std::string> extractors;
    bool confident = false;
    for (const CandidateTriple &t : triples) {
      if (KeyOf(t) != k) continue;
      extractors.insert(t.extractor);
      confident = confident || t.confidence >= threshold;
    }
    if (extractors.size() >= 2 || confident) accepted.insert(k);
  }
  return accepted;
}

struct Counts {
  long triples = 0;
  long correct = 0;
  long wrong = 0;
  long oso = 0;
  std::set<std::string> recalled;
};

// gold: sentence id -> (subject, predicate IRI, object).
inline Counts Classify(const std::vector<CandidateTriple> &triples,
                       const std::map<std::string, Key> &gold) {
  Counts c;
  for (const CandidateTriple &t : triples) {
    const auto &[gs, gp, go] = gold.at(t.sentence_id);
    ++c.triples;
    if (t.subject == gs && t.object == go) {
      if (t.predicate.is_iri() && t.predicate.value == gp) {
        ++c.correct;
        c.recalled.insert(t.sentence_id);
      } else {
        ++c.wrong;
      }
    } else {
      ++c.oso;
    }
  }
  return c;
}

// Precision, recall over distinct recalled sentences, and F1.
inline std::tuple<double, double, double> Prf(const Counts &c, long gold_size) {
  const double p = c.correct + c.wrong > 0
                       ? static_cast<double>(c.correct) / (c.correct + c.wrong)
                       : 0.0;
  const double r = static_cast<double>(c.recalled.size()) / gold_size;
  const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  return {p, r, f};
}

// Sweep row recomputed from scratch: the accepted keys are expanded into
// one candidate per distinct (key, sentence) before classification.
inline std::tuple<double, double, double, long> SweepRow(
    const std::vector<CandidateTriple> &triples, const std::map<std::string, Key> &gold,
    double threshold) {
  const std::set<Key> accepted = FusionAccepted(triples, threshold);
  std::set<std::pair<Key, std::string>> seen;
  std::vector<CandidateTriple> expanded;
  for (const CandidateTriple &t : triples) {
    if (!accepted.count(KeyOf(t)) || !seen.insert({KeyOf(t), t.sentence_id}).second) continue;
    CandidateTriple e = t;
    e.extractor = "fusion";
    expanded.push_back(e);
  }
  auto [p, r, f] = Prf(Classify(expanded, gold), static_cast<long>(gold.size()));
  return {p, r, f, static_cast<long>(accepted.size())};
}

// Shared distinct keys between every pair of extractors.
inline std::map<std::pair<std::string, std::string>, long> CommonMatrix(
    const std::vector<CandidateTriple> &triples) {
  std::map<std::string, std::set<Key>> keys;
  for (const CandidateTriple &t : triples) {
    Key k = KeyOf(t);
    keys[t.extractor].insert(k);
  }
  std::map<std::pair<std::string, std::string>, long> out;
  for (const auto &[a, ka] : keys) {
    for (const auto &[b, kb] : keys) {
      long shared = 0;
      if (a != b) {
        for (const Key &k : ka) shared += kb.count(k);
      }
      out[{a, b}] = shared;
    }
  }
  return out;
}

// Step-two canonicalization from scratch: every KB predicate with
// statistics is scored on distinct lowercased tokens plus weighted verb
// phrases; the highest score wins, ties to the smaller IRI. Returns the
// predicate and score, or an empty predicate when nothing qualifies.
// Tokens must be ASCII and the sentence must have one verb phrase.
inline std::pair<std::string, int> BestPredicate(
    const PredicateStats &stats, const std::set<std::string> &kb_predicates, const std::vector<std::string> &tokens,
    const std::string &verb_phrase, int verb_weight, int min_score) {
  auto lower = [](std::string w) {
    for (char &c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return w;
  };
  std::set<std::string> words;
  for (const std::string &w : tokens) words.insert(lower(w));
  std::string best;
  int best_score = -1;
  for (const auto &[predicate, profile] : stats) {
    if (!kb_predicates.count(predicate)) continue;
    int score = 0;
    for (const std::string &w : words) score += static_cast<int>(profile.frequent_tokens.count(w));
    score += verb_weight * static_cast<int>(profile.compound_verbs.count(lower(verb_phrase)));
    if (score > best_score) best = predicate, best_score = score;
  }
  if (best.empty() || best_score < min_score) return {"", 0};
  return {best, best_score};
}

struct Rule {
  Predicate antecedent;
  Predicate consequent;
  double confidence;
  int support;
};

// Every ordered predicate pair scored over distinct (subject, object)
// pairs. Raw predicates are keyed by their normalized phrase. Sorted by
// antecedent, then consequent.
inline std::vector<Rule> ImplicationRules(const std::vector<CandidateTriple> &triples,
                                          int min_support, double min_confidence) {
  std::map<Predicate, std::set<std::pair<std::string, std::string>>> pairs;
  for (const CandidateTriple &t : triples) {
    pairs[TripleIdentity(t).predicate].insert({t.subject, t.object});
  }
  std::vector<Rule> rules;
  for (const auto &[a, pa] : pairs) {
    for (const auto &[b, pb] : pairs) {
      if (a == b) continue;
      int shared = 0;
      for (const auto &so : pa) shared += static_cast<int>(pb.count(so));
      const double confidence = static_cast<double>(shared) / pa.size();
      if (shared >= min_support && confidence >= min_confidence) {
        rules.push_back({a, b, confidence, shared});
      }
    }
  }
  return rules;
}

// Canonical triples over a small entity and predicate space so that keys
// collide across extractors. Confidences sit on a 0.05 grid.
inline std::vector<CandidateTriple> RandomCanonicalTriples(std::mt19937 &rng, int count,
                                                           int extractors,
                                                           int sentences) {
  std::vector<CandidateTriple> out;
  for (int i = 0; i < count; ++i) {
    CandidateTriple t;
    t.subject = "e" + std::to_string(rng() % 12);
    t.object = "e" + std::to_string(rng() % 12);
    t.predicate = Predicate::Iri("p:" + std::to_string(rng() % 4));
    t.extractor = "x" + std::to_string(rng() % extractors);
    t.confidence = static_cast<double>(rng() % 21) / 20.0;
    t.sentence_id = "s" + std::to_string(rng() % sentences);
    out.push_back(t);
  }
  return out;
}

}  // namespace kbp::oracle

#endif  // KBP_TESTS_ORACLES_H_
