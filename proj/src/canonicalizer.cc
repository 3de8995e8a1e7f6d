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

#include "kbp/canonicalizer.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace kbp {

std::optional<CandidateTriple> Canonicalize(const CandidateTriple &triple,
                                            const KbSnapshot &kb,
                                            const PredicateStats &stats,
                                            const AnnotatedSentence &sentence,
                                            const CanonicalizerOptions &options) {
  if (triple.predicate.is_iri()) {
    if (!kb.HasPredicate(triple.predicate.value)) return std::nullopt;
    return triple;
  }

  if (const std::string *iri = kb.LookupMapping(triple.predicate.value)) {
    CandidateTriple out = triple;
    out.predicate = Predicate::Iri(*iri);
    return out;
  }

  PredicateStats known;
  for (const auto &[predicate, profile] : stats) {
    if (kb.HasPredicate(predicate)) known.emplace(predicate, profile);
  }
  OverlapScorer scorer{1, options.verb_weight, options.extractor};
  const auto scores = scorer.Score(sentence, known);
  const auto *best = ArgMax(scores);
  if (best == nullptr || best->second < options.min_score) return std::nullopt;

  const double score = best->second;
  CandidateTriple out = triple;
  out.predicate = Predicate::Iri(best->first);
  out.confidence = triple.confidence * score / (score + 1.0);
  return out;
}

std::vector<ImplicationRule> MineImplicationRules(
    const std::vector<CandidateTriple> &triples, int min_support,
    double min_confidence) {
  if (min_support < 1) throw std::invalid_argument("min_support must be >= 1");

  using Pair = std::pair<std::string, std::string>;
  std::map<Predicate, std::set<Pair>> pairs_of;
  std::map<Pair, std::set<Predicate>> predicates_of;
  for (const CandidateTriple &t : triples) {
    TripleKey key = TripleIdentity(t);
    Pair so{key.subject, key.object};
    pairs_of[key.predicate].insert(so);
    predicates_of[so].insert(key.predicate);
  }

  std::map<std::pair<Predicate, Predicate>, int> shared;
  for (const auto &[so, predicates] : predicates_of) {
    for (const Predicate &a : predicates) {
      for (const Predicate &b : predicates) {
        if (a != b) ++shared[{a, b}];
      }
    }
  }

  std::vector<ImplicationRule> rules;
  for (const auto &[ab, support] : shared) {
    if (support < min_support) continue;
    const double confidence =
        static_cast<double>(support) / pairs_of[ab.first].size();
    if (confidence < min_confidence) continue;
    rules.push_back({ab.first, ab.second, confidence, support});
  }
  return rules;
}

const char *ClusterKindName(PredicateCluster::Kind kind) {
  switch (kind) {
    case PredicateCluster::Kind::kMapped: return "mapped";
    case PredicateCluster::Kind::kOntologyOnly: return "ontology_only";
    case PredicateCluster::Kind::kNeedsExpert: return "needs_expert";
  }
  return "unknown";
}

namespace {

class DisjointSets {
 public:
  const Predicate &Find(const Predicate &p) {
    auto it = parent_.try_emplace(p, p).first;
    if (it->second == p) return it->first;
    const Predicate &root = Find(it->second);
    it->second = root;
    return root;
  }

  void Union(const Predicate &a, const Predicate &b) {
    Predicate ra = Find(a), rb = Find(b);
    if (ra == rb) return;
    // Smaller predicate becomes the root; the result does not depend on
    // the order of unions.
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }

 private:
  std::map<Predicate, Predicate> parent_;
};

}  // namespace

Clustering ClusterPredicates(const std::vector<ImplicationRule> &rules) {
  std::map<std::pair<Predicate, Predicate>, int> support;
  for (const ImplicationRule &r : rules) {
    if (r.antecedent == r.consequent) continue;
    auto &s = support[{r.antecedent, r.consequent}];
    s = std::max(s, r.support);
  }

  DisjointSets sets;
  std::map<Predicate, int> edge_support;
  for (const auto &[ab, s] : support) {
    const auto &[a, b] = ab;
    if (!(a < b)) continue;  // visit each unordered pair once
    if (!support.count({b, a})) continue;
    sets.Union(a, b);
    edge_support[a] += s;
    edge_support[b] += s;
  }

  std::map<Predicate, std::vector<Predicate>> components;
  for (const auto &[p, unused] : edge_support) {
    components[sets.Find(p)].push_back(p);
  }

  Clustering result;
  for (auto &[root, members] : components) {
    PredicateCluster cluster;
    cluster.members = members;  // already sorted: edge_support is ordered

    const Predicate *best = nullptr;
    bool has_raw = false;
    for (const Predicate &p : cluster.members) {
      if (p.is_raw()) {
        has_raw = true;
      } else if (best == nullptr || edge_support[p] > edge_support[*best]) {
        best = &p;
      }
    }

    if (best == nullptr) {
      cluster.kind = PredicateCluster::Kind::kNeedsExpert;
      for (const Predicate &p : cluster.members) {
        result.rows.push_back({p.value, "", true});
      }
    } else if (!has_raw) {
      cluster.kind = PredicateCluster::Kind::kOntologyOnly;
    } else {
      cluster.kind = PredicateCluster::Kind::kMapped;
      cluster.representative = best->value;
      for (const Predicate &p : cluster.members) {
        if (p.is_raw()) result.rows.push_back({p.value, best->value, false});
      }
    }
    result.clusters.push_back(std::move(cluster));
  }
  return result;
}

}  // namespace kbp
