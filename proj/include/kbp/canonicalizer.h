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

// Mapping of plain-text predicates onto ontology predicates.
//
// Canonicalize runs two steps. A phrase listed in the KB mapping table is
// replaced by its mapped predicate with the confidence unchanged; only
// when the table has no entry are the sentence tokens and compound verbs
// scored against the distant-supervision statistics. Triples that neither
// step can place are dropped.
//
// The rule-mining baseline mines single-atom implications P1 => P2 between
// predicates sharing (subject, object) pairs, clusters predicates linked by
// implications in both directions, and turns clusters that mix raw phrases
// with ontology predicates into mapping-table rows.

#ifndef KBP_CANONICALIZER_H_
#define KBP_CANONICALIZER_H_

#include <optional>
#include <string>
#include <vector>

#include "kbp/core.h"
#include "kbp/distant_supervision.h"

namespace kbp {

struct CanonicalizerOptions {
  int verb_weight = 1;
  int min_score = 1;
  ExtractorConfig extractor;
};

std::optional<CandidateTriple> Canonicalize(
    const CandidateTriple &triple, const KbSnapshot &kb,
    const PredicateStats &stats, const AnnotatedSentence &sentence,
    const CanonicalizerOptions &options = {});

struct ImplicationRule {
  Predicate antecedent;
  Predicate consequent;
  double confidence = 0.0;
  int support = 0;

  bool operator==(const ImplicationRule &) const = default;
};

// Rules over predicates keyed by triple identity (raw phrases normalized).
// Sorted by antecedent, then consequent.
std::vector<ImplicationRule> MineImplicationRules(
    const std::vector<CandidateTriple> &triples, int min_support,
    double min_confidence);

struct PredicateCluster {
  enum class Kind { kMapped, kOntologyOnly, kNeedsExpert };

  std::vector<Predicate> members;  // sorted
  Kind kind = Kind::kNeedsExpert;
  std::string representative;      // empty unless kMapped

  bool operator==(const PredicateCluster &) const = default;
};

struct MappingRow {
  std::string phrase;
  std::string iri;  // empty when an expert has to assign one
  bool needs_expert = false;

  bool operator==(const MappingRow &) const = default;
};

struct Clustering {
  std::vector<PredicateCluster> clusters;
  std::vector<MappingRow> rows;
};

// Connected components of the graph whose edges are predicate pairs with
// rules in both directions. The representative of a cluster is its
// ontology predicate with the largest summed support over the cluster's
// bidirectional edges, ties to the smaller IRI.
Clustering ClusterPredicates(const std::vector<ImplicationRule> &rules);

const char *ClusterKindName(PredicateCluster::Kind kind);

}  // namespace kbp

#endif  // KBP_CANONICALIZER_H_
