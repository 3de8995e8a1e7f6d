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

// Shared domain types for the knowledge-base-population pipeline.

#ifndef KBP_CORE_H_
#define KBP_CORE_H_

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace kbp {

// Raised when a record violates one of the invariants of its type. The
// message names the offending field.
class InvalidRecord : public std::runtime_error {
 public:
  InvalidRecord(const std::string &field, const std::string &message)
      : std::runtime_error(field + ": " + message), field_(field) {}

  const std::string &field() const { return field_; }

 private:
  std::string field_;
};

// Head is a 1-based token index; 0 marks the root.
struct DependencyArc {
  int head = 0;
  std::string relation;

  bool operator==(const DependencyArc &) const = default;
};

// Half-open, 0-based token span [start, end) linked to a KB entity.
struct EntityLink {
  int start = 0;
  int end = 0;
  std::string entity;
  double confidence = 1.0;
  std::string entity_class;

  bool operator==(const EntityLink &) const = default;
  bool Covers(int token) const { return start <= token && token < end; }
  bool SameSpan(const EntityLink &other) const {
    return start == other.start && end == other.end;
  }
};

struct AnnotatedSentence {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<std::string> pos;
  std::vector<std::string> ner;
  std::vector<DependencyArc> deps;
  std::vector<EntityLink> links;

  int size() const { return static_cast<int>(tokens.size()); }
  bool operator==(const AnnotatedSentence &) const = default;
};

// Throws InvalidRecord when the sentence breaks a structural invariant:
// parallel annotation layers, a single root, valid heads and link spans.
void ValidateSentence(const AnnotatedSentence &sentence);

// A predicate is either a plain-text phrase taken from the sentence or an
// ontology predicate IRI.
struct Predicate {
  enum class Kind { kRaw, kIri };

  Kind kind = Kind::kRaw;
  std::string value;

  static Predicate Raw(std::string phrase) {
    return {Kind::kRaw, std::move(phrase)};
  }
  static Predicate Iri(std::string iri) { return {Kind::kIri, std::move(iri)}; }

  bool is_iri() const { return kind == Kind::kIri; }
  bool is_raw() const { return kind == Kind::kRaw; }

  auto operator<=>(const Predicate &) const = default;
  bool operator==(const Predicate &) const = default;
};

struct CandidateTriple {
  std::string subject;
  Predicate predicate;
  std::string object;
  std::string extractor;
  double confidence = 0.0;
  std::string sentence_id;

  bool operator==(const CandidateTriple &) const = default;
};

// Throws InvalidRecord for empty arguments or a confidence outside [0,1].
void ValidateTriple(const CandidateTriple &triple);

// Identity of a triple for fusion and comparison purposes. Provenance
// (extractor, confidence, sentence) is not part of the key; raw predicates
// are stored normalized.
struct TripleKey {
  std::string subject;
  Predicate predicate;
  std::string object;

  auto operator<=>(const TripleKey &) const = default;
  bool operator==(const TripleKey &) const = default;

  std::string ToString() const;
};

TripleKey TripleIdentity(const CandidateTriple &triple);

struct Fact {
  std::string subject;
  std::string predicate;
  std::string object;

  auto operator<=>(const Fact &) const = default;
  bool operator==(const Fact &) const = default;
};

struct KbEntity {
  std::string iri;
  std::vector<std::string> surface_forms;
  // Ontology class of the entity; optional.
  std::string entity_class;

  bool operator==(const KbEntity &) const = default;
};

struct KbSnapshot {
  std::vector<KbEntity> entities;
  std::set<std::string> predicates;
  std::set<Fact> facts;
  // Keys are normalized raw phrases.
  std::map<std::string, std::string> mapping_table;

  bool HasPredicate(const std::string &iri) const {
    return predicates.count(iri) > 0;
  }
  bool HasFact(const Fact &fact) const { return facts.count(fact) > 0; }

  // Returns the mapped ontology predicate for a raw phrase, or nullptr.
  const std::string *LookupMapping(const std::string &phrase) const;

  bool operator==(const KbSnapshot &) const = default;
};

// Throws InvalidRecord when facts or mapping rows use unknown predicates.
void ValidateSnapshot(const KbSnapshot &kb);

struct GoldRecord {
  AnnotatedSentence sentence;
  std::string subject;
  std::string object;
  std::string predicate;
  std::string subject_class;
  std::string object_class;

  TripleKey key() const {
    return {subject, Predicate::Iri(predicate), object};
  }
  bool operator==(const GoldRecord &) const = default;
};

// Validates the sentence and gold fields; when a snapshot is supplied the
// gold predicate must be part of its catalog.
void ValidateGold(const GoldRecord &gold, const KbSnapshot *kb = nullptr);

}  // namespace kbp

#endif  // KBP_CORE_H_
