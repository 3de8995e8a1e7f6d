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

#include "kbp/core.h"

#include "kbp/text.h"

namespace kbp {

void ValidateSentence(const AnnotatedSentence &s) {
  const size_t n = s.tokens.size();
  if (n == 0) throw InvalidRecord("tokens", "sentence has no tokens");
  if (s.pos.size() != n) {
    throw InvalidRecord("pos", "expected " + std::to_string(n) +
                                   " tags, got " + std::to_string(s.pos.size()));
  }
  if (s.ner.size() != n) {
    throw InvalidRecord("ner", "expected " + std::to_string(n) +
                                   " tags, got " + std::to_string(s.ner.size()));
  }
  if (s.deps.size() != n) {
    throw InvalidRecord("dep", "expected " + std::to_string(n) +
                                   " arcs, got " + std::to_string(s.deps.size()));
  }
  int roots = 0;
  for (size_t i = 0; i < n; ++i) {
    const int head = s.deps[i].head;
    if (head < 0 || head > static_cast<int>(n)) {
      throw InvalidRecord("dep", "head " + std::to_string(head) +
                                     " out of range at token " +
                                     std::to_string(i + 1));
    }
    if (head == static_cast<int>(i) + 1) {
      throw InvalidRecord("dep", "token " + std::to_string(i + 1) +
                                     " is its own head");
    }
    if (head == 0) ++roots;
  }
  if (roots != 1) {
    throw InvalidRecord("dep", "expected exactly one root, found " +
                                   std::to_string(roots));
  }
  for (const EntityLink &link : s.links) {
    if (link.start < 0 || link.start >= link.end ||
        link.end > static_cast<int>(n)) {
      throw InvalidRecord("links", "span [" + std::to_string(link.start) +
                                       "," + std::to_string(link.end) +
                                       ") out of range");
    }
    if (!(link.confidence >= 0.0 && link.confidence <= 1.0)) {
      throw InvalidRecord("links", "confidence outside [0,1]");
    }
    if (link.entity.empty()) throw InvalidRecord("links", "empty entity");
  }
}

void ValidateTriple(const CandidateTriple &t) {
  if (t.subject.empty()) throw InvalidRecord("subject", "empty");
  if (t.object.empty()) throw InvalidRecord("object", "empty");
  if (t.predicate.value.empty()) throw InvalidRecord("predicate", "empty");
  if (!(t.confidence >= 0.0 && t.confidence <= 1.0)) {
    throw InvalidRecord("confidence", "outside [0,1]");
  }
}

std::string TripleKey::ToString() const {
  std::string out = subject;
  out += predicate.is_iri() ? " <" : " \"";
  out += predicate.value;
  out += predicate.is_iri() ? "> " : "\" ";
  out += object;
  return out;
}

TripleKey TripleIdentity(const CandidateTriple &t) {
  TripleKey key{t.subject, t.predicate, t.object};
  if (key.predicate.is_raw()) {
    key.predicate.value = NormalizePhrase(key.predicate.value);
  }
  return key;
}

const std::string *KbSnapshot::LookupMapping(const std::string &phrase) const {
  auto it = mapping_table.find(NormalizePhrase(phrase));
  return it == mapping_table.end() ? nullptr : &it->second;
}

void ValidateSnapshot(const KbSnapshot &kb) {
  for (const Fact &f : kb.facts) {
    if (!kb.HasPredicate(f.predicate)) {
      throw InvalidRecord("facts", "unknown predicate " + f.predicate);
    }
  }
  for (const auto &[phrase, iri] : kb.mapping_table) {
    if (!kb.HasPredicate(iri)) {
      throw InvalidRecord("mapping", "unknown predicate " + iri +
                                         " for phrase '" + phrase + "'");
    }
  }
}

void ValidateGold(const GoldRecord &gold, const KbSnapshot *kb) {
  ValidateSentence(gold.sentence);
  if (gold.subject.empty()) throw InvalidRecord("subject", "empty");
  if (gold.object.empty()) throw InvalidRecord("object", "empty");
  if (gold.predicate.empty()) throw InvalidRecord("predicate", "empty");
  if (kb != nullptr && !kb->HasPredicate(gold.predicate)) {
    throw InvalidRecord("predicate", "unknown predicate " + gold.predicate);
  }
}

}  // namespace kbp
