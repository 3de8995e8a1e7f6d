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

// Relation and information extractors. Every extractor maps one linked
// sentence to candidate triples and depends on nothing but the sentence
// and the static resources it was constructed with.
//
// Arguments are only kept when their token span coincides with an entity
// link span. A span carrying k candidate entities expands into k triples
// whose confidence is the extractor confidence times the link confidence;
// if both arguments are ambiguous the full cross product is emitted.

#ifndef KBP_EXTRACTORS_H_
#define KBP_EXTRACTORS_H_

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kbp/core.h"
#include "kbp/dependency_tree.h"
#include "kbp/token_pattern.h"

namespace kbp {

inline constexpr std::string_view kPredPattId = "predpatt";
inline constexpr std::string_view kDepPatternId = "deppat";
inline constexpr std::string_view kPsieId = "psie";
inline constexpr std::string_view kRePersianId = "repersian";
inline constexpr std::string_view kTokenPatternId = "tokpat";
inline constexpr std::string_view kDistantId = "distant";

// Tag sets and base confidences shared by the extractors. Relation labels
// are compared on their base relation (the part before ':').
struct ExtractorConfig {
  double dep_pattern_confidence = 1.0;
  double psie_confidence = 0.8;
  double repersian_confidence = 0.7;
  double token_pattern_confidence = 0.9;

  std::set<std::string> verb_tags = {"VERB", "V"};
  std::set<std::string> adposition_tags = {"ADP", "P", "PREP", "POSTP"};
  std::set<std::string> punctuation_tags = {"PUNCT"};

  // Relations of verbs that are not predicate heads on their own.
  std::set<std::string> auxiliary_relations = {"aux", "cop"};
  // Core arguments of a predicate.
  std::set<std::string> argument_relations = {"nsubj", "csubj", "obj", "dobj",
                                              "iobj", "obl"};
  // Auxiliary and negation dependents that join the predicate phrase.
  std::set<std::string> predicate_relations = {"aux", "neg"};
  // Function words cut off an argument subtree.
  std::set<std::string> argument_excluded_relations = {"case", "punct", "mark",
                                                       "cc"};
  std::set<std::string> subject_relations = {"nsubj", "csubj"};
  std::set<std::string> object_relations = {"obj",   "dobj",  "iobj",
                                            "xcomp", "ccomp", "attr"};
  // Non-verbal parts of compound verbs.
  std::set<std::string> compound_relations = {"compound", "prt"};
};

// Interface shared by all extractor back-ends.
class Extractor {
 public:
  virtual ~Extractor() = default;

  virtual std::string id() const = 0;
  virtual std::vector<CandidateTriple> Extract(
      const AnnotatedSentence &sentence) const = 0;
};

// True when the token is a verb that heads its own predicate.
bool IsPredicateVerb(const AnnotatedSentence &sentence,
                     const DependencyTree &tree, int token,
                     const ExtractorConfig &config);

// Verb tokens plus their compound-relation dependents, joined in surface
// order, one phrase per predicate verb of the sentence.
std::vector<std::string> CompoundVerbPhrases(const AnnotatedSentence &sentence,
                                             const ExtractorConfig &config);

// Links whose span equals the given span, in link order.
std::vector<const EntityLink *> LinksWithSpan(const AnnotatedSentence &sentence,
                                              Span span);

// Cross product of subject and object candidates with confidences scaled
// by the link confidences.
void EmitExpanded(const std::vector<const EntityLink *> &subjects,
                  const Predicate &predicate,
                  const std::vector<const EntityLink *> &objects,
                  double confidence, std::string_view extractor,
                  const std::string &sentence_id,
                  std::vector<CandidateTriple> *out);

// ---------------------------------------------------------------------------
// PredPatt-style predicate/argument permutation.

// For every predicate verb with n >= 2 linked arguments, emits all
// n*(n-1) ordered argument pairs with confidence 1/(n*(n-1)).
std::vector<CandidateTriple> ExtractPredPatt(const AnnotatedSentence &sentence,
                                             const ExtractorConfig &config = {});

// ---------------------------------------------------------------------------
// Dependency patterns.

// One token of a dependency pattern: its POS tag, head index and relation.
struct PatternElement {
  std::string pos;
  int head = 0;
  std::string relation;

  auto operator<=>(const PatternElement &) const = default;
  bool operator==(const PatternElement &) const = default;
};

using PatternKey = std::vector<PatternElement>;

// Key of a sentence: the words are dropped, the tree shape is kept.
PatternKey PatternKeyOf(const AnnotatedSentence &sentence);

// A dependency pattern with optional expert annotation. Role positions are
// 1-based token indices.
struct DepPattern {
  PatternKey key;
  std::vector<int> subject;
  std::vector<int> object;
  std::vector<int> predicate;
  int support = 0;

  bool annotated() const {
    return !subject.empty() && !object.empty() && !predicate.empty();
  }
  bool operator==(const DepPattern &) const = default;
};

// Throws InvalidRecord for roles outside the key or overlapping
// subject/object positions.
void ValidatePattern(const DepPattern &pattern);

// Groups the corpus by pattern key and keeps keys with support >=
// min_support, sorted by descending support and then key.
std::vector<DepPattern> MineDependencyPatterns(
    const std::vector<AnnotatedSentence> &corpus, int min_support);

class DepPatternExtractor : public Extractor {
 public:
  explicit DepPatternExtractor(std::vector<DepPattern> bank,
                               ExtractorConfig config = {});

  std::string id() const override { return std::string(kDepPatternId); }
  std::vector<CandidateTriple> Extract(
      const AnnotatedSentence &sentence) const override;

 private:
  std::vector<DepPattern> bank_;
  std::map<PatternKey, std::vector<size_t>> index_;
  ExtractorConfig config_;
};

std::vector<CandidateTriple> ExtractDepPattern(
    const AnnotatedSentence &sentence, const std::vector<DepPattern> &bank,
    const ExtractorConfig &config = {});

// ---------------------------------------------------------------------------
// Verb-centred syntactic extraction.

std::vector<CandidateTriple> ExtractPsie(const AnnotatedSentence &sentence,
                                         const ExtractorConfig &config = {});

// ---------------------------------------------------------------------------
// POS-template relation phrases between entity mentions.

// A template is a space-separated sequence of POS classes with optional
// '?', '*' or '+' suffixes: V (verb), P (adposition), W (any other
// non-punctuation token). For example "V W* P".
class RelationTemplate {
 public:
  explicit RelationTemplate(std::string_view text);

  // Lengths of all matches starting at token `start` and ending at or
  // before `limit`.
  std::vector<int> MatchLengths(const AnnotatedSentence &sentence, int start,
                                int limit, const ExtractorConfig &config) const;

  const std::string &text() const { return text_; }

 private:
  struct Element {
    char symbol;
    int min;
    int max;  // -1: unbounded
  };

  std::string text_;
  std::vector<Element> elements_;
};

std::vector<RelationTemplate> DefaultRelationTemplates();

std::vector<CandidateTriple> ExtractRePersian(
    const AnnotatedSentence &sentence,
    const std::vector<RelationTemplate> &templates,
    const ExtractorConfig &config = {});

// ---------------------------------------------------------------------------
// Token-pattern rules.

std::vector<CandidateTriple> ExtractTokenPatterns(
    const AnnotatedSentence &sentence,
    const std::vector<TokenPatternRule> &rules,
    const ExtractorConfig &config = {});

// ---------------------------------------------------------------------------
// Extractor wrappers used by the pipeline.

class PredPattExtractor : public Extractor {
 public:
  explicit PredPattExtractor(ExtractorConfig config = {})
      : config_(std::move(config)) {}
  std::string id() const override { return std::string(kPredPattId); }
  std::vector<CandidateTriple> Extract(
      const AnnotatedSentence &sentence) const override {
    return ExtractPredPatt(sentence, config_);
  }

 private:
  ExtractorConfig config_;
};

class PsieExtractor : public Extractor {
 public:
  explicit PsieExtractor(ExtractorConfig config = {})
      : config_(std::move(config)) {}
  std::string id() const override { return std::string(kPsieId); }
  std::vector<CandidateTriple> Extract(
      const AnnotatedSentence &sentence) const override {
    return ExtractPsie(sentence, config_);
  }

 private:
  ExtractorConfig config_;
};

class RePersianExtractor : public Extractor {
 public:
  explicit RePersianExtractor(std::vector<RelationTemplate> templates,
                              ExtractorConfig config = {})
      : templates_(std::move(templates)), config_(std::move(config)) {}
  std::string id() const override { return std::string(kRePersianId); }
  std::vector<CandidateTriple> Extract(
      const AnnotatedSentence &sentence) const override {
    return ExtractRePersian(sentence, templates_, config_);
  }

 private:
  std::vector<RelationTemplate> templates_;
  ExtractorConfig config_;
};

class TokenPatternExtractor : public Extractor {
 public:
  explicit TokenPatternExtractor(std::vector<TokenPatternRule> rules,
                                 ExtractorConfig config = {})
      : rules_(std::move(rules)), config_(std::move(config)) {}
  std::string id() const override { return std::string(kTokenPatternId); }
  std::vector<CandidateTriple> Extract(
      const AnnotatedSentence &sentence) const override {
    return ExtractTokenPatterns(sentence, rules_, config_);
  }

 private:
  std::vector<TokenPatternRule> rules_;
  ExtractorConfig config_;
};

}  // namespace kbp

#endif  // KBP_EXTRACTORS_H_
