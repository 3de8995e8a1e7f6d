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

#include "kbp/extractors.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "kbp/text.h"

namespace kbp {

namespace {

bool HasBaseRelation(const std::set<std::string> &relations,
                     const std::string &relation) {
  return relations.count(std::string(BaseRelation(relation))) > 0;
}

std::string JoinTokens(const AnnotatedSentence &s, std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  std::vector<std::string> words;
  words.reserve(positions.size());
  for (int p : positions) words.push_back(s.tokens[p]);
  return Join(words, " ");
}

// Entity candidates for an argument subtree, or empty when the argument is
// not linked.
std::vector<const EntityLink *> ArgumentLinks(const AnnotatedSentence &s,
                                              const DependencyTree &tree,
                                              int head,
                                              const ExtractorConfig &config) {
  std::vector<int> subtree =
      tree.Subtree(head, config.argument_excluded_relations);
  return LinksWithSpan(s, Enclosing(subtree));
}

// Links that contain every given 0-based position, restricted to the
// tightest such span.
std::vector<const EntityLink *> TightestCovering(const AnnotatedSentence &s,
                                                 const std::vector<int> &positions) {
  std::vector<const EntityLink *> best;
  int best_width = 0;
  for (const EntityLink &link : s.links) {
    bool covers = std::all_of(positions.begin(), positions.end(),
                              [&](int p) { return link.Covers(p); });
    if (!covers) continue;
    int width = link.end - link.start;
    if (best.empty() || width < best_width) {
      best.clear();
      best_width = width;
      best.push_back(&link);
    } else if (width == best_width && link.SameSpan(*best.front())) {
      best.push_back(&link);
    }
  }
  return best;
}

}  // namespace

bool IsPredicateVerb(const AnnotatedSentence &s, const DependencyTree &tree,
                     int token, const ExtractorConfig &config) {
  if (!config.verb_tags.count(s.pos[token])) return false;
  const std::string &rel = tree.relation(token);
  return !HasBaseRelation(config.auxiliary_relations, rel) &&
         !HasBaseRelation(config.compound_relations, rel);
}

std::vector<std::string> CompoundVerbPhrases(const AnnotatedSentence &s,
                                             const ExtractorConfig &config) {
  DependencyTree tree(s);
  std::vector<std::string> phrases;
  for (int v = 0; v < s.size(); ++v) {
    if (!IsPredicateVerb(s, tree, v, config)) continue;
    std::vector<int> parts = tree.ChildrenWith(v, config.compound_relations);
    parts.push_back(v);
    phrases.push_back(JoinTokens(s, parts));
  }
  return phrases;
}

std::vector<const EntityLink *> LinksWithSpan(const AnnotatedSentence &s,
                                              Span span) {
  std::vector<const EntityLink *> out;
  for (const EntityLink &link : s.links) {
    if (link.start == span.start && link.end == span.end) out.push_back(&link);
  }
  return out;
}

void EmitExpanded(const std::vector<const EntityLink *> &subjects,
                  const Predicate &predicate,
                  const std::vector<const EntityLink *> &objects,
                  double confidence, std::string_view extractor,
                  const std::string &sentence_id,
                  std::vector<CandidateTriple> *out) {
  for (const EntityLink *subject : subjects) {
    for (const EntityLink *object : objects) {
      out->push_back({subject->entity, predicate, object->entity,
                      std::string(extractor),
                      confidence * subject->confidence * object->confidence,
                      sentence_id});
    }
  }
}

// ---------------------------------------------------------------------------

std::vector<CandidateTriple> ExtractPredPatt(const AnnotatedSentence &s,
                                             const ExtractorConfig &config) {
  std::vector<CandidateTriple> out;
  DependencyTree tree(s);
  for (int v = 0; v < s.size(); ++v) {
    if (!IsPredicateVerb(s, tree, v, config)) continue;

    std::vector<std::vector<const EntityLink *>> arguments;
    for (int child : tree.ChildrenWith(v, config.argument_relations)) {
      auto links = ArgumentLinks(s, tree, child, config);
      if (!links.empty()) arguments.push_back(std::move(links));
    }
    const int n = static_cast<int>(arguments.size());
    if (n < 2) continue;

    std::vector<int> phrase = tree.ChildrenWith(v, config.predicate_relations);
    phrase.push_back(v);
    Predicate predicate = Predicate::Raw(JoinTokens(s, phrase));
    const double confidence = 1.0 / (n * (n - 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        EmitExpanded(arguments[i], predicate, arguments[j], confidence,
                     kPredPattId, s.id, &out);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PatternKey PatternKeyOf(const AnnotatedSentence &s) {
  PatternKey key;
  key.reserve(s.tokens.size());
  for (int i = 0; i < s.size(); ++i) {
    key.push_back({s.pos[i], s.deps[i].head, s.deps[i].relation});
  }
  return key;
}

void ValidatePattern(const DepPattern &p) {
  const int n = static_cast<int>(p.key.size());
  if (n == 0) throw InvalidRecord("key", "empty pattern key");
  auto check = [n](const std::vector<int> &roles, const char *field) {
    for (int r : roles) {
      if (r < 1 || r > n) {
        throw InvalidRecord(field, "position " + std::to_string(r) +
                                       " outside 1.." + std::to_string(n));
      }
    }
  };
  check(p.subject, "subject");
  check(p.object, "object");
  check(p.predicate, "predicate");
  for (int r : p.subject) {
    if (std::find(p.object.begin(), p.object.end(), r) != p.object.end()) {
      throw InvalidRecord("object", "position " + std::to_string(r) +
                                        " also used by subject");
    }
  }
  if (p.support < 0) throw InvalidRecord("support", "negative");
}

std::vector<DepPattern> MineDependencyPatterns(
    const std::vector<AnnotatedSentence> &corpus, int min_support) {
  if (min_support < 1) throw std::invalid_argument("min_support must be >= 1");
  std::map<PatternKey, int> counts;
  for (const AnnotatedSentence &s : corpus) ++counts[PatternKeyOf(s)];

  std::vector<DepPattern> patterns;
  for (auto &[key, support] : counts) {
    if (support < min_support) continue;
    DepPattern p;
    p.key = key;
    p.support = support;
    patterns.push_back(std::move(p));
  }
  // Map iteration already orders by key; a stable sort keeps it within
  // equal support.
  std::stable_sort(patterns.begin(), patterns.end(),
                   [](const DepPattern &a, const DepPattern &b) {
                     return a.support > b.support;
                   });
  return patterns;
}

namespace {

void ApplyPattern(const AnnotatedSentence &s, const DepPattern &p,
                  const ExtractorConfig &config,
                  std::vector<CandidateTriple> *out) {
  auto zero_based = [](const std::vector<int> &roles) {
    std::vector<int> out;
    for (int r : roles) out.push_back(r - 1);
    return out;
  };
  auto subjects = TightestCovering(s, zero_based(p.subject));
  auto objects = TightestCovering(s, zero_based(p.object));
  if (subjects.empty() || objects.empty()) return;

  std::vector<std::string> words;
  for (int r : p.predicate) words.push_back(s.tokens[r - 1]);
  EmitExpanded(subjects, Predicate::Raw(Join(words, " ")), objects,
               config.dep_pattern_confidence, kDepPatternId, s.id, out);
}

}  // namespace

DepPatternExtractor::DepPatternExtractor(std::vector<DepPattern> bank,
                                         ExtractorConfig config)
    : bank_(std::move(bank)), config_(std::move(config)) {
  for (size_t i = 0; i < bank_.size(); ++i) {
    ValidatePattern(bank_[i]);
    if (bank_[i].annotated()) index_[bank_[i].key].push_back(i);
  }
}

std::vector<CandidateTriple> DepPatternExtractor::Extract(
    const AnnotatedSentence &s) const {
  std::vector<CandidateTriple> out;
  auto it = index_.find(PatternKeyOf(s));
  if (it == index_.end()) return out;
  for (size_t i : it->second) ApplyPattern(s, bank_[i], config_, &out);
  return out;
}

std::vector<CandidateTriple> ExtractDepPattern(
    const AnnotatedSentence &s, const std::vector<DepPattern> &bank,
    const ExtractorConfig &config) {
  std::vector<CandidateTriple> out;
  const PatternKey key = PatternKeyOf(s);
  for (const DepPattern &p : bank) {
    if (p.annotated() && p.key == key) ApplyPattern(s, p, config, &out);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CandidateTriple> ExtractPsie(const AnnotatedSentence &s,
                                         const ExtractorConfig &config) {
  std::vector<CandidateTriple> out;
  DependencyTree tree(s);
  for (int v = 0; v < s.size(); ++v) {
    if (!IsPredicateVerb(s, tree, v, config)) continue;
    std::vector<int> subjects = tree.ChildrenWith(v, config.subject_relations);
    std::vector<int> objects = tree.ChildrenWith(v, config.object_relations);
    if (subjects.empty() || objects.empty()) continue;

    std::vector<int> phrase = tree.ChildrenWith(v, config.compound_relations);
    phrase.push_back(v);
    Predicate predicate = Predicate::Raw(JoinTokens(s, phrase));

    for (int subject : subjects) {
      auto subject_links = ArgumentLinks(s, tree, subject, config);
      if (subject_links.empty()) continue;
      for (int object : objects) {
        auto object_links = ArgumentLinks(s, tree, object, config);
        EmitExpanded(subject_links, predicate, object_links,
                     config.psie_confidence, kPsieId, s.id, &out);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

RelationTemplate::RelationTemplate(std::string_view text) : text_(Trim(text)) {
  for (const std::string &part : Split(text_, ' ')) {
    if (part.empty()) continue;
    Element e{part[0], 1, 1};
    if (e.symbol != 'V' && e.symbol != 'P' && e.symbol != 'W') {
      throw std::invalid_argument("relation template '" + text_ +
                                  "': unknown class '" + part + "'");
    }
    if (part.size() == 2) {
      switch (part[1]) {
        case '?': e.min = 0, e.max = 1; break;
        case '*': e.min = 0, e.max = -1; break;
        case '+': e.min = 1, e.max = -1; break;
        default:
          throw std::invalid_argument("relation template '" + text_ +
                                      "': bad quantifier in '" + part + "'");
      }
    } else if (part.size() > 2) {
      throw std::invalid_argument("relation template '" + text_ +
                                  "': bad element '" + part + "'");
    }
    elements_.push_back(e);
  }
  if (elements_.empty()) {
    throw std::invalid_argument("empty relation template");
  }
}

std::vector<int> RelationTemplate::MatchLengths(
    const AnnotatedSentence &s, int start, int limit,
    const ExtractorConfig &config) const {
  auto accepts = [&](char symbol, int token) {
    const std::string &tag = s.pos[token];
    bool verb = config.verb_tags.count(tag) > 0;
    bool adposition = config.adposition_tags.count(tag) > 0;
    switch (symbol) {
      case 'V': return verb;
      case 'P': return adposition;
      default:
        return !verb && !adposition && !config.punctuation_tags.count(tag);
    }
  };

  std::set<int> ends;
  std::function<void(size_t, int)> match = [&](size_t element, int pos) {
    if (element == elements_.size()) {
      ends.insert(pos);
      return;
    }
    const Element &e = elements_[element];
    int count = 0;
    int p = pos;
    // Try every repetition count from min upwards.
    while (true) {
      if (count >= e.min) match(element + 1, p);
      if (e.max >= 0 && count == e.max) break;
      if (p >= limit || !accepts(e.symbol, p)) break;
      ++p;
      ++count;
    }
  };
  match(0, start);

  std::vector<int> lengths;
  for (int end : ends) {
    if (end > start) lengths.push_back(end - start);
  }
  return lengths;
}

std::vector<RelationTemplate> DefaultRelationTemplates() {
  return {RelationTemplate("V"), RelationTemplate("V P"),
          RelationTemplate("V W* P")};
}

std::vector<CandidateTriple> ExtractRePersian(
    const AnnotatedSentence &s, const std::vector<RelationTemplate> &templates,
    const ExtractorConfig &config) {
  std::vector<CandidateTriple> out;

  std::vector<Span> spans;
  for (const EntityLink &link : s.links) spans.push_back({link.start, link.end});
  std::sort(spans.begin(), spans.end());
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());

  for (size_t i = 0; i + 1 < spans.size(); ++i) {
    const Span left = spans[i];
    const Span right = spans[i + 1];
    if (left.end > right.start) continue;
    for (int t = left.end; t < right.start;) {
      if (!config.verb_tags.count(s.pos[t])) {
        ++t;
        continue;
      }
      int longest = 0;
      for (const RelationTemplate &tmpl : templates) {
        for (int len : tmpl.MatchLengths(s, t, right.start, config)) {
          longest = std::max(longest, len);
        }
      }
      if (longest == 0) {
        ++t;
        continue;
      }
      std::vector<std::string> words(s.tokens.begin() + t,
                                     s.tokens.begin() + t + longest);
      EmitExpanded(LinksWithSpan(s, left), Predicate::Raw(Join(words, " ")),
                   LinksWithSpan(s, right), config.repersian_confidence,
                   kRePersianId, s.id, &out);
      t += longest;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CandidateTriple> ExtractTokenPatterns(
    const AnnotatedSentence &s, const std::vector<TokenPatternRule> &rules,
    const ExtractorConfig &config) {
  std::vector<CandidateTriple> out;
  for (const TokenPatternRule &rule : rules) {
    const Predicate predicate = Predicate::Iri(rule.predicate);
    int start = 0;
    while (start < s.size()) {
      auto match = rule.pattern.MatchAt(s, start);
      if (!match) {
        ++start;
        continue;
      }
      auto subjects = LinksWithSpan(s, match->subject);
      auto objects = LinksWithSpan(s, match->object);
      if (subjects.empty() || objects.empty()) {
        // Discarded matches do not consume tokens.
        ++start;
        continue;
      }
      EmitExpanded(subjects, predicate, objects,
                   config.token_pattern_confidence, kTokenPatternId, s.id,
                   &out);
      start = std::max(match->match.end, start + 1);
    }
  }
  return out;
}

}  // namespace kbp
