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

#include "kbp/distant_supervision.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "kbp/text.h"

namespace kbp {

namespace {

bool Overlaps(Span a, Span b) { return a.start < b.end && b.start < a.end; }

std::vector<Span> DistinctSpans(const AnnotatedSentence &s) {
  std::vector<Span> spans;
  for (const EntityLink &link : s.links) spans.push_back({link.start, link.end});
  std::sort(spans.begin(), spans.end());
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
  return spans;
}

}  // namespace

std::vector<DsInstance> BuildDsDataset(
    const std::vector<AnnotatedSentence> &corpus, const KbSnapshot &kb) {
  // (subject, object) -> predicates, ordered.
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> related;
  for (const Fact &f : kb.facts) related[{f.subject, f.object}].push_back(f.predicate);

  std::vector<DsInstance> instances;
  for (const AnnotatedSentence &s : corpus) {
    for (const EntityLink &a : s.links) {
      for (const EntityLink &b : s.links) {
        if (&a == &b) continue;
        const Span sa{a.start, a.end}, sb{b.start, b.end};
        if (Overlaps(sa, sb)) continue;
        auto it = related.find({a.entity, b.entity});
        if (it == related.end()) continue;
        for (const std::string &p : it->second) {
          instances.push_back({s.id, a.entity, b.entity, p, sa, sb});
        }
      }
    }
  }
  return instances;
}

StatsAccumulator::StatsAccumulator(std::set<std::string> stopwords,
                                   StatsOptions options)
    : options_(std::move(options)) {
  for (const std::string &w : stopwords) stopwords_.insert(NormalizePhrase(w));
}

void StatsAccumulator::Add(const DsInstance &instance,
                           const AnnotatedSentence &sentence) {
  PredicateProfile &profile = counts_[instance.predicate];
  ++profile.instance_count;
  for (int t = 0; t < sentence.size(); ++t) {
    bool in_argument =
        (instance.subject_span.start <= t && t < instance.subject_span.end) ||
        (instance.object_span.start <= t && t < instance.object_span.end);
    if (in_argument) continue;
    std::string token = NormalizePhrase(sentence.tokens[t]);
    if (token.empty() || stopwords_.count(token)) continue;
    ++profile.frequent_tokens[token];
  }
  for (const std::string &phrase : CompoundVerbPhrases(sentence, options_.extractor)) {
    ++profile.compound_verbs[NormalizePhrase(phrase)];
  }
}

void StatsAccumulator::Merge(const StatsAccumulator &other) {
  for (const auto &[predicate, theirs] : other.counts_) {
    PredicateProfile &mine = counts_[predicate];
    mine.instance_count += theirs.instance_count;
    for (const auto &[token, n] : theirs.frequent_tokens) mine.frequent_tokens[token] += n;
    for (const auto &[verb, n] : theirs.compound_verbs) mine.compound_verbs[verb] += n;
  }
}

PredicateStats StatsAccumulator::Finalize() const {
  PredicateStats stats = counts_;
  for (auto &[predicate, profile] : stats) {
    std::erase_if(profile.frequent_tokens, [&](const auto &entry) {
      return entry.second < options_.min_token_count;
    });
  }
  return stats;
}

PredicateStats ComputePredicateStatistics(
    const std::vector<DsInstance> &instances,
    const std::vector<AnnotatedSentence> &corpus,
    const std::set<std::string> &stopwords, const StatsOptions &options) {
  std::unordered_map<std::string, const AnnotatedSentence *> by_id;
  for (const AnnotatedSentence &s : corpus) by_id.emplace(s.id, &s);

  StatsAccumulator acc(stopwords, options);
  for (const DsInstance &instance : instances) {
    auto it = by_id.find(instance.sentence_id);
    if (it == by_id.end()) {
      throw std::invalid_argument("instance references unknown sentence " +
                                  instance.sentence_id);
    }
    acc.Add(instance, *it->second);
  }
  return acc.Finalize();
}

std::map<std::string, int> OverlapScorer::Score(const AnnotatedSentence &s,
                                                const PredicateStats &stats) const {
  std::set<std::string> tokens;
  for (const std::string &t : s.tokens) tokens.insert(NormalizePhrase(t));
  std::set<std::string> verbs;
  for (const std::string &v : CompoundVerbPhrases(s, extractor)) {
    verbs.insert(NormalizePhrase(v));
  }

  std::map<std::string, int> scores;
  for (const auto &[predicate, profile] : stats) {
    int score = 0;
    for (const std::string &t : tokens) {
      if (profile.frequent_tokens.count(t)) score += token_weight;
    }
    for (const std::string &v : verbs) {
      if (profile.compound_verbs.count(v)) score += verb_weight;
    }
    scores.emplace(predicate, score);
  }
  return scores;
}

const std::pair<const std::string, int> *ArgMax(
    const std::map<std::string, int> &scores) {
  const std::pair<const std::string, int> *best = nullptr;
  // Strict comparison over IRI-ordered entries keeps the smallest IRI on
  // ties.
  for (const auto &entry : scores) {
    if (best == nullptr || entry.second > best->second) best = &entry;
  }
  return best;
}

std::vector<CandidateTriple> ExtractDistant(const AnnotatedSentence &s,
                                            const PredicateStats &stats,
                                            const DistantOptions &options) {
  std::vector<CandidateTriple> out;
  std::vector<Span> spans = DistinctSpans(s);
  if (spans.size() < 2) return out;

  OverlapScorer scorer{1, options.verb_weight, options.extractor};
  const auto scores = scorer.Score(s, stats);
  const auto *best = ArgMax(scores);
  if (best == nullptr || best->second < options.min_score) return out;

  const double score = best->second;
  const double confidence = score / (score + 2.0);
  const Predicate predicate = Predicate::Iri(best->first);
  for (const Span a : spans) {
    for (const Span b : spans) {
      if (a == b || Overlaps(a, b)) continue;
      EmitExpanded(LinksWithSpan(s, a), predicate, LinksWithSpan(s, b),
                   confidence, kDistantId, s.id, &out);
    }
  }
  return out;
}

}  // namespace kbp
