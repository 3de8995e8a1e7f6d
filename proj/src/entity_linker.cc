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

#include "kbp/entity_linker.h"

#include <algorithm>
#include <stdexcept>

#include "kbp/text.h"

namespace kbp {

const std::vector<LinkCandidate> *SurfaceIndex::Lookup(
    const std::string &form) const {
  auto it = forms_.find(form);
  return it == forms_.end() ? nullptr : &it->second;
}

SurfaceIndex BuildSurfaceIndex(const KbSnapshot &kb) {
  // Normalized form -> entity -> class.
  std::map<std::string, std::map<std::string, std::string>> owners;
  for (const KbEntity &entity : kb.entities) {
    for (const std::string &form : entity.surface_forms) {
      std::string key = NormalizePhrase(form);
      if (key.empty()) continue;
      owners[key].emplace(entity.iri, entity.entity_class);
    }
  }

  SurfaceIndex index;
  for (auto &[form, entities] : owners) {
    const double prior = 1.0 / static_cast<double>(entities.size());
    std::vector<LinkCandidate> &candidates = index.forms_[form];
    // The map is ordered by IRI, which is the tie-break among equal priors.
    for (const auto &[iri, entity_class] : entities) {
      candidates.push_back({iri, prior, entity_class});
    }
  }
  return index;
}

AnnotatedSentence LinkEntities(const AnnotatedSentence &sentence,
                               const SurfaceIndex &index,
                               const LinkerOptions &options) {
  if (options.max_ngram < 1) throw std::invalid_argument("max_ngram must be >= 1");
  AnnotatedSentence out = sentence;
  const int n = sentence.size();

  std::vector<bool> blocked(n, false);
  for (const EntityLink &link : sentence.links) {
    for (int t = std::max(0, link.start); t < std::min(n, link.end); ++t) {
      blocked[t] = true;
    }
  }

  int i = 0;
  while (i < n) {
    int matched = 0;
    for (int len = std::min(options.max_ngram, n - i); len >= 1; --len) {
      bool free = true;
      for (int t = i; t < i + len; ++t) free = free && !blocked[t];
      if (!free) continue;
      std::vector<std::string> words(sentence.tokens.begin() + i,
                                     sentence.tokens.begin() + i + len);
      const auto *candidates = index.Lookup(NormalizePhrase(Join(words, " ")));
      if (candidates == nullptr) continue;
      for (const LinkCandidate &c : *candidates) {
        out.links.push_back({i, i + len, c.entity, c.prior, c.entity_class});
      }
      matched = len;
      break;
    }
    i += matched > 0 ? matched : 1;
  }
  return out;
}

}  // namespace kbp
