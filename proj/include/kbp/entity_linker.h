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

// Dictionary entity linker. Mentions are found by greedy longest-match over
// token n-grams; an ambiguous mention yields one link per candidate entity
// with a uniform prior, so the confidences of one span sum to 1.

#ifndef KBP_ENTITY_LINKER_H_
#define KBP_ENTITY_LINKER_H_

#include <map>
#include <string>
#include <vector>

#include "kbp/core.h"

namespace kbp {

struct LinkCandidate {
  std::string entity;
  double prior = 0.0;
  std::string entity_class;

  bool operator==(const LinkCandidate &) const = default;
};

class SurfaceIndex {
 public:
  // Candidates for a normalized surface form, sorted by descending prior
  // and then IRI; nullptr when the form is unknown.
  const std::vector<LinkCandidate> *Lookup(const std::string &form) const;

  size_t size() const { return forms_.size(); }
  bool empty() const { return forms_.empty(); }
  const std::map<std::string, std::vector<LinkCandidate>> &forms() const {
    return forms_;
  }

 private:
  friend SurfaceIndex BuildSurfaceIndex(const KbSnapshot &kb);

  std::map<std::string, std::vector<LinkCandidate>> forms_;
};

SurfaceIndex BuildSurfaceIndex(const KbSnapshot &kb);

struct LinkerOptions {
  int max_ngram = 6;
};

// Adds links for unlinked mentions. Existing links are kept and their
// tokens are not matched again.
AnnotatedSentence LinkEntities(const AnnotatedSentence &sentence,
                               const SurfaceIndex &index,
                               const LinkerOptions &options = {});

}  // namespace kbp

#endif  // KBP_ENTITY_LINKER_H_
