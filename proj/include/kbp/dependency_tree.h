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

#ifndef KBP_DEPENDENCY_TREE_H_
#define KBP_DEPENDENCY_TREE_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kbp/core.h"

namespace kbp {

// Relation label without its subtype, e.g. "nsubj:pass" -> "nsubj".
std::string_view BaseRelation(std::string_view relation);

// Read-only view of the dependency arcs of a sentence. All indices used by
// this class are 0-based token positions.
class DependencyTree {
 public:
  explicit DependencyTree(const AnnotatedSentence &sentence);

  int size() const { return static_cast<int>(children_.size()); }

  // 0-based head position, or -1 for the root.
  int head(int token) const { return sentence_.deps[token].head - 1; }
  const std::string &relation(int token) const {
    return sentence_.deps[token].relation;
  }
  const std::vector<int> &children(int token) const {
    return children_[token];
  }

  // Children of a token whose base relation is in the given set, in
  // surface order.
  std::vector<int> ChildrenWith(int token,
                                const std::set<std::string> &relations) const;

  // Token positions of the subtree rooted at token, sorted. Children
  // attached through an excluded relation are cut off together with their
  // descendants (only directly below the subtree root).
  std::vector<int> Subtree(int token,
                           const std::set<std::string> &excluded = {}) const;

 private:
  const AnnotatedSentence &sentence_;
  std::vector<std::vector<int>> children_;
};

// A contiguous token span [start, end).
struct Span {
  int start = 0;
  int end = 0;

  auto operator<=>(const Span &) const = default;
  bool operator==(const Span &) const = default;
};

// Smallest span enclosing the given sorted, non-empty positions.
inline Span Enclosing(const std::vector<int> &positions) {
  return {positions.front(), positions.back() + 1};
}

}  // namespace kbp

#endif  // KBP_DEPENDENCY_TREE_H_
