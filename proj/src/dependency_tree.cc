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

#include "kbp/dependency_tree.h"

#include <algorithm>

namespace kbp {

std::string_view BaseRelation(std::string_view relation) {
  size_t colon = relation.find(':');
  return colon == std::string_view::npos ? relation : relation.substr(0, colon);
}

DependencyTree::DependencyTree(const AnnotatedSentence &sentence)
    : sentence_(sentence), children_(sentence.deps.size()) {
  for (int i = 0; i < static_cast<int>(sentence.deps.size()); ++i) {
    int h = sentence.deps[i].head - 1;
    if (h >= 0) children_[h].push_back(i);
  }
}

std::vector<int> DependencyTree::ChildrenWith(
    int token, const std::set<std::string> &relations) const {
  std::vector<int> out;
  for (int child : children_[token]) {
    if (relations.count(std::string(BaseRelation(relation(child))))) {
      out.push_back(child);
    }
  }
  return out;
}

std::vector<int> DependencyTree::Subtree(
    int token, const std::set<std::string> &excluded) const {
  std::vector<int> out{token};
  std::vector<int> stack;
  for (int child : children_[token]) {
    if (!excluded.count(std::string(BaseRelation(relation(child))))) {
      stack.push_back(child);
    }
  }
  // Arcs are validated to have a single root, but cycles among non-root
  // tokens are still possible in malformed input; bound the walk.
  std::vector<bool> seen(children_.size(), false);
  seen[token] = true;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    if (seen[t]) continue;
    seen[t] = true;
    out.push_back(t);
    for (int child : children_[t]) stack.push_back(child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kbp
