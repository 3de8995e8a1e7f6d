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

// Fixture builders shared by the tests.

#ifndef KBP_TESTS_TEST_UTIL_H_
#define KBP_TESTS_TEST_UTIL_H_

#include <stdlib.h>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbp/core.h"

namespace kbp::testing {

// Sentence from parallel layers; heads are 1-based, 0 is the root. The
// text is the tokens joined by spaces and NER tags are "O".
inline AnnotatedSentence MakeSentence(const std::string &id,
                                      const std::vector<std::string> &tokens,
                                      const std::vector<std::string> &pos,
                                      const std::vector<int> &heads,
                                      const std::vector<std::string> &rels) {
  AnnotatedSentence s;
  s.id = id;
  s.tokens = tokens;
  s.pos = pos;
  s.ner.assign(tokens.size(), "O");
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) s.text += " ";
    s.text += tokens[i];
    s.deps.push_back({heads[i], rels[i]});
  }
  return s;
}

inline void AddLink(AnnotatedSentence *s, int start, int end,
                    const std::string &entity, double confidence = 1.0,
                    const std::string &entity_class = "") {
  s->links.push_back({start, end, entity, confidence, entity_class});
}

inline CandidateTriple MakeTriple(const std::string &subject,
                                  const Predicate &predicate,
                                  const std::string &object,
                                  const std::string &extractor,
                                  double confidence,
                                  const std::string &sentence_id) {
  return {subject, predicate, object, extractor, confidence, sentence_id};
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "kbp_test_XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::string &path() const { return path_; }
  std::string operator/(const std::string &name) const {
    return (std::filesystem::path(path_) / name).string();
  }

 private:
  std::string path_;
};

inline std::string SourcePath(const std::string &relative) {
  return std::string(KBP_SOURCE_DIR) + "/" + relative;
}

}  // namespace kbp::testing

#endif  // KBP_TESTS_TEST_UTIL_H_
