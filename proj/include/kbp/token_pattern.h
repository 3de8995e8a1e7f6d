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

// Regular expressions over token sequences.
//
// A rule file holds one rule per line:
//
//   rule NAME -> IRI : item+
//
//   item  := atom quant? | "(" ("SUBJ"|"OBJ") ":" item+ ")"
//   atom  := '"'word'"' | pos:TAG | class:IRI | .
//   quant := ? | * | + | {m} | {m,} | {m,n}
//
// "#" starts a comment outside of quoted words. A class: atom matches a
// token that lies inside an entity link of the given ontology class.
//
// Rules compile to a small instruction program that is executed with a
// Pike VM: all alternatives advance in lock step over the tokens, so a
// match costs O(tokens * program) regardless of the quantifiers used.
// Among competing matches at one start position the leftmost-first
// (greedy, priority ordered) one wins.

#ifndef KBP_TOKEN_PATTERN_H_
#define KBP_TOKEN_PATTERN_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kbp/core.h"
#include "kbp/dependency_tree.h"

namespace kbp {

class TokenPatternError : public std::runtime_error {
 public:
  TokenPatternError(int line, int column, const std::string &message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct TokenMatch {
  Span match;
  Span subject;
  Span object;
};

class TokenPattern {
 public:
  enum class AtomKind { kWord, kPos, kClass, kAny };

  struct Atom {
    AtomKind kind = AtomKind::kAny;
    std::string value;

    bool Matches(const AnnotatedSentence &sentence, int token) const;
  };

  enum class Op { kAtom, kSplit, kJump, kSave, kMatch };

  // kAtom: atoms[x]. kSplit: try x, then y. kJump: x. kSave: slot x.
  struct Instruction {
    Op op = Op::kMatch;
    int x = 0;
    int y = 0;
  };

  // Capture slots written by kSave.
  static constexpr int kSubjectStart = 0;
  static constexpr int kSubjectEnd = 1;
  static constexpr int kObjectStart = 2;
  static constexpr int kObjectEnd = 3;
  static constexpr int kNumSlots = 4;

  TokenPattern() = default;
  TokenPattern(std::vector<Atom> atoms, std::vector<Instruction> program)
      : atoms_(std::move(atoms)), program_(std::move(program)) {}

  // Highest-priority match anchored at start, if any.
  std::optional<TokenMatch> MatchAt(const AnnotatedSentence &sentence,
                                    int start) const;

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Instruction> &program() const { return program_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<Instruction> program_;
};

struct TokenPatternRule {
  std::string name;
  std::string predicate;
  TokenPattern pattern;
  std::string source;
};

// Compiles a single rule. line_number is used for error positions. The
// predicate must exist in the snapshot.
TokenPatternRule CompileTokenPattern(std::string_view dsl, const KbSnapshot &kb,
                                     int line_number = 1);

// Compiles every rule of a rule file, skipping blank and comment lines.
std::vector<TokenPatternRule> CompileTokenRules(std::string_view text,
                                                const KbSnapshot &kb);

std::vector<TokenPatternRule> LoadTokenRules(const std::string &path,
                                             const KbSnapshot &kb);

}  // namespace kbp

#endif  // KBP_TOKEN_PATTERN_H_
