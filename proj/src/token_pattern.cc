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

#include "kbp/token_pattern.h"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kbp/text.h"

namespace kbp {

namespace {

// Upper bound for counted repetition; keeps programs small.
constexpr int kMaxRepeat = 64;

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Characters that terminate a pos:/class: value.
bool IsValueDelimiter(char c) {
  return IsSpace(c) || c == '?' || c == '*' || c == '+' || c == '{' ||
         c == '(' || c == ')' || c == '#' || c == '"';
}

class RuleParser {
 public:
  RuleParser(std::string_view text, int line) : text_(text), line_(line) {}

  TokenPatternRule Parse() {
    TokenPatternRule rule;
    rule.source = std::string(Trim(text_));
    SkipSpace();
    if (ReadWord() != "rule") Fail(0, "expected 'rule'");
    SkipSpace();
    size_t name_pos = pos_;
    rule.name = ReadWord();
    if (rule.name.empty() || rule.name == "->") Fail(name_pos, "expected rule name");
    SkipSpace();
    if (!Consume("->")) Fail(pos_, "expected '->'");
    SkipSpace();
    size_t iri_pos = pos_;
    std::string iri = ReadWord();
    bool colon = false;
    if (iri.size() > 1 && iri.back() == ':') {
      iri.pop_back();
      colon = true;
    }
    if (iri.empty()) Fail(iri_pos, "expected predicate IRI");
    rule.predicate = iri;
    predicate_pos_ = iri_pos;
    if (!colon) {
      SkipSpace();
      if (!Consume(":")) Fail(pos_, "expected ':' after predicate IRI");
    }

    ParseSequence(/*in_group=*/false);
    if (!subject_seen_) Fail(pos_, "pattern has no SUBJ capture");
    if (!object_seen_) Fail(pos_, "pattern has no OBJ capture");
    program_.push_back({TokenPattern::Op::kMatch, 0, 0});
    rule.pattern = TokenPattern(std::move(atoms_), std::move(program_));
    return rule;
  }

  size_t predicate_pos() const { return predicate_pos_; }

  [[noreturn]] void Fail(size_t at, const std::string &message) const {
    throw TokenPatternError(line_, Column(at), message);
  }

 private:
  using Op = TokenPattern::Op;

  int Column(size_t at) const {
    // Columns count code points, not bytes.
    int column = 1;
    for (size_t i = 0; i < at && i < text_.size(); ++i) {
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++column;
    }
    return column;
  }

  bool AtEnd() const { return pos_ >= text_.size() || text_[pos_] == '#'; }

  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  bool Consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  std::string ReadWord() {
    size_t begin = pos_;
    while (pos_ < text_.size() && !IsSpace(text_[pos_])) ++pos_;
    return std::string(text_.substr(begin, pos_ - begin));
  }

  void ParseSequence(bool in_group) {
    int items = 0;
    while (true) {
      SkipSpace();
      if (AtEnd()) {
        if (in_group) Fail(pos_, "unterminated capture group");
        break;
      }
      if (text_[pos_] == ')') {
        if (!in_group) Fail(pos_, "unbalanced ')'");
        break;
      }
      ParseItem(in_group);
      ++items;
    }
    if (items == 0) Fail(pos_, "empty token sequence");
  }

  void ParseItem(bool in_group) {
    if (text_[pos_] == '(') {
      if (in_group) Fail(pos_, "nested capture groups are not supported");
      ParseGroup();
      return;
    }
    TokenPattern::Atom atom = ParseAtom();
    SkipSpace();
    int min = 1, max = 1;  // max < 0 means unbounded
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '?') {
        min = 0, max = 1, ++pos_;
      } else if (c == '*') {
        min = 0, max = -1, ++pos_;
      } else if (c == '+') {
        min = 1, max = -1, ++pos_;
      } else if (c == '{') {
        ParseRepeat(&min, &max);
      }
    }
    EmitRepeat(atom, min, max);
  }

  void ParseGroup() {
    size_t group_pos = pos_;
    ++pos_;
    SkipSpace();
    bool subject;
    if (Consume("SUBJ")) {
      subject = true;
    } else if (Consume("OBJ")) {
      subject = false;
    } else {
      Fail(pos_, "expected SUBJ or OBJ");
    }
    SkipSpace();
    if (!Consume(":")) Fail(pos_, "expected ':' after capture name");
    bool &seen = subject ? subject_seen_ : object_seen_;
    if (seen) {
      Fail(group_pos, subject ? "duplicate SUBJ capture" : "duplicate OBJ capture");
    }
    seen = true;
    int start_slot = subject ? TokenPattern::kSubjectStart : TokenPattern::kObjectStart;
    program_.push_back({Op::kSave, start_slot, 0});
    ParseSequence(/*in_group=*/true);
    ++pos_;  // ')'
    program_.push_back({Op::kSave, start_slot + 1, 0});
  }

  TokenPattern::Atom ParseAtom() {
    using Kind = TokenPattern::AtomKind;
    size_t begin = pos_;
    char c = text_[pos_];
    if (c == '"') {
      ++pos_;
      std::string word;
      while (true) {
        if (pos_ >= text_.size()) Fail(begin, "unterminated quoted word");
        char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\\' && pos_ < text_.size()) d = text_[pos_++];
        word.push_back(d);
      }
      if (word.empty()) Fail(begin, "empty quoted word");
      return {Kind::kWord, word};
    }
    if (c == '.') {
      ++pos_;
      return {Kind::kAny, ""};
    }
    Kind kind;
    if (Consume("pos:")) {
      kind = Kind::kPos;
    } else if (Consume("class:")) {
      kind = Kind::kClass;
    } else {
      Fail(begin, std::string("unexpected character '") + c + "'");
    }
    size_t value_begin = pos_;
    while (pos_ < text_.size() && !IsValueDelimiter(text_[pos_])) ++pos_;
    if (pos_ == value_begin) {
      Fail(value_begin, kind == Kind::kPos ? "missing POS tag" : "missing class IRI");
    }
    return {kind, std::string(text_.substr(value_begin, pos_ - value_begin))};
  }

  int ReadNumber() {
    size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == begin) Fail(begin, "expected a number");
    if (pos_ - begin > 4) Fail(begin, "repetition count too large");
    return std::stoi(std::string(text_.substr(begin, pos_ - begin)));
  }

  void ParseRepeat(int *min, int *max) {
    size_t begin = pos_;
    ++pos_;  // '{'
    *min = ReadNumber();
    *max = *min;
    if (Consume(",")) {
      *max = (pos_ < text_.size() && text_[pos_] == '}') ? -1 : ReadNumber();
    }
    if (!Consume("}")) Fail(pos_, "expected '}'");
    if (*max >= 0 && *max < *min) Fail(begin, "repetition upper bound below lower bound");
    if (*min > kMaxRepeat || *max > kMaxRepeat) Fail(begin, "repetition count too large");
  }

  void EmitAtom(int atom) { program_.push_back({Op::kAtom, atom, 0}); }

  void EmitRepeat(const TokenPattern::Atom &atom, int min, int max) {
    int index = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    for (int i = 0; i < min; ++i) EmitAtom(index);
    if (max < 0) {
      // L1: split L2, L3; L2: atom; jmp L1; L3:
      int split = static_cast<int>(program_.size());
      program_.push_back({Op::kSplit, split + 1, split + 3});
      EmitAtom(index);
      program_.push_back({Op::kJump, split, 0});
      return;
    }
    for (int i = min; i < max; ++i) {
      int split = static_cast<int>(program_.size());
      program_.push_back({Op::kSplit, split + 1, split + 2});
      EmitAtom(index);
    }
  }

  std::string_view text_;
  int line_;
  size_t pos_ = 0;
  size_t predicate_pos_ = 0;
  bool subject_seen_ = false;
  bool object_seen_ = false;
  std::vector<TokenPattern::Atom> atoms_;
  std::vector<TokenPattern::Instruction> program_;
};

}  // namespace

TokenPatternError::TokenPatternError(int line, int column,
                                     const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool TokenPattern::Atom::Matches(const AnnotatedSentence &s, int token) const {
  switch (kind) {
    case AtomKind::kWord:
      return s.tokens[token] == value;
    case AtomKind::kPos:
      return s.pos[token] == value;
    case AtomKind::kClass:
      for (const EntityLink &link : s.links) {
        if (link.Covers(token) && link.entity_class == value) return true;
      }
      return false;
    case AtomKind::kAny:
      return true;
  }
  return false;
}

std::optional<TokenMatch> TokenPattern::MatchAt(const AnnotatedSentence &s,
                                                int start) const {
  using Captures = std::array<int, kNumSlots>;
  struct Thread {
    int pc;
    Captures caps;
  };

  const int n = s.size();
  std::vector<Thread> current, next;
  std::vector<int> mark(program_.size(), -1);
  int generation = 0;

  // Follows jumps, splits and saves so that every thread in a list sits on
  // an atom or a match instruction. Threads are appended in priority order.
  auto add = [&](auto &self, std::vector<Thread> &list, int pc, Captures caps,
                 int pos) -> void {
    if (mark[pc] == generation) return;
    mark[pc] = generation;
    const Instruction &in = program_[pc];
    switch (in.op) {
      case Op::kJump:
        self(self, list, in.x, caps, pos);
        break;
      case Op::kSplit:
        self(self, list, in.x, caps, pos);
        self(self, list, in.y, caps, pos);
        break;
      case Op::kSave:
        caps[in.x] = pos;
        self(self, list, pc + 1, caps, pos);
        break;
      default:
        list.push_back({pc, caps});
    }
  };

  Captures none;
  none.fill(-1);
  add(add, current, 0, none, start);

  std::optional<TokenMatch> best;
  for (int pos = start; !current.empty(); ++pos) {
    ++generation;
    next.clear();
    for (const Thread &thread : current) {
      const Instruction &in = program_[thread.pc];
      if (in.op == Op::kMatch) {
        const Captures &c = thread.caps;
        best = TokenMatch{{start, pos},
                          {c[kSubjectStart], c[kSubjectEnd]},
                          {c[kObjectStart], c[kObjectEnd]}};
        // Lower-priority threads cannot override this match.
        break;
      }
      if (pos < n && atoms_[in.x].Matches(s, pos)) {
        add(add, next, thread.pc + 1, thread.caps, pos + 1);
      }
    }
    std::swap(current, next);
  }
  return best;
}

TokenPatternRule CompileTokenPattern(std::string_view dsl, const KbSnapshot &kb,
                                     int line_number) {
  RuleParser parser(dsl, line_number);
  TokenPatternRule rule = parser.Parse();
  if (!kb.HasPredicate(rule.predicate)) {
    parser.Fail(parser.predicate_pos(), "unknown predicate " + rule.predicate);
  }
  return rule;
}

std::vector<TokenPatternRule> CompileTokenRules(std::string_view text,
                                                const KbSnapshot &kb) {
  std::vector<TokenPatternRule> rules;
  int line_number = 0;
  for (const std::string &line : Split(text, '\n')) {
    ++line_number;
    std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    rules.push_back(CompileTokenPattern(line, kb, line_number));
  }
  return rules;
}

std::vector<TokenPatternRule> LoadTokenRules(const std::string &path,
                                             const KbSnapshot &kb) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return CompileTokenRules(buffer.str(), kb);
}

}  // namespace kbp
