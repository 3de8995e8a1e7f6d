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

#ifndef KBP_TEXT_H_
#define KBP_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kbp {

// Unicode NFC form of UTF-8 text.
std::string Nfc(std::string_view text);

// Full Unicode case folding of UTF-8 text.
std::string CaseFold(std::string_view text);

// Trims, collapses internal whitespace runs to one space and case-folds.
// This is the only normalization applied to raw predicates and surface
// forms; no stemming.
std::string NormalizePhrase(std::string_view text);

std::string Join(std::span<const std::string> parts, std::string_view sep);

std::vector<std::string> Split(std::string_view text, char sep);

std::string_view Trim(std::string_view text);

}  // namespace kbp

#endif  // KBP_TEXT_H_
