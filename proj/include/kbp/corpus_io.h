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

// Readers and writers for every on-disk format of the pipeline.
//
// Corpora, candidate-fact repositories (CFTR), pattern banks and
// distant-supervision instances are line-delimited JSON. A KB snapshot is a
// directory:
//
//   entities.jsonl   {"iri", "surface_forms": [...], "class"?}
//   predicates.txt   one predicate IRI per line
//   facts.tsv        subject TAB predicate TAB object
//   mapping.tsv      raw phrase TAB predicate IRI
//
// Lines starting with '#' are comments in the text formats. Text is
// brought to Unicode NFC on load and otherwise kept as is.

#ifndef KBP_CORPUS_IO_H_
#define KBP_CORPUS_IO_H_

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kbp/canonicalizer.h"
#include "kbp/core.h"
#include "kbp/distant_supervision.h"
#include "kbp/extractors.h"
#include "kbp/fusion.h"

namespace kbp {

using Json = nlohmann::json;

// Error in an input file. line is 1-based, or 0 when not tied to a line.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string &path, int line, const std::string &message);

  const std::string &path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

// ---------------------------------------------------------------------------
// Sentences and gold records.

Json SentenceToJson(const AnnotatedSentence &sentence);
// Does not validate; see ValidateSentence.
AnnotatedSentence SentenceFromJson(const Json &json);

Json GoldToJson(const GoldRecord &gold);
GoldRecord GoldFromJson(const Json &json);

// Sentences with a missing id get their 1-based line number as id.
std::vector<AnnotatedSentence> LoadSentences(const std::string &path);
void WriteSentences(const std::string &path,
                    const std::vector<AnnotatedSentence> &sentences);

std::vector<GoldRecord> LoadGoldCorpus(const std::string &path,
                                       const KbSnapshot *kb = nullptr);
void WriteGoldCorpus(const std::string &path, const std::vector<GoldRecord> &gold);

// ---------------------------------------------------------------------------
// KB snapshot.

KbSnapshot LoadKbSnapshot(const std::string &dir);
void SaveKbSnapshot(const std::string &dir, const KbSnapshot &kb);

// Appends one line to facts.tsv.
void AppendFact(const std::string &dir, const Fact &fact);

// Appends mapped rows to mapping.tsv below a "# mined" marker. Rows that
// need an expert, or whose phrase is already mapped, are skipped. Returns
// the number of rows written.
size_t AppendMinedMappings(const std::string &dir, const KbSnapshot &kb,
                           const std::vector<MappingRow> &rows);

// ---------------------------------------------------------------------------
// Candidate-fact triple repository.

enum class Stage { kExtracted, kCanonicalized, kFused, kApproved, kRejected };

const char *StageName(Stage stage);
Stage ParseStage(std::string_view name);

// Stages only move forward; approved and rejected are both final.
bool CanAdvance(Stage from, Stage to);

struct CftrRecord {
  CandidateTriple triple;
  Stage stage = Stage::kExtracted;
  std::string decided_by;
  // Only written for approved and rejected records.
  std::string decided_at;

  bool operator==(const CftrRecord &) const = default;
};

Json CftrToJson(const CftrRecord &record);
CftrRecord CftrFromJson(const Json &json);

// Append-only. All records go out in a single write; on failure the file
// is truncated back to its previous length. Returns the number appended.
size_t CftrAppend(const std::string &path, const std::vector<CftrRecord> &records);

// Records in file order, optionally restricted to one stage. A missing
// file is an error.
std::vector<CftrRecord> CftrScan(const std::string &path,
                                 std::optional<Stage> stage = std::nullopt);

// Replaces the file contents (write to a temporary file, then rename).
void CftrWrite(const std::string &path, const std::vector<CftrRecord> &records);

std::vector<CftrRecord> ToRecords(const std::vector<CandidateTriple> &triples,
                                  Stage stage);
std::vector<CandidateTriple> ToTriples(const std::vector<CftrRecord> &records);

// One record per support of a fused triple, carrying the support's
// extractor, confidence and sentence.
std::vector<CftrRecord> SupportRecords(const FusedTriple &fused, Stage stage,
                                       const std::string &decided_by = "",
                                       const std::string &decided_at = "");

// Regroups fused-stage records into accepted fused triples, sorted by key.
// Records of other stages are ignored.
std::vector<FusedTriple> GroupFusedRecords(const std::vector<CftrRecord> &records);

// ---------------------------------------------------------------------------
// Extractor resources and intermediate artifacts.

Json PatternToJson(const DepPattern &pattern);
DepPattern PatternFromJson(const Json &json);
std::vector<DepPattern> LoadPatternBank(const std::string &path);
void WritePatternBank(const std::string &path, const std::vector<DepPattern> &bank);

// A JSON list of template strings such as ["V", "V P", "V W* P"].
std::vector<RelationTemplate> LoadRelationTemplates(const std::string &path);

std::vector<DsInstance> LoadDsInstances(const std::string &path);
void WriteDsInstances(const std::string &path,
                      const std::vector<DsInstance> &instances);

Json StatsToJson(const PredicateStats &stats);
PredicateStats StatsFromJson(const Json &json);
PredicateStats LoadPredicateStats(const std::string &path);
void WritePredicateStats(const std::string &path, const PredicateStats &stats);

// One token per line; blank and '#' lines are ignored.
std::set<std::string> LoadStopwords(const std::string &path);

Json RuleToJson(const ImplicationRule &rule);
ImplicationRule RuleFromJson(const Json &json);
void WriteRules(const std::string &path, const std::vector<ImplicationRule> &rules);
std::vector<ImplicationRule> LoadRules(const std::string &path);

Json ClusteringToJson(const Clustering &clustering);

// ---------------------------------------------------------------------------
// Plain file helpers.

std::string ReadFile(const std::string &path);

// Writes to a sibling temporary file and renames it over path.
void WriteFileAtomic(const std::string &path, std::string_view content);

// Appends content with a single write; truncates back on failure.
void AppendAtomic(const std::string &path, std::string_view content);

}  // namespace kbp

#endif  // KBP_CORPUS_IO_H_
