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

// Expert review queue over the fused triples of a CFTR file, and the HTTP
// service in front of it.
//
// All state lives in files. Every queue item is a group of fused-stage
// records sharing one triple identity; decisions are appended as approved
// or rejected records carrying the reviewer and time, and approval appends
// the fact to facts.tsv of the KB directory. Reloading the files restores
// the queue exactly.

#ifndef KBP_REVIEW_SERVICE_H_
#define KBP_REVIEW_SERVICE_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kbp/core.h"
#include "kbp/corpus_io.h"
#include "kbp/dependency_tree.h"
#include "kbp/fusion.h"

namespace kbp {

enum class ReviewStatus { kPending, kApproved, kRejected };

const char *ReviewStatusName(ReviewStatus status);
std::optional<ReviewStatus> ParseReviewStatus(std::string_view name);

enum class Decision { kApprove, kReject };

// A supporting sentence with the argument spans to highlight. Spans are
// empty (0, 0) when the sentence has no link to the argument.
struct SentenceContext {
  std::string sentence_id;
  std::string text;
  std::vector<std::string> tokens;
  Span subject;
  Span object;
};

struct ReviewItem {
  int id = 0;
  FusedTriple fused;
  std::vector<SentenceContext> sentences;
  ReviewStatus status = ReviewStatus::kPending;
  std::string reviewer;
  std::string decided_at;
};

struct ReviewStats {
  long pending = 0;
  long approved = 0;
  long rejected = 0;
  long kb_facts = 0;
};

class NotFound : public std::runtime_error {
 public:
  explicit NotFound(int id) : std::runtime_error("no item " + std::to_string(id)) {}
};

class Conflict : public std::runtime_error {
 public:
  explicit Conflict(int id)
      : std::runtime_error("item " + std::to_string(id) + " is already decided") {}
};

// Returns the current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string UtcNow();

class ReviewStore {
 public:
  using Clock = std::function<std::string()>;

  // Loads the queue from cftr_path (created when missing) and the facts of
  // the KB directory. An approved item whose fact is missing from the KB
  // (an interrupted promotion) is promoted again.
  ReviewStore(std::string cftr_path, std::string kb_dir, Clock clock = UtcNow);

  // Sentences used to render item context; optional.
  void AttachCorpus(const std::vector<AnnotatedSentence> &corpus);

  // Adds accepted fused triples that are neither queued (in any status)
  // nor KB facts. Everything is appended in one write. Returns the number
  // of new items.
  size_t Enqueue(const std::vector<FusedTriple> &fused);

  // Items in queue order: descending fused confidence, then key. No
  // status means all items; limit 0 means no limit.
  std::vector<ReviewItem> Queue(std::optional<ReviewStatus> status,
                                size_t limit = 0) const;

  // Throws NotFound.
  ReviewItem Get(int id) const;

  // Throws NotFound or Conflict. Approval records the decision in the
  // CFTR before the fact is appended to the KB.
  ReviewItem Decide(int id, Decision decision, const std::string &reviewer);

  ReviewStats Stats() const;

  Json ItemToJson(const ReviewItem &item) const;

 private:
  struct Entry {
    FusedTriple fused;
    ReviewStatus status = ReviewStatus::kPending;
    std::string reviewer;
    std::string decided_at;
    // Undecided triples that reached the KB by other means are kept for
    // stable ids but no longer listed.
    bool hidden = false;
  };

  static Fact ToFact(const TripleKey &key);
  ReviewItem MakeItem(int id, const Entry &entry) const;
  // Item ids in queue order.
  std::vector<int> Ordered() const;

  std::string cftr_path_;
  std::string kb_dir_;
  Clock clock_;

  mutable std::shared_mutex mutex_;
  std::vector<Entry> entries_;  // id = index + 1
  std::map<TripleKey, int> by_key_;
  std::set<Fact> facts_;
  std::map<std::string, AnnotatedSentence> corpus_;
};

struct ServerOptions {
  // Served under "/" when set.
  std::string static_dir;
};

// HTTP+JSON front end:
//   GET  /api/queue?status=pending&limit=N   {"items": [...]}
//   GET  /api/items/{id}
//   POST /api/items/{id}/decision            {"decision", "reviewer"}
//   GET  /api/stats
class ReviewServer {
 public:
  explicit ReviewServer(ReviewStore *store, ServerOptions options = {});
  ~ReviewServer();

  ReviewServer(const ReviewServer &) = delete;
  ReviewServer &operator=(const ReviewServer &) = delete;

  // Binds to port (0 picks a free one) and returns the bound port, or -1.
  int Bind(const std::string &host, int port);
  // Serves until Stop; returns false when the server could not run.
  bool Run();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kbp

#endif  // KBP_REVIEW_SERVICE_H_
