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

#include "kbp/review_service.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <mutex>

#include "httplib.h"
#include "spdlog/spdlog.h"

namespace kbp {

const char *ReviewStatusName(ReviewStatus status) {
  switch (status) {
    case ReviewStatus::kPending: return "pending";
    case ReviewStatus::kApproved: return "approved";
    case ReviewStatus::kRejected: return "rejected";
  }
  return "unknown";
}

std::optional<ReviewStatus> ParseReviewStatus(std::string_view name) {
  for (ReviewStatus s : {ReviewStatus::kPending, ReviewStatus::kApproved,
                         ReviewStatus::kRejected}) {
    if (name == ReviewStatusName(s)) return s;
  }
  return std::nullopt;
}

std::string UtcNow() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

// ---------------------------------------------------------------------------
// ReviewStore.

namespace {

Span LinkSpanOf(const AnnotatedSentence &sentence, const std::string &entity) {
  for (const EntityLink &l : sentence.links) {
    if (l.entity == entity) return {l.start, l.end};
  }
  return {0, 0};
}

}  // namespace

Fact ReviewStore::ToFact(const TripleKey &key) {
  return {key.subject, key.predicate.value, key.object};
}

ReviewStore::ReviewStore(std::string cftr_path, std::string kb_dir, Clock clock)
    : cftr_path_(std::move(cftr_path)), kb_dir_(std::move(kb_dir)), clock_(std::move(clock)) {
  KbSnapshot kb = LoadKbSnapshot(kb_dir_);
  facts_ = std::move(kb.facts);

  std::vector<CftrRecord> records;
  if (std::filesystem::exists(cftr_path_)) records = CftrScan(cftr_path_);

  auto entry_for = [&](const CandidateTriple &t) -> Entry & {
    TripleKey key = TripleIdentity(t);
    auto [it, inserted] = by_key_.try_emplace(key, static_cast<int>(entries_.size()) + 1);
    if (inserted) {
      Entry e;
      e.fused.key = std::move(key);
      e.fused.accepted = true;
      e.fused.fused_confidence = t.confidence;
      entries_.push_back(std::move(e));
    }
    return entries_[it->second - 1];
  };

  for (const CftrRecord &r : records) {
    if (!r.triple.predicate.is_iri()) continue;
    if (r.stage == Stage::kFused) {
      Entry &e = entry_for(r.triple);
      e.fused.supports.push_back({r.triple.extractor, r.triple.confidence, r.triple.sentence_id});
      e.fused.fused_confidence = std::max(e.fused.fused_confidence, r.triple.confidence);
    } else if (r.stage == Stage::kApproved || r.stage == Stage::kRejected) {
      Entry &e = entry_for(r.triple);
      if (e.fused.supports.empty()) {
        e.fused.supports.push_back({r.triple.extractor, r.triple.confidence, r.triple.sentence_id});
      }
      if (e.status != ReviewStatus::kPending) continue;  // first decision wins
      e.status = r.stage == Stage::kApproved ? ReviewStatus::kApproved : ReviewStatus::kRejected;
      e.reviewer = r.decided_by;
      e.decided_at = r.decided_at;
    }
  }

  for (Entry &e : entries_) {
    Fact fact = ToFact(e.fused.key);
    if (e.status == ReviewStatus::kPending && facts_.count(fact)) {
      e.hidden = true;
    } else if (e.status == ReviewStatus::kApproved && !facts_.count(fact)) {
      spdlog::warn("promoting approved triple missing from the KB: {}", e.fused.key.ToString());
      AppendFact(kb_dir_, fact);
      facts_.insert(fact);
    }
  }
}

void ReviewStore::AttachCorpus(const std::vector<AnnotatedSentence> &corpus) {
  std::unique_lock lock(mutex_);
  for (const AnnotatedSentence &s : corpus) corpus_[s.id] = s;
}

size_t ReviewStore::Enqueue(const std::vector<FusedTriple> &fused) {
  std::unique_lock lock(mutex_);
  std::vector<const FusedTriple *> fresh;
  std::set<TripleKey> batch;
  for (const FusedTriple &f : fused) {
    if (!f.accepted) continue;
    if (!f.key.predicate.is_iri()) {
      throw std::invalid_argument("cannot enqueue raw predicate " + f.key.ToString());
    }
    if (by_key_.count(f.key) || facts_.count(ToFact(f.key))) continue;
    if (!batch.insert(f.key).second) continue;
    fresh.push_back(&f);
  }
  std::vector<CftrRecord> records;
  for (const FusedTriple *f : fresh) {
    auto r = SupportRecords(*f, Stage::kFused, "", "");
    records.insert(records.end(), r.begin(), r.end());
  }
  CftrAppend(cftr_path_, records);
  for (const FusedTriple *f : fresh) {
    Entry e;
    e.fused = *f;
    by_key_.emplace(f->key, static_cast<int>(entries_.size()) + 1);
    entries_.push_back(std::move(e));
  }
  return fresh.size();
}

std::vector<int> ReviewStore::Ordered() const {
  std::vector<int> ids;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].hidden) ids.push_back(static_cast<int>(i) + 1);
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const FusedTriple &fa = entries_[a - 1].fused;
    const FusedTriple &fb = entries_[b - 1].fused;
    if (fa.fused_confidence != fb.fused_confidence) {
      return fa.fused_confidence > fb.fused_confidence;
    }
    return fa.key < fb.key;
  });
  return ids;
}

ReviewItem ReviewStore::MakeItem(int id, const Entry &entry) const {
  ReviewItem item;
  item.id = id;
  item.fused = entry.fused;
  item.status = entry.status;
  item.reviewer = entry.reviewer;
  item.decided_at = entry.decided_at;
  std::set<std::string> seen;
  for (const Support &s : entry.fused.supports) {
    if (!seen.insert(s.sentence_id).second) continue;
    SentenceContext context;
    context.sentence_id = s.sentence_id;
    auto it = corpus_.find(s.sentence_id);
    if (it != corpus_.end()) {
      context.text = it->second.text;
      context.tokens = it->second.tokens;
      context.subject = LinkSpanOf(it->second, entry.fused.key.subject);
      context.object = LinkSpanOf(it->second, entry.fused.key.object);
    }
    item.sentences.push_back(std::move(context));
  }
  return item;
}

std::vector<ReviewItem> ReviewStore::Queue(std::optional<ReviewStatus> status,
                                           size_t limit) const {
  std::shared_lock lock(mutex_);
  std::vector<ReviewItem> out;
  for (int id : Ordered()) {
    const Entry &e = entries_[id - 1];
    if (status && e.status != *status) continue;
    out.push_back(MakeItem(id, e));
    if (limit > 0 && out.size() >= limit) break;
  }
  return out;
}

ReviewItem ReviewStore::Get(int id) const {
  std::shared_lock lock(mutex_);
  if (id < 1 || id > static_cast<int>(entries_.size()) || entries_[id - 1].hidden) {
    throw NotFound(id);
  }
  return MakeItem(id, entries_[id - 1]);
}

ReviewItem ReviewStore::Decide(int id, Decision decision, const std::string &reviewer) {
  std::unique_lock lock(mutex_);
  if (id < 1 || id > static_cast<int>(entries_.size()) || entries_[id - 1].hidden) {
    throw NotFound(id);
  }
  Entry &e = entries_[id - 1];
  if (e.status != ReviewStatus::kPending) throw Conflict(id);

  const std::string now = clock_();
  const bool approve = decision == Decision::kApprove;
  CftrAppend(cftr_path_, SupportRecords(e.fused, approve ? Stage::kApproved : Stage::kRejected,
                                        reviewer, now));
  e.status = approve ? ReviewStatus::kApproved : ReviewStatus::kRejected;
  e.reviewer = reviewer;
  e.decided_at = now;
  if (approve) {
    Fact fact = ToFact(e.fused.key);
    if (!facts_.count(fact)) {
      AppendFact(kb_dir_, fact);
      facts_.insert(fact);
    }
  }
  return MakeItem(id, e);
}

ReviewStats ReviewStore::Stats() const {
  std::shared_lock lock(mutex_);
  ReviewStats stats;
  for (const Entry &e : entries_) {
    if (e.hidden) continue;
    switch (e.status) {
      case ReviewStatus::kPending: ++stats.pending; break;
      case ReviewStatus::kApproved: ++stats.approved; break;
      case ReviewStatus::kRejected: ++stats.rejected; break;
    }
  }
  stats.kb_facts = static_cast<long>(facts_.size());
  return stats;
}

Json ReviewStore::ItemToJson(const ReviewItem &item) const {
  const FusedTriple &f = item.fused;
  Json supports = Json::array();
  for (const Support &s : f.supports) {
    supports.push_back({{"extractor", s.extractor},
                        {"confidence", s.confidence},
                        {"sentence_id", s.sentence_id}});
  }
  Json sentences = Json::array();
  for (const SentenceContext &c : item.sentences) {
    sentences.push_back({{"id", c.sentence_id},
                         {"text", c.text},
                         {"tokens", c.tokens},
                         {"subject_span", {c.subject.start, c.subject.end}},
                         {"object_span", {c.object.start, c.object.end}}});
  }
  Json extractors = Json::array();
  for (const std::string &id : f.extractors()) extractors.push_back(id);
  Json json = {{"id", item.id},
               {"subject", f.key.subject},
               {"predicate", f.key.predicate.value},
               {"object", f.key.object},
               {"fused_confidence", f.fused_confidence},
               {"extractors", extractors},
               {"supports", supports},
               {"sentences", sentences},
               {"status", ReviewStatusName(item.status)},
               {"reviewer", nullptr},
               {"decided_at", nullptr}};
  if (item.status != ReviewStatus::kPending) {
    json["reviewer"] = item.reviewer;
    json["decided_at"] = item.decided_at;
  }
  return json;
}

// ---------------------------------------------------------------------------
// ReviewServer.

struct ReviewServer::Impl {
  ReviewStore *store;
  httplib::Server server;
  int port = -1;
};

namespace {

void Reply(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response &res, int status, const std::string &message) {
  Reply(res, status, {{"error", message}});
}

// Parses a positive decimal id; -1 when malformed.
int ParseId(const std::string &text) {
  if (text.empty() || text.size() > 9) return -1;
  int id = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return -1;
    id = id * 10 + (c - '0');
  }
  return id;
}

}  // namespace

ReviewServer::ReviewServer(ReviewStore *store, ServerOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->store = store;
  httplib::Server &svr = impl_->server;

  svr.Get("/api/queue", [store](const httplib::Request &req, httplib::Response &res) {
    std::optional<ReviewStatus> status = ReviewStatus::kPending;
    if (req.has_param("status")) {
      const std::string value = req.get_param_value("status");
      if (value == "all") {
        status.reset();
      } else {
        status = ParseReviewStatus(value);
        if (!status) return ReplyError(res, 400, "unknown status '" + value + "'");
      }
    }
    size_t limit = 0;
    if (req.has_param("limit")) {
      int n = ParseId(req.get_param_value("limit"));
      if (n < 0) return ReplyError(res, 400, "limit must be a non-negative integer");
      limit = static_cast<size_t>(n);
    }
    Json items = Json::array();
    for (const ReviewItem &item : store->Queue(status, limit)) {
      items.push_back(store->ItemToJson(item));
    }
    Reply(res, 200, {{"items", items}});
  });

  svr.Get(R"(/api/items/([^/]+))", [store](const httplib::Request &req, httplib::Response &res) {
    int id = ParseId(req.matches[1]);
    if (id < 0) return ReplyError(res, 404, "no item " + std::string(req.matches[1]));
    try {
      Reply(res, 200, store->ItemToJson(store->Get(id)));
    } catch (const NotFound &e) {
      ReplyError(res, 404, e.what());
    }
  });

  svr.Post(R"(/api/items/([^/]+)/decision)",
           [store](const httplib::Request &req, httplib::Response &res) {
             int id = ParseId(req.matches[1]);
             if (id < 0) return ReplyError(res, 404, "no item " + std::string(req.matches[1]));
             Json body = Json::parse(req.body, nullptr, false);
             if (body.is_discarded() || !body.is_object()) {
               return ReplyError(res, 400, "body must be a JSON object");
             }
             auto decision = body.find("decision");
             auto reviewer = body.find("reviewer");
             if (decision == body.end() || !decision->is_string() ||
                 (*decision != "approve" && *decision != "reject")) {
               return ReplyError(res, 400, "decision must be \"approve\" or \"reject\"");
             }
             if (reviewer == body.end() || !reviewer->is_string()) {
               return ReplyError(res, 400, "reviewer must be a string");
             }
             const Decision d = *decision == "approve" ? Decision::kApprove : Decision::kReject;
             try {
               ReviewItem item = store->Decide(id, d, reviewer->get<std::string>());
               spdlog::info("item {} {} by {}", id, ReviewStatusName(item.status), item.reviewer);
               Reply(res, 200, store->ItemToJson(item));
             } catch (const NotFound &e) {
               ReplyError(res, 404, e.what());
             } catch (const Conflict &e) {
               Json json = {{"error", e.what()}, {"item", store->ItemToJson(store->Get(id))}};
               Reply(res, 409, json);
             }
           });

  svr.Get("/api/stats", [store](const httplib::Request &, httplib::Response &res) {
    ReviewStats s = store->Stats();
    Reply(res, 200, {{"pending", s.pending},
                     {"approved", s.approved},
                     {"rejected", s.rejected},
                     {"kb_facts", s.kb_facts}});
  });

  svr.set_exception_handler(
      [](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception &e) {
          message = e.what();
        } catch (...) {
        }
        spdlog::error("request failed: {}", message);
        ReplyError(res, 500, message);
      });

  if (!options.static_dir.empty() && !svr.set_mount_point("/", options.static_dir)) {
    spdlog::warn("static directory {} not found", options.static_dir);
  }
}

ReviewServer::~ReviewServer() { Stop(); }

int ReviewServer::Bind(const std::string &host, int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  return impl_->port;
}

bool ReviewServer::Run() {
  if (impl_->port < 0) return false;
  return impl_->server.listen_after_bind();
}

void ReviewServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void ReviewServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace kbp
