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

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "kbp/review_service.h"
#include "test_util.h"

namespace kbp {
namespace {

using testing::AddLink;
using testing::MakeSentence;
using testing::TempDir;

FusedTriple Fused(const std::string &s, const std::string &p, const std::string &o,
                  std::vector<Support> supports) {
  FusedTriple f;
  f.key = {s, Predicate::Iri(p), o};
  f.supports = std::move(supports);
  for (const Support &x : f.supports) f.fused_confidence = std::max(f.fused_confidence, x.confidence);
  f.accepted = true;
  return f;
}

// KB with one fact and a queue of three accepted triples.
struct Fixture {
  TempDir dir;
  std::string kb_dir = dir / "kb";
  std::string cftr = dir / "review.cftr";

  Fixture() {
    KbSnapshot kb;
    kb.entities = {{"fkg:Iran", {"Iran"}, ""}, {"fkg:Tehran", {"Tehran"}, ""}};
    kb.predicates = {"p:capital", "p:leader", "p:birth"};
    kb.facts = {{"fkg:Iran", "p:capital", "fkg:Tehran"}};
    SaveKbSnapshot(kb_dir, kb);
  }

  std::vector<FusedTriple> Items() const {
    return {Fused("fkg:Iran", "p:leader", "fkg:A", {{"tokpat", 0.9, "s1"}}),
            Fused("fkg:B", "p:birth", "fkg:Tehran",
                  {{"psie", 0.4, "s2"}, {"distant", 0.6, "s2"}, {"distant", 0.5, "s3"}}),
            Fused("fkg:C", "p:birth", "fkg:Qom", {{"deppat", 0.95, "s4"}}),
            // Already a KB fact; never queued.
            Fused("fkg:Iran", "p:capital", "fkg:Tehran", {{"tokpat", 0.9, "s5"}})};
  }

  static std::string Clock() { return "2026-05-01T10:00:00Z"; }
};

TEST_CASE("enqueue skips KB facts and queued triples") {
  Fixture fx;
  ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
  CHECK(store.Enqueue(fx.Items()) == 3);
  CHECK(store.Enqueue(fx.Items()) == 0);
  ReviewStats stats = store.Stats();
  CHECK(stats.pending == 3);
  CHECK(stats.kb_facts == 1);

  // Queue order: descending fused confidence.
  std::vector<ReviewItem> queue = store.Queue(ReviewStatus::kPending);
  REQUIRE(queue.size() == 3);
  CHECK(queue[0].fused.key.subject == "fkg:C");
  CHECK(queue[1].fused.key.subject == "fkg:Iran");
  CHECK(queue[2].fused.key.subject == "fkg:B");
  CHECK(queue[2].fused.supports.size() == 3);
  CHECK(store.Queue(ReviewStatus::kPending, 2).size() == 2);
  CHECK(CftrScan(fx.cftr, Stage::kFused).size() == 5);
}

TEST_CASE("decisions are recorded, promoted and final") {
  Fixture fx;
  ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
  store.Enqueue(fx.Items());
  const int id = store.Queue(ReviewStatus::kPending)[0].id;

  ReviewItem item = store.Decide(id, Decision::kApprove, "expert1");
  CHECK(item.status == ReviewStatus::kApproved);
  CHECK(item.reviewer == "expert1");
  CHECK(item.decided_at == "2026-05-01T10:00:00Z");
  CHECK(LoadKbSnapshot(fx.kb_dir).HasFact({"fkg:C", "p:birth", "fkg:Qom"}));
  CHECK_THROWS_AS(store.Decide(id, Decision::kReject, "expert2"), Conflict);
  CHECK_THROWS_AS(store.Decide(99, Decision::kReject, "expert2"), NotFound);
  CHECK_THROWS_AS(store.Get(0), NotFound);

  const int other = store.Queue(ReviewStatus::kPending)[0].id;
  store.Decide(other, Decision::kReject, "expert2");
  ReviewStats stats = store.Stats();
  CHECK(stats.approved == 1);
  CHECK(stats.rejected == 1);
  CHECK(stats.pending == 1);
  CHECK(stats.kb_facts == 2);
  std::vector<CftrRecord> approved = CftrScan(fx.cftr, Stage::kApproved);
  REQUIRE(approved.size() == 1);
  CHECK(approved[0].decided_by == "expert1");
}

TEST_CASE("reloading the files restores the queue exactly") {
  Fixture fx;
  std::vector<std::string> before;
  {
    ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
    store.Enqueue(fx.Items());
    store.Decide(1, Decision::kApprove, "a");
    store.Decide(2, Decision::kReject, "b");
    for (const ReviewItem &item : store.Queue(std::nullopt)) {
      before.push_back(store.ItemToJson(item).dump());
    }
  }
  ReviewStore reloaded(fx.cftr, fx.kb_dir, Fixture::Clock);
  std::vector<std::string> after;
  for (const ReviewItem &item : reloaded.Queue(std::nullopt)) {
    after.push_back(reloaded.ItemToJson(item).dump());
  }
  CHECK(after == before);
  CHECK(reloaded.Stats().kb_facts == 2);
  // A rejected triple is not queued again.
  CHECK(reloaded.Enqueue(fx.Items()) == 0);
}

TEST_CASE("an approval missing from the KB is promoted on load") {
  Fixture fx;
  {
    ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
    store.Enqueue(fx.Items());
  }
  // Simulate a crash between the decision record and the KB append.
  FusedTriple f = fx.Items()[0];
  CftrAppend(fx.cftr, SupportRecords(f, Stage::kApproved, "a", "2026-01-01T00:00:00Z"));
  ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
  CHECK(LoadKbSnapshot(fx.kb_dir).HasFact({"fkg:Iran", "p:leader", "fkg:A"}));
  CHECK(store.Stats().approved == 1);
}

TEST_CASE("pending triples that reach the KB by other means are hidden") {
  Fixture fx;
  {
    ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
    store.Enqueue(fx.Items());
  }
  AppendFact(fx.kb_dir, {"fkg:B", "p:birth", "fkg:Tehran"});
  ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
  CHECK(store.Stats().pending == 2);
  CHECK_THROWS_AS(store.Get(2), NotFound);
  CHECK(store.Get(3).fused.key.subject == "fkg:C");  // ids stay stable
}

TEST_CASE("concurrent decisions on one item admit exactly one") {
  Fixture fx;
  ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
  store.Enqueue(fx.Items());
  std::atomic<int> ok{0}, conflicts{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      try {
        store.Decide(1, i % 2 ? Decision::kApprove : Decision::kReject, "r" + std::to_string(i));
        ++ok;
      } catch (const Conflict &) {
        ++conflicts;
      }
    });
  }
  for (std::thread &t : threads) t.join();
  CHECK(ok == 1);
  CHECK(conflicts == 7);
  const size_t decided =
      CftrScan(fx.cftr, Stage::kApproved).size() + CftrScan(fx.cftr, Stage::kRejected).size();
  CHECK(decided == 1);
}

TEST_CASE("item JSON carries context spans") {
  Fixture fx;
  ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
  store.Enqueue(fx.Items());
  AnnotatedSentence s = MakeSentence("s1", {"A", "leads", "Iran"}, {"PROPN", "VERB", "PROPN"},
                                     {2, 0, 2}, {"nsubj", "root", "obj"});
  AddLink(&s, 0, 1, "fkg:A");
  AddLink(&s, 2, 3, "fkg:Iran");
  store.AttachCorpus({s});
  Json json = store.ItemToJson(store.Get(1));
  CHECK(json["status"] == "pending");
  CHECK(json["reviewer"].is_null());
  REQUIRE(json["sentences"].size() == 1);
  CHECK(json["sentences"][0]["text"] == "A leads Iran");
  CHECK(json["sentences"][0]["subject_span"] == Json::array({2, 3}));
  CHECK(json["sentences"][0]["object_span"] == Json::array({0, 1}));
}

// ---------------------------------------------------------------------------
// HTTP.

class Server {
 public:
  explicit Server(ReviewStore *store) : server_(store) {
    port_ = server_.Bind("127.0.0.1", 0);
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { server_.Run(); });
    server_.WaitUntilReady();
  }
  ~Server() {
    server_.Stop();
    thread_.join();
  }
  int port() const { return port_; }

 private:
  ReviewServer server_;
  int port_ = -1;
  std::thread thread_;
};

Json Body(const httplib::Result &res) { return Json::parse(res->body); }

TEST_CASE("review API: approve, conflict, reject and errors") {
  Fixture fx;
  ReviewStore store(fx.cftr, fx.kb_dir, Fixture::Clock);
  store.Enqueue(fx.Items());
  Server server(&store);
  httplib::Client client("127.0.0.1", server.port());

  auto res = client.Get("/api/stats");
  REQUIRE(res);
  CHECK(res->status == 200);
  const long kb_before = Body(res)["kb_facts"];

  res = client.Get("/api/queue");
  REQUIRE(res);
  Json items = Body(res)["items"];
  REQUIRE(items.size() == 3);
  const int first = items[0]["id"];
  const int second = items[1]["id"];

  const std::string approve = R"({"decision": "approve", "reviewer": "ana"})";
  res = client.Post("/api/items/" + std::to_string(first) + "/decision", approve,
                    "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(Body(res)["status"] == "approved");
  CHECK(Body(res)["reviewer"] == "ana");
  res = client.Get("/api/stats");
  CHECK(Body(res)["kb_facts"] == kb_before + 1);
  CHECK(Body(res)["approved"] == 1);

  res = client.Post("/api/items/" + std::to_string(first) + "/decision",
                    R"({"decision": "reject", "reviewer": "bo"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 409);
  CHECK(Body(res)["item"]["status"] == "approved");

  res = client.Post("/api/items/" + std::to_string(second) + "/decision",
                    R"({"decision": "reject", "reviewer": "bo"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  res = client.Get("/api/stats");
  CHECK(Body(res)["kb_facts"] == kb_before + 1);
  CHECK(Body(res)["rejected"] == 1);

  res = client.Get("/api/queue?status=all");
  CHECK(Body(res)["items"].size() == 3);
  res = client.Get("/api/queue?status=approved");
  CHECK(Body(res)["items"].size() == 1);
  CHECK(client.Get("/api/queue?status=bogus")->status == 400);
  CHECK(client.Get("/api/queue?limit=x")->status == 400);

  CHECK(client.Get("/api/items/" + std::to_string(first))->status == 200);
  CHECK(client.Get("/api/items/999")->status == 404);
  CHECK(client.Get("/api/items/abc")->status == 404);
  CHECK(client.Post("/api/items/999/decision", approve, "application/json")->status == 404);
  CHECK(client.Post("/api/items/1/decision", "not json", "application/json")->status == 400);
  CHECK(client.Post("/api/items/1/decision", R"({"decision": "maybe", "reviewer": "x"})",
                    "application/json")
            ->status == 400);
  CHECK(client.Post("/api/items/1/decision", R"({"decision": "approve"})", "application/json")
            ->status == 400);
}

}  // namespace
}  // namespace kbp
