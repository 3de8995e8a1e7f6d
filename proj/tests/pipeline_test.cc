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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "kbp/pipeline.h"
#include "test_util.h"

namespace kbp {
namespace {

using testing::SourcePath;
using testing::TempDir;

namespace fs = std::filesystem;

const std::vector<std::string> kOutputs = {
    "linked.jsonl", "ds_instances.jsonl", "stats.json",  "extracted.cftr",
    "canonicalized.cftr", "fused.cftr", "report.json", "sweep.csv",
    "status.json", "summary.json"};

PipelineConfig Synthetic(const std::string &output_dir) {
  PipelineConfig config = LoadPipelineConfig(SourcePath("data/synthetic/config.json"));
  config.output_dir = output_dir;
  return config;
}

Json BaseConfig() {
  return {{"corpus", "c.jsonl"}, {"kb", "kb"}, {"output_dir", "out"},
          {"extractors", {"predpatt"}}};
}

std::string ConfigErrorOf(const Json &json) {
  try {
    ParsePipelineConfig(json, "/base");
  } catch (const ConfigError &e) {
    return e.what();
  }
  return "";
}

TEST_CASE("config paths resolve against the config directory") {
  PipelineConfig config = ParsePipelineConfig(BaseConfig(), "/base");
  CHECK(config.corpus == "/base/c.jsonl");
  CHECK(config.output_dir == "/base/out");
  CHECK(config.threshold == 0.9);
  CHECK(config.gold.empty());
}

TEST_CASE("config errors") {
  Json json = BaseConfig();
  json["extractors"] = Json::array();
  CHECK(ConfigErrorOf(json).find("no extractors") != std::string::npos);

  json = BaseConfig();
  json["extractors"] = {"predpatt", "bogus"};
  CHECK(ConfigErrorOf(json).find("bogus") != std::string::npos);

  json = BaseConfig();
  json["extractors"] = {"psie", "psie"};
  CHECK(ConfigErrorOf(json).find("twice") != std::string::npos);

  json = BaseConfig();
  json["threshold"] = 1.5;
  CHECK(ConfigErrorOf(json).find("threshold") != std::string::npos);

  json = BaseConfig();
  json["sweep"] = {0.5, 0.2};
  CHECK(ConfigErrorOf(json).find("ascending") != std::string::npos);

  json = BaseConfig();
  json["treshold"] = 0.5;
  CHECK(ConfigErrorOf(json).find("treshold") != std::string::npos);

  json = BaseConfig();
  json["confidences"] = {{"psie", "high"}};
  CHECK_FALSE(ConfigErrorOf(json).empty());

  json = BaseConfig();
  json.erase("corpus");
  CHECK(ConfigErrorOf(json).find("corpus") != std::string::npos);
}

TEST_CASE("parallel runs reproduce the serial outputs byte for byte") {
  TempDir serial, parallel;
  RunResult a = RunPipeline(Synthetic(serial.path()), {1, false});
  RunResult b = RunPipeline(Synthetic(parallel.path()), {4, false});
  CHECK_FALSE(a.skipped);
  CHECK(a.summary == b.summary);
  for (const std::string &name : kOutputs) {
    CAPTURE(name);
    CHECK(ReadFile(serial / name) == ReadFile(parallel / name));
  }
  Json expected = Json::parse(ReadFile(SourcePath("data/synthetic/expected_summary.json")));
  CHECK(a.summary == expected);
}

TEST_CASE("a completed run is not repeated without force") {
  TempDir out;
  RunPipeline(Synthetic(out.path()), {1, false});
  const auto stamp = fs::last_write_time(out / "linked.jsonl");
  RunResult again = RunPipeline(Synthetic(out.path()), {1, false});
  CHECK(again.skipped);
  CHECK(fs::last_write_time(out / "linked.jsonl") == stamp);
  CHECK(again.summary == Json::parse(ReadFile(out / "summary.json")));

  RunResult forced = RunPipeline(Synthetic(out.path()), {1, true});
  CHECK_FALSE(forced.skipped);
  CHECK(forced.summary == again.summary);
}

TEST_CASE("a failing stage is named and earlier outputs are listed") {
  TempDir out;
  PipelineConfig config = Synthetic(out / "run");
  const std::string rules = out / "bad.tokpat";
  std::ofstream(rules) << "rule broken -> fkgo:capital : (SUBJ: .\n";
  config.rules = rules;
  try {
    RunPipeline(config, {1, false});
    FAIL("expected a stage error");
  } catch (const StageError &e) {
    CHECK(e.stage() == "extract");
  }
  Json status = Json::parse(ReadFile(out / "run/status.json"));
  CHECK(status["status"] == "failed");
  CHECK(status["failed_stage"] == "extract");
  REQUIRE(status["completed"].size() == 3);
  CHECK(status["completed"][2]["output"] == "stats.json");
  CHECK_FALSE(fs::exists(out / "run/summary.json"));

  config.corpus = out / "missing.jsonl";
  try {
    RunPipeline(config, {1, false});
    FAIL("expected a stage error");
  } catch (const StageError &e) {
    CHECK(e.stage() == "load");
  }
}

TEST_CASE("only the configured extractors run") {
  TempDir out;
  PipelineConfig config = Synthetic(out.path());
  config.extractors = {"tokpat"};
  config.sweep.clear();
  RunResult result = RunPipeline(config, {2, false});
  CHECK(result.summary["extracted"].size() == 1);
  CHECK(result.summary["extracted"].contains("tokpat"));
  CHECK_FALSE(result.summary.contains("sweep_accepted"));
  for (const CftrRecord &r : CftrScan(out / "extracted.cftr")) {
    CHECK(r.triple.extractor == "tokpat");
  }
}

}  // namespace
}  // namespace kbp
