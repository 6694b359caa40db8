// Copyright 2026 The seqdep Authors. All Rights Reserved.
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
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "seqdep/json_io.hpp"
#include "seqdep/service.hpp"
#include "support.hpp"

using namespace seqdep;
namespace fs = std::filesystem;

namespace {

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("seqdep-ws-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    fs::copy_file(fixture::data_path("demo.esd"), dir_ / "demo.esd");
  }
  void TearDown() override { fs::remove_all(dir_); }

  Service make(std::shared_ptr<Transport> transport = nullptr) {
    ServiceConfig c;
    c.workspace = dir_;
    c.transport = std::move(transport);
    return Service(c);
  }

  static Json body(const HttpReply& r) {
    Json j = Json::parse(r.body);
    EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
    return j;
  }

  void write(const std::string& rel, const std::string& text) {
    std::ofstream(dir_ / rel, std::ios::binary) << text;
  }

  fs::path dir_;
};

std::string demo_text() { return read_text_file(fixture::data_path("demo.esd")); }

}  // namespace

TEST_F(ServiceTest, ListsUseCases) {
  auto s = make();
  const auto r = s.list_usecases();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(body(r).at("data"), Json::array({"Demo"}));
}

TEST_F(ServiceTest, UseCaseModelAndEdg) {
  auto s = make();
  const auto uc = s.get_usecase("Demo");
  ASSERT_EQ(uc.status, 200);
  EXPECT_EQ(body(uc).at("file"), "demo.esd");
  EXPECT_EQ(body(uc).at("body").size(), 3u);
  const auto edg = s.get_edg("Demo");
  ASSERT_EQ(edg.status, 200);
  EXPECT_EQ(body(edg).at("nodes").size(), 6u);

  const auto missing = s.get_usecase("Nope");
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(body(missing).at("diagnostics")[0].at("code"), "E_LOOKUP");
  EXPECT_EQ(s.get_edg("Nope").status, 404);
}

TEST_F(ServiceTest, Prune) {
  auto s = make();
  const auto r = s.get_prune("Demo", "m2");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(body(r).at("members"), Json::array({"@input", "m1", "f1"}));
  EXPECT_DOUBLE_EQ(body(r).at("ratio").get<double>(), 0.6);
  EXPECT_EQ(s.get_prune("Demo", std::nullopt).status, 400);
  const auto unknown = s.get_prune("Demo", "zz");
  EXPECT_EQ(unknown.status, 400);
  EXPECT_EQ(body(unknown).at("diagnostics")[0].at("code"), "E_LOOKUP");
  EXPECT_EQ(s.get_prune("Demo", "@input").status, 400);
}

TEST_F(ServiceTest, InferTargetWithRuleEngine) {
  auto s = make();
  const auto r = s.post_infer(R"({"usecase":"Demo","target":"m2","engine":"rule"})");
  ASSERT_EQ(r.status, 200) << r.body;
  const Json j = body(r);
  EXPECT_EQ(j.at("edges").size(), 2u);
  EXPECT_TRUE(j.at("diagnostics").empty());
  EXPECT_EQ(j.at("context"), Json::array({"@input", "m1", "f1"}));
  for (const auto& e : j.at("edges")) EXPECT_EQ(e.at("source"), "@input");
}

TEST_F(ServiceTest, InferWholeUseCase) {
  auto s = make();
  const Json j = body(s.post_infer(R"({"usecase":"Demo"})"));
  EXPECT_EQ(j.at("edges").size(), 5u);
  ASSERT_EQ(j.at("diagnostics").size(), 1u);
  EXPECT_EQ(j.at("diagnostics")[0].at("code"), "E_MISSING_SOURCE");
  EXPECT_EQ(j.at("diagnostics")[0].at("node"), "r_err");
  EXPECT_EQ(j.at("engine"), "rule");
}

TEST_F(ServiceTest, InferRejectsBadRequests) {
  auto s = make();
  const auto unknown = s.post_infer(R"({"usecase":"Demo","target":"zz","engine":"rule"})");
  EXPECT_EQ(unknown.status, 400);
  EXPECT_EQ(body(unknown).at("diagnostics")[0].at("code"), "E_LOOKUP");
  for (const char* bad : {"{", "[]", R"({"target":"m2"})", R"({"usecase":3})",
                          R"({"usecase":"Demo","engine":"magic"})", R"({"usecase":"Demo","engine":"llm"})"}) {
    const auto r = s.post_infer(bad);
    EXPECT_EQ(r.status, 400) << bad;
    EXPECT_EQ(body(r).at("diagnostics")[0].at("code"), "E_USAGE") << bad;
  }
  EXPECT_EQ(s.post_infer(R"({"usecase":"Nope"})").status, 404);
}

TEST_F(ServiceTest, InferWithReplayTransport) {
  auto s = make(std::make_shared<ReplayTransport>(fixture::data_path("replay/demo-valid")));
  const Json j = body(s.post_infer(R"({"usecase":"Demo","target":"m2","engine":"llm"})"));
  EXPECT_EQ(j.at("edges").size(), 1u);
  EXPECT_TRUE(j.at("diagnostics").empty());
}

TEST_F(ServiceTest, InferAllWithLlmReportsMissingSources) {
  auto s = make(std::make_shared<StubTransport>("[]"));
  const Json j = body(s.post_infer(R"({"usecase":"Demo","engine":"llm"})"));
  EXPECT_TRUE(j.at("edges").empty());
  // Every consumed entity is now uncovered: m1 1, f1 1, m2 2, r_err 1, r_ok 1.
  EXPECT_EQ(j.at("diagnostics").size(), 6u);
}

TEST_F(ServiceTest, ParseEndpoint) {
  auto s = make();
  const Json good = body(s.post_parse(Json{{"text", demo_text()}}.dump()));
  EXPECT_TRUE(good.at("ok"));
  EXPECT_EQ(good.at("usecases")[0].at("name"), "Demo");
  const Json empty = body(s.post_parse(R"({"text":""})"));
  EXPECT_FALSE(empty.at("ok"));
  EXPECT_EQ(empty.at("diagnostics")[0].at("code"), "E_PARSE");
  EXPECT_NE(empty.at("diagnostics")[0].at("message").get<std::string>().find("1:1"), std::string::npos);
  EXPECT_EQ(s.post_parse(R"({"txt":""})").status, 400);
}

TEST_F(ServiceTest, EvalEndpoint) {
  auto s = make();
  const std::string edges = R"([{"source":"@input","data":"user_id","target":"m1","category":"api"}])";
  const Json j = body(s.post_eval(R"({"usecase":"Demo","predicted":)" + edges + R"(,"gold":)" + edges + "}"));
  EXPECT_DOUBLE_EQ(j.at("macro").at("overall").at("f1").get<double>(), 1.0);
  EXPECT_EQ(j.at("per_usecase").at("Demo").at("api").at("tp"), 1);
  EXPECT_EQ(s.post_eval(R"({"usecase":"Demo","predicted":[]})").status, 400);
  EXPECT_EQ(s.post_eval(R"({"usecase":"Demo","predicted":[{"source":1}],"gold":[]})").status, 400);
}

TEST_F(ServiceTest, RepeatedRequestsAreByteIdentical) {
  auto s = make();
  EXPECT_EQ(s.post_infer(R"({"usecase":"Demo"})").body, s.post_infer(R"({"usecase":"Demo"})").body);
  EXPECT_EQ(s.get_edg("Demo").body, s.get_edg("Demo").body);
}

TEST_F(ServiceTest, ReloadsChangedFiles) {
  auto s = make();
  EXPECT_EQ(body(s.list_usecases()).at("data"), Json::array({"Demo"}));
  std::string other = demo_text();
  other.replace(other.find("\"Demo\""), 6, "\"Other\"");
  fs::create_directories(dir_ / "sub");
  write("sub/other.esd", other);
  write("broken.esd", "usecase {");
  EXPECT_EQ(body(s.list_usecases()).at("data"), Json::array({"Demo", "Other"}));

  std::string renamed = demo_text();
  renamed.replace(renamed.find("\"Demo\""), 6, "\"Renamed\"");
  write("demo.esd", renamed);
  EXPECT_EQ(body(s.list_usecases()).at("data"), Json::array({"Other", "Renamed"}));
  fs::remove(dir_ / "sub/other.esd");
  EXPECT_EQ(body(s.list_usecases()).at("data"), Json::array({"Renamed"}));
}

TEST_F(ServiceTest, ConcurrentRequestsDuringEdits) {
  auto s = make();
  std::atomic<int> bad{0};
  std::atomic<bool> stop{false};
  std::thread writer([&] {
    for (int i = 0; i < 30; ++i) write("extra.esd", i % 2 ? demo_text() + "\n" : std::string("oops"));
    stop = true;
  });
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t)
    readers.emplace_back([&] {
      while (!stop)
        if (s.post_infer(R"({"usecase":"Demo","target":"m2"})").status != 200) ++bad;
    });
  writer.join();
  for (auto& th : readers) th.join();
  EXPECT_EQ(bad, 0);
}

TEST(Workspace, RejectsMissingDirectory) {
  EXPECT_THROW(Workspace("/nonexistent/seqdep"), std::invalid_argument);
}

TEST_F(ServiceTest, ServesOverHttp) {
  auto s = make();
  httplib::Server server;
  s.install(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto list = client.Get("/api/usecases");
  ASSERT_TRUE(list);
  EXPECT_EQ(list->status, 200);
  EXPECT_EQ(list->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(Json::parse(list->body).at("data"), Json::array({"Demo"}));

  auto prune = client.Get("/api/usecase/Demo/prune?target=r_ok");
  ASSERT_TRUE(prune);
  EXPECT_DOUBLE_EQ(Json::parse(prune->body).at("ratio").get<double>(), 0.8);

  auto infer = client.Post("/api/infer", R"({"usecase":"Demo","target":"m2","engine":"rule"})", "application/json");
  ASSERT_TRUE(infer);
  EXPECT_EQ(Json::parse(infer->body).at("edges").size(), 2u);

  auto bad = client.Post("/api/infer", "not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto none = client.Get("/api/nothing");
  ASSERT_TRUE(none);
  EXPECT_EQ(none->status, 404);
  EXPECT_EQ(Json::parse(none->body).at("schema_version"), kSchemaVersion);

  server.stop();
  th.join();
}
