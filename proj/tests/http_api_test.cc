#include <gtest/gtest.h>

#include <httplib.h>

#include <sstream>
#include <thread>

#include "atgen/cli.h"
#include "atgen/http_api.h"
#include "support/fixtures.h"

namespace atgen {
namespace {

namespace fs = std::filesystem;

const std::string kCtx = "fe1/st-operating/md-engine-running";
const std::string kSource = kCtx + "/HW/cmp-brake-pedal/MAT-MOD/ts-chauffeur";

// A writable copy of the running example: architecture and overlay live in
// a scratch directory, the rest is read from the shipped data.
fs::path make_project() {
  fs::path dir = testing::scratch_dir("http");
  fs::path data = testing::running_example();
  fs::copy_file(data / "architecture.json", dir / "architecture.json");
  json bundle = {{"format_version", 1},
                 {"architecture", "architecture.json"},
                 {"study", (data / "study.json").string()},
                 {"kb", (data / "kb.json").string()},
                 {"config", (data / "config.json").string()},
                 {"overlay", "overlay.json"},
                 {"output", "out"}};
  std::ofstream(dir / "bundle.json") << bundle.dump(2);
  return dir;
}

class Http : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = make_project();
    server_ = std::make_unique<ReviewServer>(load_bundle(dir_));
    port_ = server_->bind_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_->stop();
    thread_.join();
    fs::remove_all(dir_);
  }

  json get_json(const std::string& path, int expect = 200) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << path << " " << res->body;
    return json::parse(res->body);
  }

  int put(const std::string& path, const std::string& body) {
    auto res = client_->Put("/annotation/" + path, body, "application/json");
    return res ? res->status : -1;
  }

  fs::path dir_;
  std::unique_ptr<ReviewServer> server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

const json* node_at(const json& tree, const std::string& path) {
  for (const json& n : tree["nodes"])
    if (n["path"] == path) return &n;
  return nullptr;
}

TEST_F(Http, GetTree) {
  json tree = get_json("/tree/fe1");
  EXPECT_EQ(tree["feared_event"], "fe1");
  EXPECT_EQ(tree["nodes"].size(), 80u);
  EXPECT_TRUE(tree["orphaned_annotations"].empty());
  json report = get_json("/report/fe1");
  EXPECT_EQ(report["added"].size(), 80u);
}

TEST_F(Http, UnknownEventIs404) {
  get_json("/tree/fe9", 404);
  get_json("/report/fe9", 404);
}

TEST_F(Http, ClosingAThreatSourceIsVisibleAndPersisted) {
  EXPECT_EQ(put(kSource, R"({"decision": "closed", "comment": "not credible"})"), 200);
  json tree = get_json("/tree/fe1");
  const json* n = node_at(tree, kSource);
  ASSERT_TRUE(n);
  EXPECT_EQ((*n)["annotation"]["decision"], "closed");
  EXPECT_EQ((*n)["annotation"]["comment"], "not credible");
  Overlay saved = overlay_from_json(read_json_file(dir_ / "overlay.json"), "o");
  EXPECT_EQ(saved.at(kSource).decision, Decision::kClosed);
  EXPECT_FALSE(fs::exists(dir_ / "overlay.json.tmp"));
}

TEST_F(Http, BadAnnotationsAreRejected) {
  EXPECT_EQ(put(kCtx + "/nowhere", R"({"decision": "closed"})"), 404);
  EXPECT_EQ(put(kSource, "not json"), 400);
  EXPECT_EQ(put(kSource, R"({"comment": "no decision"})"), 400);
  EXPECT_EQ(put(kSource, R"({"decision": "maybe"})"), 400);
  EXPECT_EQ(put(kSource, R"({"decision": "open", "color": 7})"), 400);
  EXPECT_FALSE(fs::exists(dir_ / "overlay.json"));
}

TEST_F(Http, ConcurrentWriteGets409) {
  {
    auto hold = server_->hold_writes();
    EXPECT_EQ(put(kSource, R"({"decision": "closed"})"), 409);
    auto res = client_->Post("/regenerate");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 409);
  }
  EXPECT_EQ(put(kSource, R"({"decision": "closed"})"), 200);
}

TEST_F(Http, RegenerateMatchesCli) {
  // CLI reference: generate on the original, regen on the renamed fixture.
  fs::path ref = dir_ / "cli";
  std::ostringstream out, err;
  std::vector<std::string> gen{"atgen", "generate", testing::running_example().string(),
                               "--feared-event", "fe1", "--out", ref.string()};
  std::vector<std::string> regen{"atgen", "regen", testing::fixture("rename").string(),
                                 "--against", (ref / "fe1.tree.json").string(),
                                 "--out", (ref / "next").string()};
  for (auto* args : {&gen, &regen}) {
    std::vector<const char*> argv;
    for (const auto& a : *args) argv.push_back(a.c_str());
    ASSERT_EQ(run_cli(static_cast<int>(argv.size()), argv.data(), out, err), 0) << err.str();
  }
  json cli_report = read_json_file(ref / "next" / "fe1.report.json");

  EXPECT_EQ(put(kSource, R"({"decision": "developed"})"), 200);
  fs::copy_file(testing::fixture("rename") / "architecture.json",
                dir_ / "architecture.json", fs::copy_options::overwrite_existing);
  auto res = client_->Post("/regenerate");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  json body = json::parse(res->body);
  EXPECT_EQ(body["reports"]["fe1"]["relabeled"], cli_report["relabeled"]);
  EXPECT_EQ(body["reports"]["fe1"]["relabeled"].size(), 1u);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "fe1.tree.json"));

  json tree = get_json("/tree/fe1");
  EXPECT_EQ((*node_at(tree, kSource))["annotation"]["decision"], "developed");
  EXPECT_EQ((*node_at(tree, kCtx + "/HW/cmp-brake-pedal"))["label"],
            "Attack on Brake Pedal Unit (Hardware) [Operating / Engine Running]");
  EXPECT_EQ(get_json("/report/fe1")["relabeled"], cli_report["relabeled"]);
}

TEST_F(Http, RegenerateWithBrokenModelIs422) {
  std::ofstream(dir_ / "architecture.json") << "{ broken";
  auto res = client_->Post("/regenerate");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 422);
  EXPECT_EQ(get_json("/tree/fe1")["nodes"].size(), 80u);
}

TEST_F(Http, RestartRegeneratesAgainstWrittenTrees) {
  auto res = client_->Post("/regenerate");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  fs::copy_file(testing::fixture("rename") / "architecture.json",
                dir_ / "architecture.json", fs::copy_options::overwrite_existing);
  ReviewServer second(load_bundle(dir_));
  int port = second.bind_any_port("127.0.0.1");
  std::thread t([&] { second.listen_after_bind(); });
  second.wait_until_ready();
  httplib::Client c("127.0.0.1", port);
  auto report = c.Get("/report/fe1");
  ASSERT_TRUE(report);
  EXPECT_EQ(json::parse(report->body)["relabeled"].size(), 1u);
  second.stop();
  t.join();
}

}  // namespace
}  // namespace atgen
