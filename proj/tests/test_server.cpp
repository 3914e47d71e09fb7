#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "mcsp/server.hpp"

using namespace mcsp;
using J = nlohmann::json;

namespace {

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ServerOptions opts;
    opts.lts_limits = ExploreLimits{50, 1000};
    install_routes(server_, store_, opts);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  httplib::Result post(const std::string& path, const J& body) {
    return client_->Post(path, body.dump(), "application/json");
  }

  std::string create(const std::string& source, const std::string& name) {
    auto r = post("/sessions", {{"source", source}, {"name", name}});
    EXPECT_TRUE(r);
    EXPECT_EQ(r->status, 201) << r->body;
    return J::parse(r->body)["id"];
  }

  SessionStore store_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace

TEST_F(ServerTest, CreateAndStep) {
  auto r = post("/sessions", {{"source", "P : Unit = a -> STOP"}, {"name", "P"}});
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 201);
  J created = J::parse(r->body);
  std::string id = created["id"];
  EXPECT_EQ(created["state"]["term"], "P");
  EXPECT_EQ(created["state"]["choices"], J::parse(R"([{"kind":"ext","index":0,"label":"a"}])"));
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");

  auto s = post("/sessions/" + id + "/step", {{"kind", "ext"}, {"index", 0}});
  ASSERT_TRUE(s);
  ASSERT_EQ(s->status, 200) << s->body;
  J state = J::parse(s->body);
  EXPECT_EQ(state["term"], "STOP");
  EXPECT_EQ(state["historyTrace"], J::array({"a"}));
  EXPECT_EQ(state["status"], "running");
  EXPECT_TRUE(state["choices"].empty());
  EXPECT_EQ(state["refusalComplement"], J::array({"a"}));

  auto g = client_->Get("/sessions/" + id);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->status, 200);
  EXPECT_EQ(J::parse(g->body), state);
}

TEST_F(ServerTest, TickAndUndo) {
  std::string id = create("P : {u, w} = a -> SKIP u", "P");
  post("/sessions/" + id + "/step", {{"kind", "ext"}, {"index", 0}});
  auto t = post("/sessions/" + id + "/step", {{"kind", "tick"}, {"index", 0}});
  ASSERT_EQ(t->status, 200) << t->body;
  J state = J::parse(t->body);
  EXPECT_EQ(state["status"], "terminated");
  EXPECT_EQ(state["value"], "u");

  auto u1 = post("/sessions/" + id + "/undo", J::object());
  ASSERT_EQ(u1->status, 200);
  EXPECT_EQ(J::parse(u1->body)["term"], "SKIP u");
  post("/sessions/" + id + "/undo", J::object());
  auto u3 = post("/sessions/" + id + "/undo", J::object());
  EXPECT_EQ(u3->status, 400);
}

TEST_F(ServerTest, BadRequests) {
  std::string id = create("P : Unit = a -> STOP", "P");
  EXPECT_EQ(post("/sessions/" + id + "/step", {{"kind", "ext"}, {"index", 3}})->status, 400);
  EXPECT_EQ(post("/sessions/" + id + "/step", {{"kind", "int"}, {"index", 0}})->status, 400);
  EXPECT_EQ(post("/sessions/" + id + "/step", {{"kind", "jump"}, {"index", 0}})->status, 400);
  EXPECT_EQ(post("/sessions/" + id + "/step", {{"kind", "ext"}, {"index", "0"}})->status, 400);
  EXPECT_EQ(client_->Post("/sessions/" + id + "/step", "not json", "application/json")->status, 400);
  EXPECT_EQ(post("/sessions", {{"source", "P : Unit = STOP"}})->status, 400);
  EXPECT_EQ(J::parse(client_->Get("/sessions/" + id)->body)["steps"], 0);
}

TEST_F(ServerTest, RejectedSources) {
  auto r = post("/sessions", {{"source", "P : Unit = P"}, {"name", "P"}});
  ASSERT_EQ(r->status, 422);
  J body = J::parse(r->body);
  ASSERT_EQ(body["diagnostics"].size(), 1u);
  EXPECT_EQ(body["diagnostics"][0]["kind"], "unguarded");
  EXPECT_EQ(body["diagnostics"][0]["definition"], "P");

  auto s = post("/sessions", {{"source", "P : Unit = a ->"}, {"name", "P"}});
  ASSERT_EQ(s->status, 422);
  EXPECT_EQ(J::parse(s->body)["diagnostics"][0]["kind"], "syntax");

  EXPECT_EQ(post("/sessions", {{"source", "P : Unit = STOP"}, {"name", "Q"}})->status, 422);
}

TEST_F(ServerTest, UnknownAndDeleted) {
  EXPECT_EQ(client_->Get("/sessions/deadbeef")->status, 404);
  EXPECT_EQ(post("/sessions/deadbeef/step", {{"kind", "ext"}, {"index", 0}})->status, 404);
  std::string id = create("P : Unit = STOP", "P");
  EXPECT_EQ(store_.size(), 1u);
  EXPECT_EQ(client_->Delete("/sessions/" + id)->status, 204);
  EXPECT_EQ(client_->Get("/sessions/" + id)->status, 404);
  EXPECT_EQ(client_->Delete("/sessions/" + id)->status, 404);
}

TEST_F(ServerTest, Lts) {
  std::string id = create("PI : Unit + Unit = (a -> SKIP tt) |~| (b -> SKIP tt)", "PI");
  auto r = client_->Get("/sessions/" + id + "/lts");
  ASSERT_EQ(r->status, 200);
  J l = J::parse(r->body);
  EXPECT_EQ(l["complete"], true);
  EXPECT_EQ(l["initial"], 0);
  EXPECT_EQ(l["states"][0]["term"], "PI");
  std::size_t taus = 0, ticks = 0;
  for (const auto& e : l["edges"]) {
    taus += e["kind"] == "tau";
    ticks += e["kind"] == "tick";
  }
  EXPECT_EQ(taus, 2u);
  EXPECT_EQ(ticks, 2u);

  std::string inf = create("N : Unit = a -> (N >>= { tt -> b -> SKIP tt })", "N");
  J big = J::parse(client_->Get("/sessions/" + inf + "/lts")->body);
  EXPECT_EQ(big["complete"], false);
  EXPECT_LE(big["states"].size(), 50u);
}

TEST_F(ServerTest, Preflight) {
  auto r = client_->Options("/sessions");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_NE(r->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);
}
