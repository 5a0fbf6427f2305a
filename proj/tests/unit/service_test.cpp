#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

#include "fixtures.hpp"
#include "grefute/prover.hpp"
#include "grefute/service.hpp"

using namespace grefute;

namespace {

struct Call {
  int status;
  Json body;
};

Call call(Service& s, const std::string& method, const std::string& path, const Json& body = Json::object()) {
  HttpReply r = s.handle(method, path, body.dump());
  Json j = r.content_type == "application/json" ? Json::parse(r.body) : Json(r.body);
  return {r.status, j};
}

Call create(Service& s, const char* problem) { return call(s, "POST", "/sessions", {{"problem", problem}}); }

// The complemented rho-slice nested in the second box, glued between w and w'.
Json rho_pair_choice(const Json& view) {
  const Json& sl = view["slices"][0];
  std::string w, wp;
  for (const Json& a : sl["slice"]["arcs"]) {
    if (a["expr"]["kind"] != "pred") continue;
    if (a["expr"]["name"] == "r") w = a["args"][1];
    if (a["expr"]["name"] == "t") wp = a["args"][0];
  }
  for (const Json& t : sl["templates"]) {
    const Json& arcs = t["t"]["arcs"];
    if (t["arity"] == 2 && arcs.size() == 1 && arcs[0]["expr"]["kind"] == "pred")
      return {{"slice", sl["id"]}, {"template", t["index"]}, {"v", {w, wp}}};
  }
  FAIL("no rho template");
  return {};
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("grefute-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("creating sessions") {
  Service s;
  Call e = create(s, gt::kTwoBoxes);
  REQUIRE(e.status == 201);
  CHECK(e.body["status"] == "OPEN");
  REQUIRE(e.body["slices"].size() == 1);
  CHECK(e.body["slices"][0]["complementedArcs"].size() == 2);
  CHECK(e.body["slices"][0]["templates"].size() >= 2);
  CHECK(e.body.contains("initial"));

  Call one = create(s, gt::kConjunctionElim);
  CHECK(one.body["status"] == "REFUTED");
  CHECK(one.body["slices"].empty());
  CHECK(one.body["events"].size() == 1);

  Call f = call(s, "POST", "/sessions", {{"premises", Json::array()}, {"conclusion", "false"}});
  REQUIRE(f.status == 201);
  CHECK(f.body["status"] != "REFUTED");
  if (f.body["status"] == "OPEN") {
    Call a = call(s, "POST", "/sessions/" + f.body["id"].get<std::string>() + "/auto", Json::object());
    CHECK(a.body["status"] == "SATURATED");
  }

  Call list = call(s, "GET", "/sessions");
  CHECK(list.status == 200);
  CHECK(list.body.size() == 3);
  CHECK(s.session_count() == 3);
}

TEST_CASE("the single expansion refutes") {
  Service s;
  Call c = create(s, gt::kTwoBoxes);
  std::string id = c.body["id"];
  Call x = call(s, "POST", "/sessions/" + id + "/expand", rho_pair_choice(c.body));
  REQUIRE(x.status == 200);
  CHECK(x.body["status"] == "REFUTED");
  CHECK(x.body["erased"].size() == 2);
  CHECK(x.body["removed"] == Json::array({"0"}));
  Call again = call(s, "POST", "/sessions/" + id + "/expand", rho_pair_choice(c.body));
  CHECK(again.status == 409);
  CHECK(call(s, "POST", "/sessions/" + id + "/auto").status == 409);
}

TEST_CASE("expanding with an arcless slice") {
  Service s;
  Call c = create(s, gt::kTwoBoxes);
  std::string id = c.body["id"];
  Json arcless = {{"kind", "slice"}, {"nodes", {"a"}}, {"arcs", Json::array()}, {"dist", {"a"}}};
  Call x = call(s, "POST", "/sessions/" + id + "/expand", {{"slice", "0"}, {"t", arcless}, {"v", {"u"}}});
  REQUIRE(x.status == 200);
  CHECK(x.body["status"] == "OPEN");
  REQUIRE(x.body["erased"].size() == 1);
  CHECK(x.body["erased"][0]["id"] == "0.1");
  REQUIRE(x.body["added"].size() == 1);
  CHECK(x.body["added"][0]["id"] == "0.0");

  Json formula_arc = {{"kind", "slice"},
                      {"nodes", {"a"}},
                      {"arcs", {{{"expr", {{"kind", "formula"}, {"text", "p(a)"}}}, {"args", {"a"}}}}},
                      {"dist", {"a"}}};
  Call y = call(s, "POST", "/sessions/" + id + "/expand", {{"slice", "0.0"}, {"t", formula_arc}, {"v", {"u"}}});
  CHECK(y.status == 409);
  CHECK(call(s, "POST", "/sessions/" + id + "/graph").status == 405);
}

TEST_CASE("right branch is erased when the left adds nothing") {
  Service s;
  Call c = call(s, "POST", "/sessions", {{"premises", {"p(a) & ~(exists y. q(y))"}}, {"conclusion", "r(a)"}});
  REQUIRE(c.status == 201);
  std::string id = c.body["id"];
  REQUIRE(c.body["slices"].size() == 1);
  const Json& sl = c.body["slices"][0];
  // the 0-ary q-slice: glued copy is consistent, the complemented copy repeats an arc
  bool tried = false;
  for (const Json& t : sl["templates"]) {
    if (t["arity"] != 0) continue;
    tried = true;
    Call x = call(s, "POST", "/sessions/" + id + "/expand", {{"slice", sl["id"]}, {"template", t["index"]}, {"v", Json::array()}});
    REQUIRE(x.status == 200);
    CHECK(x.body["erased"].size() >= 1);
    break;
  }
  CHECK(tried);
}

TEST_CASE("auto steps") {
  Service s;
  Call two = create(s, gt::kUnrelatedNames);
  std::string id = two.body["id"];
  Call z = call(s, "POST", "/sessions/" + id + "/auto", {{"maxExpansions", 0}});
  CHECK(z.status == 200);
  CHECK(z.body["events"].empty());
  CHECK(z.body["status"] == two.body["status"]);
  if (two.body["status"] == "OPEN") {
    Call a = call(s, "POST", "/sessions/" + id + "/auto", Json::object());
    CHECK(a.body["status"] == "SATURATED");
    CHECK(a.body.contains("model"));
  } else {
    CHECK(two.body["status"] == "SATURATED");
  }
  Call g = call(s, "GET", "/sessions/" + id);
  CHECK(g.body["status"] == "SATURATED");
  REQUIRE(g.body.contains("model"));
  CHECK(g.body["model"]["universe"] == Json::array({"u", "v"}));
  CHECK(g.body["model"]["interp"]["p/1"] == Json::parse(R"([["u"]])"));

  Call large_consequence = call(s, "POST", "/sessions", {{"premises", {gt::kLargePremise}}, {"conclusion", gt::kLargeConclusion}});
  CHECK(large_consequence.body["status"] == "REFUTED");
  for (const Json& e : large_consequence.body["events"]) CHECK_FALSE(e.contains("expand"));

  Call chain = create(s, "forall x. (p(x) -> q(x))\nforall x. (q(x) -> s(x))\np(a)\n|- s(a)\n");
  std::string cid = chain.body["id"];
  Call step = call(s, "POST", "/sessions/" + cid + "/auto", {{"maxExpansions", 100}});
  CHECK(step.body["status"] == "REFUTED");
  CHECK(step.body.contains("stats"));

  Call hard = create(s, "forall x. exists y. r(x,y)\n|- exists x. r(x,x)\n");
  std::string hid = hard.body["id"];
  Call lim = call(s, "POST", "/sessions/" + hid + "/auto", {{"maxSliceNodes", 3}});
  CHECK(lim.body["status"] == "EXHAUSTED");
  CHECK(call(s, "POST", "/sessions/" + hid + "/auto").status == 409);
}

TEST_CASE("error replies") {
  Service s;
  Call bad = {0, {}};
  HttpReply r = s.handle("POST", "/sessions", "{not json");
  CHECK(r.status == 400);
  CHECK(Json::parse(r.body)["code"] == "bad_json");

  bad = call(s, "POST", "/sessions", {{"premises", {"p(u) &"}}});
  CHECK(bad.status == 400);
  CHECK(bad.body["code"] == "parse_error");
  CHECK(bad.body["locus"]["index"] == 0);

  CHECK(call(s, "GET", "/sessions/nope").status == 404);
  CHECK(call(s, "GET", "/elsewhere").status == 404);
  CHECK(call(s, "DELETE", "/sessions").status == 405);

  Call c = create(s, gt::kTwoBoxes);
  std::string id = c.body["id"];
  CHECK(call(s, "POST", "/sessions/" + id + "/expand", {{"slice", "9"}, {"arc", 0}}).status == 404);
  CHECK(call(s, "POST", "/sessions/" + id + "/expand", {{"slice", "0"}, {"template", 99}}).status == 409);
  Call arity = call(s, "POST", "/sessions/" + id + "/expand", {{"slice", "0"}, {"template", 0}, {"v", Json::array()}});
  CHECK(arity.status == 409);
  Call node = call(s, "POST", "/sessions/" + id + "/expand", {{"slice", "0"}, {"template", 0}, {"v", {"zz", "zz"}}});
  CHECK(node.status == 409);
  CHECK(call(s, "POST", "/sessions/" + id + "/expand", {{"slice", "0"}}).status == 400);
  CHECK(call(s, "POST", "/sessions/" + id + "/auto", {{"maxExpansions", -1}}).status == 400);
  for (const Call& e : {bad, arity, node}) {
    CHECK(e.body.contains("code"));
    CHECK(e.body.contains("message"));
  }
}

TEST_CASE("trace and render endpoints") {
  Service s;
  Call c = create(s, gt::kTwoBoxes);
  std::string id = c.body["id"];
  call(s, "POST", "/sessions/" + id + "/expand", rho_pair_choice(c.body));
  Call t = call(s, "GET", "/sessions/" + id + "/trace");
  REQUIRE(t.status == 200);
  DerivationTrace tr = trace_from_json(t.body["trace"]);
  CHECK(tr.events.size() == 3);
  HttpReply dot = s.handle("GET", "/sessions/" + id + "/render", "");
  CHECK(dot.status == 200);
  CHECK(dot.content_type == "text/vnd.graphviz");
  CHECK(dot.body.rfind("digraph", 0) == 0);
}

TEST_CASE("deltas replay to the current graph") {
  Service s;
  Call c = create(s, "forall x. (p(x) -> q(x))\nforall x. (q(x) -> s(x))\np(a)\n|- s(b)\n");
  std::string id = c.body["id"];
  LabelledSlices state;
  for (const Json& x : c.body["initial"]) state.emplace_back(x["id"], slice_from_json(x["slice"]));
  std::vector<DerivationEvent> evs;
  for (const Json& e : c.body["events"]) evs.push_back(event_from_json(e));
  state = replay_derivation(state, evs);
  for (int i = 0; i < 4; ++i) {
    Call g = call(s, "GET", "/sessions/" + id + "/graph");
    if (g.body["status"] != "OPEN") break;
    const Json& sl = g.body["slices"][0];
    if (sl["templates"].empty()) break;
    const Json& t = sl["templates"][0];
    Json v = Json::array();
    for (int k = 0; k < t["arity"].get<int>(); ++k) v.push_back(sl["nodes"][0]);
    Call x = call(s, "POST", "/sessions/" + id + "/expand", {{"slice", sl["id"]}, {"template", 0}, {"v", v}});
    REQUIRE(x.status == 200);
    std::vector<DerivationEvent> d;
    for (const Json& e : x.body["events"]) d.push_back(event_from_json(e));
    state = replay_derivation(state, d);
  }
  Call g = call(s, "GET", "/sessions/" + id + "/graph");
  Json mine = Json::array();
  for (const auto& [sid, sl] : state) mine.push_back(Json{{"id", sid}, {"slice", to_json(sl)}});
  Json theirs = Json::array();
  for (const Json& x : g.body["slices"]) theirs.push_back(Json{{"id", x["id"]}, {"slice", x["slice"]}});
  CHECK(mine.dump() == theirs.dump());
}

TEST_CASE("terminal states are final under random traffic") {
  Service s;
  std::mt19937 rng(3);
  const char* problems[] = {gt::kTwoBoxes, gt::kUnrelatedNames, gt::kExistentialIntro,
                            "forall x. (p(x) -> q(x))\np(a)\n|- q(b)\n"};
  for (int round = 0; round < 40; ++round) {
    Call c = create(s, problems[round % 4]);
    std::string id = c.body["id"];
    std::string status = c.body["status"];
    for (int k = 0; k < 12; ++k) {
      Call g = call(s, "GET", "/sessions/" + id);
      Call r{0, {}};
      if (rng() % 4 == 0) {
        r = call(s, "POST", "/sessions/" + id + "/auto", {{"maxExpansions", rng() % 3}});
      } else {
        Json choice = {{"slice", g.body["slices"].empty() ? "0" : g.body["slices"][0]["id"]},
                       {"template", rng() % 3}, {"v", {"u", "v"}}};
        if (rng() % 2) choice["v"] = Json::array({"u"});
        r = call(s, "POST", "/sessions/" + id + "/expand", choice);
      }
      std::string now = call(s, "GET", "/sessions/" + id).body["status"];
      if (status != "OPEN") {
        CHECK(now == status);
        CHECK(r.status == 409);
      }
      CHECK((r.status == 200 || r.status == 400 || r.status == 404 || r.status == 409 || r.status == 422));
      status = now;
    }
  }
}

TEST_CASE("journal reload") {
  auto dir = temp_dir("journal");
  std::string id, before;
  {
    Service s(dir);
    Call c = create(s, gt::kTwoBoxes);
    id = c.body["id"];
    call(s, "POST", "/sessions/" + id + "/expand", rho_pair_choice(c.body));
    create(s, gt::kUnrelatedNames);
    before = call(s, "GET", "/sessions/" + id).body.dump();
  }
  Service again(dir);
  CHECK(again.session_count() == 2);
  CHECK(call(again, "GET", "/sessions/" + id).body.dump() == before);
  Call fresh = create(again, gt::kConjunctionElim);
  CHECK(fresh.body["id"] == "s3");
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent sessions") {
  Service s;
  std::vector<std::thread> pool;
  std::atomic<int> refuted{0};
  for (int i = 0; i < 4; ++i)
    pool.emplace_back([&] {
      for (int k = 0; k < 5; ++k) {
        Call c = create(s, gt::kTwoBoxes);
        std::string id = c.body["id"];
        std::thread reader([&] {
          for (int j = 0; j < 20; ++j) CHECK(s.snapshot(id) != nullptr);
        });
        Call x = call(s, "POST", "/sessions/" + id + "/expand", rho_pair_choice(c.body));
        reader.join();
        if (x.body["status"] == "REFUTED") ++refuted;
      }
    });
  for (auto& t : pool) t.join();
  CHECK(refuted == 20);
  CHECK(s.session_count() == 20);
}

TEST_CASE("one session, many writers") {
  Service s;
  Call c = create(s, gt::kTwoBoxes);
  std::string id = c.body["id"];
  Json choice = rho_pair_choice(c.body);
  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> pool;
  for (int i = 0; i < 6; ++i)
    pool.emplace_back([&] {
      Call x = call(s, "POST", "/sessions/" + id + "/expand", choice);
      (x.status == 200 ? ok : conflict)++;
    });
  for (auto& t : pool) t.join();
  CHECK(ok == 1);
  CHECK(conflict == 5);
}

TEST_CASE("over http") {
  Service s;
  HttpFrontend http(s);
  int port = http.bind("127.0.0.1:0");
  REQUIRE(port > 0);
  std::thread server([&] { http.run(); });
  httplib::Client cli("127.0.0.1", port);
  auto created = cli.Post("/sessions", Json{{"problem", gt::kTwoBoxes}}.dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  Json view = Json::parse(created->body);
  std::string id = view["id"];
  auto x = cli.Post(("/sessions/" + id + "/expand").c_str(), rho_pair_choice(view).dump(), "application/json");
  REQUIRE(x);
  CHECK(Json::parse(x->body)["status"] == "REFUTED");
  auto g = cli.Get(("/sessions/" + id + "/graph").c_str());
  REQUIRE(g);
  CHECK(Json::parse(g->body)["status"] == "REFUTED");
  auto dot = cli.Get(("/sessions/" + id + "/render").c_str());
  REQUIRE(dot);
  CHECK(dot->get_header_value("Content-Type") == "text/vnd.graphviz");
  auto missing = cli.Get("/sessions/zz");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto put = cli.Put("/sessions", "{}", "application/json");
  REQUIRE(put);
  CHECK(put->status == 405);
  http.stop();
  server.join();
}
