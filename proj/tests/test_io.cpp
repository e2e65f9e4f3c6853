#include <cstdio>
#include <filesystem>

#include "aag/classify.hpp"
#include "aag/error.hpp"
#include "aag/fixtures.hpp"
#include "aag/io.hpp"
#include "aag/simulator.hpp"
#include "aag/sync.hpp"
#include "doctest.h"

using namespace aag;
namespace fx = aag::fixtures;

TEST_CASE("schedule round trip") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = random_schedule(4, 3, WaitRule::wait_free(), {2, 0.3, {}}, seed);
    auto j = to_json(s);
    CHECK(j["kind"] == "async");
    CHECK(schedule_from_json(j) == s);
    CHECK(schedule_from_json(Json::parse(j.dump())) == s);
  }
  ScheduleOutcome s{3, {{{0, 1, 2}, {3, 3, -1}}}, {{2, 0, CrashPhase::AfterUpdate}}};
  auto j = to_json(s);
  CHECK(j["objects"][0]["cuts"][2].is_null());
  CHECK(j["crashes"][0]["phase"] == "after-update");
}

TEST_CASE("adversary round trip") {
  RoundAdversary a{{{0, 1, {2, 3}}, {3, 0, {}}}};
  CHECK(adversary_from_json(to_json(a)) == a);
  CHECK(adversary_from_json(Json{{"crashes", to_json(a)}}) == a);
}

TEST_CASE("trace round trip") {
  Graph g = fx::sun3();
  auto p = make_wait_free_bridged(g);
  auto s = random_schedule(3, p.num_objects, p.wait_rule, {2, 0.4, {}}, 17);
  auto tr = run(p, g, {3, 4, 5}, s, 17);
  auto j = to_json(tr);
  CHECK(trace_from_json(Json::parse(j.dump())) == tr);
  CHECK(j["seed"] == 17);

  auto no_seed = run(p, g, {3, 4, 5}, s);
  CHECK(to_json(no_seed)["seed"].is_null());
  CHECK(trace_from_json(to_json(no_seed)) == no_seed);

  auto sync = run_sync(fx::cycle(6), {0, 2, 4}, 1, {{{1, 0, {0}}}}, 5);
  auto sj = to_json(sync);
  CHECK(sj["schedule"]["kind"] == "sync");
  CHECK(sj["outputs"][1] == "CRASHED");
  CHECK(trace_from_json(sj) == sync);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(schedule_from_json(Json::parse(R"({"n": 2})")), InvalidInput);
  CHECK_THROWS_AS(schedule_from_json(Json::parse(R"({"n": "two", "objects": [], "crashes": []})")), InvalidInput);
  CHECK_THROWS_AS(schedule_from_json(Json::parse(R"({"kind": "sync", "n": 2, "objects": [], "crashes": []})")),
                  InvalidInput);
  CHECK_THROWS_AS(
      schedule_from_json(Json::parse(
          R"({"n": 2, "objects": [], "crashes": [{"proc": 0, "object": 0, "phase": "sideways"}]})")),
      InvalidInput);
  CHECK_THROWS_AS(adversary_from_json(Json::parse(R"({"crashes": 3})")), InvalidInput);
  CHECK_THROWS_AS(labelling_from_json(Json::parse(R"({"labels": [0, 1]})")), InvalidInput);

  Graph g = fx::path(3);
  auto p = make_one_resilient(g);
  auto tr = run(p, g, {0, 1, 2}, random_schedule(3, p.num_objects, p.wait_rule, {}, 1));
  auto j = to_json(tr);
  j["outputs"][0] = "LOST";
  CHECK_THROWS_AS(trace_from_json(j), InvalidInput);
  j = to_json(tr);
  j["graph"]["edges"][0] = {1, 2, 3};
  CHECK_THROWS_AS(trace_from_json(j), InvalidInput);
  j = to_json(tr);
  j["iterations"][0]["views"][0] = {99};
  CHECK_THROWS_AS(trace_from_json(j), InvalidInput);
}

TEST_CASE("labelling and report json") {
  auto lab = find_lower_bound_labelling(fx::cycle(4));
  REQUIRE(lab);
  CHECK(labelling_from_json(to_json(*lab)).labels == lab->labels);
  CHECK(labelling_from_json(to_json(*lab)).cycle == lab->cycle);

  auto r = to_json(classify(fx::wheel(6)));
  CHECK(r["bridged"] == true);
  CHECK(r["nicely_bridged"] == true);
  CHECK(r["lower_bound_labelling"].is_null());
  CHECK(r["sufficient_conditions"]["k4_free"] == true);

  auto m = to_json(protocol_metadata(make_one_resilient(fx::cycle(6))));
  CHECK(m["num_objects"] == 3);
  CHECK(m["formula"].size() >= 2);

  auto s = to_json(search_protocol(4, 1));
  CHECK(s["result"] == "UNSAT");
  CHECK_FALSE(s.contains("labels"));
}

TEST_CASE("verdict json") {
  Verdict v("agreement");
  v.pass = false;
  v.detail = "0 and 2 are not adjacent";
  auto j = to_json(v);
  CHECK(j["t"] == "final");
  VerdictBundle b;
  b.verdicts = {v};
  auto bj = to_json(b);
  CHECK(bj["pass"] == false);
  CHECK(bj["first_failure"]["name"] == "agreement");
}

TEST_CASE("json files") {
  auto path = (std::filesystem::temp_directory_path() / "aag_io_test.json").string();
  Json j = {{"a", 1}, {"b", {1, 2}}};
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("{not json", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_json_file(path), InvalidInput);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path), InvalidInput);
}
