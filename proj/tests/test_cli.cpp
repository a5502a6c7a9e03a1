#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "plactic/cli.hpp"

using nlohmann::json;

namespace {
struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = plactic::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> ls;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur)) ls.push_back(cur);
  return ls;
}
}  // namespace

TEST_CASE("tableau command prints planar rows, shortest on top") {
  RunResult r = run_cli({"tableau", "421532435452"});
  CHECK(r.code == 0);
  CHECK(r.out == "5\n44\n2335\n12245\n");
  CHECK(r.err.empty());

  RunResult flagged = run_cli({"tableau", "--word", "421532435452"});
  CHECK(flagged.out == r.out);

  RunResult j = run_cli({"tableau", "421532435452", "--format", "json"});
  CHECK(j.code == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed["rows"].size() == 4);
  CHECK(parsed["rows"][0] == json({1, 2, 2, 4, 5}));
  CHECK(parsed["rows"][3] == json({5}));
}

TEST_CASE("rules command lists every rule of the chosen preset") {
  RunResult r = run_cli({"rules", "--preset", "colo2", "--n", "2"});
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  std::set<std::string> got(ls.begin(), ls.end());
  CHECK(got == std::set<std::string>{
                   "alpha(2,1): 2 1 => 21",
                   "alpha(1,21): 1 21 => 21 1",
                   "alpha(2,21): 2 21 => 21 2",
               });

  RunResult k = run_cli({"rules", "--preset", "knuth2", "--n", "3"});
  CHECK(lines(k.out).size() == 8);

  RunResult j = run_cli({"rules", "--preset", "knuth2", "--n", "2",
                         "--format", "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["preset"] == "knuth2");
  CHECK(parsed["rules"].size() == 2);
  CHECK(parsed["rules"][0].contains("kind"));
}

TEST_CASE("normalize prints the column normal form") {
  RunResult r = run_cli({"normalize", "--word", "421532435452"});
  CHECK(r.code == 0);
  CHECK(r.out == "5421 432 32 54 5\n");

  RunResult rm = run_cli({"normalize", "--word", "421532435452",
                          "--strategy", "rightmost"});
  CHECK(rm.out == r.out);

  RunResult rnd = run_cli({"normalize", "--word", "421532435452",
                           "--strategy", "random", "--seed", "7"});
  CHECK(rnd.code == 0);
  CHECK(rnd.out == r.out);

  RunResult noseed = run_cli({"normalize", "--word", "421532435452",
                              "--strategy", "random"});
  CHECK(noseed.code == 64);
  CHECK(noseed.err.find("usage:") != std::string::npos);

  RunResult j = run_cli({"normalize", "--word", "2211", "--format", "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["nf"] == json({"21", "21"}));
  CHECK(parsed["steps"].get<int>() > 0);
}

TEST_CASE("complete reports the completed system or the exhausted budget") {
  RunResult r3 = run_cli({"complete", "--preset", "knuth2", "--n", "3"});
  CHECK(r3.code == 0);
  CHECK(r3.out ==
        "rules: 11 (3 added)\n"
        "cells: 27\n"
        "status: complete\n");

  RunResult j2 = run_cli({"complete", "--preset", "knuth2", "--n", "2",
                          "--format", "json"});
  json parsed = json::parse(j2.out);
  CHECK(parsed["completed"] == true);
  CHECK(parsed["rules"] == 2);
  CHECK(parsed["cells"] == 1);

  RunResult r4 = run_cli({"complete", "--preset", "knuth2", "--n", "4"});
  CHECK(r4.code == 2);
  auto ls = lines(r4.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[2] == "status: budget-exhausted");
}

TEST_CASE("counts emits the fixed csv table") {
  RunResult r = run_cli({"counts", "--n-max", "5"});
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "n,knuth1,colo1,knuth2,colo2,knuth3,bar_colo3,colo3");
  CHECK(ls[1] == "1,1,1,0,0,0,0,0");
  CHECK(ls[2] == "2,2,3,2,3,1,1,1");
  CHECK(ls[3] == "3,3,7,8,22,24,34,42");
  CHECK(ls[4] == "4,4,15,20,115,242,330,621");
  CHECK(ls[5] == "5,5,31,40,531,1726,2225,6893");

  RunResult kb = run_cli({"counts", "--n-max", "4", "--include-kb"});
  auto kls = lines(kb.out);
  REQUIRE(kls.size() == 5);
  CHECK(kls[0] == "n,knuth1,colo1,knuth2,colo2,knuth3,bar_colo3,colo3,kb2,kb3");
  CHECK(kls[1] == "1,1,1,0,0,0,0,0,0,0");
  CHECK(kls[2] == "2,2,3,2,3,1,1,1,2,1");
  CHECK(kls[3] == "3,3,7,8,22,24,34,42,11,27");
  CHECK(kls[4] == "4,4,15,20,115,242,330,621,inf,inf");

  RunResult text = run_cli({"counts", "--n-max", "5", "--format", "text"});
  CHECK(text.out == r.out);

  RunResult j = run_cli({"counts", "--n-max", "5", "--format", "json"});
  json parsed = json::parse(j.out);
  REQUIRE(parsed["rows"].size() == 5);
  CHECK(parsed["rows"][4]["colo2"] == 531);
  CHECK(parsed["rows"][4]["colo3"] == 6893);

  RunResult a = run_cli({"counts", "--n-max", "4", "--threads", "4"});
  RunResult b = run_cli({"counts", "--n-max", "4", "--threads", "4"});
  CHECK(a.out == b.out);
  CHECK(a.out == run_cli({"counts", "--n-max", "4", "--threads", "1"}).out);
}

TEST_CASE("hexagon prints both sides of the branching") {
  RunResult r = run_cli({"hexagon", "--triple", "2,1,21"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "cell X(2,1,21) family Cprime\n"
        "source: 2 1 21\n"
        "left:  alpha(2,1)@0 => 21 21\n"
        "right: alpha(1,21)@1 alpha(2,21)@0 alpha(2,1)@1 => 21 21\n"
        "corners: e=21 w=21 w'=1 a=21 a'=2\n");

  RunResult j = run_cli({"hexagon", "--triple", "3,2,1", "--format", "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["family"] == "A");
  CHECK(parsed["end"] == json({"321"}));
  CHECK(parsed["left"].size() == 2);

  RunResult bad = run_cli({"hexagon", "--triple", "1,21,21"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("verify runs its battery and reports each check") {
  RunResult r = run_cli({"verify", "--n", "2"});
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  std::set<std::string> got(ls.begin(), ls.end());
  CHECK(got == std::set<std::string>{"ok orders", "ok schensted", "ok readings",
                                     "ok hexagons", "ok cells", "ok completion",
                                     "ok crystals"});
}

TEST_CASE("crystal command applies one operator") {
  RunResult hw = run_cli({"crystal", "--op", "hw", "--word", "313"});
  CHECK(hw.code == 0);
  CHECK(hw.out == "112\n2 2 1\n");

  RunResult top = run_cli({"crystal", "--op", "hw", "--word", "112"});
  auto tl = lines(top.out);
  REQUIRE(tl.size() >= 1);
  CHECK(tl[0] == "112");

  CHECK(run_cli({"crystal", "--op", "f1", "--word", "312213313"}).out ==
        "312223313\n");
  CHECK(run_cli({"crystal", "--op", "e1", "--word", "12"}).out == "undefined\n");
  CHECK(run_cli({"crystal", "--op", "normalize", "--word", "121"}).out ==
        "211\n");

  RunResult j = run_cli({"crystal", "--op", "e1", "--word", "12", "--format",
                         "json"});
  CHECK(json::parse(j.out)["result"].is_null());

  CHECK(run_cli({"crystal", "--op", "q1", "--word", "12"}).code == 1);
  CHECK(run_cli({"crystal", "--op", "f0", "--word", "12"}).code == 1);
}

TEST_CASE("component command walks the crystal graph") {
  RunResult r = run_cli({"component", "--word", "313", "--n", "3"});
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 9);
  CHECK(ls[0] == "vertices: 8");
  CHECK(ls[1] == "313");

  RunResult dot = run_cli({"component", "--word", "313", "--n", "3",
                           "--format", "dot"});
  auto dls = lines(dot.out);
  CHECK(dls.front() == "digraph crystal {");
  CHECK(dls.back() == "}");
  int labels = 0;
  for (const auto& l : dls)
    if (l.find("[label=") != std::string::npos &&
        l.find("->") == std::string::npos)
      ++labels;
  CHECK(labels == 8);

  RunResult tiny = run_cli({"component", "--word", "1", "--n", "2"});
  auto tls = lines(tiny.out);
  REQUIRE(tls.size() == 3);
  CHECK(tls[0] == "vertices: 2");
  CHECK(std::set<std::string>(tls.begin() + 1, tls.end()) ==
        std::set<std::string>{"1", "2"});

  RunResult j = run_cli({"component", "--word", "313", "--n", "3", "--format",
                         "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["vertices"].size() == 8);
  CHECK(parsed["edges"].size() > 0);
}

TEST_CASE("exit codes separate usage, domain and resource failures") {
  CHECK(run_cli({}).code == 64);
  CHECK(run_cli({"frobnicate"}).code == 64);
  CHECK(run_cli({"rules", "--preset", "bogus"}).code == 64);
  CHECK(run_cli({"tableau"}).code == 64);

  CHECK(run_cli({"tableau", "42x"}).code == 1);
  CHECK(run_cli({"counts", "--n-max", "11"}).code == 1);
  CHECK(run_cli({"tableau", "279", "--n", "5"}).code == 1);

  RunResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(!help.out.empty());

  RunResult usage = run_cli({"frobnicate"});
  CHECK(usage.err.find("usage: plactic <command>") != std::string::npos);
}
