#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "lfp/dot.hpp"
#include "lfp/suites.hpp"
#include "lfp/workspace.hpp"

#include "helpers.hpp"

using namespace lfp;

namespace {

const std::string fixture = std::string(LFP_FIXTURE_DIR) + "/graphs.json";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(LFPKIT_BIN) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

} // namespace

TEST_CASE("an empty workspace") {
  Workspace ws = Workspace::load({});
  CHECK(ws.empty());
  CHECK(run_all_suites(ws).empty());
  CHECK(all_pass({}));
}

TEST_CASE("the fixture loads and round-trips byte for byte") {
  Workspace ws = Workspace::load({fixture});
  CHECK_FALSE(ws.empty());
  FinCategory g = ws.category("G");
  CHECK(g.num_objects() == 2);
  CHECK(g.num_morphisms() == 4);
  CHECK(ws.presheaf("e1").total_size() == 3);
  CHECK(ws.dump() == read_file(fixture));
  Workspace again = Workspace::parse(ws.dump());
  CHECK(again.dump() == ws.dump());
}

TEST_CASE("load errors") {
  const std::string dangling = R"({
    "categories": {"t": {"objects": ["*"], "morphisms": [{"id": "i", "dom": "*", "cod": "*"}],
                         "identities": {"*": "i"}, "compose": []}},
    "presheaves": {"x": {"index": "t", "carrier": {"*": ["a"]}, "action": {"zz_missing": {"a": "a"}}}}
  })";
  try {
    Workspace::parse(dangling);
    FAIL("dangling morphism accepted");
  } catch (const LfpError& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("zz_missing") != std::string::npos);
  }
  try {
    Workspace::parse("{\"categories\": ", "broken.json");
    FAIL("truncated file accepted");
  } catch (const LfpError& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }
  CHECK_THROWS_AS(Workspace::parse(R"({"nonsense": {}})"), LfpError);
  // a name defined in two files
  CHECK_THROWS_AS(Workspace::load({fixture, fixture}), LfpError);
}

TEST_CASE("suites: names, determinism and unknown names") {
  Workspace ws = Workspace::load({fixture});
  auto names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "coslice-connected") != names.end());
  auto a = run_suite("coslice-connected", ws);
  auto b = run_suite("coslice-connected", ws);
  REQUIRE(!a.empty());
  CHECK(all_pass(a));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_json(a[i]) == to_json(b[i]));
  try {
    run_suite("no-such-suite", ws);
    FAIL("unknown suite accepted");
  } catch (const LfpError& e) {
    CHECK(e.kind() == ErrorKind::UnknownSuite);
  }
}

TEST_CASE("a stage bound below the instance gives a failing certificate") {
  Workspace ws = Workspace::load({fixture});
  Config cfg = ws.config();
  cfg.stage_bound = 1;
  ws.set_config(cfg);
  auto certs = run_suite("anel", ws, cfg);
  CHECK_FALSE(all_pass(certs));
  bool bound = false;
  for (const auto& c : certs)
    if (!c.verdict) bound = bound || c.witness.dump().find("StageBoundExceeded") != std::string::npos;
  CHECK(bound);
}

TEST_CASE("certificates replay") {
  Workspace ws = Workspace::load({fixture});
  for (const auto& c : run_suite("anel", ws)) {
    CHECK(c.verdict);
    CHECK_FALSE(c.anchor.empty());
    CHECK(to_line(c).rfind("PASS ", 0) == 0);
  }
  // the recorded lift stage of the chain instance is reproduced by the operation
  auto inst = ws.anel("long_path");
  REQUIRE(inst.chain);
  IndAnelResult r = anel_factorize(inst.ind, inst.target, ws.config());
  bool found = false;
  for (const auto& c : run_suite("anel", ws))
    if (c.instance.find("long_path") != std::string::npos) {
      found = true;
      CHECK(c.witness.dump().find(std::to_string(r.base_stage)) != std::string::npos);
    }
  CHECK(found);
}

TEST_CASE("DOT output") {
  std::string t = to_dot(catalog::terminal());
  CHECK(count(t, "->") == 1);
  CHECK(count(t, "\"*\";") == 1);
  Presheaf e = th::graph({"a", "b"}, {{"x", "a", "b"}});
  std::string g = to_dot(e);
  CHECK(count(g, "->") == 1);
  CHECK(count(g, "\"a\";") == 1);
  CHECK(count(g, "\"b\";") == 1);
  CHECK_THROWS_AS(to_dot(th::set({"p"})), LfpError);

  Presheaf k = th::graph({"p"});
  NatTrans kk = th::gmap(k, e, {{"p", "a"}});
  NatTrans a = th::gmap(k, e, {{"p", "b"}});
  Pushout p = pushout(kk, a);
  std::string sq = to_dot(std::vector<DotSquare>{{"first", kk, a, p.inj_cod, p.inj_base},
                                                 {"second", a, kk, p.inj_base, p.inj_cod}});
  CHECK(count(sq, "subgraph cluster_") == 2);
  CHECK(to_dot(std::vector<DotSquare>{{"glue", kk, a, p.inj_cod, p.inj_base}}) ==
        read_file(std::string(LFP_FIXTURE_DIR) + "/glue_square.dot"));
}

TEST_CASE("command line") {
  Run v = run("validate " + fixture);
  CHECK(v.code == 0);
  Run d = run("dump " + fixture);
  CHECK(d.code == 0);
  CHECK(d.out == read_file(fixture));
  Run s = run("suite --suite coslice-connected " + fixture);
  CHECK(s.code == 0);
  CHECK(s.out.find("PASS") != std::string::npos);
  CHECK(s.out.find("FAIL") == std::string::npos);
  Run j = run("--json suite --suite coslice-connected " + fixture);
  CHECK(j.code == 0);
  CHECK_NOTHROW((void)json::parse(j.out));
  Run bound = run("--stage-bound 1 suite --suite anel " + fixture);
  CHECK(bound.code != 0);
  CHECK(bound.out.find("StageBoundExceeded") != std::string::npos);
  Run empty = run("suite");
  CHECK(empty.code == 0);
  Run unknown = run("suite --suite nope " + fixture);
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("UnknownSuite") != std::string::npos);
  Run dot = run("dot --category G " + fixture);
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
}
