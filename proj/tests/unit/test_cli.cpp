#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "trop_cli/cli.hpp"

using trop::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = trop::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string curve_path(const std::string& name) { return (corpus::dir() / (name + ".json")).string(); }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("trop_theta_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("thetas on the theta graph") {
  const auto r = run({"thetas", "--curve", curve_path("theta")});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["count"] == 4);
  CHECK(j["genus"] == 2);
  int effective = 0;
  for (const auto& t : j["thetas"]) effective += t["effective"].get<bool>();
  CHECK(effective == 3);
}

TEST_CASE("output does not depend on the job count") {
  for (const auto& name : {"k4", "mixed_g3"}) {
    const auto one = run({"thetas", "--curve", curve_path(name)});
    const auto again = run({"thetas", "--curve", curve_path(name)});
    const auto four = run({"thetas", "--curve", curve_path(name), "--jobs", "4"});
    CHECK(one.code == 0);
    CHECK(one.out == again.out);
    CHECK(one.out == four.out);
  }
}

TEST_CASE("lift-count") {
  const auto r = run({"lift-count", "--curve", curve_path("single_vertex_w2")});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["even_total"] == 10);
  CHECK(j["odd_total"] == 6);
  CHECK(j["consistent"] == true);
  const auto g = run({"lift-count", "--graph", curve_path("k33")});
  CHECK(g.code == 0);
  CHECK(Json::parse(g.out)["even_total"] == 136);
}

TEST_CASE("equiv and effective") {
  const auto d1 = write_temp("d1.json", R"([{"at": {"vertex": "u"}, "coeff": 1}, {"at": {"vertex": "v"}, "coeff": 1}])");
  const auto d2 = write_temp("d2.json", R"([{"at": {"edge": "a", "offset": "1/2"}, "coeff": 2}])");
  const auto d3 = write_temp("d3.json", R"([{"at": {"edge": "b", "offset": "1/2"}, "coeff": 2}])");
  auto equiv = [&](const std::string& a, const std::string& b) {
    const auto r = run({"equiv", "--curve", curve_path("theta"), "--d1", a, "--d2", b});
    REQUIRE(r.code == 0);
    return Json::parse(r.out)["equivalent"].get<bool>();
  };
  CHECK(equiv(d1, d1));
  CHECK(equiv(d1, d2));
  CHECK(equiv(d2, d3));

  const auto e0 = run({"effective", "--curve", curve_path("theta"), "--cycle", ""});
  REQUIRE(e0.code == 0);
  CHECK(Json::parse(e0.out)["effective"] == false);
  const auto e1 = run({"effective", "--curve", curve_path("theta"), "--cycle", "a,b"});
  REQUIRE(e1.code == 0);
  CHECK(Json::parse(e1.out)["effective"] == true);
  const auto ed = run({"effective", "--curve", curve_path("theta"), "--divisor", d2});
  REQUIRE(ed.code == 0);
  CHECK(Json::parse(ed.out)["effective"] == true);
}

TEST_CASE("flow-rep and moduli") {
  const auto f = run({"flow-rep", "--curve", curve_path("dumbbell"), "--cycle", "a"});
  REQUIRE(f.code == 0);
  const auto j = Json::parse(f.out);
  CHECK(j["divisor"].size() == 1);
  CHECK(j["critical_points"].size() == 1);

  const auto m = run({"moduli", "--genus", "2"});
  REQUIRE(m.code == 0);
  const auto mj = Json::parse(m.out);
  CHECK(mj["graph_count"] == 7);
  CHECK(mj["stratum_count"] == 14);
  CHECK(mj["connected"] == true);
  const auto dot = run({"moduli", "--genus", "2", "--dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"thetas"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"thetas", "--curve", "/nonexistent.json"}).code == 2);
  CHECK(run({"thetas", "--curve", curve_path("theta"), "--jobs", "0"}).code == 2);
  CHECK(run({"effective", "--curve", curve_path("theta")}).code == 2);
  CHECK(run({"effective", "--curve", curve_path("theta"), "--cycle", "a"}).code == 2);
  CHECK(run({"moduli", "--genus", "1"}).code == 2);
  CHECK(run({"moduli", "--genus", "9"}).code == 3);

  const auto bad = write_temp("bad.json", "{not json");
  CHECK(run({"thetas", "--curve", bad}).code == 2);

  setenv("TROP_THETA_MODEL_CAP", "1", 1);
  CHECK(run({"thetas", "--curve", curve_path("theta")}).code == 3);
  setenv("TROP_THETA_MODEL_CAP", "zero", 1);
  CHECK(run({"thetas", "--curve", curve_path("theta")}).code == 2);
  unsetenv("TROP_THETA_MODEL_CAP");
  CHECK(run({"thetas", "--curve", curve_path("theta")}).code == 0);
}

TEST_CASE("verify passes on every bundled curve") {
  for (const auto& entry : corpus::all()) {
    CAPTURE(entry.name);
    const auto r = run({"verify", "--curve", curve_path(entry.name), "--jobs", "4"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["passed"] == true);
    for (const auto& c : j["checks"]) {
      if (!c["passed"].get<bool>()) MESSAGE(c.dump());
    }
  }
}
