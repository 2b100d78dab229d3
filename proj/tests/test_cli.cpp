#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PUISEUX_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/puiseux_cli_" + name + ".json";
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("classify a catalog family file") {
  auto gen = run("family one_over_prime_powers --params p=2 --out /tmp/puiseux_cli_pp.json");
  REQUIRE(gen.code == 0);
  auto r = run("classify /tmp/puiseux_cli_pp.json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["verdict"] == "Antimatter");
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(nlohmann::json::parse(run("classify /tmp/puiseux_cli_pp.json --timing").out).contains("elapsed_ms"));
}

TEST_CASE("classify a finite list") {
  auto path = write("f35", R"({"label": "f", "stream": {"kind": "finite", "terms": ["3", "5"], "family": null}, "flags": []})");
  auto r = run("classify " + path);
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out)["result"];
  CHECK(j["verdict"] == "Atomic");
  CHECK(j["atoms_summary"]["atoms"] == nlohmann::json({"3/1", "5/1"}));
  CHECK(j["witnesses"]["frobenius"] == "7");
  CHECK(run("classify " + path + " --format text").out.find("frobenius: 7") != std::string::npos);
}

TEST_CASE("exit codes") {
  auto conflict = write("conflict", R"({"label": "c", "stream": {"kind": "family", "terms": null, "family": {"name": "prime_reciprocals", "params": {}}},
    "flags": [{"property": "denominators_bounded", "args": {}, "provenance": "declared"},
              {"property": "denominators_unbounded", "args": {}, "provenance": "declared"}]})");
  CHECK(run("classify " + conflict).code == 2);
  auto refuted = write("refuted", R"({"label": "r", "stream": {"kind": "family", "terms": null, "family": {"name": "prime_reciprocals", "params": {}}},
    "flags": [{"property": "denominator_chain_divides", "args": {}, "provenance": "declared"}]})");
  CHECK(run("classify " + refuted).code == 2);
  auto broken = write("broken", "{ not json");
  CHECK(run("classify " + broken).code == 1);
  CHECK(run("classify /nonexistent.json").code == 1);
}

TEST_CASE("paper-suite") {
  auto r = run("paper-suite");
  CHECK(r.code == 0);
  CHECK(r.out.find("exactly_m_atoms") != std::string::npos);
  CHECK(run("paper-suite --only prime_reciprocals").code == 0);
  CHECK(run("paper-suite --only nope").code == 1);
}

TEST_CASE("thin bindings") {
  auto m = nlohmann::json::parse(run("member 5/6 --gens 1/2,1/3").out);
  CHECK(m["result"]["verdict"] == "yes");
  auto f = nlohmann::json::parse(run("frobenius 6 9 20").out);
  CHECK(f["result"]["frobenius"] == "43");
  auto s = nlohmann::json::parse(run("series-val \"3*T^(-2) + T^(1/3)\"").out);
  CHECK(s["result"]["valuation"] == "-2");
  CHECK(run("series-val \"T^(\"").code == 1);
  auto img = nlohmann::json::parse(run("series-val \"T^(1/2)\" --image \"T^(1/3)\"").out);
  CHECK(img["result"]["image"]["stream"]["terms"] == nlohmann::json({"1/3", "1/2"}));
  auto fam = nlohmann::json::parse(run("family s_t_pair --params p=3 side=T --window 4").out);
  CHECK(fam["result"]["window_terms"] == nlohmann::json({"8/81", "10/81", "80/6561", "82/6561"}));
  CHECK(run("atoms /tmp/puiseux_cli_pp.json --window 5 --format text").code == 0);
  CHECK(run("--isa scalar frobenius 3 5").code == 0);
  CHECK(run("series-val --help").out.find("Grammar") != std::string::npos);
}
