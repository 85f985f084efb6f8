#include "doctest.h"

#include "vldl/cli.hpp"

#include <json.hpp>

#include <sstream>

using namespace vldl;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(VLDL_TEST_DATA) + "/" + name;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("sat exit codes") {
  CHECK(run({"sat", data("atom.vldl")}).code == exit_positive);
  CHECK(run({"sat", data("valid.vldl")}).code == exit_positive);
  CHECK(run({"sat", data("local_first.vldl")}).code == exit_positive);
  CHECK(run({"sat", data("unsat.vldl"), "-a", data("abc.alpha")}).code ==
        exit_negative);
  // Without the alphabet file p is not a known proposition.
  CHECK(run({"sat", data("unsat.vldl")}).code == exit_input);
  CHECK(run({"sat", data("missing.vldl")}).code == exit_input);
  CHECK(run({"sat"}).code == exit_input);
  CHECK(run({"frobnicate"}).code == exit_input);
}

TEST_CASE("sat json report") {
  auto r = run({"sat", data("local_first.vldl"), "--json", "--witness"});
  REQUIRE(r.code == exit_positive);
  auto j = nlohmann::json::parse(r.out);
  for (auto key : {"command", "verdict", "witness", "formula_size",
                   "system_states", "stages", "seconds", "exit_code"})
    CHECK_MESSAGE(j.contains(key), key);
  CHECK(j["verdict"] == "satisfiable");
  CHECK(j["exit_code"] == 0);
  CHECK(j["witness"].get<std::string>().rfind("l", 0) == 0);
  REQUIRE(j["stages"].is_array());
  CHECK(j["stages"][0].contains("states"));
}

TEST_CASE("model checking") {
  auto holds = run({"mc", data("cr_system.vps"), data("valid.vldl")});
  CHECK(holds.code == exit_positive);
  auto ok = run({"mc", data("cr_system.vps"), data("unsat.vldl"), "-a",
                 data("abc.alpha"), "--json", "--cex"});
  REQUIRE(ok.code == exit_negative);
  auto j = nlohmann::json::parse(ok.out);
  CHECK(j["verdict"] == "violated");
  CHECK(j["counterexample"] == "(c r)^w");
}

TEST_CASE("encode and decode") {
  auto enc = run({"encode", "c l (r)^w", "--generator"});
  REQUIRE(enc.code == exit_positive);
  CHECK_FALSE(enc.out.empty());
  auto text = run({"encode", "c l r", "--depth", "3"});
  CHECK(text.code == exit_positive);
  auto bad = run({"encode", "c x"});
  CHECK(bad.code == exit_input);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("oracle subcommands") {
  CHECK(run({"oracle", "eval", data("atom.vldl"), "l (m)^w"}).code == exit_positive);
  CHECK(run({"oracle", "eval", data("atom.vldl"), "m (l)^w"}).code == exit_negative);
  CHECK(run({"oracle", "eval", data("atom.vldl"), "(c)^w"}).code == exit_input);
  auto cc = run({"oracle", "cross-check", "--count", "3", "--lassos", "3",
                 "--max-size", "5"});
  CHECK(cc.code == exit_positive);
}

TEST_CASE("alphabet files") {
  auto r = run({"encode", "c l r", "-a", data("abc.alpha")});
  CHECK(r.code == exit_positive);
  CHECK(run({"encode", "m", "-a", data("abc.alpha")}).code == exit_input);
}

} // TEST_SUITE
