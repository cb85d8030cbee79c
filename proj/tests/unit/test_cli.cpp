#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qmvtm/cli.hpp"
#include "qmvtm/io.hpp"

using namespace qmvtm;

namespace {

namespace fs = std::filesystem;

const fs::path data_dir = QMVTM_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (data_dir / name).string(); }

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "qmvtm_cli_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("run") {
    auto r = cli({"run", data("mprop_d4.json"), "s", "--mode", "width"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "p\n");
    r = cli({"run", data("mprop_d4.json"), "s"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "1\n");
    r = cli({"run", data("mprop_d4.json"), "s", "--mode", "width", "--json"});
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("value") == "p");
    CHECK(doc.at("complete") == true);
    CHECK(cli({"run", data("mprop_d4.json"), "s", "--mode", "width", "--json"}).out == r.out);
    r = cli({"run", data("mprop_l3.json"), "sss", "--no-prune"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "1\n");
  }

  TEST_CASE("run reports incomplete results") {
    const auto r = cli({"run", data("count_l4.json"), "0101", "--max-steps", "1"});
    CHECK(r.code == exit_inconclusive);
    CHECK(r.out.find("incomplete after 1 steps") != std::string::npos);
  }

  TEST_CASE("usage errors") {
    CHECK(cli({}).code == exit_usage);
    CHECK(cli({"frobnicate"}).code == exit_usage);
    CHECK(cli({"run", data("mprop_d4.json")}).code == exit_usage);
    CHECK(cli({"run", data("mprop_d4.json"), "s", "--mode", "sideways"}).code == exit_usage);
    CHECK(cli({"run", data("mprop_d4.json"), "s", "--max-steps", "0"}).code == exit_usage);
    auto r = cli({"run", data("missing.json"), "s"});
    CHECK(r.code == exit_usage);
    CHECK(r.err.find("error: ") == 0);
    r = cli({"run", data("mprop_d4.json"), "x"});
    CHECK(r.code == exit_usage);
    CHECK(cli({"transform", data("mprop_d4.json"), "--kind", "sideways"}).code == exit_usage);
    CHECK(cli({"verify", "everything"}).code == exit_usage);
    CHECK(cli({"algebra", "check", "lukasiewicz(3)", "--family", "NOPE"}).code == exit_usage);
    CHECK(cli({"--help"}).code == 0);
  }

  TEST_CASE("algebra check") {
    auto r = cli({"algebra", "check", data("d4.json"), "--family", "MV"});
    CHECK(r.code == exit_violated);
    CHECK(r.out.rfind("MV fail", 0) == 0);
    r = cli({"algebra", "check", "lukasiewicz(4)", "--family", "MV"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "MV pass\n");
    r = cli({"algebra", "check", data("diamond_effect.json"), "--family", "EFFECT"});
    CHECK(r.code == exit_ok);
    r = cli({"algebra", "check", "diamond", "--family", "QMV", "--json"});
    CHECK(r.code == exit_ok);
    CHECK(nlohmann::json::parse(r.out).at("family") == "QMV");
    r = cli({"algebra", "check", "lukasiewicz(3)"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("LINEAR pass") != std::string::npos);
    CHECK(cli({"algebra", "check", "diamond", "--family", "EFFECT"}).code == exit_usage);
  }

  TEST_CASE("transform writes the machine and its sidecar") {
    const fs::path out = scratch_dir() / "mprop_l3_depth.json";
    auto r = cli({"transform", data("mprop_l3.json"), "--kind", "transitions-depth", "-o", out.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("states") != std::string::npos);
    REQUIRE(fs::exists(out));
    REQUIRE(fs::exists(out.string() + ".sidecar.json"));
    const Sidecar sidecar = load_sidecar(read_file(out.string() + ".sidecar.json"));
    CHECK(sidecar.kind == "transitions-depth");
    CHECK(sidecar.input_encoding.at("s") == "(s,0)");
    const Machine m = load_machine_file(out);
    CHECK(m.state_count() == sidecar.states);

    r = cli({"equiv", data("mprop_l3.json"), out.string(), "--encode", "--max-len", "3"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("verdict: pass") != std::string::npos);
    r = cli({"run", out.string(), "(s,0),(s,0)"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "1\n");

    r = cli({"transform", data("mprop_d4.json"), "--kind", "transitions-depth", "--cap", "1"});
    CHECK(r.code == exit_usage);
    CHECK(r.err.find("cap") != std::string::npos);
    r = cli({"transform", data("mprop_d4.json"), "--kind", "initial"});
    CHECK(r.code == exit_ok);
    CHECK(nlohmann::json::parse(r.out).at("states").size() == 4);
  }

  TEST_CASE("equiv reports witnesses") {
    const fs::path out = scratch_dir() / "mprop_d4_final.json";
    REQUIRE(cli({"transform", data("mprop_d4.json"), "--kind", "final", "-o", out.string()}).code == exit_ok);
    auto r = cli({"equiv", data("mprop_d4.json"), out.string(), "--mode", "width", "--inputs", data("mprop_inputs.txt")});
    CHECK(r.code == exit_violated);
    CHECK(r.out.find("witness: s gives p vs 1") != std::string::npos);
    CHECK(r.out.find("verdict: fail") != std::string::npos);
    r = cli({"equiv", data("mprop_d4.json"), out.string(), "--mode", "depth", "--inputs", data("mprop_inputs.txt")});
    CHECK(r.code == exit_ok);
    CHECK(cli({"equiv", data("mprop_d4.json"), out.string(), "--inputs", data("mprop_inputs.txt"), "--max-len", "2"})
              .code == exit_usage);
    CHECK(cli({"equiv", data("mprop_d4.json"), data("mprop_d4.json"), "--encode"}).code == exit_usage);
  }

  TEST_CASE("verify corpus") {
    auto r = cli({"verify", "corpus"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("overall: pass") != std::string::npos);
    r = cli({"verify", "corpus", "--json"});
    CHECK(r.code == exit_ok);
    CHECK(nlohmann::json::parse(r.out).at("verdict") == "pass");
  }
}
