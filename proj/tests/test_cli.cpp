#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fnorm/cli.hpp"
#include "fnorm/io.hpp"

using namespace fnorm;

namespace {

const std::string F = FNORM_FIXTURES;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("sha256 digest") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("norm subcommand") {
  Run r = run({"norm", "--space", F + "/l1-L2.json", "--in", F + "/x.json"});
  REQUIRE(r.code == 0);
  json j = parse_json_text(r.out);
  CHECK(j["version"] == kToolVersion);
  CHECK(j["inputs"].size() == 2);
  CHECK(j["inputs"][1]["sha256"] == sha256_hex(read_text_file(F + "/x.json")));
  CHECK(j["results"][0]["value"].get<double>() == doctest::Approx(2.0));
  CHECK(j["results"][0]["case"] == "attained");
  CHECK(j["results"][0]["k0"].get<double>() == doctest::Approx(1.0));

  Run o = run({"norm", "--space", F + "/max-L2.json", "--in", F + "/x.json", "--oracle", "luxemburg"});
  REQUIRE(o.code == 0);
  json k = parse_json_text(o.out);
  CHECK(k["results"][0]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(k["results"][0]["oracle"]["value"].get<double>() == doctest::Approx(1.0));

  CHECK(run({"norm", "--space", F + "/l1-L2.json"}).code == kExitUsage);
  CHECK(run({"norm", "--space", F + "/l1-L2.json", "--in", F + "/broken.json"}).code == kExitUsage);
  CHECK(run({"norm", "--space", F + "/l1-L2.json", "--in", F + "/x.json", "--oracle", "luxemburg"}).code ==
        kExitUsage);
}

TEST_CASE("transform subcommand") {
  Run r = run({"transform", "rearrange", "--in", F + "/two-step.json"});
  REQUIRE(r.code == 0);
  CHECK(parse_json_text(r.out)["result"]["pieces"] == json::parse("[[0.0, 1.0, 3.0], [1.0, 2.0, 1.0]]"));

  Run c = run({"transform", "cesaro", "--in", F + "/x.json", "--at", "2"});
  REQUIRE(c.code == 0);
  CHECK(parse_json_text(c.out)["value"].get<double>() == doctest::Approx(0.5));

  Run d = run({"transform", "distribution", "--in", F + "/levels.json", "--at", "1.5"});
  REQUIRE(d.code == 0);
  CHECK(parse_json_text(d.out)["value"].get<double>() == 1.0);

  Run m = run({"transform", "maximal", "--in", F + "/x.json"});
  REQUIRE(m.code == 0);
  std::istringstream lines(m.out);
  std::string line;
  int rows = 0;
  bool header = false;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header) {
      CHECK(line == "t,value");
      header = true;
      continue;
    }
    ++rows;
  }
  CHECK(rows == 1000);
  CHECK(m.out.find(sha256_hex(read_text_file(F + "/x.json"))) != std::string::npos);

  CHECK(run({"transform", "sideways", "--in", F + "/x.json"}).code == kExitUsage);
}

TEST_CASE("verify subcommand exit codes") {
  CHECK(run({"verify", "--space", F + "/l1-L2.json", "--suite", "snorm-axioms", "--seed", "7", "--trials", "100"})
            .code == 0);
  CHECK(run({"verify", "--suite", "um", "--space", F + "/max-L2.json", "--trials", "20"}).code == 2);
  CHECK(run({"verify", "--suite", "nosuch"}).code == kExitUsage);
  CHECK(run({"verify", "--space", F + "/l1-L2.json"}).code == kExitUsage);
  Run e = run({"verify", "--space", F + "/l1-exp.json", "--suite", "oc", "ulum", "--trials", "20"});
  CHECK(e.code == 0);
  json j = parse_json_text(e.out);
  CHECK(j["reports"][0]["property"] == "fails");
  CHECK(j["seed"] == 1);
}

TEST_CASE("identical runs give identical output files") {
  auto dir = std::filesystem::temp_directory_path() / "fnorm-cli-test";
  std::filesystem::remove_all(dir);
  std::vector<std::string> args{"verify", "--space", F + "/l1-L2.json", "--suite", "fatou", "sm",
                                "--seed", "3", "--trials", "50", "--out", (dir / "a").string()};
  REQUIRE(run(args).code == 0);
  args.back() = (dir / "b").string();
  REQUIRE(run(args).code == 0);
  CHECK(read_text_file((dir / "a" / "verify.json").string()) ==
        read_text_file((dir / "b" / "verify.json").string()));
  std::filesystem::remove_all(dir);
}
