#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "strata/cache.hpp"
#include "strata/cli.hpp"

using namespace strata;
namespace fs = std::filesystem;

namespace {

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

fs::path fresh_dir() {
  std::random_device rd;
  auto p = fs::temp_directory_path() / ("strata-test-" + std::to_string(rd()) + std::to_string(rd()));
  fs::create_directories(p);
  return p;
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out.push_back(e.path());
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    CHECK(run({"betti-x", "--lambda", "2,1,1,1", "--mu", "5"}).code == kExitOk);
    CHECK(run({"betti-x", "--lambda", "2,1,1,1", "--mu", "3,3"}).code == kExitInvalid);
    CHECK(run({"betti-x", "--lambda", "2,x", "--mu", "3"}).code == kExitInvalid);
    CHECK(run({"betti-sigma", "--lambda", "2,1", "--n", "4"}).code == kExitInvalid);
    CHECK(run({"no-such-command"}).code != kExitOk);
    CHECK(run({"--guard-forests", "3", "betti-x", "--lambda", "2,1,1,1", "--mu", "5"}).code == kExitInvalid);
    CHECK(run({"collapse", "--k", "2", "--family", "closure", "--lambda", "3,1", "--mu", "4"}).code == kExitInvalid);
  }

  TEST_CASE("JSON reports") {
    auto x = run({"--json", "betti-x", "--lambda", "2,1,1,1", "--mu", "5"});
    REQUIRE(x.code == kExitOk);
    auto j = nlohmann::json::parse(x.out);
    CHECK(j["f_vector"] == nlohmann::json({5, 9, 5}));
    CHECK(j["euler"] == 1);
    for (const auto& [deg, v] : j["betti"].items()) CHECK(v == 0);

    auto e = nlohmann::json::parse(run({"--json", "betti-x", "--lambda", "2,1", "--mu", "2,1"}).out);
    CHECK(e["empty"] == true);
    CHECK(e["betti"]["-1"] == 1);

    auto p = nlohmann::json::parse(run({"--json", "betti-x", "--lambda", "3,1,1", "--mu", "3,2"}).out);
    CHECK(p["reachable"] == false);
    CHECK(p["f_vector"] == nlohmann::json({1}));

    auto s = nlohmann::json::parse(run({"--json", "betti-sigma", "--lambda", "2,2,1,1"}).out);
    CHECK(s["betti"]["8"] == 1);
    CHECK(s["top_class_only"] == true);
    CHECK(s["vanishing"] == true);

    auto a = nlohmann::json::parse(run({"--json", "verify-arnold", "--n-max", "5"}).out);
    CHECK(a["all_pass"] == true);

    auto c = nlohmann::json::parse(run({"--json", "counterexample"}).out);
    CHECK_FALSE(c.is_null());

    auto st = nlohmann::json::parse(run({"--json", "collapse", "--k", "2", "--family", "stanley", "--mu", "6"}).out);
    CHECK(st["critical"] == 1);

    auto f = nlohmann::json::parse(run({"--json", "forests", "--lambda", "2,1,1,1", "--mu", "5", "--rank", "2"}).out);
    REQUIRE(f.is_array());
    CHECK(f.size() == 5);

    // every forest in the listing round-trips through boundary
    for (const auto& forest : f) {
      auto b = run({"--json", "boundary", "--forest", forest.dump()});
      CHECK(b.code == kExitOk);
      CHECK(nlohmann::json::parse(b.out).size() >= 1);
    }
    CHECK(run({"boundary", "--forest", "{\"rank\":1}"}).code == kExitInvalid);
  }

  TEST_CASE("boundary from a file") {
    auto dir = fresh_dir();
    auto f = nlohmann::json::parse(run({"--json", "forests", "--lambda", "2,1,1,1", "--mu", "5", "--rank", "1"}).out);
    REQUIRE_FALSE(f.empty());
    auto file = dir / "forest.json";
    std::ofstream(file) << f[0].dump();
    auto a = run({"--json", "boundary", "--input", file.string()});
    auto b = run({"--json", "boundary", "--forest", f[0].dump()});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(run({"boundary", "--input", (dir / "missing.json").string()}).code == kExitInvalid);
    fs::remove_all(dir);
  }

  TEST_CASE("cache") {
    auto dir = fresh_dir();
    std::vector<std::string> args{"--json", "--cache-dir", dir.string(), "betti-sigma", "--lambda", "3,2,1"};
    auto first = run(args);
    REQUIRE(first.code == kExitOk);
    auto entries = files_in(dir);
    CHECK(entries.size() == 1);
    auto second = run(args);
    CHECK(second.out == first.out);
    CHECK(files_in(dir).size() == 1);

    // an uncached run prints the same bytes
    CHECK(run({"--json", "betti-sigma", "--lambda", "3,2,1"}).out == first.out);

    // corrupt the payload: the entry is recomputed and rewritten
    for (const auto& p : entries) {
      std::ofstream(p, std::ios::app) << "garbage";
    }
    auto third = run(args);
    CHECK(third.out == first.out);
    std::ifstream in(entries.front());
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.find("garbage") == std::string::npos);

    // truncate to nothing
    std::ofstream(entries.front(), std::ios::trunc).close();
    CHECK(run(args).out == first.out);

    // a different version is a different key
    Guards g;
    ResultCache cache(dir);
    auto d1 = cache_descriptor("betti-sigma", {{"lambda", "3,2,1"}}, g, "1.0.0");
    auto d2 = cache_descriptor("betti-sigma", {{"lambda", "3,2,1"}}, g, "1.0.1");
    CHECK(d1 != d2);
    CHECK(cache.path_for(d1) != cache.path_for(d2));
    CHECK(cache.put(d1, "payload"));
    CHECK(cache.get(d1) == std::optional<std::string>("payload"));
    CHECK_FALSE(cache.get(d2).has_value());
    CHECK(cache_descriptor("betti-sigma", {{"b", "1"}, {"a", "2"}}, g) ==
          cache_descriptor("betti-sigma", {{"a", "2"}, {"b", "1"}}, g));
    fs::remove_all(dir);
  }

  TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}
