#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "khtangle/algebra_a.hpp"

using kht::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify subcommands pass") {
  auto a = call({"verify", "algebra-a"});
  CHECK(a.code == 0);
  CHECK(a.out.find("0 violations") != std::string::npos);
  auto f = call({"verify", "functor", "--max-len", "4"});
  CHECK(f.code == 0);
  CHECK(f.out.find("0 violations over") != std::string::npos);
  CHECK(call({"verify", "homology-c", "--max-weight", "6"}).code == 0);
  CHECK(call({"verify", "bimodules", "--bound", "10", "--margin", "4"}).code == 0);
}

TEST_CASE("usage errors") {
  auto r = call({"verify", "bimodules", "--bound", "4", "--margin", "8"});
  CHECK(r.code == 64);
  CHECK(r.err.find("bound must exceed margin") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(call({}).code == 64);
  CHECK(call({"frobnicate"}).code == 64);
  CHECK(call({"compare"}).code == 64);
  CHECK(call({"compare", "--tangle", "x2"}).code == 64);
  CHECK(call({"compare", "--tangle", "x1", "--star", "up"}).code == 64);
  CHECK(call({"compare", "--tangle", "x1 x1 x1", "--max-crossings", "2"}).code == 64);
  CHECK(call({"verify", "algebra-a", "--table", "/nonexistent/table"}).code == 64);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("environment bound") {
  setenv("KHT_BOUND", "6", 1);
  auto r = call({"verify", "bimodules", "--margin", "2", "--json"});
  unsetenv("KHT_BOUND");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["configuration"]["bound"] == 6);
}

TEST_CASE("compare and compute") {
  auto r = call({"compare", "--tangle", "x1 x1 x1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("EQUIVALENT") != std::string::npos);
  auto d = call({"compute", "dd1", "--tangle", "x1"});
  CHECK(d.code == 0);
  CHECK(d.out.find("algebra B") != std::string::npos);
  CHECK(call({"compute", "lt", "--tangle", "x 1 y 1", "--star", "se"}).code == 0);
}

TEST_CASE("json and plain carry the same data") {
  auto plain = call({"corpus"});
  auto js = call({"--json", "corpus"});
  CHECK(plain.code == 0);
  CHECK(js.code == 0);
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["checks"].size() >= 15);
  for (const auto& c : j["checks"]) {
    CHECK(plain.out.find(c["name"].get<std::string>()) != std::string::npos);
    CHECK(plain.out.find(c["detail"].get<std::string>()) != std::string::npos);
  }
}

TEST_CASE("a broken table gives exit 1") {
  const char* path = "broken_table.txt";
  {
    std::FILE* f = std::fopen(path, "w");
    REQUIRE(f);
    const auto text = kht::AProductTable::shipped().format();
    std::fputs(text.substr(text.find('\n') + 1).c_str(), f);
    std::fclose(f);
  }
  auto r = call({"verify", "algebra-a", "--table", path});
  std::remove(path);
  CHECK(r.code == 1);
}
