#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using besicovitch::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("classify") {
  auto r = call({"classify", "--u", "1/1"});
  REQUIRE(r.code == 0);
  auto j = json_of(r);
  CHECK(j["branch"] == "SingularThinCase");
  CHECK(j["base"] == "4");
  CHECK(j["n0"] == 1);
  CHECK(j["nu"] == "3");
  CHECK(j["dimUpperBound"].get<double>() ==
        doctest::Approx(std::log(3.0) / std::log(4.0)));
  CHECK(j["normalizedU"] == "1/1");
  CHECK(j.contains("theorem"));

  r = call({"classify", "--u", "4/3"});
  j = json_of(r);
  CHECK(j["normalizedU"] == "1/3");

  r = call({"classify", "--u", "1.4142135623", "--irrational"});
  REQUIRE(r.code == 0);
  CHECK(json_of(r)["branch"] == "IrrationalCase");

  r = call({"classify", "--system", "square", "--r", "3", "--u", "1/3"});
  CHECK(json_of(r)["branch"] == "IntervalCase");
  r = call({"classify", "--system", "mixed", "--r", "2", "--s", "3", "--u", "1/2"});
  CHECK(json_of(r)["branch"] == "SingularThinCase");
  r = call({"classify", "--system", "kenyon", "--u", "2/7"});
  CHECK(json_of(r)["branch"] == "PositiveMeasure");
  r = call({"classify", "--d", "2", "--u", "1"});
  CHECK(json_of(r)["dimUpperBound"].get<double>() ==
        doctest::Approx(2 * std::log(3.0) / std::log(4.0)));
}

TEST_CASE("collide and vn") {
  auto r = call({"collide", "--u", "1/3", "--nmax", "6"});
  REQUIRE(r.code == 0);
  auto j = json_of(r);
  CHECK(j["u"] == "1/3");
  CHECK(j["level"] == 2);
  CHECK(j["nu"] == "14");
  REQUIRE(j["collisions"].size() == 1);
  const auto& c = j["collisions"][0];
  const long a = std::stol(c["A"].get<std::string>());
  const long b = std::stol(c["B"].get<std::string>());
  const long a2 = std::stol(c["A2"].get<std::string>());
  const long b2 = std::stol(c["B2"].get<std::string>());
  CHECK(3 * a + b == 3 * a2 + b2);
  CHECK(std::to_string(3 * a + b) == c["key"].get<std::string>());

  r = call({"vn", "--u", "1/3", "--n", "2"});
  REQUIRE(r.code == 0);
  j = json_of(r);
  CHECK(j["level"] == 2);
  CHECK(j["nu"] == "14");
  CHECK(j["collisions"].size() == 2);

  r = call({"collide", "--u", "2/3", "--nmax", "6"});
  CHECK(json_of(r)["found"] == false);
}

TEST_CASE("cover, fourier, raster and sweep outputs") {
  auto r = call({"cover", "--u", "1/2", "--nmax", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "n,nu_n,union_measure,union_measure_float,boxdim\n"
        "1,4,1/2,0.5,1\n2,16,1/2,0.5,1\n3,64,1/2,0.5,1\n");

  r = call({"fourier", "--u", "1", "--t", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "t,J,abs_value,tail_bound\n0,0,1,0\n");

  r = call({"fourier", "--u", "1/3", "--n-from", "2", "--n-to", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(json_of(r).size() == 3);

  r = call({"fourier", "--u", "2", "--bands", "3", "--samples", "256"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("band,lo,hi,sup_abs,argmax_t\n", 0) == 0);

  r = call({"raster", "--resolution", "64", "--resolution", "128"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("resolution,depth,occupied_fraction\n64,3,", 0) == 0);

  r = call({"sweep", "--pmax", "6", "--qmax", "6", "--nmax", "6"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("p,q,pstar,qstar,branch,n0,nu,coherent\n", 0) == 0);
  CHECK(r.out.find("1,1,1,1,SingularThinCase,1,3,true\n") != std::string::npos);
  CHECK(r.out.find(",false\n") == std::string::npos);
}

TEST_CASE("file output and PGM") {
  const std::string path = "cli_test_raster.pgm";
  auto r = call({"raster", "--format", "pgm", "--resolution", "32", "-o", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path, std::ios::binary);
  std::string header;
  std::getline(in, header);
  CHECK(header == "P5");
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 1);
  CHECK(call({"bogus"}).code == 1);
  CHECK(call({"classify", "--u", "1", "--nope"}).code == 1);
  auto r = call({"classify", "--u", "1.5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("1.5") != std::string::npos);
  CHECK(call({"classify", "--u", "x/y"}).code == 1);
  CHECK(call({"classify"}).code == 1);
  CHECK(call({"classify", "--u", "1", "--system", "cube"}).code == 1);
  CHECK(call({"classify", "--system", "square", "--r", "4", "--u", "1"}).code == 1);
  CHECK(call({"vn", "--u", "0.5", "--irrational", "--n", "2"}).code == 1);
  CHECK(call({"cover", "--u", "1", "--format", "pgm"}).code == 1);
  CHECK(call({"raster", "--resolution", "8"}).code == 1);
  r = call({"vn", "--u", "1/3", "--n", "13"});
  CHECK(r.code == 2);
  CHECK(r.err.find("max_level") != std::string::npos);
  CHECK(call({"vn", "--u", "1/3", "--n", "6", "--max-points", "100"}).code == 2);
  CHECK(call({"raster", "--resolution", "64", "--max-work", "10"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("outputs are byte-identical across thread counts") {
  const std::vector<std::vector<std::string>> cmds{
      {"vn", "--u", "3/7", "--n", "8"},
      {"cover", "--u", "3/5", "--nmax", "9"},
      {"cover", "--u", "1.41421356237", "--irrational", "--nmax", "8"},
      {"fourier", "--u", "3/5", "--bands", "3", "--samples", "512"},
      {"raster", "--resolution", "128"},
      {"sweep", "--pmax", "8", "--qmax", "8"},
  };
  for (const auto& cmd : cmds) {
    auto one = cmd;
    one.insert(one.end(), {"--threads", "1"});
    auto four = cmd;
    four.insert(four.end(), {"--threads", "4"});
    const auto a = call(one);
    const auto b = call(four);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}
