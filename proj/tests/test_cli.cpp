#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "curvedepth/cli.hpp"

using namespace curvedepth;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("curvedepth_cli_" + name);
}

}  // namespace

TEST_CASE("degree lists and ranges") {
  CHECK(parse_degree_list("4,16,36") == std::vector<int>{4, 16, 36});
  CHECK(parse_degree_list("2:6") == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(parse_degree_list("2:10:4") == std::vector<int>{2, 6, 10});
  CHECK_THROWS_AS(parse_degree_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_degree_list("3,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_degree_list("0"), std::invalid_argument);
}

TEST_CASE("depth closed form and quadrature records") {
  const Run a = run({"depth", "--ensemble", "kostlan", "--degree", "16", "--method", "closedform"});
  REQUIRE(a.code == 0);
  const json ra = json::parse(lines(a.out).at(0));
  CHECK(ra["value"].get<double>() == 2.0);
  CHECK(ra["a_d_band"].get<double>() == 0.0);
  CHECK(ra["version"].get<std::string>() == version());

  const Run b = run({"depth", "--ensemble", "kostlan", "--degree", "16", "--method", "kacrice", "--tol", "1e-8"});
  REQUIRE(b.code == 0);
  const json rb = json::parse(lines(b.out).at(0));
  CHECK(std::abs(rb["value"].get<double>() - 2.0) <= 1e-8);
}

TEST_CASE("repeated runs give identical records apart from wall time") {
  auto strip = [](const std::string& line) {
    json r = json::parse(line);
    r.erase("wall_time_ms");
    return r;
  };
  const Run a = run({"depth", "--ensemble", "kac", "--degree", "10", "--method", "kacrice"});
  const Run b = run({"depth", "--ensemble", "kac", "--degree", "10", "--method", "kacrice"});
  REQUIRE(a.code == 0);
  CHECK(strip(lines(a.out).at(0)) == strip(lines(b.out).at(0)));
}

TEST_CASE("records re-run from their own fields") {
  const Run a = run({"depth", "--ensemble", "kostlan", "--degree", "3", "--method", "montecarlo", "--trials", "200",
                     "--seed", "4"});
  REQUIRE(a.code == 0);
  const json r = json::parse(lines(a.out).at(0));
  const Run b = run({"depth", "--ensemble", r["ensemble"].get<std::string>(), "--degree", std::to_string(r["degree"].get<int>()),
                     "--method", r["method"].get<std::string>(), "--trials", std::to_string(r["trials"].get<std::size_t>()),
                     "--seed", std::to_string(r["seed"].get<std::uint64_t>()), "--tol", r["tol"].dump(),
                     "--max-panels", std::to_string(r["max_panels"].get<std::size_t>())});
  const json s = json::parse(lines(b.out).at(0));
  CHECK(s["value"] == r["value"]);
  CHECK(s["histogram"] == r["histogram"]);
}

TEST_CASE("argument errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"depth", "--degree", "4", "--method", "nope"}).code == 1);
  CHECK(run({"depth", "--ensemble", "kac", "--degree", "4", "--method", "closedform"}).code == 1);
  CHECK(run({"depth", "--ensemble", "martian", "--degree", "4"}).code == 1);
  CHECK(run({"sweep", "--degrees", ""}).code == 1);
  CHECK(run({"sweep"}).code == 1);
  CHECK(run({"density", "--degree", "3", "--step", "0"}).code == 1);
  CHECK(run({"depth", "--degree", "4", "--tol", "-1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("computation failures exit with 2") {
  const Run r = run({"depth", "--ensemble", "kac", "--degree", "10", "--max-panels", "2", "--tol", "1e-12"});
  CHECK(r.code == 2);
  const json rec = json::parse(lines(r.out).at(0));
  CHECK(rec["status"] == "nonconvergence");

  const Run mc = run({"depth", "--degree", "8", "--method", "montecarlo", "--trials", "20", "--subdiv", "0"});
  CHECK(mc.code == 2);
  CHECK(json::parse(lines(mc.out).at(0))["status"] == "excessive_discards");
}

TEST_CASE("sweep CSV") {
  const Run r = run({"sweep", "--ensemble", "kostlan", "--degrees", "36,4,64,16", "--method", "kacrice"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "degree,value,err,a_d_band,method,seed,status");
  const std::vector<int> degrees{4, 16, 36, 64};
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    std::istringstream is(rows[i + 1]);
    std::string cell;
    std::getline(is, cell, ',');
    CHECK(std::stoi(cell) == degrees[i]);
    std::getline(is, cell, ',');
    CHECK(std::abs(std::stod(cell) - (i + 1.0)) < 1e-8);
  }

  const Run two = run({"sweep", "--ensemble", "kostlan", "--degrees", "2", "--method", "kacrice", "--tol", "1e-12"});
  const std::string row = lines(two.out).at(1);
  CHECK(std::abs(std::stod(row.substr(row.find(',') + 1)) - std::sqrt(0.5)) < 1e-12);

  const auto path = temp_file("sweep.csv");
  const Run f = run({"sweep", "--ensemble", "kac", "--degrees", "10,100,1000", "--out", path.string()});
  REQUIRE(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  std::vector<double> ratio;
  for (std::string line; std::getline(in, line);) {
    std::istringstream is(line);
    std::string d;
    std::string v;
    std::getline(is, d, ',');
    std::getline(is, v, ',');
    ratio.push_back(std::stod(v) / std::log(std::stod(d)));
  }
  REQUIRE(ratio.size() == 3);
  CHECK(*std::max_element(ratio.begin(), ratio.end()) / *std::min_element(ratio.begin(), ratio.end()) < 3.0);
  std::filesystem::remove(path);
}

TEST_CASE("density CSV") {
  const Run one = run({"density", "--degree", "1", "--s-min", "0", "--s-max", "2", "--step", "0.25"});
  REQUIRE(one.code == 0);
  const auto rows = lines(one.out);
  CHECK(rows[0] == "s,phi_d,sqrt_phi_d");
  CHECK(rows.size() == 10);
  CHECK(rows[1] == "0,1,1");
  CHECK(rows[5].rfind("1,0.25,0.5", 0) == 0);

  const Run three = run({"density", "--degree", "3", "--s-min", "1", "--s-max", "1", "--step", "0.1"});
  CHECK(lines(three.out).at(1).rfind("1,1.25,", 0) == 0);
}

TEST_CASE("loop emission and the mollified oracle") {
  const auto path = temp_file("loops.txt");
  const Run r = run({"depth", "--degree", "4", "--method", "montecarlo", "--trials", "20", "--epsilon", "0.05",
                     "--emit-loops", path.string()});
  REQUIRE(r.code == 0);
  const json rec = json::parse(lines(r.out).at(0));
  CHECK(rec.contains("mollified_trial0"));
  CHECK(rec.contains("depth_trial0"));
  std::ifstream in(path);
  std::string word;
  in >> word;
  CHECK(word == "loop");
  std::filesystem::remove(path);
}

TEST_CASE("custom ensemble from file") {
  const auto path = temp_file("scheme.txt");
  {
    std::ofstream f(path);
    for (int j1 = 0; j1 <= 4; ++j1) {
      for (int j2 = 0; j1 + j2 <= 4; ++j2) f << j1 << ' ' << j2 << " 1\n";
    }
  }
  const Run r = run({"depth", "--ensemble", "custom:" + path.string(), "--method", "kacrice", "--tol", "1e-6"});
  REQUIRE(r.code == 0);
  const json rec = json::parse(lines(r.out).at(0));
  CHECK(rec["degree"] == 4);
  CHECK(rec["value"].get<double>() > 0.0);
  CHECK(run({"depth", "--ensemble", "custom:" + path.string(), "--degree", "5"}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("thread count from the environment") {
  setenv("CURVEDEPTH_THREADS", "2", 1);
  CHECK(run({"depth", "--degree", "2", "--method", "montecarlo", "--trials", "10"}).code == 0);
  setenv("CURVEDEPTH_THREADS", "zero", 1);
  CHECK(run({"depth", "--degree", "2", "--method", "montecarlo", "--trials", "10"}).code == 1);
  unsetenv("CURVEDEPTH_THREADS");
}
