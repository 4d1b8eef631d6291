#include "doctest.h"

#include "cli.hpp"
#include "table.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace pairzero::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run lmg(std::vector<std::string> args) {
  std::ostringstream o, e;
  Run r;
  r.code = run_lmg(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

Run bcs(std::vector<std::string> args) {
  std::ostringstream o, e;
  Run r;
  r.code = run_bcs(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pairzero_test_" + name);
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(std::stod(format_double(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("tables serialize to CSV and JSON") {
  Table t;
  t.columns = {"a", "b", "c"};
  t.add({1LL, 0.5, std::string("x,y")});
  t.add({std::monostate{}, INFINITY, std::string("plain")});
  CHECK_THROWS(t.add({1LL}));
  std::ostringstream csv;
  write_csv(t, csv);
  CHECK(csv.str() == "a,b,c\n1,0.5,\"x,y\"\nnan,inf,plain\n");
  std::ostringstream js;
  write_json(t, {{"tool", "t"}}, js);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["meta"]["tool"] == "t");
  CHECK(doc["rows"][0]["c"] == "x,y");
  CHECK(doc["rows"][1]["a"].is_null());
  CHECK(doc["rows"][1]["b"].is_null());
}

TEST_CASE("lmg spectrum") {
  auto r = lmg({"spectrum", "--j", "1", "--gx", "0", "--gy", "0"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == "state_index");
  CHECK(rows[1][1] == "-1");
  CHECK(rows[2][1] == "0");
  CHECK(rows[3][1] == "1");

  r = lmg({"spectrum", "--j", "10", "--gx", "5", "--gy", "5"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(csv_rows(r.out)[1][1]) == doctest::Approx(-10.0 + 50.0 / 19.0).epsilon(1e-15));

  r = lmg({"spectrum", "--j", "2", "--gx", "1", "--gy", "2", "--vectors"});
  REQUIRE(r.code == 0);
  const auto vr = csv_rows(r.out);
  CHECK(vr[0].back() == "im_c");
  CHECK(vr.size() == 1 + 5 * 5);
}

TEST_CASE("bcs spectrum") {
  const auto r = bcs({"spectrum", "--levels", "0,1", "--gamma", "1", "--n", "2"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  const double d = std::sqrt(1.25);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(1.5 - d));
  CHECK(std::stod(rows[2][1]) == doctest::Approx(1.0));
  CHECK(std::stod(rows[3][1]) == doctest::Approx(1.5 + d));
}

TEST_CASE("lmg zeros and pairons examples") {
  SUBCASE("total collapse") {
    auto r = lmg({"zeros", "--j", "10", "--gx", "5", "--gy", "5"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    const auto& h = rows[0];
    const auto col = [&](const std::string& n) {
      return static_cast<std::size_t>(std::find(h.begin(), h.end(), n) - h.begin());
    };
    CHECK(std::stod(rows[1][col("theta")]) == doctest::Approx(std::numbers::pi));
    CHECK(rows[1][col("phi")] == "0");
    CHECK(rows[1][col("multiplicity")] == "20");
    CHECK(rows[1][col("flags")].find("pole") != std::string::npos);

    r = lmg({"pairons", "--j", "10", "--gx", "5", "--gy", "5"});
    REQUIRE(r.code == 0);
    rows = csv_rows(r.out);
    REQUIRE(rows.size() == 11);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i][6] == "-1");
      CHECK(rows[i][7] == "0");
    }
  }
  SUBCASE("j = 1 closed form") {
    auto r = lmg({"pairons", "--j", "1", "--gx", "1", "--gy", "-1", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["rows"].size() == 1);
    CHECK(doc["rows"][0]["re_e"].get<double>() == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(doc["meta"]["command"] == "pairons");
    CHECK(doc["meta"]["tool"].is_string());

    r = lmg({"zeros", "--j", "1", "--gx", "1", "--gy", "-1", "--format", "json"});
    REQUIRE(r.code == 0);
    doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["rows"].size() == 2);
    const double theta = 2.0 * std::atan(std::sqrt(1.0 + std::sqrt(2.0)));
    for (const auto& row : doc["rows"]) CHECK(row["theta"].get<double>() == doctest::Approx(theta).epsilon(1e-14));
    CHECK(doc["rows"][0]["alpha"] == doc["rows"][1]["alpha"]);
  }
}

TEST_CASE("exit codes") {
  CHECK(lmg({}).code == 2);
  CHECK(lmg({"bogus"}).code == 2);
  CHECK(lmg({"spectrum", "--j", "1.5"}).code == 2);
  CHECK(lmg({"zeros", "--j", "3", "--gx", "1", "--gy", "1", "--state", "9"}).code == 2);
  CHECK(lmg({"pairons", "--j", "3", "--gx", "0", "--gy", "1"}).code == 2);
  CHECK(lmg({"spectrum", "--j", "3", "--format", "xml"}).code == 2);
  CHECK(bcs({"spectrum", "--levels", "1,0", "--gamma", "1", "--n", "2"}).code == 2);
  CHECK(lmg({"--help"}).code == 0);
  // j = 2 at gamma_x = gamma_y = -1.5: E(m = -2) = E(m = 0) in the even sector
  const auto deg = lmg({"pairons", "--j", "2", "--gx", "-1.5", "--gy", "-1.5", "--state", "1"});
  CHECK(deg.code == 3);
  CHECK_FALSE(deg.err.empty());
  // equal levels cannot be inverted
  CHECK(bcs({"pairons", "--levels", "0,1,1", "--gamma", "1", "--n", "2"}).code == 2);
}

TEST_CASE("scan output is byte-identical across thread counts") {
  const std::vector<std::string> base{"scan", "--j", "10", "--line-sum", "10", "--from", "0.05", "--to", "9.95",
                                      "--steps", "40"};
  auto a = base, b = base;
  a.insert(a.end(), {"--threads", "1"});
  b.insert(b.end(), {"--threads", "4"});
  const auto ra = lmg(a), rb = lmg(b);
  REQUIRE(ra.code == 0);
  CHECK(ra.out == rb.out);
  const auto rows = csv_rows(ra.out);
  CHECK(rows[0] == std::vector<std::string>{"gx", "gy", "t", "state_index", "energy", "alpha", "re_e", "im_e", "theta",
                                            "phi", "multiplicity", "branch_id", "flags"});
  CHECK(rows.size() == 1 + 40 * 10);

  // the environment variable sets the default worker count
  setenv("PAIRZERO_THREADS", "3", 1);
  const auto rc = lmg(base);
  unsetenv("PAIRZERO_THREADS");
  CHECK(rc.out == ra.out);

  auto j = a;
  j.insert(j.end(), {"--format", "json"});
  const auto doc = nlohmann::json::parse(lmg(j).out);
  CHECK(doc["rows"].size() == 400);
  CHECK(doc["meta"]["config"].contains("steps"));
  CHECK_FALSE(doc["meta"]["config"].contains("threads"));
}

TEST_CASE("collapse and crossings reports") {
  auto r = lmg({"crossings", "--j", "10"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 11);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "true");

  r = lmg({"collapse", "--j", "10", "--line-sum", "10", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  int analytic = 0;
  for (const auto& row : doc["rows"]) {
    if (row["flags"] == "extra") continue;
    ++analytic;
    if (row["k"].get<int>() == 0) {
      CHECK(row["flags"] == "no_coalescence");
      continue;
    }
    CHECK(row["detected_ok"] == "true");
    CHECK(row["pattern_ok"] == "true");
  }
  CHECK(analytic == 16);
}

TEST_CASE("bcs pairons and ellipsoid commands") {
  auto r = bcs({"pairons", "--levels", "0,0.5,1", "--gamma", "0.5", "--n", "6", "--format", "json"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["rows"].size() > 0);
  for (const auto& row : doc["rows"]) CHECK(row["sum_rule_error"].get<double>() <= 1e-8);

  r = bcs({"ellipsoid", "--levels", "0,0.5,1", "--gamma", "0.5", "--n", "6", "--samples", "20", "--seed", "7"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  CHECK(rows.size() > 1);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "true");
  CHECK(bcs({"ellipsoid", "--levels", "0,0.5,1", "--gamma", "0.5", "--n", "6", "--samples", "20", "--seed", "7"}).out ==
        r.out);
}

TEST_CASE("config file and output file") {
  const auto cfg = temp_file("run.toml");
  const auto out = temp_file("out.csv");
  {
    std::ofstream f(cfg);
    f << "j = 1\ngx = 0\ngy = 0\n";
  }
  auto r = lmg({"spectrum", "--config", cfg.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(csv_rows(ss.str()).size() == 4);

  // flags win over the file
  r = lmg({"spectrum", "--config", cfg.string(), "--j", "2"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out).size() == 6);

  CHECK(lmg({"spectrum", "--config", temp_file("missing.toml").string()}).code == 2);
  std::filesystem::remove(cfg);
  std::filesystem::remove(out);
}
