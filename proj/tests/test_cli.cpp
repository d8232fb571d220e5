#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "su11/cli.hpp"

using Catch::Approx;
using su11::cplx;
namespace cli = su11::cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SU11_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

cli::json results(const Run& r) { return cli::json::parse(r.out).at("results"); }

std::vector<std::vector<double>> csv_rows(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("complex literals", "[cli]") {
  CHECK(cli::parse_complex("2+0i") == cplx(2, 0));
  CHECK(cli::parse_complex("-1.5-2.25i") == cplx(-1.5, -2.25));
  CHECK(cli::parse_complex("+3") == cplx(3, 0));
  CHECK(cli::parse_complex("0.5i") == cplx(0, 0.5));
  CHECK(cli::parse_complex("-i") == cplx(0, -1));
  CHECK(cli::parse_complex("1e-3+2e+1i") == cplx(1e-3, 20));
  CHECK(cli::parse_complex("1E+2-i") == cplx(100, -1));
  for (const char* bad : {"", "i2", "1+2", "2+xi", "1++2i", "nan", "inf+0i", "1,5", " 1", "1+2j"}) {
    INFO(bad);
    CHECK_FALSE(cli::parse_complex(bad).has_value());
  }
  CHECK_THROWS_AS(cli::require_complex("--w", "abc"), cli::UsageError);
}

TEST_CASE("JSON emitter", "[cli]") {
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
  CHECK(cli::format_double(-0.0) == "0");
  CHECK(cli::format_double(std::nan("")) == "null");
  const cli::json j{{"x", 1.0 / 3}, {"a", cli::json::array()}, {"o", cli::json::object()}, {"s", "q\"t"}, {"n", 3}, {"b", true}};
  const std::string text = cli::dump_json(j);
  CHECK(text == "{\n  \"x\": 0.33333333333333331,\n  \"a\": [],\n  \"o\": {},\n  \"s\": \"q\\\"t\",\n  \"n\": 3,\n  \"b\": true\n}\n");
  CHECK(cli::dump_json(cli::json::parse(text)) == text);
}

TEST_CASE("dist examples", "[cli]") {
  auto r = run("dist --space sr-cover --c 0 --w 2+0i");
  REQUIRE(r.code == 0);
  auto j = cli::json::parse(r.out);
  CHECK(j.at("command") == "dist");
  CHECK(j.at("results").at("value").get<double>() == Approx(std::asinh(2.0)).epsilon(1e-15));
  CHECK(j.at("results").at("case") == "HorizontalB");
  CHECK(j.at("results").at("beta").is_null());
  CHECK(j.at("provenance").at("library_version") == su11::library_version);
  CHECK(j.at("provenance").at("tolerances").at("oracle").at("endpoint_tol").get<double>() == 1e-8);

  r = run("dist --space sr-matrix --z1 -1+0i --z2 0+0i");
  REQUIRE(r.code == 0);
  j = results(r);
  CHECK(j.at("value").get<double>() == su11::sr_distance_cover(su11::CoverPoint{std::numbers::pi, 0}).value);
  CHECK(j.at("case") == "VerticalA");
  CHECK(j.at("paper_value").get<double>() == Approx(std::numbers::pi));
  CHECK(j.at("note").get<std::string>().find("vertical-distance") != std::string::npos);

  r = run("dist --space lorentz --c -1.5708 --w 0.2+0i");
  REQUIRE(r.code == 0);
  CHECK(results(r).at("value").get<double>() == Approx(std::numbers::pi / 2).margin(1e-5));
  r = run("dist --space lorentz --c -0.6 --w 0.3+0i");
  CHECK(results(r).at("note").get<std::string>().find("lorentz-distance") != std::string::npos);
}

TEST_CASE("dist with the oracle", "[cli]") {
  const auto r = run("dist --space sr-cover --c 2 --w 1 --oracle");
  REQUIRE(r.code == 0);
  const auto j = results(r);
  CHECK(j.at("oracle").at("found_count") == 3);
  CHECK(j.at("oracle").at("min_length").get<double>() == Approx(j.at("value").get<double>()).margin(1e-5));
  const auto bad = run("dist --space sr-cover --c 2 --w 1 --oracle --endpoint-tol 0");
  CHECK(bad.code == 2);
}

TEST_CASE("count, classify-sl, future examples", "[cli]") {
  auto j = results(run("count --c 2.0 --w 1"));
  CHECK(j.at("kind") == "finite");
  CHECK(j.at("n") == 3);
  CHECK(results(run("count --c 1 --w 0")).at("kind") == "uncountable");

  j = results(run("classify-sl --c -3.141592653589793 --w 0.7 --solve"));
  CHECK(j.at("class") == "countable-xi");
  CHECK(j.at("expected_geodesics") == -1);
  CHECK(j.at("free_theta") == true);
  CHECK(results(run("classify-sl --c 0.3 --w 1+2i")).at("class") == "not-reachable");

  j = results(run("future --c -0.5 --w 0.4"));
  CHECK(j.at("lorentz") == true);
  CHECK(j.at("sublorentz") == false);
  CHECK(j.at("causal_lorentz") == true);
  CHECK(j.at("lorentz_geodesics") == "unique");
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run("dist --space sr-cover --c 0 --w 2+xi").code == 2);
  CHECK(run("dist --space nowhere --c 0 --w 1").code == 2);
  CHECK(run("dist --space sr-cover --c 1").code == 2);
  CHECK(run("count --c abc --w 1").code == 2);
  CHECK(run("nosuchcommand").code == 2);
  CHECK(run("trace --kind sr --samples 1").code == 2);
  CHECK(run("locus --kind conjugate-even --j 0").code == 2);
  CHECK(run("verify --suite nothing").code == 2);
  CHECK(run("dist --space sr-matrix --z1 2 --z2 0").code == 3);
  CHECK(run("count --c 0 --w 0").code == 3);
  CHECK(run("classify-sl --c 0 --w 0").code == 0);
  CHECK(run("--help").code == 0);
}

TEST_CASE("JSON records round-trip byte for byte", "[cli]") {
  for (const char* args : {"dist --space sr-cover --c 0.5 --w 1", "dist --space sr-cover --c 1 --w 0", "dist --space lorentz --c -2.5 --w 0.2",
                           "count --c 3.5 --w 1", "classify-sl --c -2 --w 0.5+0.2i --solve", "future --c -1 --w 0.3-0.1i",
                           "verify --suite algebra --quick"}) {
    INFO(args);
    const auto r = run(args);
    REQUIRE(r.code == 0);
    CHECK(cli::dump_json(cli::json::parse(r.out)) == r.out);
  }
}

TEST_CASE("trace CSV", "[cli]") {
  const double t_max = 3 * std::numbers::pi / 2;
  char args[128];
  std::snprintf(args, sizeof args, "trace --kind sr --alpha 0 --t-max %.17g", t_max);
  const auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.out.back() == '\n');
  std::string header;
  const auto rows = csv_rows(r.out, header);
  CHECK(header == "t,c,re_w,im_w");
  REQUIRE(rows.size() == 512);
  CHECK(rows.front() == std::vector<double>{0, 0, 0, 0});
  CHECK(rows.back()[0] == t_max);
  const auto end = su11::sr_geodesic_cover(su11::AlgebraVector{1, 0, 1}, t_max);
  CHECK(rows.back()[1] == end.c);
  CHECK(rows.back()[3] == end.w.imag());

  std::string h2;
  const auto sl = csv_rows(run("trace --kind sl --a3 1 --t-max 2 --samples 5").out, h2);
  REQUIRE(sl.size() == 5);
  for (const auto& row : sl) {
    CHECK(row[1] == Approx(-row[0]).margin(1e-15));
    CHECK(row[2] == 0);
    CHECK(row[3] == 0);
  }
  CHECK(run("trace --kind sl --alpha 0").code == 2);
}

TEST_CASE("locus CSV", "[cli]") {
  std::string header;
  const auto rows = csv_rows(run("locus --kind conjugate-even --j 8 --w-max 3 --samples 61").out, header);
  CHECK(header == "abs_w,c_1,c_2,c_3,c_4,c_5,c_6,c_7,c_8");
  REQUIRE(rows.size() == 61);
  CHECK(rows.back()[0] == 3);
  for (int j = 1; j <= 8; ++j) CHECK(rows.front()[j] == 0);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (int j = 1; j <= 8; ++j) {
      CHECK(rows[i][j] > rows[i - 1][j]);
      if (j > 1) CHECK(rows[i][j] > rows[i][j - 1]);
    }

  std::string hl, hs;
  const auto lor = csv_rows(run("locus --kind future-boundary-lorentz --w-max 4 --samples 41").out, hl);
  const auto sl = csv_rows(run("locus --kind future-boundary-sl --w-max 4 --samples 41").out, hs);
  CHECK(hl == "s,c_re_axis,c_im_axis");
  REQUIRE(lor.size() == sl.size());
  for (std::size_t i = 0; i < lor.size(); ++i) {
    CHECK(std::abs(lor[i][2] - sl[i][2]) < 1e-9);
    if (i > 0) CHECK(sl[i][1] < lor[i][1]);
  }
}

TEST_CASE("verify suites", "[cli]") {
  auto r = run("verify --suite algebra");
  REQUIRE(r.code == 0);
  auto j = results(r);
  CHECK(j.at("all_pass") == true);
  CHECK(j.at("checks").size() == 6);

  r = run("verify --suite adjudicate");
  REQUIRE(r.code == 0);
  j = results(r);
  REQUIRE(j.at("adjudications").size() == 4);
  for (const auto& a : j.at("adjudications")) {
    CHECK_FALSE(a.at("verdict").get<std::string>().empty());
    CHECK(a.at("checks").at(0).contains("delta"));
  }

  const auto md = run("verify --suite algebra --quick --format markdown");
  CHECK(md.code == 0);
  CHECK(md.out.rfind("| criterion | check |", 0) == 0);
}

TEST_CASE("verify is deterministic under a fixed seed", "[cli]") {
  const auto a = run("verify --suite sl --quick --seed 7");
  const auto b = run("verify --suite sl --quick --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run("verify --suite sl --quick --seed 8");
  CHECK(c.out != a.out);
}

TEST_CASE("output directory", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path() / "su11_cli_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "count.json";
  std::filesystem::remove(file);
  const std::string cmd = "SU11_OUTPUT_DIR=" + dir.string() + " " + SU11_CLI_PATH + " --output count.json count --c 2 --w 1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const std::string text = read_file(file.string());
  CHECK(cli::json::parse(text).at("results").at("n") == 3);
  CHECK(text == run("count --c 2 --w 1").out);
}

TEST_CASE("README docket table is current", "[cli]") {
  const std::string readme = read_file(SU11_README_PATH);
  const std::string begin = "<!-- docket:begin -->\n", end = "<!-- docket:end -->";
  const auto b = readme.find(begin), e = readme.find(end);
  REQUIRE(b != std::string::npos);
  REQUIRE(e != std::string::npos);
  const std::string table = readme.substr(b + begin.size(), e - b - begin.size());
  CHECK(table == run("verify --suite adjudicate --format docket").out);
}
