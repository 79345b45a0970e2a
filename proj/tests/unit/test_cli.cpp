#include <filesystem>
#include <fstream>
#include <sstream>

#include "blockade/cli.hpp"
#include "blockade/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace blockade;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "blockade_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto r = run({"steady", "--nope"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--nope") != std::string::npos);
  CHECK(run({"steady", "--delta", "abc"}).code == 2);
  CHECK(run({"figure", "fig99"}).code == 2);
  CHECK(run({"sweep"}).code == 2);
  CHECK(run({"sweep", "--axis", "delta:0:1"}).code == 2);
  CHECK(run({"sweep", "--axis", "kappa:0:1:3"}).code == 2);
  CHECK(run({"sweep", "--axis", "delta:0:1:1"}).code == 2);
  const auto bad = run({"steady", "--gamma-gs", "-1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("gammaGS") != std::string::npos);
}

TEST_CASE("help exits with 0 and documents units") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("kappa") != std::string::npos);
  CHECK(r.out.find("steady") != std::string::npos);
  CHECK(run({"sweep", "--help"}).code == 0);
}

TEST_CASE("steady prints the point as JSON") {
  const auto r = run({"steady", "--delta", "40.27", "--J", "20", "--omega-d", "4", "--g", "20", "--omega-p", "0.2",
                      "--phi-z", "0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["g2"].get<double>() < 1.0);
  CHECK(j["blockade"] == "single-photon");
  CHECK(j["params"]["J"] == 20.0);
  CHECK(j["delta"] == 40.27);
  CHECK(j["solver"]["withinContract"] == true);
  const auto d = run({"steady", "--delta", "40.27", "--J", "20", "--omega-d", "4", "--method", "direct"});
  REQUIRE(d.code == 0);
  const auto jd = nlohmann::json::parse(d.out);
  CHECK(jd["solver"]["method"] == "direct");
  CHECK(jd["g2"].get<double>() == doctest::Approx(j["g2"].get<double>()).epsilon(1e-8));
}

TEST_CASE("config file precedence") {
  TempDir tmp;
  {
    std::ofstream f(tmp / "p.cfg");
    f << "# Fig. 5 point\ndelta=40.27\nJ=20\nomegaD=4\nfockCutoff=5\n";
  }
  auto j = nlohmann::json::parse(run({"steady", "--config", tmp / "p.cfg"}).out);
  CHECK(j["params"]["J"] == 20.0);
  CHECK(j["params"]["fockCutoff"] == 5);
  j = nlohmann::json::parse(run({"steady", "--config", tmp / "p.cfg", "--J", "3"}).out);
  CHECK(j["params"]["J"] == 3.0);
  CHECK(j["params"]["delta"] == 40.27);
  {
    std::ofstream f(tmp / "bad.cfg");
    f << "omegaQ=1\n";
  }
  const auto bad = run({"steady", "--config", tmp / "bad.cfg"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("omegaQ") != std::string::npos);
  CHECK(run({"steady", "--config", tmp / "missing.cfg"}).code == 2);
}

TEST_CASE("sweep writes a readable CSV") {
  TempDir tmp;
  const auto path = tmp / "s.csv";
  const auto r = run({"sweep", "--axis", "J:0:10:2", "--axis2", "delta:-20:20:3", "--fock-cutoff", "3", "--threads",
                      "2", "-o", path});
  REQUIRE(r.code == 0);
  std::ifstream f(path);
  const auto t = read_csv(f);
  CHECK(t.axes == std::vector<std::string>{"J", "delta"});
  CHECK(t.rows.size() == 6);
  CHECK(t.rows[4].coords == std::vector<double>{10, 0});

  const auto derived = tmp / "d.csv";
  REQUIRE(run({"sweep", "--axis", "g:10:20:2", "--axis2", "J:0:5:2", "--delta-at-negative-peak", "--fock-cutoff", "2",
               "--converge", "-o", derived})
              .code == 0);
  std::ifstream g(derived);
  std::string header;
  std::getline(g, header);
  CHECK(header == "g,J,delta,meanN,g2,g3,log10g2,log10g3,residual,fockCutoff,drift");
  CHECK(run({"sweep", "--axis", "g:10:20:2", "--delta-at-negative-peak", "-o", derived}).code == 2);
}

TEST_CASE("dressed and figure commands") {
  const auto r = run({"dressed", "--J", "20", "--omega-d", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("J,omegaD,g,phiZ,omegaC,manifold,level,numeric,closedForm\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 15);
  const auto scan = run({"dressed", "--scan", "omegaD:0:30:4"});
  CHECK(std::count(scan.out.begin(), scan.out.end(), '\n') == 1 + 4 * 14);
  CHECK(run({"dressed", "--scan", "delta:0:1:3"}).code == 2);

  TempDir tmp;
  REQUIRE(run({"figure", "fig10", "--output-dir", tmp.path.string()}).code == 0);
  CHECK(std::filesystem::exists(tmp.path / "fig10.csv"));
}

TEST_CASE("figure CSV columns consumed by the plotting scripts") {
  TempDir tmp;
  REQUIRE(run({"figure", "fig5", "--output-dir", tmp.path.string(), "--fock-cutoff", "2"}).code == 0);
  std::ifstream f(tmp.path / "fig5.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "delta,meanN,g2,g3,log10g2,log10g3,residual");
  f.seekg(0);
  const auto t = read_csv(f);
  CHECK(t.rows.size() == 241);
  CHECK(t.rows.front().coords[0] == -60);
  CHECK(t.rows.back().coords[0] == 60);

  REQUIRE(run({"figure", "fig9", "--output-dir", tmp.path.string()}).code == 0);
  std::ifstream g(tmp.path / "fig9.csv");
  std::getline(g, header);
  CHECK(header == "J,omegaD,g,phiZ,omegaC,manifold,level,numeric,closedForm");
  std::size_t lines = 0;
  for (std::string line; std::getline(g, line);) ++lines;
  CHECK(lines == 2 * 121 * 14);
}

TEST_CASE("validate is a subcommand") {
  const auto r = run({"validate", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--full") != std::string::npos);
}
