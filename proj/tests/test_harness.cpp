#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "msglab/harness.hpp"

using namespace msglab;

namespace {

std::string value_of(const ExperimentReport& rep, std::size_t trial, const std::string& quantity) {
  for (const auto& r : rep.rows)
    if (r.trial == trial && r.quantity == quantity) return r.value;
  return "<none>";
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("msglab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("family descriptors") {
  const auto a = parse_family("A:50,100,500");
  CHECK(a.kind == FamilyDescriptor::Kind::Alternating);
  CHECK(a.sizes == std::vector<std::size_t>{50, 100, 500});

  const auto p = parse_family("PSL:2,3,4:9,27,81:3");
  CHECK(p.declared_characteristic == 3);
  const auto inf = parse_family("PSL:2,3,4:2,3,25:inf");
  CHECK(inf.declared_characteristic == 0);

  CHECK_THROWS(parse_family("A:100,50"));
  CHECK_THROWS(parse_family("A:50,50"));
  CHECK_THROWS(parse_family("PSL:2,3:9:3"));
  CHECK_THROWS(parse_family("PSL:2,3:9,6:3"));
  CHECK_THROWS(parse_family("PSL:2,3:9,25:3"));
  CHECK_THROWS(parse_family("PSL:2,3:5,3:inf"));
  CHECK_THROWS(parse_family("B:5"));
}

TEST_CASE("experiments are deterministic in the seed") {
  const auto fam = parse_family("A:20,40");
  const auto a = equivalence_experiment(fam, 10, 7).to_csv();
  const auto b = equivalence_experiment(fam, 10, 7).to_csv();
  CHECK(a == b);
  CHECK(a != equivalence_experiment(fam, 10, 8).to_csv());
  CHECK(a.rfind("family,n,q,trial,quantity,value\n", 0) == 0);
}

TEST_CASE("random elements of A_1000 have lengths near 1") {
  const auto rep = equivalence_experiment(parse_family("A:1000"), 100, 3);
  std::size_t near_h = 0, near_c = 0;
  for (const auto& r : rep.rows) {
    if (r.quantity == "hamming_length") near_h += std::fabs(boost::rational_cast<double>(parse_rational(r.value)) - 1) <= 0.01;
    if (r.quantity == "conjugacy_length") near_c += std::fabs(std::stod(r.value) - 1) <= 0.1;
  }
  CHECK(near_h >= 95);
  CHECK(near_c >= 95);
}

TEST_CASE("PSL equivalence rows") {
  const auto rep = equivalence_experiment(parse_family("PSL:2:7:7"), 5, 1);
  for (std::size_t t = 0; t < 5; ++t) {
    CHECK(value_of(rep, t, "prank_length") != "<none>");
    CHECK(value_of(rep, t, "conjugacy_length") != "<none>");
  }
}

TEST_CASE("fingerprint table") {
  const auto rep = fingerprint_experiment(parse_family("PSL:2:9:3"), {2, 3}, 1);
  CHECK(value_of(rep, 0, "case") == "semisimple");
  CHECK(value_of(rep, 0, "p_core_order") == "1");
  CHECK(value_of(rep, 1, "case") == "niceblock");
  CHECK(value_of(rep, 1, "p_core_order") == "6561");
  CHECK(value_of(rep, 1, "x_length") == "1/2");
}

TEST_CASE("CSV quoting") {
  ExperimentReport rep;
  rep.add(0, 5, 0, 0, "error", "a,b \"c\"");
  CHECK(rep.to_csv() == "family,n,q,trial,quantity,value\n0,5,,0,error,\"a,b \"\"c\"\"\"\n");
}

TEST_CASE("config parsing") {
  std::istringstream in("# comment\nseed = 5\n\n suites = a, b  # trailing\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.at("seed") == "5");
  CHECK(cfg.at("suites") == "a, b");
  std::istringstream bad("seed 5\n");
  CHECK_THROWS(parse_config(bad));
}

TEST_CASE("empty config succeeds silently") {
  std::ostringstream log;
  CHECK(run_suite({}, log) == 0);
  CHECK(log.str().empty());
}

TEST_CASE("small suites pass and write CSVs") {
  const auto dir = scratch_dir("suites");
  std::ostringstream log;
  const std::map<std::string, std::string> cfg{
      {"suites", "near_root, centralize, factorization"}, {"trials", "12"}, {"out_dir", dir.string()}};
  CHECK(run_suite(cfg, log) == 0);
  for (const char* name : {"near_root", "centralize", "factorization"})
    CHECK(std::filesystem::exists(dir / (std::string(name) + ".csv")));

  std::ostringstream again;
  const auto dir2 = scratch_dir("suites2");
  auto cfg2 = cfg;
  cfg2["out_dir"] = dir2.string();
  CHECK(run_suite(cfg2, again) == 0);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(dir / "near_root.csv") == slurp(dir2 / "near_root.csv"));
}

TEST_CASE("expected-value file mismatch gives a nonzero exit") {
  const auto dir = scratch_dir("expected");
  const auto good = dir / "good.txt";
  const auto bad = dir / "bad.txt";
  std::ofstream(good) << "niceblock.passed = true\nniceblock.certificates = 30\n";
  std::ofstream(bad) << "niceblock.passed = true\nniceblock.certificates = 31\n";
  std::ostringstream log;
  CHECK(run_suite({{"suites", "niceblock"}, {"expected", good.string()}}, log) == 0);
  CHECK(run_suite({{"suites", "niceblock"}, {"expected", bad.string()}}, log) == 1);
  CHECK(log.str().find("MISMATCH niceblock.certificates") != std::string::npos);
  CHECK_THROWS(run_suite({{"suites", "no_such_suite"}}, log));
}
