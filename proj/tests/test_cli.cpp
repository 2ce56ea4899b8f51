// End-to-end exercises of the command-line tool through a subprocess.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef LINSET_CLI_PATH
#define LINSET_CLI_PATH "./linset"
#endif

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LINSET_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/linset_cli_test_") + name;
}

}  // namespace

TEST_CASE("verify emits a parseable passing report") {
  auto res = run("verify thm35 --format json");
  CHECK(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("suite") == "thm35");
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("checks").size() >= 5);
}

TEST_CASE("unknown suite is a usage error") {
  CHECK(run("verify nosuchsuite").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("exhausted budgets exit with code 3") {
  CHECK(run("verify axioms --budget 2").code == 3);
}

TEST_CASE("deterministic reports are byte-identical") {
  auto a = run("verify rem54 --deterministic --seed 7");
  auto b = run("verify rem54 --deterministic --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("reports can be written to a file") {
  std::string file = temp_path("report.json");
  auto res = run("verify thm35 --out " + file);
  CHECK(res.code == 0);
  std::ifstream f(file);
  auto j = nlohmann::json::parse(f);
  CHECK(j.at("verdict") == "pass");
  std::remove(file.c_str());
}

TEST_CASE("config file values with flag overrides") {
  std::string cfg = temp_path("config");
  {
    std::ofstream f(cfg);
    f << "# scenario\nq = 3\nt = 3\nn = 2\nseed = 11\n";
  }
  auto res = run("verify thm35 --config " + cfg);
  CHECK(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("scenario").at("p") == 3);
  CHECK(j.at("seed") == 11);
  // a flag wins over the file
  auto res2 = run("verify thm35 --config " + cfg + " --q 2");
  auto j2 = nlohmann::json::parse(res2.out);
  CHECK(j2.at("scenario").at("p") == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("construct, write, detect round trip") {
  std::string file = temp_path("prset.json");
  auto res = run("construct pr --q 2 --t 3 --n 2 --sigma-exp 1 --rho-exp 0 --out " + file);
  REQUIRE(res.code == 0);
  {
    std::ifstream f(file);
    auto j = nlohmann::json::parse(f);
    CHECK(j.at("points") == 63);
    CHECK(j.at("lines").size() == 9);
  }
  auto det = run("detect pr --input " + file);
  REQUIRE(det.code == 0);
  auto j = nlohmann::json::parse(det.out);
  CHECK(j.at("status") == "pr");
  CHECK(j.at("lines").size() == 9);
  CHECK(j.at("sigma_class") == 1);
  std::remove(file.c_str());
}

TEST_CASE("line construction and detection") {
  std::string file = temp_path("lineset.json");
  auto res = run("construct linepr --q 2 --t 3 --out " + file);
  REQUIRE(res.code == 0);
  auto det = run("detect linepr --input " + file);
  REQUIRE(det.code == 0);
  auto j = nlohmann::json::parse(det.out);
  CHECK(j.at("status") == "pr");
  CHECK(j.at("pairs").size() == 1);
  std::remove(file.c_str());
}

TEST_CASE("equivalence verbs") {
  auto yes = run("equiv pr --q 2 --t 5 --n 2 --sigma-exp 1 --sigma-exp2 4");
  REQUIRE(yes.code == 0);
  auto jy = nlohmann::json::parse(yes.out);
  CHECK(jy.at("result") == "map");
  CHECK(jy.at("verified") == true);

  auto no = run("equiv pr --q 2 --t 5 --n 2 --sigma-exp 1 --sigma-exp2 2");
  auto jn = nlohmann::json::parse(no.out);
  CHECK(jn.at("result") == "no_map");
}

TEST_CASE("projection and spread recovery verbs") {
  auto res = run("project --q 2 --t 3 --n 2 --i1 0 --i2 1");
  REQUIRE(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("pr_type") == true);
  CHECK(j.at("points") == 63);

  auto rec = run("recover-spread --q 2 --t 3 --n 2 --i1 0 --i2 1");
  REQUIRE(rec.code == 0);
  auto jr = nlohmann::json::parse(rec.out);
  CHECK(jr.at("spread").size() == 9);
  CHECK(jr.at("directors").size() == 3);
  CHECK(jr.at("m") == 1);

  // each spread element is serialized as an echelon basis
  for (const auto& el : jr.at("spread")) CHECK(el.size() == 3);
}

TEST_CASE("segre build verb") {
  auto res = run("segre build --q 3 --n 2");
  REQUIRE(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("points") == 16);
  CHECK(j.at("system_size") == 4);
}

TEST_CASE("semifield build and recognize verbs") {
  std::string gtf_file = temp_path("gtf.json");
  auto res = run("semifield gtf --q 3 --n 2 --t 2 --l 1 --m 1 --out " + gtf_file);
  REQUIRE(res.code == 0);
  auto rec = run("semifield recognize --input " + gtf_file);
  REQUIRE(rec.code == 0);
  auto j = nlohmann::json::parse(rec.out);
  CHECK(j.at("family") == "twisted-field");
  CHECK(j.at("l") == 1);

  std::string knuth_file = temp_path("knuth.json");
  auto res2 = run("semifield knuth --q 2 --t 2 --family 17 --f-exp 0 --g-exp 0 --out " + knuth_file);
  REQUIRE(res2.code == 0);
  auto rec2 = run("semifield recognize --input " + knuth_file);
  REQUIRE(rec2.code == 0);
  auto j2 = nlohmann::json::parse(rec2.out);
  CHECK(j2.at("family") == "knuth-17");
  std::remove(gtf_file.c_str());
  std::remove(knuth_file.c_str());
}

TEST_CASE("field utilities") {
  auto info = run("field info --field 'GF(2^3)'");
  REQUIRE(info.code == 0);
  auto j = nlohmann::json::parse(info.out);
  CHECK(j.at("q") == 8);
  CHECK(j.at("defining_polynomial") == std::vector<long long>({1, 1, 0, 1}));

  std::string dump1 = temp_path("f1.tbl"), dump2 = temp_path("f2.tbl");
  REQUIRE(run("field dump --field 'GF(3^4)' --out " + dump1).code == 0);
  REQUIRE(run("field dump --field 'GF(3^4)' --out " + dump2).code == 0);
  std::ifstream a(dump1, std::ios::binary), b(dump2, std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK(sa.size() > 80);

  auto chk = run("field check --input " + dump1);
  CHECK(chk.code == 0);
  CHECK(nlohmann::json::parse(chk.out).at("consistent") == true);
  std::remove(dump1.c_str());
  std::remove(dump2.c_str());
}

TEST_CASE("worker flag keeps reports stable") {
  auto one = run("verify prop51 --deterministic --workers 1");
  auto four = run("verify prop51 --deterministic --workers 4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
}
