#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "qnil/serialize.hpp"

#ifndef QNIL_CLI_PATH
#error "QNIL_CLI_PATH must point at the qnil executable"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + QNIL_CLI_PATH + std::string(" ") + args + " 2>/tmp/qnil_cli_stderr";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string last_stderr() {
  std::string s;
  if (FILE* f = std::fopen("/tmp/qnil_cli_stderr", "r")) {
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), f)) s.append(buf.data(), n);
    std::fclose(f);
  }
  return s;
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("certify G2") {
  auto r = cli("certify --family G --rank 2 --k 1 --lambda 1,2 --l 5");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("reports").at(0).at("data").at("dim_P") == 1);
  CHECK(j.at("reports").size() == 2);
}

TEST_CASE("build writes 81-column B2 matrices") {
  const std::string path = tmp("qnil_cli_b2.json");
  auto r = cli("build --family B --rank 2 --k 1 --lambda 0,0 --l 3 --out " + path);
  REQUIRE(r.code == 0);
  auto g = qnil::load(path);  // rejects non-diagonal or non-root-of-unity torus entries
  CHECK(g.dim() == 81);
  for (const auto& t : g.t)
    for (std::uint64_t c = 0; c < 81; ++c) CHECK(t.at(c, c) == g.field->zeta_pow(g.t_exp[&t - g.t.data()][c]));
}

TEST_CASE("exit codes") {
  auto r = cli("certify --family A --rank 1 --k 1 --lambda 5 --l 3");
  CHECK(r.code == 3);
  r = cli("verify --family G --rank 2 --k 1 --lambda 0,0 --l 9");
  CHECK(r.code == 3);
  CHECK(last_stderr().find("l not divisible by 3") != std::string::npos);
  CHECK(cli("verify --family A --rank 3 --k 1 --lambda 0,0,0 --l 3").code == 3);
  CHECK(cli("").code == 2);
  CHECK(cli("verify --family A --rank 1 --k 1 --lambda 0 --l 4").code == 2);
  CHECK(cli("verify --family A --rank 1 --k 1 --lambda x --l 3").code == 2);
  CHECK(cli("verify --family Q --rank 1 --k 1 --lambda 0 --l 3").code == 2);
  CHECK(cli("verify --family B --rank 2 --k 1 --lambda 0 --l 3").code == 2);
  CHECK(cli("frobnicate").code == 2);
  // a failing report gives 1
  CHECK(cli("verify --family D --rank 3 --k 2 --lambda 1,1 --l 3 --dvariant e1").code == 1);
  CHECK(cli("certify --family D --rank 3 --k 1 --lambda 0,0,0 --l 3").code == 1);
}

TEST_CASE("verify from file equals verify in memory") {
  const std::string path = tmp("qnil_cli_c2.json");
  REQUIRE(cli("build --family C --rank 2 --k 1 --lambda 1,2 --l 3 --out " + path).code == 0);
  auto a = cli("verify --family C --rank 2 --k 1 --lambda 1,2 --l 3");
  auto b = cli("verify --in " + path);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(nlohmann::json::parse(a.out).at("reports") == nlohmann::json::parse(b.out).at("reports"));
  // B: the closed-form comparison is part of verify
  auto c = nlohmann::json::parse(cli("verify --family B --rank 2 --k 2 --lambda 1 --l 3").out);
  CHECK(c.at("reports").back().at("claim") == "engine matrices equal closed-form matrices");
  CHECK(c.at("reports").back().at("pass") == true);
}

TEST_CASE("output is deterministic") {
  const std::string args = "character --family B --rank 2 --k 1 --lambda 2,1 --l 3";
  auto a = cli(args), b = cli(args, "QNIL_THREADS=1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(cli("certify --family A --rank 2 --k 1 --lambda 1,1 --l 3 --seed 7").out ==
        cli("certify --family A --rank 2 --k 1 --lambda 1,1 --l 3 --seed 7 --threads 1").out);
}

TEST_CASE("analysis subcommands") {
  auto cl = nlohmann::json::parse(cli("closure --family B --rank 2 --k 1 --lambda 2,2 --l 3").out);
  CHECK(cl.at("reports").at(0).at("data").at("dim") == 81);
  auto pr = cli("primitive --family A --rank 1 --k 1 --lambda 1 --l 5");
  CHECK(pr.code == 0);
  CHECK(nlohmann::json::parse(pr.out).at("reports").at(0).at("data").at("dim") == 1);
  auto ch = nlohmann::json::parse(cli("character --family A --rank 1 --k 1 --lambda 2 --l 3").out);
  CHECK(ch.at("reports").at(0).at("data").at("character").size() == 3);
  auto rho = cli("print-rho --family G --level 2 --nu 9");
  CHECK(rho.code == 0);
  CHECK(rho.out.find("f2 -> ") != std::string::npos);
  CHECK(rho.out.find("_{eps^3}") != std::string::npos);
}
