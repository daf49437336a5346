#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" DIVZETA_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("divzeta_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

std::string last_line(const std::string& s) {
  auto end = s.find_last_not_of('\n');
  auto start = s.rfind('\n', end);
  return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

} // namespace

TEST_CASE("sieve writes a deterministic table") {
  Scratch s;
  const auto a = run("sieve --k 2 --n 1e5 --out " + (s / "a.dktb"));
  const auto b = run("sieve --k 2 --n 100000 --out " + (s / "b.dktb"));
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  CHECK(fs::file_size(s / "a.dktb") == 8 * 100000 + 24);
  const auto ca = last_line(a.out), cb = last_line(b.out);
  CHECK(ca.substr(0, ca.rfind(',')) == cb.substr(0, cb.rfind(',')));
  CHECK(run("sieve --k 0 --n 10 --out " + (s / "c.dktb")).status == 2);
}

TEST_CASE("correlate") {
  const auto r = run("correlate --k 2 --x 10 --a 1");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("a,C,Delta\n") != std::string::npos);
  CHECK(last_line(r.out).rfind("1,74,", 0) == 0);
  CHECK(r.out.find("# provider_id = binary-classical") != std::string::npos);

  const auto d = run("correlate --k 3 --x 1000 --a 0..5 --mode fft");
  REQUIRE(d.status == 0);
  CHECK(d.out.find("# q_cutoff_used = 1") != std::string::npos);
  CHECK(d.out.find("# main_term = conjectural") != std::string::npos);
}

TEST_CASE("selberg and moment") {
  const auto s = run("selberg --k 2 --x 1e4 --h 20");
  REQUIRE(s.status == 0);
  CHECK(s.out.find("x,h,J,trivial_bound\n") != std::string::npos);
  CHECK(last_line(s.out).rfind("10000,20,", 0) == 0);

  const auto m = run("moment --k 1 --T 500 --format json");
  REQUIRE(m.status == 0);
  const auto j = nlohmann::json::parse(m.out);
  const double v = j["rows"][0]["value"].get<double>();
  const double classical = 500 * std::log(500 / (2 * M_PI)) + (2 * 0.5772156649015329 - 1) * 500;
  CHECK(std::abs(v / classical - 1) <= 0.02);
  CHECK(j["config"]["command"] == "moment");
}

TEST_CASE("verify") {
  const auto a = run("verify --suite fejer --seed 42");
  const auto b = run("verify --suite fejer --seed 42");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(run("verify").status == 0);

  Scratch s;
  REQUIRE(run("sieve --k 2 --n 5000 --out " + (s / "t.dktb")).status == 0);
  CHECK(run("verify --suite fejer --table " + (s / "t.dktb")).status == 0);
  {
    std::fstream f(s / "t.dktb", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(1000);
    f.put('\x7f');
  }
  CHECK(run("verify --suite fejer --table " + (s / "t.dktb")).status == 1);
}

TEST_CASE("configuration sources") {
  Scratch s;
  {
    std::ofstream cfg(s / "run.cfg");
    cfg << "# comment\nepsilon = 0.1\nformat = json\n";
  }
  const auto r = run("selberg --k 2 --x 1e4 --h 20 --config " + (s / "run.cfg") + " --format csv");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("# epsilon = 0.1\n") != std::string::npos);
  CHECK(r.out.find("# format = csv\n") != std::string::npos);

  {
    std::ofstream bad(s / "bad.cfg");
    bad << "epsilonn = 0.1\n";
  }
  CHECK(run("selberg --k 2 --x 1e4 --h 20 --config " + (s / "bad.cfg")).status == 2);

  REQUIRE(run("sieve --k 2 --n 2e4 --out " + (s / "d2.dktb")).status == 0);
  const auto e = run("selberg --k 2 --x 1e4 --h 20 --table d2.dktb", "DIVZETA_TABLE_DIR='" + s.dir.string() + "'");
  CHECK(e.status == 0);
  CHECK(e.out.find("# table_source = file") != std::string::npos);
  CHECK(e.out.find("# table-dir = " + s.dir.string()) != std::string::npos);

  CHECK(run("selberg --k 2 --x 1e5 --h 20 --table " + (s / "d2.dktb")).status == 1);
  CHECK(run("selberg --k 3 --x 1e4 --h 20 --table " + (s / "d2.dktb")).status == 2);
  CHECK(run("moment --k 1 --T 1e6").status == 2);
  CHECK(run("frobnicate").status == 2);
}
