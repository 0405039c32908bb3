#include "jacobs/cli.hpp"
#include "jacobs/moments.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run jladder(std::vector<std::string> args) {
  args.insert(args.begin(), "jladder");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = jacobs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A private copy of the shared test cache in a fresh directory.
struct Workspace {
  std::string dir, cache, out;
  explicit Workspace(const std::string& name) {
    dir = support::temp_dir("cli-" + name);
    cache = dir + "/cache.txt";
    out = dir + "/out";
    support::shared().save();
    fs::copy_file(support::cache_file(), cache);
  }
  std::vector<std::string> with(std::vector<std::string> args) const {
    std::vector<std::string> a = {"--cache", cache, "--out", out};
    a.insert(a.end(), args.begin(), args.end());
    return a;
  }
  json manifest() const { return json::parse(slurp(fs::path(out) / "manifest.json")); }
};

std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  return "";
}

int csv_rows(const std::string& csv) {
  int n = 0;
  for (char c : csv) n += c == '\n';
  return n - 1;
}

}  // namespace

TEST_CASE("zeta command") {
  Run r = jladder({"zeta", "--sigma", "2", "--t", "0"});
  CHECK(r.code == 0);
  CHECK(std::stod(field(r.out, "re")) == doctest::Approx(1.6449340668).epsilon(1e-10));
  CHECK(std::stod(field(r.out, "im")) == 0);

  r = jladder({"zeta", "--sigma", "0.5", "--t", "14.1347251417"});
  CHECK(r.code == 0);
  CHECK(std::stod(field(r.out, "abs_sq")) < 1e-12);

  Run plus = jladder({"zeta", "--sigma", "0.75", "--t", "123.25"});
  Run minus = jladder({"zeta", "--sigma", "0.75", "--t", "-123.25"});
  CHECK(field(plus.out, "re") == field(minus.out, "re"));
  CHECK(std::stod(field(plus.out, "im")) == -std::stod(field(minus.out, "im")));
  CHECK(field(plus.out, "method") == "euler-maclaurin");
  CHECK(field(jladder({"zeta", "--sigma", "0.5", "--t", "5000"}).out, "method") == "riemann-siegel");

  r = jladder({"zeta", "--sigma", "0.4", "--t", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("domain error") != std::string::npos);
  CHECK(jladder({"zeta", "--sigma", "0.5", "--t", "5000", "--tol", "1e-25"}).code == 4);
  CHECK(jladder({"zeta", "--sigma", "0.5"}).code == 2);
  CHECK(jladder({"bogus"}).code == 2);
  CHECK(jladder({}).code == 2);
}

TEST_CASE("moment command") {
  Workspace w("moment");
  Run r = jladder(w.with({"moment", "0", "100", "0.5", "2"}));
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("lower,upper,sigma,power,value,err_estimate,tol,n_evals,cache_hits\n", 0) == 0);
  double direct = jacobs::moments::hardy_littlewood_J(100, support::cache()).value;
  std::string row = r.out.substr(r.out.find('\n') + 1);
  std::vector<std::string> cells;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 9);
  CHECK(std::stod(cells[4]) == doctest::Approx(direct).epsilon(1e-9));

  r = jladder(w.with({"--format", "json", "moment", "1", "31", "0.5", "4", "--tol", "1e-7"}));
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["rows"][0][3] == 4);

  CHECK(jladder(w.with({"moment", "0", "10", "0.5", "3"})).code == 2);
  CHECK(jladder(w.with({"moment", "10", "5", "0.5", "2"})).code == 3);
  CHECK(jladder(w.with({"moment", "0", "10", "0.52", "2"})).code == 3);
  CHECK(jladder(w.with({"--max-evals", "10", "moment", "0", "10", "0.5", "2"})).code == 2);
}

TEST_CASE("ladder command") {
  Workspace w("ladder");
  Run r = jladder(w.with({"ladder", "--T", "10000", "--k", "0"}));
  REQUIRE(r.code == 0);
  CHECK(r.out == "r=0 T^0=10000\n");

  r = jladder(w.with({"ladder", "--T", "10000", "--k", "3"}));
  REQUIRE(r.code == 0);
  std::string spacing = slurp(fs::path(w.out) / "ladder_spacing.csv");
  CHECK(csv_rows(spacing) == 3);
  CHECK(spacing.rfind("r,T^(r-1),T^r,gap,(1-c)pi(Tr),ratio,gap_ratio,in_band\n", 0) == 0);
  CHECK(csv_rows(slurp(fs::path(w.out) / "ladder_sequence.csv")) == 4);
  CHECK(csv_rows(slurp(fs::path(w.out) / "ladder_increments.csv")) == 3);
  std::string part = slurp(fs::path(w.out) / "ladder_partition.csv");
  CHECK(part.find(",true\n") != std::string::npos);
  json m = w.manifest();
  CHECK(m["status"] == "ok");
  CHECK(m["summary"]["partition_holds"] == true);

  r = jladder(w.with({"ladder", "--T", "10000", "--k", "2", "--forward"}));
  CHECK(r.code == 0);
  CHECK(csv_rows(slurp(fs::path(w.out) / "ladder_forward.csv")) == 3);

  r = jladder(w.with({"ladder", "--T", "100", "--k", "1"}));
  CHECK(r.code == 9);
  CHECK(jladder(w.with({"ladder", "--T", "10000", "--k", "21"})).code == 2);
  CHECK(jladder(w.with({"--solver-tol", "1e-3", "ladder", "--T", "10000", "--k", "1"})).code == 2);
  CHECK(jladder(w.with({"ladder", "--T", "260", "--k", "5", "--forward"})).code == 9);
  json failed = w.manifest();
  CHECK(failed["status"] == "range");
  CHECK(failed["message"].get<std::string>().find("rank") != std::string::npos);
}

TEST_CASE("verify command") {
  Workspace w("verify");
  Run r = jladder(w.with({"verify", "theorem1", "--T", "10000", "--r", "1", "--sigma", "1"}));
  REQUIRE(r.code == 0);
  CHECK(csv_rows(slurp(fs::path(w.out) / "theorem1.csv")) == 1);

  r = jladder(w.with({"verify", "hli-functional"}));
  REQUIRE(r.code == 0);
  CHECK(csv_rows(slurp(fs::path(w.out) / "hli-functional.csv")) == 4);
  CHECK(r.out.find("trend=true") != std::string::npos);
  json m = w.manifest();
  CHECK(m["summary"]["trend"] == true);

  r = jladder(w.with({"verify", "hli", "--T", "2000,10000"}));
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",true\n") != std::string::npos);

  // an empty or unordered grid fails before anything is written
  Workspace e("verify-empty");
  CHECK(jladder(e.with({"verify", "hli-functional", "--tau", ""})).code == 2);
  CHECK(jladder(e.with({"verify", "hli", "--T", "10000,2000"})).code == 2);
  CHECK_FALSE(fs::exists(e.out));
  CHECK(jladder(e.with({"verify", "nonsense"})).code == 2);
}

TEST_CASE("manifest contents") {
  Workspace w("manifest");
  Run r = jladder(w.with({"--format", "json", "verify", "determinant"}));
  REQUIRE(r.code == 0);
  json m = w.manifest();
  for (const char* k : {"command", "argv", "config", "versions", "wall_time_s", "evaluations", "outputs", "summary",
                        "status"})
    CHECK_MESSAGE(m.contains(k), k);
  CHECK(m["command"] == "verify determinant");
  CHECK(m["config"]["format"] == "json");
  CHECK(m["config"]["solver_tol"] == "1e-10");
  CHECK(m["versions"]["expectations"] == "bands-2026-10-a");
  CHECK(m["evaluations"].size() == 1);
  CHECK(m["evaluations"][0]["n_evals"].is_number_integer());
  REQUIRE(m["outputs"].size() == 1);
  CHECK(fs::exists(m["outputs"][0].get<std::string>()));
  CHECK(json::parse(slurp(m["outputs"][0].get<std::string>()))["rows"].size() == 1);
}

TEST_CASE("reproducible outputs") {
  Workspace w("repro");
  auto args = w.with({"verify", "hl1922", "--T", "1000,2000", "--sigma", "1"});
  REQUIRE(jladder(args).code == 0);
  std::string first = slurp(fs::path(w.out) / "hl1922.csv");
  std::string cache_after = slurp(w.cache);
  REQUIRE(jladder(args).code == 0);
  CHECK(slurp(fs::path(w.out) / "hl1922.csv") == first);
  CHECK(slurp(w.cache) == cache_after);
}

TEST_CASE("fermat command") {
  Workspace w("fermat");
  Run r = jladder(w.with({"fermat", "3", "4", "5", "2"}));
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "exact_value") == "1");
  CHECK(field(r.out, "exact_equals_one") == "true");
  CHECK(r.out.find("verdict (heuristic, largest tau): consistent with =1") != std::string::npos);

  r = jladder(w.with({"fermat", "1", "1", "1", "3"}));
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "exact_value") == "2");
  CHECK(field(r.out, "fermat_class") == "true");
  CHECK(r.out.find("inconsistent with =1 at band") != std::string::npos);
  CHECK(w.manifest()["summary"]["verdict_kind"] == "heuristic");

  r = jladder(w.with({"fermat", "6", "8", "10", "3", "--tau", "100,5000"}));
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "exact_value") == "91/125");
  CHECK(r.out.find("range") != std::string::npos);

  CHECK(jladder(w.with({"fermat", "3", "4", "0", "2"})).code == 2);
  CHECK(jladder(w.with({"fermat", "3", "4", "5", "2", "--kind", "other"})).code == 2);
}

TEST_CASE("cache maintenance") {
  std::string dir = support::temp_dir("cli-cache");
  std::string cache = dir + "/c.txt";
  CHECK(jladder({"--cache", cache, "cache", "init"}).code == 0);
  CHECK(jladder({"--cache", cache, "cache", "init"}).code == 2);
  CHECK(jladder({"--cache", cache, "cache", "init", "--force"}).code == 0);
  Run r = jladder({"--cache", cache, "cache", "stats"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "checkpoints") == "0");

  r = jladder({"--cache", cache, "cache", "extend", "--to", "100", "--sigma", "0.5,1"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "series") == "2");
  CHECK(std::stod(field(r.out, "max_abscissa")) >= 100);
  r = jladder({"--cache", cache, "cache", "stats"});
  CHECK(field(r.out, "series") == "2");

  std::string text = slurp(cache);
  auto pos = text.find("\n50,");
  REQUIRE(pos != std::string::npos);
  text[pos + 5] = text[pos + 5] == '1' ? '2' : '1';
  std::ofstream(cache, std::ios::trunc) << text;
  CHECK(jladder({"--cache", cache, "cache", "stats"}).code == 7);
  CHECK(jladder({"--cache", cache, "moment", "0", "50", "0.5", "2"}).code == 7);
  CHECK(jladder({"--cache", dir + "/none.txt", "cache", "stats"}).code == 10);
}

TEST_CASE("cache lock") {
  Workspace w("lock");
  int fd = ::open((w.cache + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
  REQUIRE(fd >= 0);
  REQUIRE(::flock(fd, LOCK_EX | LOCK_NB) == 0);
  Run r = jladder(w.with({"moment", "0", "10", "0.5", "2"}));
  CHECK(r.code == 10);
  CHECK(r.err.find("locked") != std::string::npos);
  ::flock(fd, LOCK_UN);
  ::close(fd);
  CHECK(jladder(w.with({"moment", "0", "10", "0.5", "2"})).code == 0);
}

TEST_CASE("configuration") {
  Workspace w("config");
  std::string file = w.dir + "/run.conf";
  std::ofstream(file) << "# test config\nsolver_tol = 1e-9\nmode=asymptotic\n";
  Run r = jladder(w.with({"--config", file, "ladder", "--T", "10000", "--k", "1"}));
  REQUIRE(r.code == 0);
  json m = w.manifest();
  CHECK(m["config"]["solver_tol"] == "1.0000000000000001e-09");
  CHECK(m["config"]["mode"] == "asymptotic");

  r = jladder(w.with({"--config", file, "--set", "mode=exact", "ladder", "--T", "10000", "--k", "1"}));
  REQUIRE(r.code == 0);
  CHECK(w.manifest()["config"]["mode"] == "exact");

  std::ofstream(file) << "colour=blue\n";
  CHECK(jladder(w.with({"--config", file, "ladder", "--T", "10000", "--k", "1"})).code == 2);
  CHECK(jladder(w.with({"--set", "colour=blue", "zeta", "--sigma", "2", "--t", "1"})).code == 2);
  CHECK(jladder(w.with({"--set", "mode", "zeta", "--sigma", "2", "--t", "1"})).code == 2);
  CHECK(jladder(w.with({"--config", w.dir + "/missing.conf", "zeta", "--sigma", "2", "--t", "1"})).code == 10);
  CHECK(jladder(w.with({"--expectations", w.dir + "/missing.txt", "zeta", "--sigma", "2", "--t", "1"})).code == 10);
  std::ofstream(w.dir + "/bad-bands.txt") << "not a band file\n";
  CHECK(jladder(w.with({"--expectations", w.dir + "/bad-bands.txt", "zeta", "--sigma", "2", "--t", "1"})).code == 7);
}
