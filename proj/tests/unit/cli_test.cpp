#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "secset/instance.hpp"
#include "secset/security.hpp"
#include "support/data.hpp"

namespace fs = std::filesystem;
using namespace secset;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "secset");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return testdata::path(name); }

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("secset-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli check") {
  auto ok = run({"check", data("five_vertex.ss"), data("five_vertex_ab.sol")});
  CHECK(ok.code == cli::kNegative);
  CHECK(ok.out == "INSECURE\nw 1 2 | defenders=2 attackers=3\n");

  TempDir dir;
  write(dir / "abc.sol", "s 1 2 3\n");
  auto secure = run({"check", data("five_vertex.ss"), dir / "abc.sol"});
  CHECK(secure.code == cli::kPositive);
  CHECK(secure.out == "SECURE\n");
  auto oracle = run({"check", "--oracle", data("five_vertex.ss"), data("five_vertex_ab.sol")});
  CHECK(oracle.code == cli::kNegative);
  auto capped = run({"check", "--oracle", "--max-subset", "2", data("five_vertex.ss"), dir / "abc.sol"});
  CHECK(capped.code == cli::kBudget);
}

TEST_CASE("cli alliance") {
  auto r = run({"alliance", data("five_vertex.ss"), data("five_vertex_ab.sol")});
  CHECK(r.code == cli::kPositive);
  CHECK(r.out == "ALLIANCE\n");
}

TEST_CASE("cli solve") {
  auto five = run({"solve", data("five_vertex.ss")});
  CHECK(five.code == cli::kPositive);
  CHECK(five.out == "s 1 2 3\n");
  auto dec = run({"solve", data("decorated.ss")});
  CHECK(dec.out == "s 1 2 7\n");
  auto budget = run({"solve", "--max-candidates", "2", data("five_vertex.ss")});
  CHECK(budget.code == cli::kBudget);
  CHECK(budget.err.rfind("budget:", 0) == 0);

  TempDir dir;
  write(dir / "none.ss", "p ss 3 0\nk 1\nneed 1\nneed 2\n");
  auto none = run({"solve", dir / "none.ss"});
  CHECK(none.code == cli::kNegative);
  CHECK(none.out == "s NONE\n");
  CHECK(none.err.rfind("c ", 0) == 0);
}

TEST_CASE("cli qbf-eval") {
  auto r = run({"qbf-eval", data("three_term.qdnf")});
  CHECK(r.code == cli::kPositive);
  CHECK(r.out == "TRUE\nv -1 2 3\n");
  TempDir dir;
  write(dir / "f.qdnf", "p qdnf 2 1\ne 1 0\na 2 0\n1 2 0\n");
  auto f = run({"qbf-eval", dir / "f.qdnf"});
  CHECK(f.code == cli::kNegative);
  CHECK(f.out == "FALSE\n");
  CHECK(run({"qbf-eval", "--max-vars", "3", data("three_term.qdnf")}).code == cli::kBudget);
}

TEST_CASE("cli input errors") {
  TempDir dir;
  write(dir / "bad.ss", "p ss 3 1\ne 1 4\nk 1\n");
  auto bad = run({"solve", dir / "bad.ss"});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(run({"solve", dir / "missing.ss"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kPositive);
}

TEST_CASE("cli reduce, lift and project") {
  TempDir dir;
  auto r = run({"reduce", "qsat2-essfnc", data("three_term.qdnf"), dir / "out.ss"});
  REQUIRE(r.code == cli::kPositive);
  CHECK(r.out.find("vertices=59") != std::string::npos);
  CHECK(r.out.find("k=30") != std::string::npos);
  CHECK(fs::exists(dir / "out.ss.map"));

  write(dir / "a.txt", "v -1 2 3\n");
  auto lift = run({"lift", dir / "out.ss.map", dir / "a.txt", dir / "lifted.sol"});
  REQUIRE(lift.code == cli::kPositive);
  auto check = run({"check", dir / "out.ss", dir / "lifted.sol"});
  CHECK(check.out == "SECURE\n");

  auto project = run({"project", dir / "out.ss.map", dir / "lifted.sol"});
  CHECK(project.code == cli::kPositive);
  CHECK(project.out == "v -1 2 3\n");

  auto fn = run({"reduce", "essfnc-essfn", data("decorated.ss"), dir / "fn.ss", "--map", dir / "fn.map"});
  REQUIRE(fn.code == cli::kPositive);
  write(dir / "dec.sol", "s 1 2 7\n");
  auto lifted = run({"lift", dir / "fn.map", dir / "dec.sol"});
  REQUIRE(lifted.code == cli::kPositive);
  write(dir / "fn.sol", lifted.out);
  CHECK(run({"check", dir / "fn.ss", dir / "fn.sol"}).out == "SECURE\n");
  auto back = run({"project", dir / "fn.map", dir / "fn.sol"});
  CHECK(back.out == "s 1 2 7\n");

  auto refused = run({"reduce", "essf-ssf", data("five_vertex.ss"), dir / "x.ss"});
  CHECK(refused.code == cli::kUsage);
  CHECK(refused.err.rfind("refused:", 0) == 0);
  auto big = run({"reduce", "qsat2-essfnc", data("three_term.qdnf"), dir / "y.ss", "--max-vertices", "10"});
  CHECK(big.code == cli::kBudget);

  auto embed = run({"reduce", "embed", data("five_vertex.ss"), dir / "e.ss", "--target", "fn"});
  CHECK(embed.code == cli::kPositive);
  CHECK(parse_instance(slurp(dir / "e.ss")) == testdata::five_vertex());
}

TEST_CASE("cli chain") {
  TempDir dir;
  write(dir / "small.ss", "p ss 2 1\ne 1 2\nk 1\nexact\nforbid 2\n");
  auto r = run({"chain", dir / "small.ss", (dir.path / "out").string()});
  REQUIRE(r.code == cli::kPositive);
  CHECK(r.out.find("stage 1 essf-ssf") != std::string::npos);
  CHECK(r.out.find("stage 2 drop-forbidden") != std::string::npos);
  Instance last = parse_instance(slurp((dir.path / "out" / "2-drop-forbidden.ss").string()));
  CHECK_FALSE(last.exact);
  CHECK(last.forbidden.empty());

  // Output sizes grow multiplicatively; the formula chain stops at the default vertex cap.
  auto f = run({"chain", data("three_term.qdnf"), (dir.path / "formula").string()});
  CHECK(f.code == cli::kBudget);
  CHECK(f.out.find("stage 2 essfnc-essfn") != std::string::npos);
  CHECK(fs::exists((dir.path / "formula" / "2-essfnc-essfn.map")));
}
