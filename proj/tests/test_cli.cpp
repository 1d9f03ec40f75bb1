#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>

#include "geodd/cli.hpp"
#include "geodd/render.hpp"
#include "support.hpp"

using namespace geodd;
using testsupport::data_path;
using testsupport::slurp;

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run geodd_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "geodd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return data_path(name).string(); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

// Fresh scratch directory per test case.
fs::path scratch(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("geodd-cli-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_CASE("prove: verdicts and exit codes") {
  auto r = geodd_cli({"prove", data("theorem1.p")});
  CHECK(r.code == cli::kProved);
  CHECK(contains(r.err, "Proved: theorem1 (9 steps, 62 facts)"));
  CHECK(contains(r.out, "| R1a (x2) |"));
  CHECK(contains(r.out, "* trivial fact"));

  r = geodd_cli({"prove", data("theorem2.p"), "--format", "prose"});
  CHECK(r.code == cli::kProved);
  CHECK(contains(r.out, "Suppose that [ABCD] is a rectangle."));
  CHECK(contains(r.out, "A, B and C are not collinear"));

  r = geodd_cli({"prove", data("not_a_theorem.p")});
  CHECK(r.code == cli::kNotProved);
  CHECK(contains(r.err, "NotProved"));
  CHECK(contains(r.err, "decision procedure"));
  CHECK(r.out.empty());

  r = geodd_cli({"prove", data("theorem1.p"), "--max-facts", "5"});
  CHECK(r.code == cli::kLimitTripped);
  CHECK(contains(r.err, "limit tripped"));

  r = geodd_cli({"prove", data("theorem1.p"), "--max-firings", "3"});
  CHECK(r.code == cli::kLimitTripped);
}

TEST_CASE("input errors exit with 2") {
  auto dir = scratch("input");
  write(dir / "broken.p", "fof(t,conjecture,(![A,B] : para(A,B,A,B) => )).\n");

  auto r = geodd_cli({"prove", (dir / "missing.p").string()});
  CHECK(r.code == cli::kInputError);
  CHECK(contains(r.err, "error:"));

  r = geodd_cli({"prove", (dir / "broken.p").string()});
  CHECK(r.code == cli::kInputError);
  CHECK(contains(r.err, "broken.p:1:"));

  CHECK(geodd_cli({"prove"}).code == cli::kInputError);
  CHECK(geodd_cli({"prove", data("theorem1.p"), "--format", "html"}).code == cli::kInputError);
  CHECK(geodd_cli({"prove", data("theorem1.p"), "--bogus"}).code == cli::kInputError);
  CHECK(geodd_cli({"frobnicate"}).code == cli::kInputError);
  CHECK(geodd_cli({}).code == cli::kInputError);
  CHECK(geodd_cli({"prove", data("theorem1.p"), "--select", "R99"}).code == cli::kInputError);
  CHECK(geodd_cli({"prove", data("theorem1.p"), "--rules", (dir / "none.ax").string()}).code ==
        cli::kInputError);

  auto help = geodd_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "prove"));
  fs::remove_all(dir);
}

TEST_CASE("rule selection") {
  auto r = geodd_cli({"prove", data("theorem1.p"), "--select", "R1a", "R1b", "D40", "D58", "D61", "R4a", "R4b",
                      "R4c"});
  CHECK(r.code == cli::kProved);
  r = geodd_cli({"prove", data("theorem1.p"), "--select", "R1a", "D40", "D58", "R4a"});
  CHECK(r.code == cli::kNotProved);
  r = geodd_cli({"prove", data("theorem1.p"), "--rules", "year7"});
  CHECK(r.code == cli::kProved);
}

TEST_CASE("output formats and --out") {
  auto dir = scratch("out");
  auto a = geodd_cli({"prove", data("theorem1.p"), "--format", "structured"});
  auto b = geodd_cli({"prove", data("theorem1.p"), "--format", "structured"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto parsed = parse_structured(a.out);
  CHECK(parsed.trace.steps.size() == 9);
  CHECK(parsed.meta.config_hash.size() == 16);
  CHECK(geodd_cli({"prove", data("theorem1.p"), "--format", "structured", "--all-pairs"}).out != a.out);

  auto file = dir / "t1.json";
  auto c = geodd_cli({"prove", data("theorem1.p"), "--format", "structured", "--out", file.string()});
  CHECK(c.code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(file) == a.out);

  auto table = geodd_cli({"prove", data("theorem1.p")}).out;
  auto re = geodd_cli({"render", file.string()});
  CHECK(re.code == 0);
  CHECK(re.out == table);
  CHECK(geodd_cli({"render", file.string(), "--format", "structured"}).out == a.out);
  CHECK(contains(geodd_cli({"render", file.string(), "--format", "prose"}).out, "Therefore AB = CD"));

  auto text = a.out;
  auto at = text.find("\"cong(A,B,C,D)\"", text.find("\"steps\""));
  REQUIRE(at != std::string::npos);
  text.replace(at, 15, "\"cong(A,B,B,C)\"");
  write(dir / "forged.json", text);
  auto bad = geodd_cli({"render", (dir / "forged.json").string()});
  CHECK(bad.code == cli::kInputError);
  CHECK(contains(bad.err, "invalid trace"));

  write(dir / "junk.json", "{\"schema\": \"other\"}");
  CHECK(geodd_cli({"render", (dir / "junk.json").string()}).code == cli::kInputError);
  fs::remove_all(dir);
}

TEST_CASE("saturate") {
  auto r = geodd_cli({"saturate", data("theorem1.p")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "problem: theorem1\nfacts: 62\nfirings: 52\n"));
  CHECK(contains(r.out, "exhausted: yes"));
  CHECK(contains(r.out, "  cong(A,B,C,D)\n"));

  r = geodd_cli({"saturate", data("theorem1.p"), "--max-facts", "5"});
  CHECK(r.code == cli::kLimitTripped);
  CHECK(contains(r.out, "exhausted: no"));
}

TEST_CASE("check") {
  auto dir = scratch("check");
  auto r = geodd_cli({"check", data("theorem1.p"), "--models", "20", "--seed", "5"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "models: 20 sampled, seeds 5..24"));
  CHECK(contains(r.out, "violations: 0"));

  r = geodd_cli({"check", data("not_a_theorem.p"), "--models", "10"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "violations: 0"));
  CHECK(contains(r.out, "goal cong(A,B,A,C): false in 10 of 10 models"));

  write(dir / "m.txt", "A 0 0\nB 4 0\nC 5 2\nD 1 2\n");
  r = geodd_cli({"check", data("theorem1.p"), "--model-file", (dir / "m.txt").string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "violations: 0"));

  write(dir / "skew.txt", "A 0 0\nB 4 0\nC 5 2\nD 0 3\n");
  r = geodd_cli({"check", data("theorem1.p"), "--model-file", (dir / "skew.txt").string()});
  CHECK(contains(r.out, "does not satisfy parallelogram(A,B,C,D)"));

  auto file = dir / "t.json";
  REQUIRE(geodd_cli({"prove", data("theorem2.p"), "--format", "structured", "--out", file.string()}).code == 0);
  r = geodd_cli({"check", "--trace", file.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "trace: valid"));

  CHECK(geodd_cli({"check"}).code == cli::kInputError);
  CHECK(geodd_cli({"check", data("theorem1.p"), "--models", "3", "--model-file", "x"}).code ==
        cli::kInputError);
  fs::remove_all(dir);
}

TEST_CASE("lemma registration and reuse") {
  auto dir = scratch("lemma");
  auto lemmas = dir / "lemmas.ax";
  auto r = geodd_cli({"lemma", data("theorem1.p"), "--name", "theorem1", "--append-to", lemmas.string()});
  REQUIRE(r.code == 0);
  const std::string unit =
      "fof(theorem1,axiom,(![A,B,C,D] : (parallelogram(A,B,C,D) & ~coll(A,B,C) => cong(A,B,C,D) & "
      "cong(A,D,B,C)) )).";
  CHECK(r.out == unit + "\n");
  CHECK(contains(r.err, "lemma theorem1 appended to"));
  CHECK(slurp(lemmas) == "% lemma proved from theorem1.p\n" + unit + "\n");

  auto again = geodd_cli({"lemma", data("theorem1.p"), "--name", "theorem1", "--append-to", lemmas.string()});
  CHECK(again.code == cli::kInputError);
  CHECK(contains(again.err, "taken"));
  CHECK(slurp(lemmas) == "% lemma proved from theorem1.p\n" + unit + "\n");

  auto t2 = geodd_cli({"prove", data("theorem2.p"), "--lemma-file", lemmas.string()});
  CHECK(t2.code == 0);
  CHECK(contains(t2.out, "theorem1"));

  auto nope = geodd_cli({"lemma", data("not_a_theorem.p"), "--name", "x", "--append-to", lemmas.string()});
  CHECK(nope.code == cli::kNotProved);
  CHECK(slurp(lemmas) == "% lemma proved from theorem1.p\n" + unit + "\n");
  fs::remove_all(dir);
}

TEST_CASE("catalog lookup") {
  auto dir = scratch("catalog");
  write(dir / "p.p", slurp(data_path("theorem1.p")));
  unsetenv(cli::kCatalogDirVar);
  // Not on disk next to the problem: the embedded catalog answers.
  CHECK(geodd_cli({"prove", (dir / "p.p").string()}).code == 0);

  auto catdir = dir / "catalogs";
  fs::create_directories(catdir);
  write(catdir / std::string(cli::kEmbeddedCatalogFile),
        "fof(ruleR1a,axiom,(![A,B,C,D] : (parallelogram(A,B,C,D) => para(A,B,D,C)))).\n");
  setenv(cli::kCatalogDirVar, catdir.c_str(), 1);
  CHECK(geodd_cli({"prove", (dir / "p.p").string()}).code == cli::kNotProved);

  // A file next to the problem wins over the directory variable.
  write(dir / std::string(cli::kEmbeddedCatalogFile), slurp(data_path(std::string(cli::kEmbeddedCatalogFile))));
  CHECK(geodd_cli({"prove", (dir / "p.p").string()}).code == 0);
  unsetenv(cli::kCatalogDirVar);

  write(dir / "q.p", "include('nowhere.ax').\n" + slurp(data_path("theorem1.p")));
  auto r = geodd_cli({"prove", (dir / "q.p").string()});
  CHECK(r.code == cli::kInputError);
  CHECK(contains(r.err, "nowhere.ax"));
  fs::remove_all(dir);
}

TEST_CASE("config file defaults") {
  auto dir = scratch("config");
  write(dir / "cfg.ini", "[prove]\nformat = \"prose\"\n");
  auto r = geodd_cli({"--config", (dir / "cfg.ini").string(), "prove", data("theorem1.p")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "Suppose that"));
  r = geodd_cli({"--config", (dir / "cfg.ini").string(), "prove", data("theorem1.p"), "--format", "table"});
  CHECK(contains(r.out, "| by hyp."));
  CHECK(geodd_cli({"--config", (dir / "missing.ini").string(), "prove", data("theorem1.p")}).code ==
        cli::kInputError);
  fs::remove_all(dir);
}
