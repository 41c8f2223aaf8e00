#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>

#include "ksobs/certificate.hpp"
#include "support.hpp"

using namespace ksobs;
using fixtures::last_line;
using fixtures::run_cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ksobs_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, Usage) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"check"}).code, 2);
  EXPECT_EQ(run_cli({"check", "nosuchset"}).code, 2);
  EXPECT_EQ(run_cli({"propagate", "clifton8", "--assign", "r99=1"}).code, 2);
  EXPECT_EQ(run_cli({"propagate", "clifton8", "--assign", "r7=2"}).code, 2);
  EXPECT_EQ(run_cli({"loops", "clifton8", "--max-maximals", "1"}).code, 2);
  const auto listed = run_cli({"datasets"});
  EXPECT_EQ(listed.code, 0);
  EXPECT_EQ(fixtures::lines_of(listed.out), builtin_names());
}

TEST(Cli, CheckVerdicts) {
  const auto clifton = run_cli({"check", "clifton8", "--complete"});
  EXPECT_EQ(clifton.code, 0);
  EXPECT_EQ(last_line(clifton.out), "SAT");
  const auto peres = run_cli({"check", "peres33"});
  EXPECT_EQ(peres.code, 1);
  EXPECT_EQ(last_line(peres.out), "UNSAT");
  EXPECT_NE(peres.out.find("contexts: 40 "), std::string::npos);
  EXPECT_NE(peres.out.find("auxiliary rays: 24 "), std::string::npos);
  EXPECT_NE(peres.out.find("nodes, exhaustive"), std::string::npos);
  const auto mermin = run_cli({"check", "mermin24"});
  EXPECT_EQ(mermin.code, 1);
  EXPECT_EQ(last_line(mermin.out), "UNSAT");
  EXPECT_NE(mermin.err.find("elapsed: "), std::string::npos);
}

TEST(Cli, PropagateVerdicts) {
  const auto clash = run_cli({"propagate", "clifton8", "--assign", "r7=1", "--assign", "r8=1"});
  EXPECT_EQ(clash.code, 1);
  EXPECT_EQ(last_line(clash.out), "CONTRADICTION");
  const auto lines = fixtures::lines_of(clash.out);
  ASSERT_GE(lines.size(), 2u);
  EXPECT_NE(lines[lines.size() - 2].find("Contradiction"), std::string::npos);
  EXPECT_TRUE(std::regex_search(lines[lines.size() - 2], std::regex(R"(\[[^\]]*\bB\b[^\]]*\])")));

  const auto verified = run_cli({"propagate", "clifton8", "--assign", "r7=1", "--predict", "r8=0"});
  EXPECT_EQ(verified.code, 0);
  EXPECT_EQ(last_line(verified.out), "VERIFIED");

  const auto open = run_cli({"propagate", "clifton8", "--assign", "r7=1", "--predict", "r8=1"});
  EXPECT_EQ(open.code, 1);
  EXPECT_EQ(last_line(open.out), "NOT-FORCED");
  EXPECT_NE(open.out.find("r8=0"), std::string::npos);

  const auto fix = run_cli({"propagate", "clifton8", "--assign", "r7=1"});
  EXPECT_EQ(fix.code, 0);
  EXPECT_EQ(last_line(fix.out), "FIXPOINT");
}

TEST(Cli, CertificateReplay) {
  const auto cert = scratch("cert.json");
  const auto r = run_cli({"propagate", "clifton8", "--assign", "r7=1", "--assign", "r8=1", "--out", cert.string()});
  ASSERT_EQ(r.code, 1);
  const auto ok = run_cli({"propagate", "clifton8", "--replay", cert.string()});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(last_line(ok.out), "REPLAY-OK");

  auto doc = Json::parse(slurp(cert));
  ASSERT_TRUE(doc.contains("steps"));
  doc["steps"][4]["value"] = 1 - doc["steps"][4]["value"].get<int>();
  std::ofstream(cert) << doc.dump(2);
  const auto bad = run_cli({"propagate", "clifton8", "--replay", cert.string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(last_line(bad.out), "REPLAY-FAILED");
  // a certificate for other contexts does not replay
  EXPECT_EQ(run_cli({"propagate", "cg10", "--replay", cert.string()}).code, 2);
  std::filesystem::remove(cert);
}

TEST(Cli, CheckWritesReportAndCertificate) {
  const auto report = scratch("report.json");
  ASSERT_EQ(run_cli({"check", "peres33", "--out", report.string()}).code, 1);
  const auto doc = Json::parse(slurp(report));
  EXPECT_EQ(doc["verdict"], "unsat");
  const auto cert = Json::parse(slurp(report.string() + ".cert.json"));
  EXPECT_TRUE(cert.contains("contexts"));
  std::filesystem::remove(report);
  std::filesystem::remove(report.string() + ".cert.json");
}

TEST(Cli, Loops) {
  const auto clifton = run_cli({"loops", "clifton8", "--max-maximals", "5"});
  EXPECT_EQ(clifton.code, 0);
  EXPECT_NE(clifton.out.find("  5 maximal (10 algebras): 2\n"), std::string::npos);
  EXPECT_NE(clifton.out.find("min loop: 10 algebras"), std::string::npos);
  const auto mermin = run_cli({"loops", "mermin24", "--max-maximals", "4"});
  EXPECT_NE(mermin.out.find("  4 maximal (8 algebras): "), std::string::npos);
  EXPECT_NE(mermin.out.find("min loop: 8 algebras"), std::string::npos);
  const auto peres = run_cli({"loops", "peres33", "--max-maximals", "4"});
  EXPECT_NE(peres.out.find("loops with at most 4 maximal algebras: 0"), std::string::npos);
}

TEST(Cli, DotExport) {
  const auto m = run_cli({"export-dot", "mermin24", "--signatures", "2-2"});
  ASSERT_EQ(m.code, 0);
  EXPECT_EQ(count(m.out, "shape=square"), 6u);
  EXPECT_EQ(count(m.out, "shape=diamond"), 9u);
  EXPECT_EQ(count(m.out, " -- "), 18u);
  std::map<std::string, int> degree;
  std::regex edge(R"((d\d+) -- m\d+;)");
  for (auto it = std::sregex_iterator(m.out.begin(), m.out.end(), edge); it != std::sregex_iterator(); ++it) {
    ++degree[(*it)[1]];
  }
  EXPECT_EQ(degree.size(), 9u);
  for (const auto& [node, d] : degree) EXPECT_EQ(d, 2) << node;

  const auto c = run_cli({"export-dot", "clifton8"});
  EXPECT_EQ(count(c.out, "shape=square"), 7u);

  const auto empty = scratch("empty.json");
  std::ofstream(empty) << R"({"name": "empty", "dim": 3, "mode": {"exact": {"d": 0}}, "rays": {}})";
  const auto e = run_cli({"export-dot", empty.string()});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "graph \"empty\" {\n  node [fontname=\"Helvetica\", fontsize=10];\n}\n");
  std::filesystem::remove(empty);
}

TEST(Cli, Lift) {
  const auto path = scratch("lifted.json");
  ASSERT_EQ(run_cli({"lift", "clifton8", "--dim", "4", "--out", path.string()}).code, 0);
  const auto loaded = load(path);
  EXPECT_EQ(loaded.set.labels.size(), 9u);
  const auto v = run_cli({"propagate", path.string(), "--assign", "r7=1", "--predict", "r8=0"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(last_line(v.out), "VERIFIED");
  EXPECT_EQ(run_cli({"lift", "mermin24", "--dim", "4"}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"check", "peres33"},
      {"propagate", "cg10", "--assign", "r1=1", "--predict", "r10=1"},
      {"loops", "mermin24", "--max-maximals", "4"},
      {"export-dot", "clifton8"},
      {"dump", "cg10"},
  };
  for (const auto& cmd : commands) {
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    EXPECT_EQ(a.code, b.code) << cmd[0];
    EXPECT_EQ(a.out, b.out) << cmd[0];
  }
}
