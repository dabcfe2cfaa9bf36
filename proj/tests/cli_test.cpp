#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "pmds/cli.hpp"
#include "pmds/families.hpp"
#include "pmds/graph.hpp"

namespace pmds {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(PMDS_TEST_TMPDIR) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::create_directories(dir_);
  }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  return cells;
}

TEST_F(CliTest, PeelTriangle) {
  const auto file = write("k3.txt", "0 1\n1 2\n2 0\n");
  const auto r = invoke({"peel", "-i", file, "-p", "2", "--algo", "gen"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["command"], "peel");
  EXPECT_EQ(doc["set_labels"], json({"0", "1", "2"}));
  EXPECT_DOUBLE_EQ(doc["objective"].get<double>(), 4.0);
  EXPECT_EQ(doc["metrics"]["size"], 3);
}

TEST_F(CliTest, PeelLemma4RecoversBipartitePart) {
  std::ostringstream text;
  write_canonical_edge_list(generate(family::Lemma4{4, 2000}), text);
  const auto file = write("lemma4.txt", text.str());
  const auto r = invoke({"peel", "-i", file, "-p", "2", "--algo", "gen"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["metrics"]["size"], 2004);
  EXPECT_EQ(doc["set_labels"].size(), 2004u);
}

TEST_F(CliTest, SimplePeelAtPOneReportsMaxcore) {
  const auto file = write("bowtie.txt", "0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n");
  const auto r = invoke({"peel", "-i", file, "-p", "1", "--algo", "simple"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_TRUE(doc.contains("maxcore"));
  EXPECT_EQ(doc["maxcore"]["metrics"]["min_degree"], 2);
}

TEST_F(CliTest, EmptyFileFailsWithNoEdges) {
  const auto file = write("empty.txt", "");
  const auto r = invoke({"peel", "-i", file, "-p", "2"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("no edges"), std::string::npos) << r.err;
}

TEST_F(CliTest, InputErrorsExitWithTwo) {
  EXPECT_EQ(invoke({"peel", "-i", path("missing.txt"), "-p", "2"}).code,
            cli::kExitInputError);
  const auto bad = write("bad.txt", "0 1\n1 2 3\n");
  const auto r = invoke({"peel", "-i", bad, "-p", "2"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"peel", "-i", bad, "--algo", "nope"}).code, cli::kExitInputError);
  EXPECT_EQ(invoke({"bogus"}).code, cli::kExitInputError);
  const auto k3 = write("k3.txt", "0 1\n1 2\n2 0\n");
  EXPECT_EQ(invoke({"exact", "-i", k3, "-p", "0.5", "--method", "submodular"}).code,
            cli::kExitInputError);
  EXPECT_EQ(invoke({"generate", "--family", "banded", "--n", "10", "--k", "5"}).code,
            cli::kExitInputError);
}

TEST_F(CliTest, UndefinedMeanIsReportedAsNull) {
  const auto file = write("iso.txt", "0 1\n2 2\n");
  const auto r = invoke({"stats", "-i", file, "--p=-1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["metrics"]["m_p"].is_null());
  EXPECT_EQ(doc["metrics"]["min_degree"], 0);
}

TEST_F(CliTest, SweepRowCountsAndAverages) {
  const auto k3 = write("k3.txt", "0 1\n1 2\n2 0\n");
  const auto r = invoke({"sweep", "-i", k3, "--p-list=-inf,0.5,1,1.05,1.5,2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto lines = csv_lines(r.out);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0],
            "p,algo,size,edge_density,avg_degree,avg_squared_degree,max_degree,"
            "min_degree,fp,mp,seconds");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i]);
    ASSERT_EQ(cells.size(), 11u) << lines[i];
    EXPECT_DOUBLE_EQ(std::stod(cells[4]), 2.0) << lines[i];
  }

  const auto bowtie = write("bowtie.txt", "0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n");
  const auto b = invoke({"sweep", "-i", bowtie, "--p-list", "1,2", "--threads", "2"});
  ASSERT_EQ(b.code, cli::kExitOk) << b.err;
  const auto rows = csv_lines(b.out);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_DOUBLE_EQ(std::stod(split(rows[i])[4]), 2.4) << rows[i];
  }
}

TEST_F(CliTest, SweepJson) {
  const auto k3 = write("k3.txt", "0 1\n1 2\n2 0\n");
  const auto r = invoke({"sweep", "-i", k3, "--p-list", "1,2", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["rows"].size(), 2u);
}

TEST_F(CliTest, ExactBowtie) {
  const auto file = write("bowtie.txt", "0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n");
  for (const char* method : {"bruteforce", "submodular"}) {
    const auto r = invoke({"exact", "-i", file, "-p", "1", "--method", method});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const json doc = json::parse(r.out);
    EXPECT_DOUBLE_EQ(doc["best_fp"].get<double>(), 2.4) << method;
    EXPECT_EQ(doc["set_labels"].size(), 5u);
  }
}

TEST_F(CliTest, KcoreStar) {
  const auto file = write("star.txt", "0 1\n0 2\n0 3\n");
  const auto r = invoke({"kcore", "-i", file, "--emit-core-numbers"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["degeneracy"], 1);
  EXPECT_EQ(doc["core_numbers"].size(), 4u);
}

TEST_F(CliTest, StatsOnNodeFile) {
  const auto graph = write("star.txt", "0 1\n0 2\n0 3\n");
  const auto nodes = write("nodes.txt", "0\n1\n2\n");
  const auto r = invoke({"stats", "-i", graph, "--nodes", nodes, "-p", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["metrics"]["size"], 3);
  EXPECT_EQ(doc["metrics"]["edges"], 2);
}

TEST_F(CliTest, GenerateLemma4) {
  const auto out = path("lemma4.txt");
  const auto r = invoke({"generate", "--family", "lemma4", "--d", "2", "--D", "3", "-o", out});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Graph g = parse_edge_list_file(out);
  EXPECT_EQ(g.num_nodes(), 17u);
  EXPECT_EQ(g.num_edges(), 24u);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["nodes"], 17);
  EXPECT_EQ(doc["edges"], 24);
}

TEST_F(CliTest, DeterministicRunsAreByteIdentical) {
  const auto file = write("er.txt", [] {
    std::ostringstream text;
    write_canonical_edge_list(generate(family::ErdosRenyi{200, 0.05, 3}), text);
    return text.str();
  }());
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"peel", "-i", file, "-p", "1.5", "--deterministic"},
        std::vector<std::string>{"kcore", "-i", file, "--deterministic"},
        std::vector<std::string>{"sweep", "-i", file, "--p-list", "0.5,1,2",
                                 "--deterministic"}}) {
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(CliTest, PeelAndStatsReportTheSameObjective) {
  const auto file = write("bowtie.txt", "0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n");
  const auto peel = json::parse(invoke({"peel", "-i", file, "-p", "2"}).out);
  const auto exact =
      json::parse(invoke({"exact", "-i", file, "-p", "2", "--method", "bruteforce"}).out);
  EXPECT_DOUBLE_EQ(peel["metrics"]["avg_pth_power_degree"].get<double>(),
                   peel["objective"].get<double>());
  EXPECT_DOUBLE_EQ(exact["metrics"]["avg_pth_power_degree"].get<double>(),
                   exact["best_fp"].get<double>());
}

}  // namespace
}  // namespace pmds
