#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = 0;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BPT_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("bpt_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

TEST_F(Cli, GenerateBuildQuery) {
  ASSERT_EQ(run("generate --kind star --n 4 --out " + file("s.bp")).status, 0);
  std::ifstream in(file("s.bp"));
  std::string text;
  in >> text;
  EXPECT_EQ(text, "(()()())");

  std::ofstream(file("t1.bp")) << "(()(()())())\n";
  auto b = run("build --input " + file("t1.bp") + " --index " + file("t1.idx") + " --beta 4 --block 2 --chunk 8");
  ASSERT_EQ(b.status, 0) << b.out;
  EXPECT_EQ(run("query --index " + file("t1.idx") + " preorderselect 5").out, "7\n");
  EXPECT_EQ(run("query --index " + file("t1.idx") + " lca 5 10").out, "1\n");
  EXPECT_EQ(run("query --index " + file("t1.idx") + " fwdsearch 1 -1").out, "12\n");
  EXPECT_EQ(run("query --index " + file("t1.idx") + " enclose 1").out, "none\n");
  EXPECT_EQ(run("query --index " + file("t1.idx") + " rank 10 12").out, "4\n");
  EXPECT_NE(run("query --index " + file("t1.idx") + " close 3").status, 0);
  EXPECT_NE(run("query --index " + file("t1.idx") + " nosuchop 3").status, 0);
}

TEST_F(Cli, StatsReportsRawBits) {
  ASSERT_EQ(run("generate --kind uniform --n 5000 --seed 3 --out " + file("u.bp")).status, 0);
  const auto r = run("stats --input " + file("u.bp") + " --format json");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"raw B\""), std::string::npos);
  EXPECT_NE(r.out.find("\"bpn\": 2.0"), std::string::npos);
  const auto text = run("stats --input " + file("u.bp"));
  EXPECT_NE(text.out.find("total w/o counts"), std::string::npos);
}

TEST_F(Cli, BenchWritesVersionedCsv) {
  ASSERT_EQ(run("generate --kind uniform --n 2000 --seed 4 --out " + file("u.bp")).status, 0);
  ASSERT_EQ(run("bench --input " + file("u.bp") + " --mode rmq --pairs 1000 --csv " + file("r.csv")).status, 0);
  std::ifstream in(file("r.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# bpt-bench-csv v1");
  std::getline(in, line);
  EXPECT_EQ(line, "name,param,mean_us,n,extra");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 100);
  const auto t = run("bench --input " + file("u.bp") + " --mode traversal --p 1 --sample-min 10");
  ASSERT_EQ(t.status, 0) << t.out;
  EXPECT_NE(t.out.find("close,p=1,"), std::string::npos);
  EXPECT_NE(t.out.find(",2000,"), std::string::npos);
}

}  // namespace
