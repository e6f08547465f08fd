#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "autrecon/cli.hpp"

using namespace autrecon;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "autrecon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::RunConfig config;
  Outcome o;
  if (const auto status = cli::parse_args(static_cast<int>(argv.size()), argv.data(), config, out, err)) {
    o.status = *status;
  } else {
    o.status = cli::run(config, out, err);
  }
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("autrecon_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& content) { std::ofstream(p, std::ios::binary) << content; }

}  // namespace

TEST(Cli, MinoreOnS3) {
  const auto o = invoke({"verify-minore", "--group", "sym:3"});
  EXPECT_EQ(o.status, 0) << o.err;
  EXPECT_EQ(line_count(o.out), 37u);  // 36 records and the summary
  EXPECT_NE(o.out.find("summary group=sym:3 size=6 pairs=36"), std::string::npos);
  EXPECT_NE(o.out.find("seed=0"), std::string::npos);
}

TEST(Cli, CapExceededExitsTwo) {
  const auto o = invoke({"verify-minore", "--group", "sym:99"});
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.err.find("cap"), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"verify-minore", "--group", "sym:6", "--cap", "100"}).status, 2);
  EXPECT_EQ(invoke({"verify-minore", "--group", "sym:3", "--cap", "70000"}).status, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"verify-minore", "--group", "alt:5"}).status, 2);
  EXPECT_EQ(invoke({"verify-minore"}).status, 2);
  EXPECT_EQ(invoke({"frobnicate"}).status, 2);
  EXPECT_EQ(invoke({}).status, 2);
  EXPECT_EQ(invoke({"verify-minore", "--group", "sym:3", "--bogus"}).status, 2);
  EXPECT_EQ(invoke({"verify-minore", "--group", "sym:3", "--workers", "0"}).status, 2);
  EXPECT_EQ(invoke({"witness", "--lemma", "primo_c", "--group", "sym:4", "--f", "(0 1)", "--g", "(2 3)", "--a",
                    "{0}@4"})
                .status,
            2);
  EXPECT_EQ(invoke({"witness", "--lemma", "primo_c", "--group", "sym:3", "--f", "(0 1)@4", "--g", "(0 1)", "--a",
                    "{0}@3"})
                .status,
            2);
  EXPECT_EQ(invoke({"verify-minore", "--group", "sym:3", "--out", "/nonexistent-dir/report"}).status, 2);
  EXPECT_EQ(invoke({"katetov"}).status, 2);
  EXPECT_EQ(invoke({"--help"}).status, 0);
}

TEST(Cli, KatetovRandomIsSeedDeterministic) {
  const auto a = invoke({"katetov", "--random", "10", "--seed", "7"});
  EXPECT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(line_count(a.out), 11u);
  EXPECT_NE(a.out.find("summary perms=10 verified=10"), std::string::npos);
  EXPECT_NE(a.out.find("seed=7"), std::string::npos);
  EXPECT_EQ(invoke({"katetov", "--random", "10", "--seed", "7"}).out, a.out);
  EXPECT_NE(invoke({"katetov", "--random", "10", "--seed", "8"}).out, a.out);
}

TEST(Cli, KatetovDescriptors) {
  const auto o = invoke({"katetov", "win:[];tail:p=2,d0=+1,d1=-1"});
  EXPECT_EQ(o.status, 0) << o.err;
  EXPECT_NE(o.out.find("E0=per=2;res={0};win=0;exp={} E1=per=2;res={1};win=0;exp={}"), std::string::npos) << o.out;
  EXPECT_EQ(invoke({"katetov", "win:[];tail:p=1,d0=-2"}).status, 2);
}

TEST(Cli, WitnessLines) {
  const auto a = invoke({"witness", "--lemma", "primo_a", "--gs", "(0 1)(2 3)@4", "--a", "{0,1,2,3}@4", "--order",
                         "largest"});
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, "lemma=primo_a found=1 witness={0,2}@4 scanned=7 reason=\"exhaustive\" seed=0\n");
  const auto d = invoke({"witness", "--lemma", "primo_d", "--group", "sym:3", "--g", "(0 1 2)", "--a", "{0,1,2}@3"});
  EXPECT_EQ(d.status, 0);
  EXPECT_NE(d.out.find("found=1"), std::string::npos);
  const auto b = invoke({"witness", "--lemma", "primo_b", "--group", "sym:4", "--a", "{0,1,2,3}@4", "--n", "3"});
  EXPECT_NE(b.out.find("witness=h=(0 1 2 3)@4;b={0}@4"), std::string::npos) << b.out;
}

TEST(Cli, TerzoModes) {
  const auto sweep = invoke({"terzo", "--group", "sym:3", "--max-terms", "2"});
  EXPECT_EQ(sweep.status, 0) << sweep.err;
  EXPECT_NE(sweep.out.find("violations=0"), std::string::npos);
  const auto single = invoke({"terzo", "--f", "(0 1 2 3)@4", "--a", "{0}@4", "--exponents", "0,2", "--family",
                              "(0 2)(1 3)@4"});
  EXPECT_EQ(single.status, 0) << single.err;
  EXPECT_NE(single.out.find("lemma=terzo found=0"), std::string::npos);
  const auto bad = invoke({"terzo", "--f", "(0 1 2 3)@4", "--a", "{0}@4", "--exponents", "0,2", "--family", "(0 1)@4"});
  EXPECT_EQ(bad.status, 2);
}

TEST(Cli, ThetaModes) {
  const auto search = invoke({"theta", "--source", "sym:3", "--target", "sym:3", "--iso", "search", "--limit", "6"});
  EXPECT_EQ(search.status, 0) << search.err;
  EXPECT_NE(search.out.find("isos=6 failures=0"), std::string::npos);
  const auto conj = invoke({"theta", "--source", "sym:4", "--target", "sym:4", "--iso", "conj:(0 1 2 3)"});
  EXPECT_EQ(conj.status, 0) << conj.err;
  EXPECT_NE(conj.out.find("a={0,1}@4 theta={1,2}@4 witnesses=1"), std::string::npos) << conj.out;

  const auto dir = scratch_dir();
  std::string mapping;
  const auto S3 = symmetric_group(3);
  for (const auto& f : S3.elements()) mapping += to_string(f) + " -> " + to_string(f) + "\n";
  write(dir / "iso.txt", "# identity\n" + mapping);
  const auto file = invoke({"theta", "--source", "sym:3", "--target", "sym:3", "--iso", (dir / "iso.txt").string()});
  EXPECT_EQ(file.status, 0) << file.err;
  write(dir / "bad.txt", "() -> ()\n(0 1) -> (0 1 2)\n");
  EXPECT_EQ(invoke({"theta", "--source", "sym:3", "--target", "sym:3", "--iso", (dir / "bad.txt").string()}).status, 2);
  const auto none = invoke({"theta", "--source", "sym:3", "--target", "cyc:6"});
  EXPECT_EQ(none.status, 0);
  EXPECT_NE(none.out.find("isos=0"), std::string::npos);
}

TEST(Cli, SweepReportsChecks) {
  const auto o = invoke({"sweep", "--group", "sym:3", "--random", "5", "--seed", "2"});
  EXPECT_EQ(o.status, 0) << o.err;
  EXPECT_NE(o.out.find("check name=inner_theta cases=6 violations=0"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("check name=katetov cases=5 violations=0"), std::string::npos) << o.out;
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch_dir();
  write(dir / "run.cfg", "# comment\ncommand = verify-minore\ngroup = \"sym:4\"\nseed = 42\n");
  const auto from_file = invoke({"--config", (dir / "run.cfg").string()});
  EXPECT_EQ(from_file.status, 0) << from_file.err;
  EXPECT_NE(from_file.out.find("group=sym:4 size=24"), std::string::npos);
  EXPECT_NE(from_file.out.find("seed=42"), std::string::npos);

  const auto overridden = invoke({"--config", (dir / "run.cfg").string(), "--group", "sym:3", "--seed", "1"});
  EXPECT_NE(overridden.out.find("group=sym:3 size=6"), std::string::npos);
  EXPECT_NE(overridden.out.find("seed=1"), std::string::npos);

  write(dir / "bad.cfg", "command = verify-minore\ncolour = blue\n");
  EXPECT_EQ(invoke({"--config", (dir / "bad.cfg").string()}).status, 2);
  EXPECT_EQ(invoke({"--config", (dir / "missing.cfg").string()}).status, 2);
}

TEST(Cli, OutPrefixWritesTextAndJsonl) {
  const auto dir = scratch_dir();
  const auto prefix = (dir / "s3").string();
  const auto o = invoke({"secondo", "--group", "sym:3", "--out", prefix, "--seed", "5"});
  EXPECT_EQ(o.status, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  const auto text = cli::read_file(prefix + ".txt");
  const auto jsonl = cli::read_file(prefix + ".jsonl");
  EXPECT_EQ(line_count(text), 37u);
  EXPECT_EQ(line_count(jsonl), 37u);
  std::istringstream lines(jsonl);
  std::string l;
  while (std::getline(lines, l)) {
    const auto j = nlohmann::json::parse(l);
    EXPECT_TRUE(j.contains("type"));
  }
  EXPECT_NE(jsonl.find("\"seed\":5"), std::string::npos);
}

TEST(Cli, WorkerCountDoesNotChangeReports) {
  for (const auto* cmd : {"verify-minore", "secondo"}) {
    const auto one = invoke({cmd, "--group", "sym:4", "--workers", "1"});
    const auto many = invoke({cmd, "--group", "sym:4", "--workers", "4"});
    EXPECT_EQ(one.out, many.out) << cmd;
  }
}

TEST(Golden, DiffText) {
  EXPECT_TRUE(cli::diff_golden_text("a\nb\n", "a\nb\n").same);
  const auto d = cli::diff_golden_text("a\nagree=1\nc\n", "a\nagree=0\nc\n");
  EXPECT_FALSE(d.same);
  EXPECT_EQ(d.line, 2u);
  EXPECT_EQ(d.expected, "agree=0");
  EXPECT_EQ(d.actual, "agree=1");
  const auto shorter = cli::diff_golden_text("a\n", "a\nb\n");
  EXPECT_EQ(shorter.line, 2u);
  EXPECT_EQ(shorter.actual, "<end of file>");
  EXPECT_FALSE(cli::diff_golden_text("a\n", "a").same);
}

TEST(Golden, FlippedAgreeBitIsCaughtWithLineNumber) {
  const auto dir = scratch_dir();
  const std::string golden = std::string(AUTRECON_GOLDEN_DIR) + "/minore_sym3.txt";
  auto text = cli::read_file(golden);
  const auto pos = text.find("agree=1");
  ASSERT_NE(pos, std::string::npos);
  const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
  text[pos + 6] = '0';
  write(dir / "flipped.txt", text);

  const auto d = cli::diff_golden(golden, (dir / "flipped.txt").string());
  EXPECT_FALSE(d.same);
  EXPECT_EQ(d.line, line);
  EXPECT_TRUE(cli::diff_golden(golden, golden).same);
  EXPECT_THROW(cli::diff_golden(golden, (dir / "absent.txt").string()), Error);

  const auto o = invoke({"verify-minore", "--group", "sym:3", "--golden", (dir / "flipped.txt").string()});
  EXPECT_EQ(o.status, 1);
  EXPECT_NE(o.err.find("line " + std::to_string(line)), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"verify-minore", "--group", "sym:3", "--golden", golden}).status, 0);
}

TEST(Golden, RerunMatchesCommittedReports) {
  for (const auto* stem : {"minore_sym3", "minore_sym4", "secondo_sym3", "secondo_sym4"}) {
    const std::string s = stem;
    const auto cmd = s.rfind("minore", 0) == 0 ? "verify-minore" : "secondo";
    const auto group = s.substr(s.size() - 4, 3) + ":" + s.substr(s.size() - 1);
    const auto o = invoke({cmd, "--group", group});
    EXPECT_EQ(o.out, cli::read_file(std::string(AUTRECON_GOLDEN_DIR) + "/" + s + ".txt")) << stem;
  }
}
