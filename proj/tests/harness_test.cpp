#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "limsat/error.hpp"
#include "limsat/generate.hpp"
#include "limsat/harness.hpp"
#include "support/oracles.hpp"

using namespace limsat;
namespace lt = limsat::testing;
using namespace limsat::harness;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

fs::path Data(const char* name) { return lt::data_dir() / name; }

template <typename Fn>
Outcome Capture(Fn&& fn) {
  std::ostringstream out, err;
  const int code = fn(out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// Everything but the trailing time column.
std::string WithoutTimes(const std::string& csv) {
  std::string out;
  for (const std::string& line : Lines(csv)) {
    out += line.substr(0, line.rfind(',')) + '\n';
  }
  return out;
}

fs::path MixedDir() {
  const fs::path dir = lt::make_temp_dir("bench");
  for (std::uint64_t s = 0; s < 6; ++s) {
    lt::write_file(dir / ("r" + std::to_string(s) + ".cnf"),
                        cnf::write_dimacs(gen::random_3sat(12, 51, s)));
  }
  lt::write_file(dir / "a_unsat.cnf",
                      lt::read_file(Data("unsat_unit.cnf")));
  lt::write_file(dir / "b_bad.cnf", lt::read_file(Data("bad_header.cnf")));
  lt::write_file(dir / "notes.txt", "ignored\n");
  return dir;
}

}  // namespace

//===----------------------------------------------------------------------===//
// solve / oracle / ssp / convert
//===----------------------------------------------------------------------===//

TEST(CmdSolve, ExitCodes) {
  const RunConfig config;
  Outcome r = Capture([&](auto& o, auto& e) { return cmd_solve(Data("table1.cnf"), config, o, e); });
  EXPECT_EQ(r.code, kExitSat);
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "c file table1.cnf variables 3 clauses 4 form twoblock");
  EXPECT_EQ(lines[2], "SAT");
  EXPECT_TRUE(lines[3].starts_with("v ") && lines[3].ends_with(" 0"));

  r = Capture([&](auto& o, auto& e) { return cmd_solve(Data("unsat_unit.cnf"), config, o, e); });
  EXPECT_EQ(r.code, kExitUnsat);
  EXPECT_EQ(Lines(r.out).back(), "UNSAT");

  r = Capture([&](auto& o, auto& e) { return cmd_solve(Data("bad_header.cnf"), config, o, e); });
  EXPECT_EQ(r.code, kExitError);
  EXPECT_TRUE(r.err.find("MalformedHeader") != std::string::npos) << r.err;

  r = Capture([&](auto& o, auto& e) { return cmd_solve(Data("missing.cnf"), config, o, e); });
  EXPECT_EQ(r.code, kExitError);
}

TEST(CmdSolve, EmptyClauseIsUnsat) {
  const fs::path dir = lt::make_temp_dir("empty-clause");
  lt::write_file(dir / "e.cnf", "p cnf 2 2\n1 2 0\n0\n");
  const Outcome r = Capture([&](auto& o, auto& e) { return cmd_solve(dir / "e.cnf", {}, o, e); });
  EXPECT_EQ(r.code, kExitUnsat);
}

TEST(CmdSolve, TimeoutOnHardInstance) {
  RunConfig config;
  config.timeout_s = 1e-9;
  const fs::path dir = lt::make_temp_dir("timeout");
  lt::write_file(dir / "php.cnf", cnf::write_dimacs(gen::pigeonhole(8, 7)));
  const Outcome r = Capture([&](auto& o, auto& e) { return cmd_solve(dir / "php.cnf", config, o, e); });
  EXPECT_EQ(r.code, kExitTimeout);
  EXPECT_EQ(Lines(r.out).back(), "TIMEOUT");
}

TEST(CmdOracle, Verdicts) {
  Outcome r = Capture([](auto& o, auto& e) { return cmd_oracle(Data("eq1.cnf"), 25, o, e); });
  EXPECT_EQ(r.code, kExitSat);
  EXPECT_EQ(Lines(r.out).back(), "v -1 -2 3 0");
  r = Capture([](auto& o, auto& e) { return cmd_oracle(Data("unsat_unit.cnf"), 25, o, e); });
  EXPECT_EQ(r.code, kExitUnsat);
  r = Capture([](auto& o, auto& e) { return cmd_oracle(Data("uf20-01.cnf"), 10, o, e); });
  EXPECT_EQ(r.code, kExitError);
  EXPECT_TRUE(r.err.find("TooManyVariables") != std::string::npos);
}

TEST(CmdSsp, TableAndDp) {
  SspOptions opts;
  Outcome r = Capture([&](auto& o, auto& e) { return cmd_ssp(Data("table1.cnf"), opts, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(Lines(r.out).size(), 16u);
  EXPECT_EQ(Lines(r.out).back(), "t    1  1  1  4  4  4  4");

  opts.run_dp = true;
  r = Capture([&](auto& o, auto& e) { return cmd_ssp(Data("table1.cnf"), opts, o, e); });
  EXPECT_EQ(r.code, kExitSat);
  const auto lines = Lines(r.out);
  EXPECT_TRUE(lines[lines.size() - 3].starts_with("selection: "));
  EXPECT_EQ(lines[lines.size() - 2], "SAT");

  r = Capture([&](auto& o, auto& e) { return cmd_ssp(Data("unsat_unit.cnf"), opts, o, e); });
  EXPECT_EQ(r.code, kExitUnsat);
  EXPECT_EQ(Lines(r.out).back(), "no subset");

  opts.value_limit = 10;
  r = Capture([&](auto& o, auto& e) { return cmd_ssp(Data("table1.cnf"), opts, o, e); });
  EXPECT_EQ(r.code, kExitError);
  EXPECT_TRUE(r.err.find("TargetTooLarge") != std::string::npos);

  SspOptions narrow;
  narrow.radix = 5;
  r = Capture([&](auto& o, auto& e) { return cmd_ssp(Data("table1.cnf"), narrow, o, e); });
  EXPECT_EQ(r.code, kExitError);
  EXPECT_TRUE(r.err.find("RadixTooSmall") != std::string::npos);
}

TEST(CmdConvert, LpAndMpsToStreamAndFile) {
  const RunConfig config;
  Outcome r = Capture([&](auto& o, auto& e) {
    return cmd_convert(Data("table1.cnf"), ExportFormat::kLp, std::nullopt, config, o, e);
  });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(ilp::import_lp(r.out),
            ilp::build_limsat_model(cnf::read_dimacs_file(Data("table1.cnf").string())));

  const fs::path out = lt::make_temp_dir("convert") / "m.mps";
  r = Capture([&](auto& o, auto& e) {
    return cmd_convert(Data("table1.cnf"), ExportFormat::kMps, out, config, o, e);
  });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(lt::read_file(out).starts_with("NAME          LIMSAT\n"));

  r = Capture([&](auto& o, auto& e) {
    return cmd_convert(Data("bad_header.cnf"), ExportFormat::kLp, std::nullopt, config, o, e);
  });
  EXPECT_EQ(r.code, kExitError);
}

TEST(Config, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(validate(c));
  c.workers = 0;
  EXPECT_THROW(validate(c), Error);
  c.workers = 2;
  c.timeout_s = 0;
  EXPECT_THROW(validate(c), Error);
}

//===----------------------------------------------------------------------===//
// bench
//===----------------------------------------------------------------------===//

TEST(Bench, CsvRowsInFilenameOrder) {
  const fs::path dir = MixedDir();
  const Outcome r = Capture([&](auto& o, auto& e) { return cmd_bench(dir, {}, std::nullopt, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], "filename,variables,clauses,result,time_s");
  EXPECT_EQ(lines[1], "a_unsat.cnf,1,2,unsat,0.00");
  EXPECT_TRUE(lines[2].starts_with("b_bad.cnf,0,0,error,"));
  EXPECT_TRUE(lines[3].starts_with("r0.cnf,12,51,"));
  EXPECT_TRUE(lines[8].starts_with("r5.cnf,12,51,"));
  EXPECT_TRUE(r.err.find("c solved ") != std::string::npos);
  EXPECT_TRUE(r.err.find("error 1)") != std::string::npos);
  EXPECT_TRUE(r.err.find("c b_bad.cnf: MalformedHeader") != std::string::npos);
}

TEST(Bench, SummaryCounts) {
  std::vector<BenchRecord> recs(5);
  recs[0].result = BenchResult::kSat;
  recs[1].result = BenchResult::kSat;
  recs[2].result = BenchResult::kUnsat;
  recs[3].result = BenchResult::kTimeout;
  recs[4].result = BenchResult::kError;
  EXPECT_EQ(summary_line(recs), "solved 3/5 (sat 2, unsat 1, timeout 1, error 1)");
}

TEST(Bench, WorkersDoNotChangeResults) {
  const fs::path dir = MixedDir();
  RunConfig one;
  RunConfig four;
  four.workers = 4;
  const Outcome a = Capture([&](auto& o, auto& e) { return cmd_bench(dir, one, std::nullopt, o, e); });
  const Outcome b = Capture([&](auto& o, auto& e) { return cmd_bench(dir, one, std::nullopt, o, e); });
  const Outcome c = Capture([&](auto& o, auto& e) { return cmd_bench(dir, four, std::nullopt, o, e); });
  EXPECT_EQ(WithoutTimes(a.out), WithoutTimes(b.out));
  EXPECT_EQ(WithoutTimes(a.out), WithoutTimes(c.out));
}

TEST(Bench, JsonAndTable) {
  const fs::path dir = MixedDir();
  RunConfig config;
  config.format = OutputFormat::kJson;
  Outcome r = Capture([&](auto& o, auto& e) { return cmd_bench(dir, config, std::nullopt, o, e); });
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 8u);
  EXPECT_EQ(doc[0]["filename"], "a_unsat.cnf");
  EXPECT_EQ(doc[0]["result"], "unsat");
  EXPECT_TRUE(doc[0].contains("total_s"));
  EXPECT_EQ(doc[1]["result"], "error");
  EXPECT_TRUE(doc[1]["message"].get<std::string>().starts_with("MalformedHeader"));

  config.format = OutputFormat::kTable;
  const fs::path out = dir / "table.txt";
  r = Capture([&](auto& o, auto& e) { return cmd_bench(dir, config, out, o, e); });
  const auto lines = Lines(lt::read_file(out));
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0], "Filename     Variable    Clause   Result     Time(s)");
  EXPECT_TRUE(lines[1].starts_with("a_unsat.cnf         1         2    unsat"));
  EXPECT_TRUE(lines.back().starts_with("solved "));
}

TEST(Bench, MissingOrEmptyDirectory) {
  Outcome r = Capture([](auto& o, auto& e) {
    return cmd_bench("/nonexistent/limsat", {}, std::nullopt, o, e);
  });
  EXPECT_EQ(r.code, kExitError);
  const fs::path empty = lt::make_temp_dir("empty");
  r = Capture([&](auto& o, auto& e) { return cmd_bench(empty, {}, std::nullopt, o, e); });
  EXPECT_EQ(r.code, kExitError);
}

TEST(Bench, ListCnfFilesSorted) {
  const fs::path dir = MixedDir();
  const auto files = list_cnf_files(dir);
  ASSERT_EQ(files.size(), 8u);
  EXPECT_EQ(files.front().filename(), "a_unsat.cnf");
  EXPECT_EQ(files.back().filename(), "r5.cnf");
}
