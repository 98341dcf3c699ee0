#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "limsat/cnf.hpp"
#include "limsat/error.hpp"
#include "limsat/generate.hpp"
#include "limsat/ssp.hpp"
#include "support/oracles.hpp"

using namespace limsat;
namespace lt = limsat::testing;
using namespace limsat::ssp;

namespace {

cnf::CnfFormula Table1Formula() {
  return cnf::read_dimacs_file((lt::data_dir() / "table1.cnf").string());
}

RowLabel L(const std::string& s) { return *RowLabel::Parse(s); }

std::vector<std::uint32_t> Digits(const SspInstance& inst,
                                  const std::string& label) {
  const SspRow* row = inst.find(L(label));
  return row ? row->number.digits() : std::vector<std::uint32_t>{};
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected limsat::Error";
  return ErrorCode::kIo;
}

// Every subset of rows, as bitmasks, whose digit-wise sum equals t.
std::vector<std::uint64_t> HittingSubsets(const SspInstance& inst) {
  std::vector<std::uint64_t> hits;
  const std::size_t m = inst.rows.size();
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    std::vector<std::uint32_t> sum(inst.target.size(), 0);
    for (std::size_t r = 0; r < m; ++r) {
      if (!((mask >> r) & 1)) continue;
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] += inst.rows[r].number[i];
      }
    }
    if (sum == inst.target.digits()) hits.push_back(mask);
  }
  return hits;
}

}  // namespace

TEST(RowLabel, TextRoundTrip) {
  for (const char* s : {"v1", "v'1", "s12", "s'3"}) {
    ASSERT_TRUE(RowLabel::Parse(s).has_value()) << s;
    EXPECT_EQ(RowLabel::Parse(s)->ToString(), s);
  }
  EXPECT_FALSE(RowLabel::Parse("x1").has_value());
  EXPECT_FALSE(RowLabel::Parse("v").has_value());
  EXPECT_FALSE(RowLabel::Parse("v0").has_value());
}

TEST(RowLabel, Ordering) {
  EXPECT_LT(L("v1"), L("v'1"));
  EXPECT_LT(L("v'1"), L("v2"));
  EXPECT_LT(L("v'9"), L("s1"));
  EXPECT_LT(L("s1"), L("s'1"));
  EXPECT_LT(L("s'1"), L("s2"));
}

TEST(DigitVector, ValueAndValidation) {
  EXPECT_EQ(DigitVector(10, {1, 1, 1, 4, 4, 4, 4}).value(), 1114444u);
  EXPECT_EQ(DigitVector(7, {1, 2}).value(), 9u);
  EXPECT_EQ(CodeOf([] { DigitVector(5, {5}); }), ErrorCode::kRadixTooSmall);
  std::vector<std::uint32_t> huge(40, 9);
  EXPECT_FALSE(DigitVector(10, huge).value().has_value());
}

//===----------------------------------------------------------------------===//
// reduce_to_ssp
//===----------------------------------------------------------------------===//

TEST(Reduce, Table1Rows) {
  const SspInstance inst = reduce_to_ssp(Table1Formula());
  EXPECT_EQ(inst.radix, 10u);
  ASSERT_EQ(inst.rows.size(), 14u);
  EXPECT_EQ(Digits(inst, "v1"), (std::vector<std::uint32_t>{1, 0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(Digits(inst, "v'1"), (std::vector<std::uint32_t>{1, 0, 0, 0, 1, 1, 0}));
  EXPECT_EQ(Digits(inst, "v'2"), (std::vector<std::uint32_t>{0, 1, 0, 1, 1, 1, 0}));
  EXPECT_EQ(Digits(inst, "s'3"), (std::vector<std::uint32_t>{0, 0, 0, 0, 0, 2, 0}));
  EXPECT_EQ(inst.target.value(), 1114444u);
}

TEST(Reduce, SingleUnitClause) {
  const SspInstance inst = reduce_to_ssp(cnf::parse_dimacs("p cnf 1 1\n1 0\n"));
  ASSERT_EQ(inst.rows.size(), 4u);
  EXPECT_EQ(Digits(inst, "v1"), (std::vector<std::uint32_t>{1, 1}));
  EXPECT_EQ(Digits(inst, "v'1"), (std::vector<std::uint32_t>{1, 0}));
  EXPECT_EQ(Digits(inst, "s1"), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(Digits(inst, "s'1"), (std::vector<std::uint32_t>{0, 2}));
  EXPECT_EQ(inst.target.digits(), (std::vector<std::uint32_t>{1, 4}));
}

TEST(Reduce, RowsAreInLabelOrderAndSized) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const cnf::CnfFormula f = gen::random_3sat(4, 6, seed);
    const SspInstance inst = reduce_to_ssp(f);
    ASSERT_EQ(inst.rows.size(), 2u * (4 + 6));
    for (std::size_t r = 1; r < inst.rows.size(); ++r) {
      EXPECT_LT(inst.rows[r - 1].label, inst.rows[r].label);
    }
    for (const SspRow& row : inst.rows) EXPECT_EQ(row.number.size(), 10u);
  }
}

TEST(Reduce, ColumnSumsNeverCarry) {
  // Summing every row never reaches the radix in any column, so digit-wise
  // and integer addition agree for every subset.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 6);
    const cnf::CnfFormula f = cnf::normalize(
        gen::random_mixed_cnf(n, 1 + rng() % 8, 1, 5, rng())).formula;
    if (f.num_clauses() == 0) continue;
    const SspInstance inst = reduce_to_ssp(f, min_radix(f));
    std::vector<std::uint64_t> total(inst.target.size(), 0);
    for (const SspRow& row : inst.rows) {
      for (std::size_t i = 0; i < total.size(); ++i) total[i] += row.number[i];
    }
    for (std::uint64_t t : total) EXPECT_LT(t, inst.radix);
  }
}

TEST(Reduce, RadixRules) {
  const cnf::CnfFormula f = Table1Formula();
  EXPECT_EQ(min_radix(f), 7u);
  EXPECT_EQ(default_radix(f), 10u);
  EXPECT_EQ(reduce_to_ssp(f, 7).radix, 7u);
  EXPECT_EQ(CodeOf([&] { reduce_to_ssp(f, 6); }), ErrorCode::kRadixTooSmall);
  EXPECT_EQ(CodeOf([] { reduce_to_ssp(cnf::parse_dimacs("p cnf 1 1\n0\n")); }),
            ErrorCode::kEmptyClause);
  const cnf::CnfFormula wide = gen::random_ksat(12, 2, 9, 3);
  EXPECT_EQ(default_radix(wide), 13u);
}

//===----------------------------------------------------------------------===//
// ssp_dp_solve
//===----------------------------------------------------------------------===//

TEST(Dp, Table1FindsSubset) {
  const SspInstance inst = reduce_to_ssp(Table1Formula());
  const auto sel = ssp_dp_solve(inst);
  ASSERT_TRUE(sel.has_value());
  const cnf::Assignment a = selection_to_assignment(inst, *sel);
  EXPECT_EQ(cnf::evaluate(Table1Formula(), a), cnf::Evaluation::kSatisfied);
}

TEST(Dp, ComplementaryUnitsHaveNoSubset) {
  const SspInstance inst =
      reduce_to_ssp(cnf::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"));
  EXPECT_FALSE(ssp_dp_solve(inst).has_value());
}

TEST(Dp, NoClausesGivesEmptyVariableChoice) {
  const SspInstance inst = reduce_to_ssp(cnf::parse_dimacs("p cnf 2 0\n"));
  const auto sel = ssp_dp_solve(inst);
  ASSERT_TRUE(sel.has_value());
  // Skip-first order picks v'_i for every variable.
  EXPECT_EQ(sel->chosen, (std::vector<RowLabel>{L("v'1"), L("v'2")}));
}

TEST(Dp, ValueLimit) {
  const SspInstance inst = reduce_to_ssp(gen::random_3sat(5, 21, 4));
  EXPECT_EQ(CodeOf([&] { ssp_dp_solve(inst); }), ErrorCode::kTargetTooLarge);
  EXPECT_EQ(CodeOf([&] { ssp_dp_solve(reduce_to_ssp(Table1Formula()), 1000); }),
            ErrorCode::kTargetTooLarge);
}

TEST(Dp, AgreesWithExhaustiveSubsetsAndDfs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 120; ++trial) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 3);
    const std::size_t k = 1 + rng() % 4;
    const cnf::CnfFormula f =
        cnf::normalize(gen::random_mixed_cnf(n, k, 1, 3, rng())).formula;
    if (f.has_empty_clause()) continue;
    const SspInstance inst = reduce_to_ssp(f);
    const auto dp = ssp_dp_solve(inst, 1'000'000'000'000ULL);
    const bool any = !HittingSubsets(inst).empty();
    EXPECT_EQ(dp.has_value(), any) << trial;
    EXPECT_EQ(dp, lt::ssp_dfs(inst)) << trial;
    const bool sat = cnf::brute_force_sat(f).status == cnf::SatStatus::kSat;
    EXPECT_EQ(any, sat) << trial;
    if (dp) {
      EXPECT_EQ(cnf::evaluate(f, selection_to_assignment(inst, *dp)),
                cnf::Evaluation::kSatisfied);
    }
  }
}

//===----------------------------------------------------------------------===//
// selection_to_assignment
//===----------------------------------------------------------------------===//

TEST(Decode, Table1Selection) {
  const SspInstance inst = reduce_to_ssp(Table1Formula());
  // x1 = F, x2 = F, x3 = T: v'1, v'2, v3 give clause columns 1 2 3 1.
  const SubsetSelection sel{{L("v'1"), L("v'2"), L("v3"), L("s1"), L("s'1"),
                             L("s'2"), L("s3"), L("s4"), L("s'4")}};
  const cnf::Assignment a = selection_to_assignment(inst, sel);
  EXPECT_EQ(a.ToVLine(), "v -1 -2 3 0");
}

TEST(Decode, RejectsBadSelections) {
  const SspInstance inst = reduce_to_ssp(Table1Formula());
  EXPECT_EQ(CodeOf([&] { selection_to_assignment(inst, {{L("v1")}}); }),
            ErrorCode::kInvalidSelection);
  EXPECT_EQ(CodeOf([&] {
              selection_to_assignment(inst, {{L("v1"), L("v1")}});
            }),
            ErrorCode::kInvalidSelection);
  EXPECT_EQ(CodeOf([&] { selection_to_assignment(inst, {{L("v9")}}); }),
            ErrorCode::kInvalidSelection);
}

//===----------------------------------------------------------------------===//
// Rendering
//===----------------------------------------------------------------------===//

TEST(Render, Table1GridTokens) {
  const std::string grid = render_table(reduce_to_ssp(Table1Formula()));
  // Rows transcribed by hand from the worked example (s'3 has its 2 under C3).
  const std::vector<std::string> expected = {
      "X1 X2 X3 C1 C2 C3 C4",
      "v1 1 0 0 1 0 0 1",   "v'1 1 0 0 0 1 1 0", "v2 0 1 0 0 0 0 1",
      "v'2 0 1 0 1 1 1 0",  "v3 0 0 1 0 0 1 1",  "v'3 0 0 1 1 1 0 0",
      "s1 0 0 0 1 0 0 0",   "s'1 0 0 0 2 0 0 0", "s2 0 0 0 0 1 0 0",
      "s'2 0 0 0 0 2 0 0",  "s3 0 0 0 0 0 1 0",  "s'3 0 0 0 0 0 2 0",
      "s4 0 0 0 0 0 0 1",   "s'4 0 0 0 0 0 0 2", "t 1 1 1 4 4 4 4"};
  std::istringstream in(grid);
  std::vector<std::string> got;
  for (std::string line; std::getline(in, line);) {
    std::istringstream words(line);
    std::string joined;
    for (std::string w; words >> w;) joined += (joined.empty() ? "" : " ") + w;
    got.push_back(joined);
  }
  EXPECT_EQ(got, expected);
}

TEST(Render, SingleClauseLayout) {
  const std::string grid =
      render_table(reduce_to_ssp(cnf::parse_dimacs("p cnf 1 1\n1 0\n")));
  EXPECT_EQ(grid,
            "    X1 C1\n"
            "v1   1  1\n"
            "v'1  1  0\n"
            "s1   0  1\n"
            "s'1  0  2\n"
            "t    1  4\n");
}

TEST(Render, DumpRows) {
  EXPECT_EQ(dump_rows(reduce_to_ssp(cnf::parse_dimacs("p cnf 1 1\n-1 0\n"))),
            "v1 1 0\nv'1 1 1\ns1 0 1\ns'1 0 2\nt 1 4\n");
}
