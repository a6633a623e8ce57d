#include "flexq/executor.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "flexq/error.h"
#include "flexq/parser.h"
#include "oracles.h"
#include "test_support.h"

namespace flexq {
namespace {

const SchemaCatalog& cat() { return testing::fixture_catalog(); }
const Lexicon& lex() { return testing::fixture_lexicon(); }

ResolvedQuery rq_for(std::string_view q) { return resolve(parse(q, lex()), cat(), lex()); }

CellValue num(const char* s) { return CellValue::from_number_text(s); }
CellValue txt(const char* s) { return CellValue::from_text(s); }

TEST(CompareTest, Numbers) {
  EXPECT_TRUE(compare(num("211"), CompareOp::kGt, num("200")));
  EXPECT_FALSE(compare(num("200"), CompareOp::kGt, num("200")));
  EXPECT_TRUE(compare(num("200"), CompareOp::kGte, num("200.0")));
  EXPECT_TRUE(compare(num("-1.5"), CompareOp::kLt, num("0")));
  EXPECT_TRUE(compare(num("3"), CompareOp::kNeq, num("4")));
  // Numeric-looking text compares as a number.
  EXPECT_TRUE(compare(txt("10"), CompareOp::kGt, num("9")));
}

TEST(CompareTest, TextAndNull) {
  EXPECT_TRUE(compare(txt("LONDON"), CompareOp::kEq, txt("London")));
  EXPECT_FALSE(compare(txt("Londonderry"), CompareOp::kEq, txt("London")));
  EXPECT_TRUE(compare(txt("Paris"), CompareOp::kNeq, txt("London")));
  EXPECT_THROW(compare(txt("Paris"), CompareOp::kGt, txt("London")), Error);
  try {
    compare(txt("abc"), CompareOp::kLt, num("3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTypeMismatch);
  }
  for (auto op : {CompareOp::kEq, CompareOp::kNeq, CompareOp::kGt, CompareOp::kLt, CompareOp::kGte,
                  CompareOp::kLte}) {
    EXPECT_FALSE(compare(CellValue::null(), op, num("1")));
    EXPECT_FALSE(compare(num("1"), op, CellValue::null()));
  }
}

TEST(CellValueTest, Factories) {
  EXPECT_EQ(CellValue::from_cell("", DType::kInteger).kind, CellValue::Kind::kNull);
  EXPECT_EQ(CellValue::from_cell("", DType::kText).kind, CellValue::Kind::kNull);
  EXPECT_EQ(CellValue::from_cell("51.3", DType::kDecimal).number, 51.3);
  EXPECT_EQ(CellValue::from_cell("10", DType::kText).kind, CellValue::Kind::kText);
  EXPECT_EQ(CellValue::from_literal({"200", true}).kind, CellValue::Kind::kNumber);
  EXPECT_EQ(CellValue::from_literal({"200", false}).kind, CellValue::Kind::kText);
}

TEST(ExecuteTest, GoldenA) {
  auto start = std::chrono::steady_clock::now();
  ResultSet rs = execute(rq_for("List orders details where unitprice should be greater than 200"), cat());
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  EXPECT_LT(ms.count(), 100);
  ASSERT_EQ(rs.row_count, 6u);
  ASSERT_EQ(rs.rows.size(), 6u);
  EXPECT_EQ(rs.columns.size(), 14u + 6u);
  EXPECT_EQ(rs.columns[0], (ResultColumn{"orders", "OrderID"}));
  EXPECT_EQ(rs.columns[14], (ResultColumn{"orderdetails", "DetailID"}));
  std::vector<std::string> ids;
  for (const auto& row : rs.rows) {
    ids.push_back(row[0].text);
    EXPECT_EQ(row[17].text, "211");
  }
  EXPECT_EQ(ids, (std::vector<std::string>{"10329", "10351", "10353", "10360", "10372", "10417"}));
}

TEST(ExecuteTest, GoldenB) {
  ResultSet rs = execute(rq_for("List supplier details where city is equal to London."), cat());
  std::vector<std::string> snos, cities;
  for (const auto& row : rs.rows) {
    snos.push_back(row[0].text);
    cities.push_back(row[2].text);
  }
  EXPECT_EQ(snos, (std::vector<std::string>{"S1", "S10", "S4", "S5"}));
  EXPECT_EQ(std::set<std::string>(cities.begin(), cities.end()), (std::set<std::string>{"London", "LONDON"}));
}

TEST(ExecuteTest, EmptyAndBoundary) {
  EXPECT_EQ(execute(rq_for("List orders where unitprice > 999999"), cat()).row_count, 0u);
  // The 200 line is excluded by > and included by >=.
  auto gt = execute(rq_for("List orders where unitprice > 200"), cat()).row_count;
  auto gte = execute(rq_for("List orders where unitprice at least 200"), cat()).row_count;
  EXPECT_EQ(gte, gt + 1);
  EXPECT_EQ(execute(rq_for("show suppliers"), cat()).row_count, 10u);
  EXPECT_THROW(execute(rq_for("suppliers where city greater than 'London'"), cat()), Error);
}

TEST(ExecuteTest, FixtureMatchesNaiveOracle) {
  for (const char* q : {"List orders details where unitprice should be greater than 200",
                        "List supplier details where city is equal to London.", "orders where freight > 50",
                        "orders where quantity at most 10 and unitprice less than 100", "show orders",
                        "suppliers where status at least 20"}) {
    ResolvedQuery rq = rq_for(q);
    auto got = oracle::rows_as_text(execute(rq, cat()));
    auto want = oracle::naive_execute(rq, cat());
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << q;
  }
}

TEST(ExecuteTest, RandomJoinsMatchNaiveOracle) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    auto c = oracle::random_join_case(rng);
    auto got = oracle::rows_as_text(execute(c.query, c.catalog));
    auto want = oracle::naive_execute(c.query, c.catalog);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << "case " << i;
  }
}

// Adding a condition never grows the result.
TEST(ExecuteTest, ConditionsAreMonotone) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto c = oracle::random_join_case(rng);
    ResolvedQuery fewer = c.query;
    fewer.conditions.pop_back();
    EXPECT_LE(execute(c.query, c.catalog).row_count, execute(fewer, c.catalog).row_count);
  }
}

}  // namespace
}  // namespace flexq
