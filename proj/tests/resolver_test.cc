#include "flexq/resolver.h"

#include <gtest/gtest.h>

#include <random>

#include "flexq/error.h"
#include "flexq/parser.h"
#include "oracles.h"
#include "test_support.h"

namespace flexq {
namespace {

const SchemaCatalog& cat() { return testing::fixture_catalog(); }
const Lexicon& lex() { return testing::fixture_lexicon(); }

std::vector<Token> words(std::initializer_list<const char*> ws) {
  std::vector<Token> out;
  for (const char* w : ws) out.push_back(make_token(w));
  return out;
}

Lexicon with_synonyms() {
  Lexicon l = lex();
  l.table_synonyms["suppliers"] = {"vendors", "vendor"};
  l.field_synonyms[{"orderdetails", "UnitPrice"}] = {"price", "cost"};
  l.field_synonyms[{"suppliers", "city"}] = {"town"};
  return l;
}

TEST(ResolveTableTest, ExactAndFuzzy) {
  EXPECT_EQ(resolve_table(words({"orders"}), cat(), lex()), (Binding{"orders", "orders", BindMethod::kExact, 0}));
  EXPECT_EQ(resolve_table(words({"Suppliers"}), cat(), lex()),
            (Binding{"Suppliers", "suppliers", BindMethod::kExact, 0}));
  EXPECT_EQ(resolve_table(words({"supplier"}), cat(), lex()),
            (Binding{"supplier", "suppliers", BindMethod::kFuzzy, 1}));
  EXPECT_EQ(resolve_table(words({"suplier"}), cat(), lex()),
            (Binding{"suplier", "suppliers", BindMethod::kFuzzy, 2}));
}

TEST(ResolveTableTest, Synonyms) {
  Lexicon l = with_synonyms();
  EXPECT_EQ(resolve_table(words({"vendors"}), cat(), l),
            (Binding{"vendors", "suppliers", BindMethod::kSemantic, 0}));
  // Exact beats a synonym appearing earlier in the display part.
  EXPECT_EQ(resolve_table(words({"vendor", "orders"}), cat(), l).bound, "orders");
}

TEST(ResolveTableTest, UnresolvableListsNearest) {
  try {
    resolve_table(words({"everything"}), cat(), lex());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnresolvableTable);
    EXPECT_FALSE(e.candidates().empty());
    for (size_t i = 1; i < e.candidates().size(); ++i) {
      EXPECT_LE(e.candidates()[i - 1].distance, e.candidates()[i].distance);
    }
  }
  EXPECT_THROW(resolve_table({}, cat(), lex()), Error);
}

TEST(ResolveTableTest, RespectsMaxDistance) {
  ResolverOptions strict;
  strict.max_distance = 1;
  EXPECT_THROW(resolve_table(words({"suplier"}), cat(), lex(), strict), Error);
  ResolverOptions off;
  off.max_distance = 0;
  EXPECT_THROW(resolve_table(words({"supplier"}), cat(), lex(), off), Error);
}

TEST(RelatedTablesTest, SharedPrimaryKey) {
  EXPECT_EQ(related_tables("orders", cat()), std::vector<std::string>{"orderdetails"});
  EXPECT_TRUE(related_tables("suppliers", cat()).empty());
  EXPECT_TRUE(related_tables("orderdetails", cat()).empty());
}

TEST(RefineTest, FixtureAndOrphan) {
  EXPECT_EQ(refine_by_values({"orderdetails"}, "orders", cat()), std::vector<std::string>{"orderdetails"});

  std::vector<Table> tables{
      oracle::make_table("orders", "OrderID", {{"OrderID", DType::kInteger}}, {{"1"}, {"2"}}),
      oracle::make_table("lines", "LineID", {{"LineID", DType::kInteger}, {"orderid", DType::kInteger}},
                         {{"1", "1"}, {"2", "99999"}}),
      oracle::make_table("notes", "NoteID", {{"NoteID", DType::kInteger}, {"OrderID", DType::kInteger}},
                         {{"1", "2"}})};
  SchemaCatalog c(std::move(tables));
  EXPECT_EQ(related_tables("orders", c), (std::vector<std::string>{"lines", "notes"}));
  EXPECT_EQ(refine_by_values({"lines", "notes"}, "orders", c), std::vector<std::string>{"notes"});
}

TEST(RefineTest, MatchesNaiveOracle) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    SchemaCatalog c = oracle::random_refine_catalog(rng, i % 10 == 0);
    auto related = related_tables("t0", c);
    EXPECT_EQ(refine_by_values(related, "t0", c), oracle::naive_refine(c, "t0")) << "catalog " << i;
  }
}

Condition cond(std::vector<std::string> phrase, CompareOp op, Literal lit) {
  return Condition{std::move(phrase), op, std::move(lit)};
}

TEST(ResolveFieldTest, ExactInRefinedTable) {
  Binding base{"orders", "orders", BindMethod::kExact, 0};
  auto m = resolve_field(cond({"unitprice"}, CompareOp::kGt, {"200", true}), base, {"orderdetails"}, cat(), lex());
  EXPECT_EQ(m, (FieldMatch{"orderdetails", {"unitprice", "UnitPrice", BindMethod::kExact, 0}}));
  auto two_words =
      resolve_field(cond({"unit", "price"}, CompareOp::kGt, {"200", true}), base, {"orderdetails"}, cat(), lex());
  EXPECT_EQ(two_words.field.bound, "UnitPrice");
  // Base table wins over refined on an exact match.
  auto both = resolve_field(cond({"OrderID"}, CompareOp::kEq, {"1", true}), base, {"orderdetails"}, cat(), lex());
  EXPECT_EQ(both.table, "orders");
}

TEST(ResolveFieldTest, ExactInBase) {
  Binding base{"suppliers", "suppliers", BindMethod::kExact, 0};
  EXPECT_EQ(resolve_field(cond({"city"}, CompareOp::kEq, {"London", false}), base, {}, cat(), lex()),
            (FieldMatch{"suppliers", {"city", "city", BindMethod::kExact, 0}}));
  EXPECT_EQ(resolve_field(cond({"citty"}, CompareOp::kEq, {"London", false}), base, {}, cat(), lex()),
            (FieldMatch{"suppliers", {"citty", "city", BindMethod::kFuzzy, 1}}));
}

TEST(ResolveFieldTest, SynonymAndUnresolvable) {
  Lexicon l = with_synonyms();
  Binding orders{"orders", "orders", BindMethod::kExact, 0};
  EXPECT_EQ(resolve_field(cond({"price"}, CompareOp::kGt, {"200", true}), orders, {"orderdetails"}, cat(), l),
            (FieldMatch{"orderdetails", {"price", "UnitPrice", BindMethod::kSemantic, 0}}));
  try {
    resolve_field(cond({"colour"}, CompareOp::kEq, {"red", false}), orders, {"orderdetails"}, cat(), lex());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnresolvableField);
  }
}

TEST(ResolveFieldTest, CrossTableFuzzyTieIsAmbiguous) {
  std::vector<Table> tables{
      oracle::make_table("a", "id", {{"id", DType::kInteger}, {"color", DType::kText}}, {{"1", "red"}}),
      oracle::make_table("b", "bid", {{"bid", DType::kInteger}, {"id", DType::kInteger}, {"colon", DType::kText}},
                         {{"1", "1", "x"}})};
  SchemaCatalog c(std::move(tables));
  Binding base{"a", "a", BindMethod::kExact, 0};
  try {
    rank_fields(cond({"colox"}, CompareOp::kEq, {"x", false}), base, {"b"}, c, lex());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAmbiguousField);
    EXPECT_EQ(e.candidates().size(), 2u);
  }
}

TEST(ResolveTest, GoldenA) {
  QueryIR ir = parse("List orders details where unitprice should be greater than 200", lex());
  ResolvedQuery rq = resolve(ir, cat(), lex());
  EXPECT_EQ(rq.base_table.bound, "orders");
  EXPECT_EQ(rq.join_tables, (std::vector<JoinTable>{{"orderdetails", "OrderID"}}));
  ASSERT_EQ(rq.conditions.size(), 1u);
  EXPECT_EQ(rq.conditions[0].table, "orderdetails");
  EXPECT_EQ(rq.conditions[0].field.bound, "UnitPrice");
  EXPECT_EQ(rq.conditions[0].op, CompareOp::kGt);
  std::vector<std::string> stages;
  for (const auto& s : rq.trace) stages.push_back(s.stage);
  EXPECT_EQ(stages, (std::vector<std::string>{"table", "related", "refine", "field", "join"}));
}

TEST(ResolveTest, GoldenBAndTypo) {
  QueryIR ir = parse("List supplier details where city is equal to London.", lex());
  ResolvedQuery rq = resolve(ir, cat(), lex());
  EXPECT_EQ(rq.base_table, (Binding{"supplier", "suppliers", BindMethod::kFuzzy, 1}));
  EXPECT_TRUE(rq.join_tables.empty());
  EXPECT_EQ(rq.conditions[0].table, "suppliers");
  EXPECT_EQ(rq.conditions[0].field.bound, "city");

  ResolvedQuery typo = resolve(parse("List suplier details where city is equal to London", lex()), cat(), lex());
  EXPECT_EQ(typo.base_table, (Binding{"suplier", "suppliers", BindMethod::kFuzzy, 2}));
  EXPECT_NE(typo.trace[0].outcome.find("distance 2"), std::string::npos);
}

TEST(ResolveTest, NoConditionsSelectsWholeTable) {
  ResolvedQuery rq = resolve(parse("show suppliers", lex()), cat(), lex());
  EXPECT_EQ(rq.base_table.bound, "suppliers");
  EXPECT_TRUE(rq.conditions.empty());
  EXPECT_TRUE(rq.join_tables.empty());
}

TEST(ResolveTest, AcceptPredicateSkipsRejected) {
  QueryIR ir = parse("List orders details where unitprice should be greater than 200", lex());
  ResolverOptions opts;
  int offered = 0;
  opts.accept = [&](const ResolvedQuery&) {
    ++offered;
    return false;
  };
  try {
    resolve(ir, cat(), lex(), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoAlternative);
  }
  EXPECT_GE(offered, 1);
}

TEST(ResolveTest, DeterministicAcrossRuns) {
  QueryIR ir = parse("List orders details where unitprice should be greater than 200", lex());
  EXPECT_EQ(resolve(ir, cat(), lex()), resolve(ir, cat(), lex()));
}

TEST(BindMethodTest, RoundTrip) {
  for (auto m : {BindMethod::kExact, BindMethod::kSemantic, BindMethod::kFuzzy}) {
    EXPECT_EQ(parse_bind_method(bind_method_name(m)), m);
  }
}

}  // namespace
}  // namespace flexq
