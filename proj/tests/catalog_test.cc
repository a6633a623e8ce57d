#include "flexq/catalog.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "flexq/csv.h"
#include "flexq/error.h"
#include "test_support.h"

namespace flexq {
namespace {

using testing::fixture_catalog;
using testing::TempDir;

size_t count(const std::vector<std::string>& v, const std::string& x) {
  return static_cast<size_t>(std::count(v.begin(), v.end(), x));
}

TEST(CsvTest, QuotedFieldsAndLineEndings) {
  auto rows = parse_csv("\xEF\xBB\xBF" "a,b,c\r\n1,\"x, y\",\"say \"\"hi\"\"\"\r\n\n2,,\"multi\nline\"\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (CsvRow{"a", "b", "c"}));
  EXPECT_EQ(rows[1], (CsvRow{"1", "x, y", "say \"hi\""}));
  EXPECT_EQ(rows[2], (CsvRow{"2", "", "multi\nline"}));
}

TEST(CsvTest, UnterminatedQuoteIsMalformed) {
  EXPECT_THROW(parse_csv("a,b\n1,\"open\n"), Error);
}

TEST(CatalogTest, FixtureShape) {
  const SchemaCatalog& cat = fixture_catalog();
  ASSERT_EQ(cat.tables().size(), 3u);
  EXPECT_EQ(cat.table("orders").def.primary_key, "OrderID");
  EXPECT_EQ(cat.table("ORDERS").def.name, "orders");
  EXPECT_EQ(cat.table("suppliers").def.primary_key, "sno");
  EXPECT_EQ(cat.table("orderdetails").rows.size(), 20u);
}

TEST(CatalogTest, TablesWithField) {
  const SchemaCatalog& cat = fixture_catalog();
  EXPECT_EQ(cat.tables_with_field("OrderID"), (std::vector<std::string>{"orders", "orderdetails"}));
  EXPECT_EQ(cat.tables_with_field("orderid"), (std::vector<std::string>{"orders", "orderdetails"}));
  EXPECT_TRUE(cat.tables_with_field("nonexistent").empty());
  for (const auto& t : cat.tables()) {
    for (const auto& f : t.def.fields) {
      auto hits = cat.tables_with_field(f.name);
      EXPECT_NE(std::find(hits.begin(), hits.end(), t.def.name), hits.end());
    }
  }
}

TEST(CatalogTest, ValueSets) {
  const SchemaCatalog& cat = fixture_catalog();
  auto ids = cat.value_set("orders", "OrderID");
  for (const char* id : {"10329", "10351", "10353", "10360", "10372", "10417"}) {
    EXPECT_EQ(count(ids, id), 1u) << id;
  }
  auto cities = cat.value_set("suppliers", "city");
  EXPECT_EQ(count(cities, "London"), 2u);
  EXPECT_EQ(count(cities, "LONDON"), 2u);
  EXPECT_FALSE(cat.is_indexed("suppliers", "city"));
  EXPECT_TRUE(cat.is_indexed("suppliers", "sno"));

  try {
    cat.value_set("orders", "NoSuchField");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownField);
  }
  try {
    cat.value_set("nope", "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownTable);
  }
}

TEST(CatalogTest, PrimaryKeyIndexCardinalityEqualsRowCount) {
  for (const auto& t : fixture_catalog().tables()) {
    EXPECT_EQ(fixture_catalog().value_set(t.def.name, t.def.primary_key).size(), t.rows.size());
  }
}

TEST(CatalogTest, NumericCellsAreCanonical) {
  EXPECT_EQ(canonical_cell("0211.500", DType::kDecimal), "211.5");
  EXPECT_EQ(canonical_cell("131.70", DType::kDecimal), "131.7");
  EXPECT_EQ(canonical_cell("-0.0", DType::kDecimal), "0");
  EXPECT_EQ(canonical_cell("007", DType::kInteger), "7");
  EXPECT_EQ(canonical_cell("05487-020", DType::kText), "05487-020");
  EXPECT_EQ(canonical_cell("", DType::kInteger), "");
  EXPECT_THROW(canonical_cell("abc", DType::kInteger), Error);

  const Table& orders = fixture_catalog().table("orders");
  size_t freight = *orders.def.field_index("Freight");
  EXPECT_EQ(orders.rows[4][freight], "51.3");
}

class CatalogFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_.write("catalog.json", R"({"tables":[
      {"name":"orders","primaryKey":"OrderID","dataFile":"orders.csv",
       "fields":[{"name":"OrderID","dtype":"integer"},{"name":"status","dtype":"text"}]},
      {"name":"suppliers","primaryKey":"sno","dataFile":"suppliers.csv",
       "fields":[{"name":"sno","dtype":"text"}]}]})");
    dir_.write("orders.csv", "status,OrderID\nopen,1\nshipped,2\n");
    dir_.write("suppliers.csv", "SNO\nS1\n");
  }

  Error load_error() {
    try {
      load_catalog(dir_ / "catalog.json", dir_.path());
    } catch (const Error& e) {
      return e;
    }
    ADD_FAILURE() << "expected load to fail";
    return Error(ErrorKind::kIoFailure, "");
  }

  TempDir dir_;
};

TEST_F(CatalogFileTest, HeaderOrderAndCaseMayDiffer) {
  SchemaCatalog cat = load_catalog(dir_ / "catalog.json", dir_.path());
  const Table& orders = cat.table("orders");
  ASSERT_EQ(orders.rows.size(), 2u);
  EXPECT_EQ(orders.rows[0], (std::vector<std::string>{"1", "open"}));
}

TEST_F(CatalogFileTest, MissingDataFile) {
  std::filesystem::remove(dir_ / "suppliers.csv");
  Error e = load_error();
  EXPECT_EQ(e.kind(), ErrorKind::kFileMissing);
  EXPECT_NE(std::string(e.what()).find("suppliers.csv"), std::string::npos);
}

TEST_F(CatalogFileTest, HeaderMismatchNamesColumns) {
  dir_.write("orders.csv", "OrderID,priority\n1,high\n");
  Error e = load_error();
  EXPECT_EQ(e.kind(), ErrorKind::kHeaderMismatch);
  EXPECT_NE(std::string(e.what()).find("status"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("priority"), std::string::npos);
}

TEST_F(CatalogFileTest, DuplicateTable) {
  dir_.write("catalog.json", R"({"tables":[
      {"name":"suppliers","primaryKey":"sno","dataFile":"suppliers.csv","fields":[{"name":"sno","dtype":"text"}]},
      {"name":"Suppliers","primaryKey":"sno","dataFile":"suppliers.csv","fields":[{"name":"sno","dtype":"text"}]}]})");
  EXPECT_EQ(load_error().kind(), ErrorKind::kDuplicateTable);
}

TEST_F(CatalogFileTest, BadRowsAndKeys) {
  dir_.write("orders.csv", "OrderID,status\n1,open,extra\n");
  EXPECT_EQ(load_error().kind(), ErrorKind::kMalformedFormat);
  dir_.write("orders.csv", "OrderID,status\nx1,open\n");
  EXPECT_EQ(load_error().kind(), ErrorKind::kMalformedFormat);
  dir_.write("catalog.json", R"({"tables":[
      {"name":"suppliers","primaryKey":"id","dataFile":"suppliers.csv","fields":[{"name":"sno","dtype":"text"}]}]})");
  EXPECT_EQ(load_error().kind(), ErrorKind::kInvariantViolation);
  std::filesystem::remove(dir_ / "catalog.json");
  EXPECT_EQ(load_error().kind(), ErrorKind::kFileMissing);
}

}  // namespace
}  // namespace flexq
