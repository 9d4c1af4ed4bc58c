#include <functional>

#include "doctest.h"

#include "semsnap/dataset.hpp"
#include "semsnap/error.hpp"

using namespace semsnap;

namespace {

const std::vector<ColumnSpec> kSchema = {
    {"size", ColumnType::Ordinal, {"small", "medium", "large"}},
    {"city", ColumnType::Nominal, {}},
    {"day", ColumnType::Temporal, {}},
    {"amount", ColumnType::Quantitative, {}},
};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("csv with quotes and extra columns") {
  const Dataset d = load_dataset(
      "city,size,extra,day,amount\n"
      "\"Paris, FR\",large,x,2021-01-02,10\n"
      "Oslo,small,y,2021-01-01,2.5\n"
      "\"Paris, FR\",small,z,2021-01-03,-4\n",
      kSchema);
  CHECK(d.row_count() == 3);
  CHECK(d.columns.size() == 4);
  CHECK_FALSE(d.column_index("extra").has_value());
  CHECK(group_keys(d, "city") == std::vector<std::string>{"Paris, FR", "Oslo"});
  CHECK(group_keys(d, "size") == std::vector<std::string>{"small", "large"});
  CHECK(group_keys(d, "day") == std::vector<std::string>{"2021-01-01", "2021-01-02", "2021-01-03"});

  const auto sums = group_aggregate(d, "city", FieldRef{"amount", Aggregate::Sum});
  CHECK(sums.values == std::vector<double>{6.0, 2.5});
  CHECK(group_aggregate(d, "city", FieldRef{"*", Aggregate::Count}).values == std::vector<double>{2.0, 1.0});
  CHECK(group_aggregate(d, "city", FieldRef{"amount", Aggregate::Min}).values == std::vector<double>{-4.0, 2.5});
  CHECK(group_aggregate(d, "city", FieldRef{"amount", Aggregate::Mean}).values == std::vector<double>{3.0, 2.5});
  CHECK(code_of([&] { group_aggregate(d, "city", FieldRef{"amount", Aggregate::None}); }) ==
        ErrorCode::NonScalarGroup);
  CHECK(code_of([&] { group_aggregate(d, "nope", FieldRef{"amount", Aggregate::Sum}); }) == ErrorCode::UnknownColumn);
  CHECK(code_of([&] { group_aggregate(d, "city", FieldRef{"city", Aggregate::Sum}); }) == ErrorCode::TypeError);
}

TEST_CASE("csv errors") {
  CHECK(code_of([] { load_dataset("city,size,day,amount\nx,small,2021-01-01,abc\n", kSchema); }) ==
        ErrorCode::TypeError);
  CHECK(code_of([] { load_dataset("city,size,day,amount\nx,huge,2021-01-01,1\n", kSchema); }) ==
        ErrorCode::TypeError);
  CHECK(code_of([] { load_dataset("city,size,day,amount\nx,small,yesterday,1\n", kSchema); }) ==
        ErrorCode::TypeError);
  CHECK(code_of([] { load_dataset("city,size,day\nx,small,2021-01-01\n", kSchema); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { load_dataset("city,size,day,amount\n\"x,small,2021-01-01,1\n", kSchema); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { load_dataset("city,size,day,amount\nx,small\n", kSchema); }) == ErrorCode::ParseError);
}

TEST_CASE("domain union") {
  CHECK(union_domain(QuantitativeDomain{0, 5}, QuantitativeDomain{-1, 3}) == DataDomain{QuantitativeDomain{-1, 5}});
  CHECK(union_domain(CategoricalDomain{{"a", "b"}}, CategoricalDomain{{"b", "c"}}) ==
        DataDomain{CategoricalDomain{{"a", "b", "c"}}});
  CHECK(code_of([] { union_domain(QuantitativeDomain{}, CategoricalDomain{}); }) == ErrorCode::VariantMismatch);
}
