#include "rydgate/error.hpp"
#include "rydgate/keyvalue.hpp"

#include <catch_amalgamated.hpp>

using namespace rydgate;

TEST_CASE("key-value documents keep sections, entries and table rows") {
    const auto doc = KeyValueDocument::parse(R"(top = 1
# comment
[species]
name = Rb87   # trailing comment
mass_amu = 86.9

[defects]
0  1/2  3.13  0.17
1  1/2  2.65  0.29
)");
    REQUIRE(doc.sections().size() == 3);
    CHECK(doc.section("").get("top") == "1");
    const auto& sp = doc.section("species");
    CHECK(sp.get("name") == "Rb87");
    CHECK(sp.get_double("mass_amu") == Catch::Approx(86.9));
    CHECK(sp.get_double("missing", 2.5) == 2.5);
    const auto& def = doc.section("defects");
    REQUIRE(def.rows.size() == 2);
    CHECK(def.rows[1].tokens == std::vector<std::string>{"1", "1/2", "2.65", "0.29"});
    CHECK(def.rows[1].line == 9);
}

TEST_CASE("malformed documents raise DataError with the line number") {
    CHECK_THROWS_AS(KeyValueDocument::parse("[a]\nx = 1\nx = 2\n"), DataError);
    CHECK_THROWS_WITH(KeyValueDocument::parse("[a]\nx = 1\nx = 2\n"), Catch::Matchers::ContainsSubstring("3"));
    CHECK_THROWS_AS(KeyValueDocument::parse("[unterminated\n"), DataError);
    const auto doc = KeyValueDocument::parse("[a]\nx = abc\n");
    CHECK_THROWS_AS(doc.section("a").get_double("x"), DataError);
    CHECK_THROWS_AS(doc.section("b"), DataError);
}

TEST_CASE("parse_double rejects garbage and non-finite values") {
    CHECK(parse_double("1.5e3") == 1500.0);
    CHECK(parse_double(" -2 ") == -2.0);
    CHECK_FALSE(parse_double("1.5x"));
    CHECK_FALSE(parse_double("nan"));
    CHECK_FALSE(parse_double("inf"));
    CHECK_FALSE(parse_double(""));
    CHECK(trim("  a b \t") == "a b");
}
