#include "avgent/errors.hpp"
#include "avgent/partition.hpp"

#include <doctest.h>

using namespace avgent;

TEST_CASE("factor lists parse and reject malformed text") {
    const auto f = FactorList::parse("2x3x5");
    CHECK(f.size() == 3);
    CHECK(f[1] == 3);
    CHECK(f.total() == 30);
    CHECK(f.to_string() == "2x3x5");
    CHECK(FactorList::parse("7").total() == 7);
    for (const char* bad : {"", "2x", "x3", "2xx3", "2x0", "a", "2x-3", "2.5", "2 x 3", "99999999999999999999999"})
        CHECK_THROWS_AS(FactorList::parse(bad), InvalidArgument);
    CHECK_THROWS_AS(FactorList(std::vector<std::uint64_t>{}), InvalidArgument);
}

TEST_CASE("totals beyond 64 bits stay exact") {
    const auto f = FactorList::parse("4294967296x4294967296x3");
    CHECK(f.total() == BigInt(3) * pow(BigInt(2), 64));
}

TEST_CASE("selectors") {
    const auto f = FactorList::parse("2x3x5");
    const auto s = Selector::parse(f, "2,0");
    CHECK(s.indices() == std::vector<std::size_t>{0, 2});
    CHECK(s.kept_dim() == 10);
    CHECK(s.complement_dim() == 3);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(s.to_string() == "0,2");
    CHECK(s.complement(f).indices() == std::vector<std::size_t>{1});
    CHECK(Selector::parse(f, "").empty());
    CHECK(Selector::parse(f, "").kept_dim() == 1);
    CHECK_THROWS_AS(Selector::parse(f, "3"), InvalidArgument);
    CHECK_THROWS_AS(Selector::parse(f, "0,0"), InvalidArgument);
    CHECK_THROWS_AS(Selector::parse(f, "0,,1"), InvalidArgument);
    CHECK_THROWS_AS(Selector::parse(f, "-1"), InvalidArgument);
}

TEST_CASE("unions and disjointness") {
    const auto f = FactorList::parse("2x2x4x3");
    const auto a = Selector::parse(f, "0");
    const auto b = Selector::parse(f, "2,3");
    CHECK(disjoint(a, b));
    CHECK(a.united(f, b).indices() == std::vector<std::size_t>{0, 2, 3});
    CHECK(a.united(f, b).kept_dim() == 24);
    CHECK_FALSE(disjoint(b, Selector::parse(f, "1,3")));
}

TEST_CASE("collection dimensions and min/max split") {
    const auto f  = FactorList::parse("2x3x5");
    const auto cd = collection_dims(f, Selector::parse(f, "1"));
    CHECK(cd.kept == 3);
    CHECK(cd.complement == 10);
    CHECK_THROWS_AS(min_max_split(BigInt(7), BigInt(30)), InvalidArgument);
    const auto s = min_max_split(BigInt(10), BigInt(30));
    CHECK(s.m == 3);
    CHECK(s.M == 10);
    const auto other = FactorList::parse("2x3");
    CHECK_THROWS_AS(collection_dims(other, Selector::parse(f, "2")), InvalidArgument);
}
