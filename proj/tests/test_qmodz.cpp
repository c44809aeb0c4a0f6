#include <doctest.h>

#include <random>

#include "anomalia/qmodz.hpp"

using anomalia::InvalidInputError;
using anomalia::QmodZ;

TEST_CASE("canonical representative") {
    CHECK(QmodZ(3, 6) == QmodZ(1, 2));
    CHECK(QmodZ(-1, 3) == QmodZ(2, 3));
    CHECK(QmodZ(7, 3) == QmodZ(1, 3));
    CHECK(QmodZ(4, -6) == QmodZ(1, 3));
    CHECK(QmodZ(9, 9).is_zero());
    CHECK(QmodZ(0, 5) == QmodZ::zero());
    CHECK_THROWS_AS(QmodZ(1, 0), InvalidInputError);
}

TEST_CASE("arithmetic is exact and closed") {
    CHECK(QmodZ(1, 3) + QmodZ(2, 3) == QmodZ::zero());
    CHECK(QmodZ(1, 4) + QmodZ(1, 6) == QmodZ(5, 12));
    CHECK(-QmodZ(1, 9) == QmodZ(8, 9));
    CHECK(QmodZ(1, 9).scaled(16) == QmodZ(7, 9));
    CHECK(QmodZ(1, 9).scaled(-1) == QmodZ(8, 9));
    CHECK(QmodZ(1, 2).scaled(2).is_zero());
}

TEST_CASE("string round trip") {
    CHECK(QmodZ(5, 12).str() == "5/12");
    CHECK(QmodZ::zero().str() == "0");
    CHECK(QmodZ::parse("5/12") == QmodZ(5, 12));
    CHECK(QmodZ::parse("0") == QmodZ::zero());
    CHECK(QmodZ::parse("-1/3") == QmodZ(2, 3));
    CHECK(QmodZ::parse("7") == QmodZ::zero());
    CHECK_THROWS_AS(QmodZ::parse(""), InvalidInputError);
    CHECK_THROWS_AS(QmodZ::parse("a/b"), InvalidInputError);
    CHECK_THROWS_AS(QmodZ::parse("1/"), InvalidInputError);
    CHECK_THROWS_AS(QmodZ::parse("1/0"), InvalidInputError);
}

TEST_CASE("group laws on random residues") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 40);
    for (int i = 0; i < 2000; ++i) {
        const QmodZ a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a + (-a)).is_zero());
        CHECK(a.scaled(3) == a + a + a);
        CHECK(a.num() >= 0);
        CHECK(a.num() < a.den());
    }
}

TEST_CASE("ordering is by representative value") {
    CHECK(QmodZ(1, 3) < QmodZ(1, 2));
    CHECK(QmodZ::zero() < QmodZ(1, 100));
    CHECK_FALSE(QmodZ(2, 3) < QmodZ(2, 3));
}
