#include <catch2/catch_amalgamated.hpp>

#include "interlevel/level.hpp"

using namespace interlevel;

TEST_CASE("level comparisons: rational fast paths") {
    LevelOps ops(Phi::arctan(rat(2)));
    REQUIRE(ops.less(Level(rat(-1)), Level(rat(0))));
    REQUIRE(ops.equal(Level(rat(1, 2)), Level(rat(1, 2))));
    REQUIRE(ops.less(Level(rat(0), rat(-1)), Level(rat(0), rat(1))));
}

TEST_CASE("level comparisons across bases and shifts") {
    LevelOps ops(Phi::arctan(rat(2)));
    // xi(1) = tan(pi/4) = 1, so level 1 equals level 0 shifted by +1 in xi space.
    REQUIRE(ops.equal(Level(rat(1)), Level(rat(0), rat(1))));
    REQUIRE(ops.less(Level(rat(0), rat(99, 100)), Level(rat(1))));
    REQUIRE(ops.less(Level(rat(1)), Level(rat(0), rat(101, 100))));
    // irrational xi values: tan(pi/8) ~ 0.414
    REQUIRE(ops.less(Level(rat(0), rat(2, 5)), Level(rat(1, 2))));
    REQUIRE(ops.less(Level(rat(1, 2)), Level(rat(0), rat(21, 50))));
}

TEST_CASE("ends compare as infinities and are flow-fixed") {
    LevelOps ops(Phi::arctan(rat(2)));
    Level top(rat(2)), bottom(rat(-2));
    REQUIRE(ops.at_pos_end(top));
    REQUIRE(ops.less(Level(rat(199, 100)), top));
    REQUIRE(ops.less(bottom, Level(rat(-199, 100))));
    REQUIRE(ops.rho(rat(5), top) == top);
    REQUIRE(ops.rho(rat(-5), bottom) == bottom);
}

TEST_CASE("flow is exact translation in xi coordinates") {
    LevelOps ops(Phi::arctan(rat(2)));
    Level l(rat(1, 3));
    auto moved = ops.rho(rat(1, 7), ops.rho(rat(2, 7), l));
    REQUIRE(moved == ops.rho(rat(3, 7), l));
    REQUIRE(ops.equal(moved, Level(rat(1, 3), rat(3, 7))));
}

TEST_CASE("linear test homeomorphism is exact everywhere") {
    LevelOps ops(Phi::linear(rat(2)));
    REQUIRE(ops.equal(Level(rat(1, 2), rat(1, 2)), Level(rat(1))));
    REQUIRE(ops.less(Level(rat(1, 3)), Level(rat(1, 3), rat(1, 1000000))));
}
