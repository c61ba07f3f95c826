#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "interlevel/sparse_matrix.hpp"

using namespace interlevel;

namespace {

SparseMatrix from_ints(FieldId f, int rows, int cols, const std::vector<std::vector<long long>>& a) {
    SparseMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (a[i][j] != 0) m.set(i, j, Scalar(f, a[i][j]));
    return m;
}

SparseMatrix random_matrix(FieldId f, int rows, int cols, std::mt19937_64& rng) {
    SparseMatrix m(f, rows, cols);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (keep(rng) < 0.55) m.set(i, j, Scalar(f, val(rng)));
    return m;
}

std::vector<int> natural(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact over F_p and Q") {
    auto f5 = FieldId::prime(5);
    Scalar a(f5, 3), b(f5, 4);
    REQUIRE((a + b) == Scalar(f5, 2));
    REQUIRE((a * b) == Scalar(f5, 2));
    REQUIRE((a.inverse() * a) == Scalar::one(f5));

    auto q = FieldId::rationals();
    Scalar x(q, rat(1, 3)), y(q, rat(1, 6));
    REQUIRE((x + y) == Scalar(q, rat(1, 2)));
    REQUIRE((x / y) == Scalar(q, 2));

    REQUIRE_THROWS_AS(Scalar(f5, 1) + Scalar(q, 1), FieldMismatchError);
    REQUIRE_THROWS_AS(FieldId::prime(6), std::invalid_argument);
}

TEST_CASE("rank on the spec examples") {
    auto f2 = FieldId::prime(2);
    REQUIRE(SparseMatrix::identity(f2, 2).rank() == 2);
    REQUIRE(SparseMatrix(f2, 3, 4).rank() == 0);
    REQUIRE(from_ints(f2, 2, 2, {{1, 1}, {1, 1}}).rank() == 1);
}

TEST_CASE("solve_in_span on the spec examples") {
    auto q = FieldId::rationals();
    auto id2 = SparseMatrix::identity(q, 2);
    auto sol = id2.solve_in_span({Scalar(q, 1), Scalar(q, 0)});
    REQUIRE(sol.has_value());
    REQUIRE((*sol)[0] == Scalar(q, 1));
    REQUIRE((*sol)[1] == Scalar(q, 0));

    SparseMatrix zero_col(q, 1, 1);
    REQUIRE_FALSE(zero_col.solve_in_span({Scalar(q, 1)}).has_value());

    auto f2 = FieldId::prime(2);
    auto m = from_ints(f2, 2, 1, {{1}, {1}});
    auto s = m.solve_in_span({Scalar(f2, 1), Scalar(f2, 1)});
    REQUIRE(s.has_value());
    REQUIRE((*s)[0] == Scalar(f2, 1));

    REQUIRE_THROWS_AS(id2.solve_in_span({Scalar(q, 1)}), ShapeError);
}

TEST_CASE("column_reduce contract on small cases") {
    auto f2 = FieldId::prime(2);
    auto id2 = SparseMatrix::identity(f2, 2);
    auto red = id2.column_reduce(natural(2), natural(2));
    REQUIRE(red.pivots.size() == 2);
    REQUIRE(red.basis == SparseMatrix::identity(f2, 2));

    // Two equal columns: the second reduces to zero.
    auto m = from_ints(f2, 2, 2, {{1, 1}, {1, 1}});
    auto r2 = m.column_reduce(natural(2), natural(2));
    REQUIRE(r2.pivots.size() == 1);
    REQUIRE(r2.reduced.column(1).empty());
    REQUIRE((m * r2.basis) == r2.reduced);
}

TEST_CASE("column_reduce properties on random matrices") {
    std::mt19937_64 rng(20240811);
    for (auto p : {2u, 3u, 5u}) {
        auto f = FieldId::prime(p);
        for (int trial = 0; trial < 25; ++trial) {
            int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
            auto m = random_matrix(f, rows, cols, rng);
            auto red = m.column_reduce(natural(cols), natural(rows));
            REQUIRE((m * red.basis) == red.reduced);
            // change of basis is unit upper-triangular in the natural column order
            for (int j = 0; j < cols; ++j) {
                REQUIRE(red.basis.at(j, j) == Scalar::one(f));
                for (const auto& [r, v] : red.basis.column(j)) REQUIRE(r <= j);
            }
            // distinct pivots, each the maximal nonzero row of its column
            std::vector<bool> seen(rows, false);
            int nonzero = 0;
            for (int j = 0; j < cols; ++j)
                if (!red.reduced.column(j).empty()) ++nonzero;
            for (const auto& [r, c] : red.pivots) {
                REQUIRE_FALSE(seen[r]);
                seen[r] = true;
                REQUIRE(red.reduced.column(c).back().first == r);
            }
            REQUIRE(static_cast<int>(red.pivots.size()) == nonzero);
            REQUIRE(nonzero == m.rank());
            REQUIRE(m.rank() == m.transpose().rank());
        }
    }
}

TEST_CASE("solve_in_span is consistent with membership on random systems") {
    std::mt19937_64 rng(7);
    auto f3 = FieldId::prime(3);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 5), cols = 1 + static_cast<int>(rng() % 5);
        auto m = random_matrix(f3, rows, cols, rng);
        std::vector<Scalar> x;
        for (int j = 0; j < cols; ++j) x.push_back(Scalar(f3, static_cast<long long>(rng() % 3)));
        auto b = m.apply(x);
        auto sol = m.solve_in_span(b);
        REQUIRE(sol.has_value());
        REQUIRE(m.apply(*sol) == b);
    }
}
