#include <doctest.h>

#include "opal/matrix.hpp"
#include "opal/rational.hpp"

using namespace opal;

namespace {

// deterministic xorshift for property tests
struct Rng {
    uint64_t s = 0x9e3779b97f4a7c15ULL;
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long pick(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Rational rat() {
        long n = pick(-6, 6);
        long d = pick(1, 4);
        return Rational(BigInt(n), BigInt(d));
    }
};

Matrix from_rows(const std::vector<std::vector<long>>& rows) {
    Matrix m(static_cast<long>(rows.size()), static_cast<long>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<long>(i), static_cast<long>(j)) = Rational(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("bigint arithmetic against 64-bit reference") {
    Rng rng;
    for (int it = 0; it < 500; ++it) {
        long long a = static_cast<long long>(rng.next() % 2000001) - 1000000;
        long long b = static_cast<long long>(rng.next() % 2000001) - 1000000;
        BigInt A(a), B(b);
        CHECK((A + B).to_string() == std::to_string(a + b));
        CHECK((A - B).to_string() == std::to_string(a - b));
        CHECK((A * B).to_string() == std::to_string(a * b));
        if (b != 0) {
            CHECK((A / B).to_string() == std::to_string(a / b));
            CHECK((A % B).to_string() == std::to_string(a % b));
        }
    }
}

TEST_CASE("bigint handles values past 64 bits") {
    BigInt big = BigInt::parse("123456789012345678901234567890");
    BigInt ten18 = BigInt::parse("1000000000000000000");
    CHECK((big / ten18).to_string() == "123456789012");
    CHECK((big % ten18).to_string() == "345678901234567890");
    CHECK((big * big).to_string() ==
          "15241578753238836750495351562536198787501905199875019052100");
    CHECK(BigInt::gcd(BigInt(48), BigInt(-18)).to_string() == "6");
}

TEST_CASE("rational normalization and parse") {
    CHECK(Rational::parse("4/6") == Rational(BigInt(2), BigInt(3)));
    CHECK(Rational::parse("-4/6").to_string() == "-2/3");
    CHECK(Rational::parse("3/-9").to_string() == "-1/3");
    CHECK(Rational::parse("7").to_string() == "7");
    CHECK(Rational::parse("0/5").to_string() == "0");
    CHECK_THROWS_AS(Rational::parse("1/0"), input_error);
    Rational x = Rational::parse("1/2") + Rational::parse("1/3");
    CHECK(x.to_string() == "5/6");
    CHECK((Rational(3) / Rational(4) * Rational(4)).to_string() == "3");
}

TEST_CASE("rref identity and zero cases") {
    Matrix id = Matrix::identity(2);
    RrefResult r = rref(id);
    CHECK(r.r == id);
    CHECK(r.pivots == std::vector<long>{0, 1});

    Matrix z(3, 3);
    RrefResult rz = rref(z);
    CHECK(rz.r == z);
    CHECK(rz.pivots.empty());
}

TEST_CASE("rref hand oracle for rank-1 matrix") {
    Matrix m = from_rows({{1, 2}, {2, 4}});
    RrefResult r = rref(m);
    CHECK(r.r == from_rows({{1, 2}, {0, 0}}));
    CHECK(r.pivots == std::vector<long>{0});
}

TEST_CASE("rref is idempotent") {
    Rng rng;
    for (int it = 0; it < 40; ++it) {
        long rows = rng.pick(1, 6), cols = rng.pick(1, 6);
        Matrix m(rows, cols);
        for (auto& x : m.a) x = rng.rat();
        Matrix r = rref(m).r;
        CHECK(rref(r).r == r);
    }
}

TEST_CASE("nullspace basic cases") {
    CHECK(nullspace(Matrix::identity(4)).cols == 0);

    Matrix z(2, 3);
    Matrix nz = nullspace(z);
    CHECK(nz.cols == 3);
    CHECK(nz == Matrix::identity(3));

    Matrix m = from_rows({{1, 1, 0}});
    Matrix n = nullspace(m);
    CHECK(n.cols == 2);
    for (long k = 0; k < n.cols; ++k) CHECK(vec_is_zero(m.apply(n.col(k))));
}

TEST_CASE("rank-nullity on random rational matrices up to 12x12") {
    Rng rng;
    for (int it = 0; it < 60; ++it) {
        long rows = rng.pick(1, 12), cols = rng.pick(1, 12);
        Matrix m(rows, cols);
        for (auto& x : m.a) {
            // mix of zero and rational entries
            x = (rng.next() % 3 == 0) ? Rational(0) : rng.rat();
        }
        Matrix ns = nullspace(m);
        CHECK(rank(m) + ns.cols == cols);
        for (long k = 0; k < ns.cols; ++k) CHECK(vec_is_zero(m.apply(ns.col(k))));
    }
}

TEST_CASE("solve identity, zero, and scalar cases") {
    Matrix id = Matrix::identity(3);
    Vec b = {Rational(5), Rational(-1), Rational::parse("2/7")};
    auto x = solve(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix z(2, 2);
    CHECK_FALSE(solve(z, Vec{Rational(1), Rational(0)}).has_value());
    auto xz = solve(z, Vec{Rational(0), Rational(0)});
    REQUIRE(xz.has_value());
    CHECK(vec_is_zero(*xz));

    Matrix two = from_rows({{2}});
    auto half = solve(two, Vec{Rational(1)});
    REQUIRE(half.has_value());
    CHECK((*half)[0] == Rational::parse("1/2"));
}

TEST_CASE("solve soundness on random systems") {
    Rng rng;
    for (int it = 0; it < 40; ++it) {
        long rows = rng.pick(1, 8), cols = rng.pick(1, 8);
        Matrix m(rows, cols);
        for (auto& x : m.a) x = (rng.next() % 2 == 0) ? Rational(0) : rng.rat();
        Vec b(rows);
        for (auto& x : b) x = rng.rat();
        auto sol = solve(m, b);
        if (sol.has_value()) CHECK(m.apply(*sol) == b);
        // rhs in the column space must always solve
        Vec y(cols);
        for (auto& x : y) x = rng.rat();
        Vec b2 = m.apply(y);
        auto sol2 = solve(m, b2);
        REQUIRE(sol2.has_value());
        CHECK(m.apply(*sol2) == b2);
    }
}

TEST_CASE("linear solver matches one-shot solve across many rhs") {
    Matrix m = from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    LinearSolver ls(m);
    CHECK(ls.rank() == 2);
    Rng rng;
    for (int it = 0; it < 30; ++it) {
        Vec b(3);
        for (auto& x : b) x = rng.rat();
        auto a = ls.solve(b);
        auto bref = solve(m, b);
        CHECK(a.has_value() == bref.has_value());
        if (a) CHECK(m.apply(*a) == b);
    }
}
