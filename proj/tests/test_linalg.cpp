#include "ocs/linalg.hpp"
#include "ocs/rational.hpp"

#include <doctest.h>

#include <random>

using namespace ocs;

namespace {

Rat q(long n, long d = 1) { return Rat(Int(n), Int(d)); }

RVec rnd_vec(std::mt19937_64& rng, std::size_t dim, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    RVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = q(d(rng));
    return v;
}

}  // namespace

TEST_CASE("rational parse and serialize round-trip") {
    CHECK(parse_rat("-3/7") == q(-3, 7));
    CHECK(parse_rat("42") == q(42));
    CHECK(parse_rat("-4/6") == q(-2, 3));
    CHECK(rat_str(parse_rat("-4/6")) == "-2/3");
    CHECK(rat_str(q(5)) == "5");
    CHECK(parse_rat("2/-4") == q(-1, 2));
    CHECK_THROWS_AS(parse_rat("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rat("0.5"), parse_error);
    CHECK_THROWS_AS(parse_rat("x"), parse_error);
}

TEST_CASE("rational arithmetic stays canonical") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    for (int i = 0; i < 200; ++i) {
        Rat a = q(num(rng), den(rng)), b = q(num(rng), den(rng));
        for (Rat r : {Rat(a + b), Rat(a * b), Rat(a - b)}) {
            CHECK(denominator(r) > 0);
            CHECK(boost::multiprecision::gcd(Int(abs(numerator(r))), denominator(r)) == 1);
        }
    }
}

TEST_CASE("solve_linear identity and inconsistent cases") {
    RMat I{{q(1), q(0)}, {q(0), q(1)}};
    auto x = solve_linear(I, RVec{q(3), q(-2)});
    REQUIRE(x);
    CHECK(*x == RVec{q(3), q(-2)});

    RMat singular{{q(1), q(1)}, {q(2), q(2)}};
    CHECK(!solve_linear(singular, RVec{q(1), q(3)}));
}

TEST_CASE("solve_linear 2x2 elimination") {
    RMat A{{q(2), q(1)}, {q(1), q(3)}};
    auto x = solve_linear(A, RVec{q(5), q(10)});
    REQUIRE(x);
    CHECK(*x == RVec{q(1), q(3)});
}

TEST_CASE("null_space basics") {
    RMat I{{q(1), q(0)}, {q(0), q(1)}};
    CHECK(null_space(I).nrows() == 0);

    RMat proj{{q(1), q(0)}};
    RMat n1 = null_space(proj);
    REQUIRE(n1.nrows() == 1);
    CHECK(n1.row(0) == RVec{q(0), q(1)});

    RMat ones{{q(1), q(1), q(1)}};
    RMat n2 = null_space(ones);
    REQUIRE(n2.nrows() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(dot(ones.row(0), n2.row(i)) == 0);
    RMat both(0, 3);
    both.append_row(n2.row(0));
    both.append_row(n2.row(1));
    CHECK(rank(both) == 2);
}

TEST_CASE("rank examples") {
    RMat I3{{q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}};
    CHECK(rank(I3) == 3);
    CHECK(rank(RMat{{q(1), q(2)}, {q(2), q(4)}}) == 1);
    CHECK(rank(RMat{{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}}) == 2);
}

TEST_CASE("solve/null_space/rank properties on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dims(1, 5);
    for (int it = 0; it < 60; ++it) {
        std::size_t m = dims(rng), n = dims(rng);
        RMat A(0, n);
        for (std::size_t i = 0; i < m; ++i) A.append_row(rnd_vec(rng, n));

        RMat N = null_space(A);
        CHECK(rank(A) + N.nrows() == n);
        for (std::size_t i = 0; i < N.nrows(); ++i) {
            RVec Ax = A.mul(N.row(i));
            CHECK(Ax.is_zero());
        }

        // A consistent rhs must be solved exactly.
        RVec xs = rnd_vec(rng, n);
        RVec b = A.mul(xs);
        auto sol = solve_linear(A, b);
        REQUIRE(sol);
        CHECK(A.mul(*sol) == b);
    }
}

TEST_CASE("primitive scaling") {
    RVec v{q(2, 3), q(-4, 3), q(2)};
    CHECK(v.primitive() == RVec{q(1), q(-2), q(3)});
    CHECK((-v).primitive(true) == RVec{q(1), q(-2), q(3)});
    CHECK(RVec{q(0), q(0)}.primitive() == RVec{q(0), q(0)});
}
