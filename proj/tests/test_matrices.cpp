#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "skac/io.hpp"
#include "skac/matrices.hpp"

using namespace skac;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("ModelParams validation") {
    CHECK_NOTHROW(ModelParams(1, 1, 0));
    CHECK_THROWS_AS(ModelParams(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(3, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(3, 1, -1), std::invalid_argument);
    const ModelParams p(4, 3, 5);
    CHECK(p.eta() == Rational(5, 3));
    CHECK(p.fill_probability() == Rational(3, 8));
}

TEST_CASE("generator instances") {
    const auto m1 = build_generator(ModelParams(1, 1, 1));
    CHECK(m1.diag() == R({-1, -1}));
    CHECK(m1.sub() == R({1}));
    CHECK(m1.super() == R({1}));

    const auto m2 = build_generator(ModelParams(2, 1, 2));
    CHECK(m2.diag() == R({-2, -3, -4}));
    CHECK(m2.sub() == R({2, 1}));
    CHECK(m2.super() == R({2, 4}));
    CHECK(m2.at(0, 2) == Rational(0));
    CHECK(m2.at(1, 0) == Rational(2));
    CHECK(m2.at(1, 2) == Rational(4));
}

TEST_CASE("generator columns sum to zero") {
    for (const Rational& s : column_sums(build_generator(ModelParams(5, 3, 7)))) CHECK(s.is_zero());
    std::mt19937_64 rng(7);
    for (long n = 1; n <= 40; ++n) {
        const ModelParams p(n, oracle::random_positive(rng), oracle::random_positive(rng));
        for (const Rational& s : column_sums(build_generator(p))) CHECK(s.is_zero());
    }
}

TEST_CASE("Sylvester-Kac instances") {
    const auto s1 = build_sylvester_kac(1);
    CHECK(s1.diag() == R({0, 0}));
    CHECK(s1.super() == R({1}));
    CHECK(s1.sub() == R({1}));

    const auto s3 = build_sylvester_kac(3);
    CHECK(s3.super() == R({1, 2, 3}));
    CHECK(s3.sub() == R({3, 2, 1}));

    const auto s3x2 = build_sylvester_kac(3, 2);
    CHECK(s3x2.super() == R({2, 4, 6}));
    CHECK(s3x2.sub() == R({6, 4, 2}));
    CHECK(s3x2 == scaled(s3, 2));
    for (long n = 1; n <= 12; ++n) {
        CHECK(build_sylvester_kac(n, Rational(-3, 7)) == scaled(build_sylvester_kac(n), Rational(-3, 7)));
    }
    CHECK_THROWS_AS(build_sylvester_kac(0), std::invalid_argument);
}

TEST_CASE("Krawtchouk instances") {
    const auto k1 = build_krawtchouk(Rational(1, 2), 1);
    CHECK(k1.diag() == R({Rational(-1, 2), Rational(-1, 2)}));
    CHECK(k1.sub() == R({Rational(1, 2)}));
    CHECK(k1.super() == R({Rational(1, 2)}));

    const auto k2 = build_krawtchouk(Rational(1, 3), 2);
    CHECK(k2.diag() == R({Rational(-2, 3), Rational(-1), Rational(-4, 3)}));
    CHECK(k2.sub() == R({Rational(2, 3), Rational(4, 3)}));
    CHECK(k2.super() == R({Rational(2, 3), Rational(1, 3)}));

    for (const Rational& p : {Rational(1, 3), Rational(1, 2), Rational(3, 4), Rational(2, 11)}) {
        for (long n = 1; n <= 15; ++n) {
            // trace = sum of the eigenvalues 0, -1, ..., -n
            CHECK(build_krawtchouk(p, n).trace() == Rational(-n * (n + 1), 2));
        }
    }
    CHECK_THROWS_AS(build_krawtchouk(Rational(0), 3), std::invalid_argument);
    CHECK_THROWS_AS(build_krawtchouk(Rational(1), 3), std::invalid_argument);
    CHECK_THROWS_AS(build_krawtchouk(Rational(3, 2), 3), std::invalid_argument);
}

TEST_CASE("matvec") {
    CHECK(matvec(build_sylvester_kac(1), R({1, 1})) == R({1, 1}));
    const auto m = build_generator(ModelParams(2, 1, 2));
    CHECK(matvec(m, R({4, 4, 1})) == R({0, 0, 0}));
    CHECK(matvec(m, R({1, -2, 1})) == R({-6, 12, -6}));
    CHECK_THROWS_AS(matvec(m, R({1, 1})), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (long order = 1; order <= 8; ++order) {
        const auto t = oracle::random_tridiagonal(rng, order);
        std::vector<Rational> v;
        for (long i = 0; i < order; ++i) v.push_back(oracle::random_rational(rng));
        const auto dense = oracle::to_dense(t);
        const auto got = matvec(t, v);
        for (long i = 0; i < order; ++i) {
            Rational acc;
            for (long j = 0; j < order; ++j) acc += dense[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
            CHECK(got[static_cast<size_t>(i)] == acc);
        }
    }
}

TEST_CASE("transpose") {
    std::mt19937_64 rng(5);
    const auto t = oracle::random_tridiagonal(rng, 6);
    CHECK(transpose(transpose(t)) == t);
    CHECK(transpose(build_sylvester_kac(4)).super() == R({4, 3, 2, 1}));
    CHECK(transpose(build_generator(ModelParams(4, Rational(1, 3), Rational(2, 3)))) ==
          build_krawtchouk(Rational(1, 3), 4));
    for (const Rational& p : {Rational(1, 3), Rational(1, 2), Rational(3, 4)}) {
        for (long n = 1; n <= 30; ++n) {
            CHECK(build_krawtchouk(p, n) == transpose(build_generator(ModelParams(n, p, Rational(1) - p))));
        }
    }
}

TEST_CASE("tridiagonal JSON round trip is exact") {
    const auto m = build_generator(ModelParams(2, 1, 2));
    const auto j = to_json(m);
    CHECK(j.at("order") == 3);
    CHECK(j.at("diag") == json({"-2/1", "-3/1", "-4/1"}));
    CHECK(j.at("super") == json({"2/1", "4/1"}));

    std::mt19937_64 rng(9);
    for (long order = 1; order <= 12; ++order) {
        const auto t = oracle::random_tridiagonal(rng, order);
        CHECK(tridiagonal_from_json(json::parse(to_json(t).dump())) == t);
    }
    CHECK_THROWS(tridiagonal_from_json(json{{"order", 2}, {"diag", {"1/1"}}, {"sub", json::array()}, {"super", json::array()}}));
    CHECK_THROWS(tridiagonal_from_json(json{{"diag", {"1/1", "2/1"}}, {"sub", json::array()}, {"super", {"1/1"}}}));
}

TEST_CASE("malformed band lengths are rejected") {
    CHECK_THROWS_AS(TridiagonalMatrix({}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(TridiagonalMatrix(R({1, 2}), R({1}), R({})), std::invalid_argument);
}
