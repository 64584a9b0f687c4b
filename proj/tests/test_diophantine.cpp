#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bohrboard/diophantine.hpp"
#include "bohrboard/rational.hpp"

using namespace bohrboard;

namespace {

// Deterministic random rationals for the property tests.
struct RationalGen {
    std::mt19937_64 rng;
    explicit RationalGen(std::uint64_t seed) : rng(seed) {}
    Rational operator()(std::int64_t max_num = 1000, std::int64_t max_den = 1000) {
        std::uniform_int_distribution<std::int64_t> num(-max_num, max_num);
        std::uniform_int_distribution<std::int64_t> den(1, max_den);
        return Rational(num(rng), den(rng));
    }
};

// Direct continued-fraction evaluation (bottom-up), as an independent route
// against the forward recurrence.
Rational evaluate_cf(const std::vector<Int>& pq, std::size_t len) {
    Rational value(pq[len - 1]);
    for (std::size_t i = len - 1; i-- > 0;) {
        value = Rational(pq[i]) + 1 / value;
    }
    return value;
}

}  // namespace

TEST_CASE("torus_norm on hand-checked points") {
    CHECK(torus_norm(Rational(0)) == 0);
    CHECK(torus_norm(Rational(7, 10)) == Rational(3, 10));
    CHECK(torus_norm(Rational(-1, 3)) == Rational(1, 3));
    CHECK(torus_norm(Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("torus_norm axioms over randomized rationals") {
    RationalGen gen(20250301);
    for (int i = 0; i < 10000; ++i) {
        Rational x = gen();
        Rational y = gen();
        Rational nx = torus_norm(x);
        CHECK(nx >= 0);
        CHECK(nx <= Rational(1, 2));
        CHECK(torus_norm(x + 1) == nx);
        CHECK(torus_norm(-x) == nx);
        CHECK(torus_norm(x + y) <= nx + torus_norm(y));
    }
}

TEST_CASE("bohr_gap on hand-checked points") {
    CHECK(bohr_gap(2, AlphaVector{{Rational(1, 2)}, "", ""}) == 0);
    CHECK(bohr_gap(1, AlphaVector{{Rational(1, 2), Rational(1, 3)}, "", ""}) == Rational(1, 2));
    CHECK(bohr_gap(5, AlphaVector{{Rational(3, 7)}, "", ""}) == Rational(1, 7));
}

TEST_CASE("bohr_gap symmetry and common-denominator vanishing") {
    RationalGen gen(20250302);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        AlphaVector alphas{{gen(50, 50), gen(50, 50)}, "", ""};
        std::uniform_int_distribution<std::int64_t> sdist(-500, 500);
        std::int64_t s = sdist(rng);
        if (s == 0) s = 1;
        CHECK(bohr_gap(s, alphas) == bohr_gap(-s, alphas));
        // q = common denominator: gap vanishes along multiples of q
        Int q = boost::multiprecision::lcm(denominator(alphas.alphas[0]),
                                           denominator(alphas.alphas[1]));
        std::int64_t q64 = static_cast<std::int64_t>(q);
        std::uniform_int_distribution<std::int64_t> mdist(1, 20);
        CHECK(bohr_gap(q64 * mdist(rng), alphas) == 0);
    }
}

TEST_CASE("in_restricted_set is strict and shift-invariant") {
    AlphaVector half{{Rational(1, 2)}, "", ""};
    BohrThreshold quarter{Rational(1, 4)};
    CHECK(in_restricted_set(1, half, quarter));
    CHECK_FALSE(in_restricted_set(2, half, quarter));
    CHECK_FALSE(in_restricted_set(3, AlphaVector{{Rational(2, 5)}, "", ""}, quarter));

    RationalGen gen(20250303);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational a = gen(40, 40);
        std::uniform_int_distribution<std::int64_t> sdist(1, 300);
        std::int64_t s = sdist(rng);
        AlphaVector plain{{a}, "", ""};
        AlphaVector shifted{{a + 1}, "", ""};
        BohrThreshold delta{Rational(1, 5)};
        CHECK(in_restricted_set(s, plain, delta) == in_restricted_set(s, shifted, delta));
    }
}

TEST_CASE("convergents of [1;2,2,2,2,2]") {
    std::vector<Int> cf{1, 2, 2, 2, 2, 2};
    auto conv = convergents(cf, 6);
    std::vector<Rational> expected{Rational(1),      Rational(3, 2),   Rational(7, 5),
                                   Rational(17, 12), Rational(41, 29), Rational(99, 70)};
    CHECK(conv == expected);
    // cross-check the recurrence against direct bottom-up evaluation
    for (std::size_t len = 1; len <= 6; ++len) {
        CHECK(conv[len - 1] == evaluate_cf(cf, len));
    }
}

TEST_CASE("convergents edge cases") {
    CHECK(convergents({Int(0), Int(3)}, 2) ==
          std::vector<Rational>{Rational(0), Rational(1, 3)});
    CHECK(convergents({Int(2)}, 1) == std::vector<Rational>{Rational(2)});
    CHECK_THROWS_WITH(convergents({Int(1), Int(2)}, 3),
                      Catch::Matchers::ContainsSubstring("insufficient partial quotients"));
    // denominators increase (the classical exception: q0 = q1 = 1 when a1 = 1)
    auto conv = convergents({Int(1), Int(1), Int(1), Int(1), Int(1), Int(1)}, 6);
    for (std::size_t i = 1; i < conv.size(); ++i) {
        CHECK(denominator(conv[i]) >= denominator(conv[i - 1]));
        if (i >= 2) CHECK(denominator(conv[i]) > denominator(conv[i - 1]));
    }
}

TEST_CASE("near_return on hand-checked instances") {
    auto exact = near_return(AlphaVector{{Rational(41, 29)}, "", ""}, 29, 1);
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].s == 29);
    CHECK(exact[0].gap == 0);

    auto lcm_case = near_return(AlphaVector{{Rational(1, 3), Rational(1, 5)}, "", ""}, 15, 1);
    REQUIRE(lcm_case.size() == 1);
    CHECK(lcm_case[0].s == 15);
    CHECK(lcm_case[0].gap == 0);

    auto pell = near_return(AlphaVector{{Rational(99, 70)}, "", ""}, 20, 1);
    REQUIRE(pell.size() == 1);
    CHECK(pell[0].s == 12);
    CHECK(pell[0].gap == Rational(1, 35));
}

TEST_CASE("near_return ordering and self-oracle") {
    RationalGen gen(20250304);
    for (int rep = 0; rep < 30; ++rep) {
        AlphaVector alphas{{gen(60, 60), gen(60, 60)}, "", ""};
        auto top = near_return(alphas, 200, 5);
        REQUIRE(top.size() == 5);
        for (std::size_t i = 1; i < top.size(); ++i) {
            CHECK(top[i - 1].gap <= top[i].gap);
            if (top[i - 1].gap == top[i].gap) CHECK(top[i - 1].s < top[i].s);
        }
        // first entry equals the exhaustive minimum
        Rational best_gap = bohr_gap(1, alphas);
        std::int64_t best_s = 1;
        for (std::int64_t s = 2; s <= 200; ++s) {
            Rational g = bohr_gap(s, alphas);
            if (g < best_gap) {
                best_gap = g;
                best_s = s;
            }
        }
        CHECK(top[0].s == best_s);
        CHECK(top[0].gap == best_gap);
    }
    CHECK_THROWS_AS(near_return(AlphaVector{{Rational(1, 2)}, "", ""}, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("577/408") == Rational(577, 408));
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
    CHECK(parse_rational("4/-6") == Rational(-2, 3));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_pq_string(Rational(0)) == "0/1");
    CHECK(to_pq_string(Rational(-6, 4)) == "-3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    auto list = parse_rational_list("1/2, 3/4");
    CHECK(list == std::vector<Rational>{Rational(1, 2), Rational(3, 4)});
    CHECK(to_pq_list_string(list) == "1/2,3/4");
}

TEST_CASE("BohrThreshold bounds") {
    CHECK_NOTHROW(BohrThreshold{Rational(1, 2)});
    CHECK_THROWS_AS(BohrThreshold{Rational(0)}, std::invalid_argument);
    CHECK_THROWS_AS(BohrThreshold{Rational(2, 3)}, std::invalid_argument);
}
