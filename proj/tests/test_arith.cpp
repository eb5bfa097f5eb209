#include "doctest.h"
#include "oracles.hpp"
#include "wamsley/arith.hpp"

using namespace wamsley;

TEST_SUITE("arith") {
    TEST_CASE("valuations match trial division") {
        for (long long p : {2, 3, 5, 7})
            for (long long x = -500; x <= 500; ++x)
                if (x != 0) CHECK(vp(p, x) == oracle::vp(p, x));
        CHECK_THROWS_AS(vp(3, 0), Error);
    }

    TEST_CASE("modular power and inverse") {
        for (long long a = -20; a <= 20; ++a)
            for (long long e = 0; e < 12; ++e) {
                long long want = 1;
                for (long long k = 0; k < e; ++k) want = ((want * a) % 243 + 243) % 243;
                CHECK(powm(a, e, 243) == want);
            }
        for (long long a = 1; a < 81; ++a)
            if (a % 3 != 0) CHECK(mod(mod_inverse(a, 81) * a, 81) == 1);
        CHECK_THROWS(mod_inverse(6, 81));
    }

    TEST_CASE("polynomial binomials agree with Pascal on all integers") {
        for (long long z = -12; z <= 12; ++z)
            for (int k = 1; k <= 4; ++k) CHECK(binom(z, k) == binom(z - 1, k) + binom(z - 1, k - 1));
        CHECK(binom(5, 2) == 10);
        CHECK(binom(-1, 3) == -1);
    }

    TEST_CASE("Witt ranks equal Lyndon word counts") {
        for (int w = 1; w <= 10; ++w) CHECK(witt_rank(2, w) == oracle::lyndon_count(2, w));
        for (int w = 1; w <= 6; ++w) CHECK(witt_rank(3, w) == oracle::lyndon_count(3, w));
    }

    TEST_CASE("relevant primes divide (alpha^gamma - 1) gamma") {
        for (long long a = -6; a <= 9; ++a)
            for (int g = 1; g <= 4; ++g) {
                long long ag = oracle::ipow(a, g);
                if (ag == 1 || a == 0) continue;
                std::vector<long long> want = oracle::prime_divisors((ag - 1) * g);
                std::vector<Int> got = relevant_primes(a, g);
                REQUIRE(got.size() == want.size());
                for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
            }
    }

    TEST_CASE("classification of the reference instances") {
        struct Row {
            long long a, g, p;
            CaseTag tag;
            int m, n, h;
        };
        const Row rows[] = {
            {3, 2, 2, CaseTag::Case2_hEq1, 3, 1, 1},      {5, 2, 3, CaseTag::Case3_AlphaMinus, 1, 0, 0},
            {2, 4, 5, CaseTag::Case1_NotPm1, 1, 0, 0},    {2, 4, 3, CaseTag::Case3_AlphaMinus, 1, 0, 0},
            {2, 4, 2, CaseTag::GammaOnly, 0, 2, 0},       {-1, 1, 2, CaseTag::Case2_AlphaMinus1, 1, 0, 1},
            {4, 3, 3, CaseTag::Case1_hPos, 2, 1, 1},      {5, 1, 2, CaseTag::Case2_hGe2, 2, 0, 2},
            {7, 2, 2, CaseTag::Case2_hEq1, 4, 1, 1},
        };
        for (const auto& r : rows) {
            CAPTURE(r.a);
            CAPTURE(r.g);
            CAPTURE(r.p);
            Params P = classify(r.a, r.g, r.p);
            CHECK(P.tag == r.tag);
            CHECK(P.m == r.m);
            CHECK(P.n == r.n);
            CHECK(P.h == r.h);
            CHECK(P.m == oracle::vp(r.p, oracle::ipow(r.a, r.g) - 1));
            CHECK(P.n == oracle::vp(r.p, r.g));
        }
    }

    TEST_CASE("precondition failures") {
        CHECK_THROWS_AS(classify(1, 5, 2), Error);
        CHECK_THROWS_AS(classify(-1, 2, 2), Error);
        CHECK_THROWS_AS(classify(3, 2, 7), Error);
        CHECK_THROWS_AS(classify(3, 2, 4), Error);
    }
}
