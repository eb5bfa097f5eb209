#include "doctest.h"
#include "oracles.hpp"
#include "wamsley/fporacle.hpp"

using namespace wamsley;
using oracle::cat;
using oracle::comm;
using oracle::pw;

namespace {

long long library_order(const std::string& text) {
    CosetTable T = todd_coxeter(parse_fp(text));
    REQUIRE(T.complete());
    return static_cast<long long>(T.size());
}

}  // namespace

TEST_SUITE("fporacle") {
    TEST_CASE("parser builds the expected relators") {
        FpPresentation P = parse_fp("generators: a, b  # two letters\na^2\nb^a = b^-1\n[a, b, b]\n");
        CHECK(P.generators == std::vector<std::string>{"a", "b"});
        REQUIRE(P.relators.size() == 3);
        CHECK(P.relators[0] == FpWord{1, 1});
        CHECK(P.relators[1] == FpWord{-1, 2, 1, 2});
        CHECK(P.relators[2] == free_reduce(comm(comm(pw(1, 1), pw(2, 1)), pw(2, 1))));
        CHECK(parse_fp(fp_to_text(P)) == P);
        CHECK(fp_word_string(P, parse_fp_word(P, "(a b)^2")) == fp_word_string(P, FpWord{1, 2, 1, 2}));
        CHECK_THROWS_AS(parse_fp("a^2\n"), Error);
        CHECK_THROWS_AS(parse_fp("generators: a\nb\n"), Error);
        CHECK_THROWS_AS(parse_fp("generators: a, a\n"), Error);
    }

    TEST_CASE("coset enumeration agrees with the reference enumerator") {
        struct Case {
            const char* text;
            int ngens;
            std::vector<std::vector<int>> rels;
            long long order;
        };
        std::vector<Case> cases = {
            {"generators: a, b\na^2\nb^3\n(a b)^2", 2, {pw(1, 2), pw(2, 3), cat({pw(1, 1), pw(2, 1), pw(1, 1), pw(2, 1)})}, 6},
            {"generators: x, y\nx^4\nx^2 = y^2\ny^-1 x y = x^-1", 2,
             {pw(1, 4), cat({pw(1, 2), pw(2, -2)}), cat({pw(2, -1), pw(1, 1), pw(2, 1), pw(1, 1)})}, 8},
            {"generators: x, y\nx^8\nx^4 = y^2\nx^y = x^-1", 2,
             {pw(1, 8), cat({pw(1, 4), pw(2, -2)}), cat({pw(2, -1), pw(1, 1), pw(2, 1), pw(1, 1)})}, 16},
            {"generators: x, y\nx^5\ny^5\n[x,y]^5\n[x,y,x]\n[x,y,y]", 2,
             {pw(1, 5), pw(2, 5), cat({comm(pw(1, 1), pw(2, 1)), comm(pw(1, 1), pw(2, 1)), comm(pw(1, 1), pw(2, 1)),
                                       comm(pw(1, 1), pw(2, 1)), comm(pw(1, 1), pw(2, 1))}),
              comm(comm(pw(1, 1), pw(2, 1)), pw(1, 1)), comm(comm(pw(1, 1), pw(2, 1)), pw(2, 1))},
             125},
        };
        for (const auto& c : cases) {
            oracle::ToddCoxeter tc(c.ngens, c.rels);
            CHECK(tc.run(100000) == c.order);
            CHECK(library_order(c.text) == c.order);
            FpPresentation P = parse_fp(c.text);
            CosetTable F = todd_coxeter(P, {}, 100000, TcStrategy::Felsch);
            CHECK(F.size() == static_cast<std::size_t>(c.order));
            CHECK(relators_fix_all(P, F));
        }
    }

    TEST_CASE("subgroup index and the budget") {
        FpPresentation P = parse_fp("generators: x, y\nx^8\nx^4 = y^2\nx^y = x^-1");
        CosetTable T = todd_coxeter(P, {parse_fp_word(P, "x")});
        CHECK(T.complete());
        CHECK(T.size() == 2);
        CosetTable small = todd_coxeter(parse_fp("generators: a, b\na^7\nb^7\n[a,b]"), {}, 10);
        CHECK_FALSE(small.complete());
    }

    TEST_CASE("permutation images reproduce the group") {
        FpPresentation P = parse_fp("generators: x, y\nx^8\nx^4 = y^2\nx^y = x^-1");
        auto gens = perm_image(todd_coxeter(P));
        auto elems = perm_group_elements(gens);
        CHECK(elems.size() == 16);
        std::map<int, int> hist;
        for (const auto& g : elems) ++hist[static_cast<int>(perm_order(g))];
        auto q = oracle::q16_elements();
        CHECK(hist == oracle::order_histogram(q, oracle::Q16{}, [](auto a, auto b) { return a * b; }));
        for (const auto& r : P.relators) CHECK(perm_is_identity(perm_of_word(gens, r)));
        CHECK(perm_is_identity(perm_mul(gens[0], perm_inverse(gens[0]))));
    }

    TEST_CASE("cross check certifies a pc group against its presentation") {
        PcPresentation D(3);
        D.rel_orders = {2, 2, 2};
        D.powers = {{}, {{2, 1}}, {}};
        D.conj(1, 0) = {{1, 1}, {2, 1}};
        D.finalize();
        FpPresentation P = parse_fp("generators: s, r\ns^2\nr^4\nr^s = r^-1");
        GenMap g{{unit(D, 0), unit(D, 1)}};
        CrossCheck cc = cross_check(D, P, g);
        CHECK(cc.pass());
        CHECK(cc.tc_order == 8);
        CHECK(verify_fp_map(P, D, g).empty());

        CrossCheckOptions opt;
        opt.cyclic_subgroup = parse_fp_word(P, "r");
        CrossCheck sub = cross_check(D, P, g, opt);
        CHECK(sub.pass());
        CHECK(sub.index == 2);
        CHECK(sub.subgroup_bound == 4);

        // r -> s fails the relators
        GenMap bad{{unit(D, 0), unit(D, 0)}};
        CHECK_FALSE(cross_check(D, P, bad).pass());
        CHECK(relator_power_bound(P, parse_fp_word(P, "r")) == Int(4));
    }
}
