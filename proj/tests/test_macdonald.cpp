#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wamsley/fporacle.hpp"
#include "wamsley/macdonald.hpp"
#include "wamsley/wamsley.hpp"

using namespace wamsley;

namespace {

Elem triple_elem(const JGroup& J, const Triple& t) {
    const PcPresentation& P = J.pres;
    return multiply(P, multiply(P, power(P, J.a, t.x), power(P, J.b, t.y)), power(P, J.c, t.z));
}

Triple random_triple(const TripleGroup& T, std::mt19937_64& rng) {
    auto r = [&](Exp n) { return static_cast<Exp>(rng() % static_cast<std::uint64_t>(n)); };
    return {r(T.oa()), r(T.nb()), r(T.nc())};
}

}  // namespace

TEST_SUITE("macdonald") {
    TEST_CASE("orders of J") {
        struct Row {
            int alpha, gamma, p;
            long long order;
        };
        for (auto [a, g, p, order] : std::vector<Row>{{3, 2, 2, 1 << 18}, {5, 2, 3, 59049}, {2, 4, 5, 78125}, {-1, 1, 2, 16}}) {
            CAPTURE(a);
            CAPTURE(g);
            JGroup J = build_J(classify(a, g, p));
            CHECK(consistency_check(J.pres).empty());
            CHECK(J.pres.order() == order);
            CHECK(J.pres.order() == sylow_order_J(J.params.alpha0, p, J.params.m));
            CHECK(J.formula_route_agrees);
            CHECK(element_order(J.pres, J.a) == J.params.order_b);
            CHECK(element_order(J.pres, J.b) == J.params.order_b);
        }
    }

    TEST_CASE("pc multiplication matches the relator multiplier") {
        std::mt19937_64 rng(11);
        for (auto [a, g, p] : std::vector<std::array<int, 3>>{{5, 2, 3}, {3, 2, 2}, {2, 4, 5}, {5, 3, 31}}) {
            CAPTURE(p);
            Params params = classify(a, g, p);
            JGroup J = build_J(params, false);
            TripleGroup T(params, Route::Relator);
            CHECK(T.order() == J.pres.order());
            for (int t = 0; t < 60; ++t) {
                Triple u = random_triple(T, rng), v = random_triple(T, rng);
                CHECK(triple_elem(J, T.mul(u, v)) == multiply(J.pres, triple_elem(J, u), triple_elem(J, v)));
                CHECK(triple_elem(J, T.inv(u)) == inverse(J.pres, triple_elem(J, u)));
            }
        }
    }

    TEST_CASE("J satisfies its defining relators") {
        for (auto [a, g, p] : std::vector<std::array<int, 3>>{{5, 2, 3}, {-1, 1, 2}, {2, 4, 5}}) {
            Params params = classify(a, g, p);
            JGroup J = build_J(params, false);
            FpPresentation fp = parse_fp(j_fp_text(params));
            CrossCheckOptions opt;
            opt.cyclic_subgroup = parse_fp_word(fp, "a");
            CrossCheck cc = cross_check(J.pres, fp, GenMap{{J.a, J.b}}, opt);
            CHECK(cc.pass());
        }
    }

    TEST_CASE("closed commutator formulas agree with collection") {
        for (auto [a, g, p] : std::vector<std::array<int, 3>>{{2, 4, 5}, {5, 2, 3}, {3, 2, 2}, {4, 3, 3}}) {
            CAPTURE(a);
            CAPTURE(g);
            CAPTURE(p);
            JGroup J = build_J(classify(a, g, p), false);
            for (const auto& line : formula_suite(J, 4)) {
                CAPTURE(line.name);
                CAPTURE(line.detail);
                CHECK(line.pass);
            }
            for (const auto& line : structural_constants(J)) {
                CAPTURE(line.name);
                CHECK(line.pass);
            }
        }
    }

    TEST_CASE("conjugation exponents: closed function equals series") {
        for (auto [a, g, p] : std::vector<std::array<int, 3>>{{2, 4, 5}, {4, 3, 3}}) {
            Params params = classify(a, g, p);
            for (int i = 0; i <= 40; ++i)
                for (bool plus : {true, false})
                    CHECK(conj_exponent_function(params, i, plus) == conj_exponent_series(params, i, plus));
        }
    }

    TEST_CASE("Case 3 selectors are well formed") {
        auto sels = all_case3_selectors();
        CHECK(sels.size() == 18);
        std::set<std::string> names;
        for (auto s : sels) {
            std::string name = case3_sel_name(s);
            names.insert(name);
            // one integer argument per index letter in the name
            std::set<char> letters;
            for (char ch : name)
                if (ch == 'i' || ch == 'j' || ch == 'k' || ch == 'l') letters.insert(ch);
            CHECK(case3_arity(s) == static_cast<int>(letters.size()));
        }
        CHECK(names.size() == sels.size());
    }
}
