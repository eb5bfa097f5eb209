#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wamsley/pc.hpp"
#include "wamsley/pc_json.hpp"

using namespace wamsley;

namespace {

// y, x, x^2, x^4 with y^2 = x^4 and x^y = x^-1.
PcPresentation q16_pc() {
    PcPresentation P(4);
    P.names = {"y", "x", "x2", "x4"};
    P.rel_orders = {2, 2, 2, 2};
    P.powers = {{{3, 1}}, {{2, 1}}, {{3, 1}}, {}};
    P.conj(1, 0) = {{1, 1}, {2, 1}, {3, 1}};
    P.conj(2, 0) = {{2, 1}, {3, 1}};
    P.finalize();
    return P;
}

// Upper unitriangular 3x3 matrices over Z/p: x, y, z = [x, y].
PcPresentation heis_pc(Exp p) {
    PcPresentation P(3);
    P.names = {"x", "y", "z"};
    P.rel_orders = {p, p, p};
    P.powers = {{}, {}, {}};
    P.conj(1, 0) = {{1, 1}, {2, 1}};
    P.finalize();
    return P;
}

// Cyclic group of order p^k on a chain of generators.
PcPresentation cyclic_pc(Exp p, int k) {
    PcPresentation P(k);
    P.rel_orders.assign(k, p);
    for (int i = 0; i < k; ++i) P.powers[i] = i + 1 < k ? Word{{i + 1, 1}} : Word{};
    P.finalize();
    return P;
}

Elem random_elem(const PcPresentation& P, std::mt19937_64& rng) {
    Elem e(P.size());
    for (int i = 0; i < P.size(); ++i) e[i] = static_cast<Exp>(rng() % static_cast<std::uint64_t>(P.rel_orders[i]));
    return e;
}

}  // namespace

TEST_SUITE("pc") {
    TEST_CASE("quaternion presentation matches the explicit group") {
        PcPresentation P = q16_pc();
        CHECK(consistency_check(P).empty());
        CHECK(P.order() == 16);
        auto elems = enumerate(P);
        auto got = oracle::order_histogram(elems, identity(P),
                                           [&](const Elem& a, const Elem& b) { return multiply(P, a, b); });
        auto q = oracle::q16_elements();
        auto want = oracle::order_histogram(q, oracle::Q16{}, [](auto a, auto b) { return a * b; });
        CHECK(got == want);
        CHECK(want == std::map<int, int>{{1, 1}, {2, 1}, {4, 10}, {8, 4}});
    }

    TEST_CASE("Heisenberg presentation matches matrices") {
        for (Exp p : {3, 5, 7}) {
            PcPresentation P = heis_pc(p);
            CHECK(consistency_check(P).empty());
            std::mt19937_64 rng(p);
            // x^a y^b z^c is the matrix (a, b, ab - c)
            auto mat = [p](const Elem& u) { return oracle::Heis{u[0], u[1], ((u[0] * u[1] - u[2]) % p + p) % p}; };
            for (int t = 0; t < 200; ++t) {
                Elem u = random_elem(P, rng), v = random_elem(P, rng);
                CHECK(mat(multiply(P, u, v)) == oracle::heis_mul(mat(u), mat(v), p));
            }
            CHECK(series(P, SeriesKind::LowerCentral).size() == 3);
            CHECK(subgroup_order(P, centre(P)) == p);
        }
    }

    TEST_CASE("collection is associative with working inverses") {
        std::mt19937_64 rng(7);
        for (const PcPresentation& P : {q16_pc(), heis_pc(5), cyclic_pc(3, 4)}) {
            for (int t = 0; t < 500; ++t) {
                Elem x = random_elem(P, rng), y = random_elem(P, rng), z = random_elem(P, rng);
                CHECK(multiply(P, multiply(P, x, y), z) == multiply(P, x, multiply(P, y, z)));
                CHECK(is_identity(multiply(P, x, inverse(P, x))));
                CHECK(power(P, x, -3) == inverse(P, power(P, x, 3)));
            }
        }
    }

    TEST_CASE("conjugate power cache follows edits") {
        PcPresentation P = heis_pc(7);
        CHECK(P.conj_cache() != nullptr);
        PcPresentation Q = P;
        CHECK(Q.conj_cache() == P.conj_cache());
        Q.conj(1, 0) = {{1, 1}};
        CHECK(Q.conj_cache() == nullptr);
        CHECK(P.conj_cache() != nullptr);
        Q.finalize();
        CHECK(Q.conj_cache() != nullptr);
        // Q is now abelian
        CHECK(multiply(Q, unit(Q, 1), unit(Q, 0)) == Elem{1, 1, 0});
        CHECK(multiply(P, unit(P, 1), unit(P, 0)) == Elem{1, 1, 1});
    }

    TEST_CASE("subgroups, normality and invariants") {
        PcPresentation P = heis_pc(5);
        PcSubgroup Z = subgroup(P, {unit(P, 2)});
        PcSubgroup X = subgroup(P, {unit(P, 0)});
        CHECK(subgroup_order(P, Z) == 5);
        CHECK(is_normal(P, Z));
        CHECK_FALSE(is_normal(P, X));
        CHECK(subgroup_order(P, normal_closure(P, {unit(P, 0)})) == 25);
        CHECK(is_subset(P, Z, normal_closure(P, {unit(P, 0)})));
        CHECK(intersection(P, X, Z) == trivial_subgroup());
        CHECK(abelian_invariants(P, subgroup(P, {unit(P, 0), unit(P, 2)})) == std::vector<Int>{5, 5});
        CHECK(commutator_subgroup(P, whole_group(P), whole_group(P)) == Z);

        PcPresentation C = cyclic_pc(2, 4);
        CHECK(abelian_invariants(C, whole_group(C)) == std::vector<Int>{16});
        CHECK(subgroup_order(C, omega_subgroup(C, whole_group(C), 1)) == 2);
        CHECK(element_order(C, unit(C, 0)) == 16);
    }

    TEST_CASE("quotients and cyclic extensions") {
        PcPresentation P = heis_pc(5);
        PcSubgroup Z = centre(P);
        Quotient Q = quotient(P, Z);
        CHECK(Q.pres.order() == 25);
        CHECK(abelian_invariants(Q.pres, whole_group(Q.pres)) == std::vector<Int>{5, 5});

        // C_5 extended by g -> g^2, an automorphism of order 4: the Frobenius group of order 20
        PcPresentation C = cyclic_pc(5, 1);
        GenMap lambda{{unit(C, 0, 2)}};
        PcPresentation F = cyclic_extension(C, lambda, identity(C), 4);
        CHECK(consistency_check(F).empty());
        CHECK(F.order() == 20);
        CHECK_FALSE(is_abelian(F, whole_group(F)));
        CHECK(element_order(F, unit(F, 0)) == 4);
        CHECK_THROWS_AS(cyclic_extension(C, lambda, identity(C), 2), Error);
    }

    TEST_CASE("homomorphism checks") {
        PcPresentation P = heis_pc(3);
        GenMap id{{unit(P, 0), unit(P, 1), unit(P, 2)}};
        CHECK(verify_map(P, P, id).empty());
        // swapping x and y inverts z
        GenMap swap{{unit(P, 1), unit(P, 0), unit(P, 2, 2)}};
        CHECK(verify_map(P, P, swap).empty());
        GenMap bad{{unit(P, 1), unit(P, 0), unit(P, 2)}};
        CHECK_FALSE(verify_map(P, P, bad).empty());
    }

    TEST_CASE("pc JSON round trip") {
        for (const PcPresentation& P : {q16_pc(), heis_pc(5)}) {
            PcPresentation R = pc_from_json(pc_to_json(P));
            CHECK(R == P);
        }
        CHECK_THROWS(pc_from_json("{\"generators\": 2"));
    }
}
