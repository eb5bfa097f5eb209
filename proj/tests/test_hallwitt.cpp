#include "doctest.h"
#include "oracles.hpp"
#include "wamsley/hallwitt.hpp"

using namespace wamsley;

TEST_SUITE("hallwitt") {
    TEST_CASE("Witt table matches bases and the reference table") {
        auto rows = witt_table();
        REQUIRE(rows.size() == 5);
        std::vector<long long> want = {2, 1, 2, 3, 6};
        for (std::size_t w = 0; w < rows.size(); ++w) {
            CHECK(rows[w].pass());
            CHECK(rows[w].witt == want[w]);
            CHECK(rows[w].witt == oracle::lyndon_count(2, static_cast<int>(w) + 1));
        }
        auto basis = hall_basis(3, 4);
        for (int w = 1; w <= 4; ++w) CHECK(basis[w - 1].size() == static_cast<std::size_t>(oracle::lyndon_count(3, w)));
        CHECK(reference_basic_table().size() == 5);
    }

    TEST_CASE("free nilpotent cover is consistent") {
        HallCover H = build_cover();
        CHECK(consistency_check(H.pres).empty());
        CHECK(hirsch_length(H.pres) == 7);
        const PcPresentation& P = H.pres;
        auto g = [&](int k) { return unit(P, k); };
        CHECK(commutator(P, g(1), g(0)) == g(2));
        CHECK(commutator(P, g(2), g(0)) == g(3));
        CHECK(commutator(P, g(2), g(1)) == g(4));
        CHECK(commutator(P, g(4), g(0)) == g(5));
        CHECK(commutator(P, g(5), g(1)) == g(6));
        CHECK(is_identity(commutator(P, g(3), g(0))));
    }

    TEST_CASE("Hall identity holds on a grid") {
        HallCover H = build_cover();
        for (const auto& c : check_hall_range(H, -6, 6)) {
            CAPTURE(c.i);
            CAPTURE(c.j);
            CHECK(c.pass);
        }
        for (long long i = -5; i <= 5; ++i)
            for (long long j = -5; j <= 5; ++j) CHECK(hall_F7_rational(i, j) == hall_F7_binomial(i, j));
        // weight two term is -ij
        CHECK(hall_F(3, 2, 3) == -6);
    }

    TEST_CASE("chi form of the final commutator") {
        for (auto [a, g, p] : std::vector<std::array<int, 3>>{{4, 3, 3}, {2, 4, 5}}) {
            JGroup J = build_J(classify(a, g, p), false);
            for (int i = -7; i <= 7; ++i)
                for (int j = -7; j <= 7; ++j) CHECK(final_commutator_chi(J, i, j).pass());
        }
    }
}
