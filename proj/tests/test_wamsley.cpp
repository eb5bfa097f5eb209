#include "doctest.h"
#include "oracles.hpp"
#include "wamsley/wamsley.hpp"

using namespace wamsley;

namespace {

// |W(alpha, alpha, gamma)| from tests/oracle/sympy_orders.py, frozen.
struct FrozenOrder {
    int alpha, gamma;
    long long order;
};
const FrozenOrder kSympyOrders[] = {
#include "oracle/frozen_orders.inc"
};

Int factored_product(const std::vector<std::pair<Int, int>>& f) {
    Int r = 1;
    for (const auto& [p, e] : f) r *= ipow(p, static_cast<unsigned>(e));
    return r;
}

struct Built {
    JGroup J;
    WpGroup W;
};
Built build(int alpha, int gamma, int p) {
    JGroup J = build_J(classify(alpha, gamma, p));
    PcSubgroup np = compute_Np(J).np;
    WpGroup W = build_Wp(J, np);
    return {std::move(J), std::move(W)};
}

ReportOptions light() {
    ReportOptions o;
    o.formulas = false;
    o.series = false;
    o.oracle = false;
    return o;
}

}  // namespace

TEST_SUITE("wamsley") {
    TEST_CASE("orders of W match independent coset enumeration") {
        for (const auto& f : kSympyOrders) {
            CAPTURE(f.alpha);
            CAPTURE(f.gamma);
            CHECK(factored_product(order_of_W(f.alpha, f.gamma)) == f.order);
            std::vector<StructureReport> reports;
            for (const Int& p : relevant_primes(f.alpha, f.gamma)) reports.push_back(verify_instance(f.alpha, f.gamma, p, light()));
            OrderSummary s = order_summary(f.alpha, f.gamma, reports);
            CHECK(s.agree());
            CHECK(s.pipeline == f.order);
        }
    }

    TEST_CASE("W_2(-1, -1, 1) is the quaternion group of order 16") {
        Built b = build(-1, 1, 2);
        const PcPresentation& P = b.W.pres;
        CHECK(P.order() == 16);
        auto elems = enumerate(P);
        auto got = oracle::order_histogram(elems, identity(P), [&](const Elem& x, const Elem& y) { return multiply(P, x, y); });
        auto q = oracle::q16_elements();
        CHECK(got == oracle::order_histogram(q, oracle::Q16{}, [](auto x, auto y) { return x * y; }));
        CHECK(series(P, SeriesKind::LowerCentral).size() == 4);
        CHECK(derived_series_of(P, whole_group(P)).size() == 3);
    }

    TEST_CASE("G_5 / N_5 for (2, 4) is the Heisenberg group of exponent 5") {
        Built b = build(2, 4, 5);
        const PcPresentation& Q = b.W.quotient.pres;
        CHECK(Q.order() == 125);
        CHECK_FALSE(is_abelian(Q, whole_group(Q)));
        for (const Elem& x : enumerate(Q)) CHECK(is_identity(power(Q, x, 5)));
        CHECK(subgroup_order(Q, centre(Q)) == 5);
        CHECK(factored_product(order_of_W(2, 4)) == 40500);
        CHECK(v_exponent(2, 2, 4) == 2);
    }

    TEST_CASE("quotient relators enumerate to the pc order") {
        for (auto [a, g, p, order] : std::vector<std::array<int, 4>>{{5, 2, 3, 81}, {2, 4, 5, 125}, {3, 2, 2, 4096}}) {
            CAPTURE(a);
            Built b = build(a, g, p);
            CHECK(b.W.quotient.pres.order() == order);
            FpPresentation fp = parse_fp(quotient_fp_text(b.W));
            oracle::ToddCoxeter tc(static_cast<int>(fp.generators.size()), fp.relators);
            CHECK(tc.run(400000) == order);
            CHECK(verify_fp_map(fp, b.W.quotient.pres, fp_assignment(b.W, fp, true)).empty());
        }
    }

    TEST_CASE("N_p against the closed forms") {
        struct Row {
            int alpha, gamma, p;
            std::vector<long long> invariants;
        };
        for (const auto& r : std::vector<Row>{{5, 2, 3, {27, 9, 3}}, {4, 3, 3, {9, 3, 3}}, {3, 2, 2, {16, 4}}}) {
            CAPTURE(r.alpha);
            CAPTURE(r.gamma);
            JGroup J = build_J(classify(r.alpha, r.gamma, r.p));
            PcSubgroup np = compute_Np(J).np;
            ClosedNp c = closed_form_Np(J, GeneratorReading::PowerOfTwo, &np);
            CHECK(c.np == np);
            CHECK(c.forms_agree());
            CHECK(subgroup_order(J.pres, np) == c.order);
            std::vector<Int> got;
            for (const Int& x : abelian_invariants(J.pres, np))
                if (x != 1) got.push_back(x);
            std::vector<Int> want(r.invariants.begin(), r.invariants.end());
            CHECK(got == want);
            if (c.invariants) CHECK(*c.invariants == want);
            for (const auto& line : c.aux) {
                CAPTURE(line.name);
                CHECK(line.pass);
            }
        }
    }

    TEST_CASE("typeset readings that fail are resolved uniquely") {
        JGroup A = build_J(classify(5, 1, 2)), B = build_J(classify(3, 2, 2)), C = build_J(classify(7, 2, 2));
        JGroup D = build_J(classify(5, 2, 2)), E = build_J(classify(-3, 2, 2));
        for (const TypoResolution& r : {resolve_power_relation({&A, &B}), resolve_generator_reading({&B, &C}),
                                        resolve_relation_signs({&B, &C}), resolve_np_type({&B, &C}),
                                        resolve_np_type({&D, &E})}) {
            CAPTURE(r.relation);
            CHECK(r.unique());
            CHECK(r.instances.size() == 2);
            CHECK(r.resolved.find("as typeset") == std::string::npos);
        }
        CHECK(resolve_power_relation({&A, &B}).resolved == "a^{2^{3m-2}} = c^{2^{2m-1}} = b^{2^{3m-2}}");
        CHECK_THROWS_AS(resolve_generator_reading({&A}), Error);
        CHECK_THROWS_AS(resolve_np_type({&B, &D}), Error);
    }

    TEST_CASE("nilpotency class and derived length") {
        for (auto [a, g, p] : std::vector<std::array<int, 3>>{{-1, 1, 2}, {5, 2, 3}, {4, 3, 3}, {2, 4, 5}, {3, 2, 2}, {5, 1, 2}}) {
            CAPTURE(a);
            CAPTURE(g);
            Built b = build(a, g, p);
            int computed = static_cast<int>(series(b.W.pres, SeriesKind::LowerCentral).size()) - 1;
            CHECK(nilpotency_class_Wp(b.J.params).cls == computed);
        }
        CHECK(derived_length_W(-1, 3) == 2);
        CHECK(derived_length_W(3, 1) == 2);
        CHECK(derived_length_W(3, 2) == 3);
        CHECK(derived_length_W(4, 3) == 3);
        CHECK(derived_length_W(2, 4) == 3);
    }

    TEST_CASE("swap automorphism and normal forms") {
        for (auto [a, g, p] : std::vector<std::array<int, 3>>{{5, 2, 3}, {2, 4, 5}, {-1, 1, 2}}) {
            Built b = build(a, g, p);
            CHECK(swap_automorphism(b.W).pass());
            CHECK(swap_automorphism(b.W, true).pass());
            if (auto nf = count_normal_forms(b.W, b.W.extended())) CHECK(nf->pass());
        }
    }

    TEST_CASE("verify_instance reports green and skips over budget") {
        StructureReport r = verify_instance(5, 2, 3);
        CHECK(r.green());
        CHECK(r.mismatches().empty());
        CHECK(r.order_Wp == 81);
        CHECK(r.tc_order_quotient == 81);
        CHECK(r.skipped.empty());

        ReportOptions tight;
        tight.max_cosets = 2;
        tight.max_enumerate = 2;
        StructureReport s = verify_instance(5, 2, 3, tight);
        CHECK(s.green());
        CHECK_FALSE(s.skipped.empty());

        CHECK_THROWS_AS(verify_instance(3, 2, 7), Error);
        CHECK_THROWS_AS(verify_instance(1, 2, 2), Error);
    }

    TEST_CASE("presentations round trip through the text format") {
        Built b = build(3, 2, 2);
        for (const std::string& text : {quotient_fp_text(b.W), wp_fp_text(b.W), general_fp_text(3, 5, 2)}) {
            FpPresentation P = parse_fp(text);
            CHECK(parse_fp(fp_to_text(P)) == P);
        }
    }
}
