// Runs the ten acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wamsley/hallwitt.hpp"
#include "wamsley/wamsley.hpp"

using namespace wamsley;

namespace {

// Collects failed expectations of one criterion.
struct Probe {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <class A, class B>
    void equal(const A& got, const B& want, const std::string& what) {
        if (!(got == want)) {
            std::ostringstream os;
            os << what << ": got " << got << ", want " << want;
            failures.push_back(os.str());
        }
    }
};

struct Built {
    JGroup J;
    NpComputation np;
    WpGroup W;
};

Built build(int alpha, int gamma, int p) {
    JGroup J = build_J(classify(alpha, gamma, p));
    NpComputation np = compute_Np(J);
    WpGroup W = build_Wp(J, np.np);
    return {std::move(J), std::move(np), std::move(W)};
}

Int pow_of(long long p, int e) { return ipow(Int(p), static_cast<unsigned>(e)); }

Int product(const std::vector<std::pair<Int, int>>& f) {
    Int r = 1;
    for (const auto& [p, e] : f) r *= ipow(p, static_cast<unsigned>(e));
    return r;
}

int lower_central_class(const PcPresentation& P) {
    return static_cast<int>(series(P, SeriesKind::LowerCentral).size()) - 1;
}

int derived_length(const PcPresentation& P) {
    return static_cast<int>(derived_series_of(P, whole_group(P)).size()) - 1;
}

std::vector<Int> nontrivial(const std::vector<Int>& v) {
    std::vector<Int> out;
    for (const Int& x : v)
        if (x != 1) out.push_back(x);
    return out;
}

std::vector<Int> ints(std::initializer_list<long long> xs) { return {xs.begin(), xs.end()}; }

std::string join(const std::vector<Int>& v) {
    std::string s;
    for (const Int& x : v) s += (s.empty() ? "" : ",") + to_string(x);
    return "(" + s + ")";
}

void quotient_enumerates(Probe& pr, const WpGroup& W, const Int& want, const std::string& what) {
    FpPresentation fp = parse_fp(quotient_fp_text(W));
    CrossCheckOptions opt;
    opt.cyclic_subgroup = parse_fp_word(fp, "a");
    CrossCheck cc = cross_check(W.quotient.pres, fp, fp_assignment(W, fp, true), opt);
    pr.expect(cc.pass(), what + " cross check");
    pr.equal(cc.tc_order, want, what + " coset enumeration");
}

// 1. W(3,3,2)
void c1(Probe& pr) {
    Built b = build(3, 2, 2);
    pr.equal(b.J.pres.order(), pow_of(2, 18), "|J|");
    pr.equal(subgroup_order(b.J.pres, b.np.np), pow_of(2, 6), "|N_2|");
    pr.equal(b.W.quotient.pres.order(), pow_of(2, 12), "|G_2/N_2|");
    pr.equal(b.W.pres.order(), pow_of(2, 13), "|W_2|");
    pr.equal(product(order_of_W(3, 2)), pow_of(2, 13), "|W| from the v table");
    pr.expect(closed_form_Np(b.J, GeneratorReading::PowerOfTwo, &b.np.np).np == b.np.np, "closed N_2");
}

// 2. (5,2,3)
void c2(Probe& pr) {
    Built b = build(5, 2, 3);
    pr.equal(b.J.pres.order(), pow_of(3, 10), "|J|");
    ClosedNp c = closed_form_Np(b.J, GeneratorReading::PowerOfTwo, &b.np.np);
    pr.expect(c.np == b.np.np, "N_3 equals the closed form");
    pr.equal(join(nontrivial(abelian_invariants(b.J.pres, b.np.np))), join(ints({27, 9, 3})), "invariants of N_3");
    pr.equal(b.W.quotient.pres.order(), Int(81), "|G_3/N_3|");
    quotient_enumerates(pr, b.W, 81, "G_3/N_3");
    pr.equal(lower_central_class(b.W.pres), 3, "class");
    pr.equal(nilpotency_class_Wp(b.J.params).cls, 3, "stated class");
}

// 3. W(2,2,4)
void c3(Probe& pr) {
    Built b5 = build(2, 4, 5);
    const PcPresentation& H = b5.W.quotient.pres;
    pr.equal(H.order(), Int(125), "|G_5/N_5|");
    bool exp5 = true;
    for (const Elem& x : enumerate(H)) exp5 = exp5 && is_identity(power(H, x, 5));
    pr.expect(exp5, "exponent 5");
    pr.equal(lower_central_class(H), 2, "class of G_5/N_5");
    quotient_enumerates(pr, b5.W, 125, "G_5/N_5");
    Built b3 = build(2, 4, 3);
    pr.equal(b3.W.pres.order(), Int(81), "|W_3|");
    pr.equal(v_exponent(2, 2, 4), 2, "2-part exponent");
    std::vector<StructureReport> reports;
    ReportOptions opt;
    opt.series = false;
    for (const Int& p : relevant_primes(2, 4)) reports.push_back(verify_instance(2, 4, p, opt));
    OrderSummary s = order_summary(2, 4, reports);
    pr.equal(s.formula, Int(40500), "|W| from the v table");
    pr.equal(s.pipeline, Int(40500), "|W| from the pipeline");
    for (const auto& r : reports) pr.expect(r.green(), "report at p = " + to_string(r.params.p));
}

// 4. W(-1,-1,1) is Q16
void c4(Probe& pr) {
    Built b = build(-1, 1, 2);
    const PcPresentation& P = b.W.pres;
    pr.equal(P.order(), Int(16), "order");
    int involutions = 0;
    auto elems = enumerate(P);
    for (const Elem& x : elems)
        if (element_order(P, x) == 2) ++involutions;
    pr.equal(involutions, 1, "involutions");
    auto got = oracle::order_histogram(elems, identity(P), [&](const Elem& x, const Elem& y) { return multiply(P, x, y); });
    auto q = oracle::q16_elements();
    pr.expect(got == oracle::order_histogram(q, oracle::Q16{}, [](auto x, auto y) { return x * y; }), "order histogram");
    pr.equal(lower_central_class(P), 3, "class");
    pr.equal(derived_length(P), 2, "derived length");
    pr.equal(product(order_of_W(-1, 1)), Int(16), "|W| from the v table");
}

// 5. (4,3,3)
void c5(Probe& pr) {
    Built b = build(4, 3, 3);
    pr.equal(subgroup_order(b.J.pres, b.np.np), Int(81), "|N_3|");
    pr.equal(join(nontrivial(abelian_invariants(b.J.pres, b.np.np))), join(ints({9, 3, 3})), "invariants of N_3");
    pr.equal(b.W.pres.order(), pow_of(3, 11), "|W_3|");
    auto nf = count_normal_forms(b.W, false);
    pr.expect(nf.has_value() && nf->pass(), "quotient normal forms");
    if (nf) pr.equal(nf->order, pow_of(3, 10), "normal form count");
    auto lc = series(b.W.pres, SeriesKind::LowerCentral);
    NilpotencyForm f = nilpotency_class_Wp(b.J.params);
    pr.equal(static_cast<int>(lc.size()) - 1, 4, "class");
    pr.equal(f.cls, 4, "stated class");
    for (std::size_t i = 0; i < f.levels.size() && i + 1 < lc.size(); ++i) {
        std::vector<Elem> gens;
        for (const auto& w : f.levels[i]) gens.push_back(wp_element(b.W, w));
        pr.expect(subgroup(b.W.pres, gens) == lc[i + 1], "gamma_" + std::to_string(i + 2));
    }
    pr.expect(!f.levels.empty(), "stated levels");
}

// 6. Commutator formula suites
void c6(Probe& pr) {
    for (auto [a, g, p] : std::vector<std::array<int, 3>>{{3, 2, 2}, {5, 2, 3}, {2, 4, 5}, {-1, 1, 2}, {4, 3, 3}}) {
        JGroup J = build_J(classify(a, g, p), false);
        int bound = 2 * static_cast<int>(pow_of(p, J.params.m)) + 3;
        for (const auto& l : formula_suite(J, bound))
            pr.expect(l.pass, "(" + std::to_string(a) + "," + std::to_string(g) + "," + std::to_string(p) + ") " + l.name +
                                  ": " + l.detail);
    }
}

// 7. Witt ranks, free nilpotent cover and the Hall identity
void c7(Probe& pr) {
    auto rows = witt_table();
    std::vector<long long> want = {2, 1, 2, 3, 6};
    pr.equal(rows.size(), want.size(), "weights");
    for (std::size_t w = 0; w < rows.size() && w < want.size(); ++w) {
        pr.equal(rows[w].witt, Int(want[w]), "Witt rank " + std::to_string(w + 1));
        pr.expect(rows[w].pass(), "basis count " + std::to_string(w + 1));
    }
    HallCover H = build_cover();
    pr.expect(consistency_check(H.pres).empty(), "cover consistency");
    for (const auto& c : check_hall_range(H, -6, 6))
        pr.expect(c.pass, "Hall identity at (" + std::to_string(c.i) + "," + std::to_string(c.j) + ")");
    for (auto [a, g, p] : std::vector<std::array<int, 3>>{{4, 3, 3}, {2, 4, 5}}) {
        JGroup J = build_J(classify(a, g, p), false);
        for (const auto& b : basic_commutators(J)) pr.expect(b.closed == b.collected, "basic commutator " + b.name);
    }
}

// 8. Derived length of W
void c8(Probe& pr) {
    for (auto [a, g, want] : std::vector<std::array<int, 3>>{{-1, 3, 2}, {3, 1, 2}, {3, 2, 3}, {4, 3, 3}, {2, 4, 3}}) {
        const std::string tag = "(" + std::to_string(a) + "," + std::to_string(g) + ")";
        pr.equal(derived_length_W(a, g), want, "stated derived length " + tag);
        // [W,W] is nilpotent and W/[W,W] is abelian, so the length is one more than the longest part
        int longest = 0;
        for (const auto& [p, len] : commutator_subgroup_parts(a, g)) {
            Built b = build(a, g, static_cast<int>(p));
            int part = computed_commutator_part_length(b.W);
            pr.equal(part, len, "[W,W]_" + to_string(p) + " " + tag);
            pr.expect(derived_length(b.W.pres) <= part + 1, "derived length of W_" + to_string(p) + " " + tag);
            longest = std::max(longest, part);
        }
        pr.equal(longest + 1, want, "computed derived length " + tag);
    }
}

// 9. Properties
void c9(Probe& pr) {
    std::mt19937_64 rng(2024);
    std::vector<Built> groups;
    for (auto [a, g, p] : std::vector<std::array<int, 3>>{{3, 2, 2}, {5, 2, 3}, {2, 4, 5}, {4, 3, 3}, {-1, 1, 2}, {5, 1, 2}, {-2, 1, 3}})
        groups.push_back(build(a, g, p));
    for (const Built& b : groups) {
        pr.expect(consistency_check(b.J.pres).empty(), "consistency of J");
        pr.expect(consistency_check(b.W.pres).empty(), "consistency of W_p");
        pr.expect(swap_automorphism(b.W).pass(), "swap automorphism of W_p");
        pr.expect(swap_automorphism(b.W, true).pass(), "swap automorphism of G_p/N_p");
    }
    long bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const PcPresentation& P = groups[static_cast<std::size_t>(t) % groups.size()].W.pres;
        Elem x(P.size()), y(P.size()), z(P.size());
        for (int i = 0; i < P.size(); ++i) {
            auto r = static_cast<std::uint64_t>(P.rel_orders[i]);
            x[i] = static_cast<Exp>(rng() % r);
            y[i] = static_cast<Exp>(rng() % r);
            z[i] = static_cast<Exp>(rng() % r);
        }
        if (multiply(P, multiply(P, x, y), z) != multiply(P, x, multiply(P, y, z))) ++bad;
        if (!is_identity(multiply(P, x, inverse(P, x))) || !is_identity(multiply(P, inverse(P, x), x))) ++bad;
    }
    pr.equal(bad, 0L, "random associativity and inverse failures");
    ReportOptions opt;
    opt.series = false;
    opt.oracle = false;
    for (auto [a, g] : std::vector<std::array<int, 2>>{{2, 3}, {-2, 2}, {3, 3}, {6, 1}, {-3, 1}}) {
        std::vector<StructureReport> reports;
        for (const Int& p : relevant_primes(a, g)) reports.push_back(verify_instance(a, g, p, opt));
        OrderSummary s = order_summary(a, g, reports);
        pr.expect(s.agree(), "order multiplicativity at (" + std::to_string(a) + "," + std::to_string(g) + ")");
    }
}

// 10. Typeset readings settled by computation
void c10(Probe& pr) {
    JGroup A = build_J(classify(5, 1, 2)), B = build_J(classify(3, 2, 2)), C = build_J(classify(7, 2, 2));
    JGroup D = build_J(classify(5, 2, 2)), E = build_J(classify(-3, 2, 2));
    for (const TypoResolution& r : {resolve_power_relation({&A, &B}), resolve_generator_reading({&B, &C}),
                                    resolve_relation_signs({&B, &C}), resolve_np_type({&B, &C}), resolve_np_type({&D, &E})}) {
        pr.expect(r.unique(), r.relation + " has a unique reading");
        pr.equal(r.instances.size(), std::size_t{2}, r.relation + " instances");
    }
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<void(Probe&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> all = {
        {1, "W(3,3,2) orders", 60, c1},
        {2, "(5,2,3) N_3, quotient and class", 60, c2},
        {3, "W(2,2,4) factors and total order", 60, c3},
        {4, "W(-1,-1,1) is the quaternion group", 5, c4},
        {5, "(4,3,3) N_3, normal forms and lower central series", 120, c5},
        {6, "commutator formulas against collection", 120, c6},
        {7, "Witt ranks, cover and Hall identity", 30, c7},
        {8, "derived length of W", 120, c8},
        {9, "consistency, associativity, multiplicativity, automorphisms", 180, c9},
        {10, "typeset readings settled", 120, c10},
    };
    int failed = 0;
    for (const auto& c : all) {
        Probe pr;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(pr);
        } catch (const std::exception& e) {
            pr.failures.push_back(std::string("exception: ") + e.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > c.limit) pr.failures.push_back("took " + std::to_string(dt) + " s, limit " + std::to_string(c.limit));
        bool ok = pr.failures.empty();
        if (!ok) ++failed;
        std::printf("%s %2d %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, dt, c.limit);
        for (std::size_t i = 0; i < pr.failures.size() && i < 10; ++i) std::printf("    %s\n", pr.failures[i].c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
