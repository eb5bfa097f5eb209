#include <sstream>

#include "wamsley/macdonald.hpp"

namespace wamsley {

std::vector<ChainSlot> chain_layout(const Params& P) {
    const int fam = case_family(P.tag);
    const int m = P.m;
    struct Block {
        char letter;
        int lo, hi;
    };
    std::vector<Block> blocks;
    if (fam == 1) {
        for (int k = 0; k < 3; ++k) {
            blocks.push_back({'a', k * m, (k + 1) * m});
            if (k < 2) blocks.push_back({'b', k * m, (k + 1) * m});
            if (k < 2) blocks.push_back({'c', k * m, (k + 1) * m});
        }
    } else if (fam == 2) {
        blocks = {{'a', 0, m},         {'b', 0, m},         {'c', 0, m - 1},        {'a', m, 2 * m - 1},
                  {'b', m, 2 * m - 1}, {'c', m - 1, 2 * m - 1}, {'a', 2 * m - 1, 3 * m - 1}};
    } else if (fam == 3) {
        blocks = {{'a', 0, 1}, {'b', 0, 1}, {'c', 0, 1}, {'a', 1, 2}, {'b', 1, 2}, {'c', 1, 2},
                  {'a', 2, 3}, {'b', 2, 3}, {'c', 2, 3}, {'a', 3, 4}};
    } else {
        throw Error(ErrorKind::Unsupported, "J is only built when m > 0");
    }
    std::vector<ChainSlot> out;
    for (const auto& b : blocks)
        for (int s = b.lo; s < b.hi; ++s) out.push_back({b.letter, s});
    return out;
}

namespace {

struct Sifter {
    const Params& params;
    TripleGroup& T;
    std::vector<ChainSlot> slots;
    std::vector<Triple> gens;
    Exp p;

    Sifter(const Params& P, TripleGroup& T_) : params(P), T(T_), slots(chain_layout(P)), p(static_cast<Exp>(P.p)) {
        for (const auto& s : slots) gens.push_back(T.letter(s.letter, ipow(P.p, s.digit)));
    }

    Elem sift(Triple x) const {
        Elem e(slots.size(), 0);
        for (std::size_t t = 0; t < slots.size(); ++t) {
            Exp v = slots[t].letter == 'a' ? x.x : slots[t].letter == 'b' ? x.y : x.z;
            Exp ps = static_cast<Exp>(ipow(params.p, slots[t].digit));
            if (v % ps != 0) throw Error(ErrorKind::Construction, "chain sifting met a lower digit");
            Exp d = (v / ps) % p;
            e[t] = d;
            if (d != 0) x = T.mul(T.pow(gens[t], -d), x);
        }
        if (x != Triple{}) throw Error(ErrorKind::Construction, "chain sifting left a remainder");
        return e;
    }
};

std::string slot_name(const ChainSlot& s, const Int& p) {
    if (s.digit == 0) return std::string(1, s.letter);
    return std::string(1, s.letter) + "^" + to_string(ipow(p, s.digit));
}

}  // namespace

PcPresentation pc_from_triples(const Params& params, TripleGroup& T) {
    Sifter S(params, T);
    const int n = static_cast<int>(S.slots.size());
    PcPresentation P(n);
    for (int i = 0; i < n; ++i) {
        P.names[i] = slot_name(S.slots[i], params.p);
        P.rel_orders[i] = S.p;
        Elem pw = S.sift(T.pow(S.gens[i], S.p));
        if (depth(pw) <= i) throw Error(ErrorKind::Construction, "power of " + P.names[i] + " is not deeper");
        P.powers[i] = to_word(pw);
        Triple ginv = T.inv(S.gens[i]);
        for (int j = i + 1; j < n; ++j) {
            Elem c1 = S.sift(T.conj(S.gens[j], S.gens[i]));
            Elem c2 = S.sift(T.conj(S.gens[j], ginv));
            if (depth(c1) < j || depth(c2) < j)
                throw Error(ErrorKind::Construction, "conjugate of " + P.names[j] + " leaves the chain");
            P.conj(j, i) = to_word(c1);
            P.conj_inv(j, i) = to_word(c2);
        }
    }
    P.finalize(false);
    P.labels["a"] = S.sift(T.letter('a', 1));
    P.labels["b"] = S.sift(T.letter('b', 1));
    P.labels["c"] = S.sift(T.letter('c', 1));
    return P;
}

JGroup build_J(const Params& params, bool compare_formula_route) {
    JGroup J;
    J.params = params;
    TripleGroup R(params, Route::Relator);
    J.pres = pc_from_triples(params, R);
    const PcPresentation& P = J.pres;
    J.a = P.labels.at("a");
    J.b = P.labels.at("b");
    J.c = P.labels.at("c");

    auto viol = consistency_check(P);
    if (!viol.empty()) throw Error(ErrorKind::Construction, "J presentation is inconsistent: " + viol.front());
    J.certificate.push_back("consistency: " + std::to_string(P.size()) + " generators pass");

    const Int oa = R.oa();
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorKind::Construction, "J relator fails: " + what);
        J.certificate.push_back("relator holds: " + what);
    };
    require(commutator(P, J.a, J.b) == J.c, "c = [a,b]");
    require(conjugate(P, J.a, J.c) == power(P, J.a, params.alpha0), "a^c = a^(alpha^gamma)");
    require(conjugate(P, J.b, inverse(P, J.c)) == power(P, J.b, params.alpha0), "c b c^-1 = b^(alpha^gamma)");
    require(is_identity(power(P, J.a, oa)), "a^" + to_string(oa) + " = 1");
    require(is_identity(power(P, J.b, oa)), "b^" + to_string(oa) + " = 1");
    require(subgroup(P, {J.a, J.b}) == whole_group(P), "a and b generate");
    Int expected = sylow_order_J(params.alpha0, params.p, params.m);
    require(P.order() == expected, "order " + to_string(expected));
    J.central_chain = is_central_chain(P);

    auto slots = chain_layout(params);
    for (std::size_t t = 0; t < slots.size(); ++t) {
        bool start = t == 0 || slots[t].letter != slots[t - 1].letter;
        if (!start) continue;
        PcSubgroup S;
        for (std::size_t u = t; u < slots.size(); ++u) S.igs.push_back(unit(P, static_cast<int>(u)));
        J.refined_chain.push_back(S);
    }
    J.refined_chain.push_back(trivial_subgroup());

    if (compare_formula_route) {
        try {
            TripleGroup F(params, Route::Formula);
            PcPresentation P2 = pc_from_triples(params, F);
            J.formula_route_agrees = P2 == P;
            J.formula_route_note = J.formula_route_agrees ? "formula route reproduces the presentation"
                                                          : "formula route gives a different presentation";
        } catch (const Error& e) {
            J.formula_route_agrees = false;
            J.formula_route_note = std::string("formula route failed: ") + e.what();
        }
    }
    return J;
}

Elem eval_word(const JGroup& J, const LetterWord& w) {
    const PcPresentation& P = J.pres;
    Elem x = identity(P);
    for (const auto& [l, e] : w) {
        const Elem& g = l == 'a' ? J.a : l == 'b' ? J.b : J.c;
        x = multiply(P, x, power(P, g, e));
    }
    return x;
}

Elem comm_formula(const JGroup& J, const Int& i, const Int& j, CommKind kind) {
    return eval_word(J, comm_formula_word(J.params, i, j, kind));
}

Elem comm_direct(const JGroup& J, const Int& i, const Int& j, CommKind kind) {
    const PcPresentation& P = J.pres;
    switch (kind) {
        case CommKind::CA:
            return commutator(P, power(P, J.c, i), power(P, J.a, j));
        case CommKind::CB:
            return commutator(P, power(P, J.c, i), power(P, J.b, j));
        case CommKind::AB:
            return commutator(P, power(P, J.a, i), power(P, J.b, j));
    }
    return identity(P);
}

Elem case3_lhs(const JGroup& J, Case3Sel sel, const std::vector<Int>& args) {
    if (case_family(J.params.tag) != 3) throw Error(ErrorKind::Usage, "selector needs Case 3 parameters");
    if (static_cast<int>(args.size()) != case3_arity(sel))
        throw Error(ErrorKind::Usage, std::string("wrong argument count for ") + case3_sel_name(sel));
    const PcPresentation& P = J.pres;
    auto A = [&](const Int& e) { return power(P, J.a, e); };
    auto B = [&](const Int& e) { return power(P, J.b, e); };
    auto C = [&](const Elem& x, const Elem& y) { return commutator(P, x, y); };
    auto conj = [&](const Elem& x, const Elem& y) { return conjugate(P, x, y); };
    auto mul = [&](const Elem& x, const Elem& y) { return multiply(P, x, y); };
    auto arg = [&](std::size_t k) { return args.at(k); };
    switch (sel) {
        case Case3Sel::ABj: return C(A(1), B(arg(0)));
        case Case3Sel::BAj: return C(B(1), A(arg(0)));
        case Case3Sel::AB3: return C(A(1), B(3));
        case Case3Sel::A3B3: return C(A(3), B(3));
        case Case3Sel::A3iB3j: return C(A(3 * arg(0)), B(3 * arg(1)));
        case Case3Sel::ABConjBA: return conj(C(A(1), B(1)), mul(B(3 * arg(1)), A(3 * arg(0))));
        case Case3Sel::AB3iConjA: return conj(C(A(1), B(3 * arg(0))), A(3 * arg(1)));
        case Case3Sel::AinvB3i: return C(A(-1), B(3 * arg(0)));
        case Case3Sel::AinvB3iConjA: return conj(C(A(-1), B(3 * arg(0))), A(3 * arg(1)));
        case Case3Sel::A3iBConjB: return conj(C(A(3 * arg(0)), B(1)), B(3 * arg(1)));
        case Case3Sel::A3iBinvConjB: return conj(C(A(3 * arg(0)), B(-1)), B(3 * arg(1)));
        case Case3Sel::AinvBinv: return C(A(-1), B(-1));
        case Case3Sel::AinvBinvConjBA: return conj(C(A(-1), B(-1)), mul(B(3 * arg(1)), A(3 * arg(0))));
        case Case3Sel::ABinvConjBA: return conj(C(A(1), B(-1)), mul(B(3 * arg(1)), A(3 * arg(0))));
        case Case3Sel::AinvBConjBA: return conj(C(A(-1), B(1)), mul(B(3 * arg(1)), A(3 * arg(0))));
        case Case3Sel::ShiftPlus:
            return mul(C(A(1 + 3 * arg(0)), B(1 + 3 * arg(1))), inverse(P, C(A(1), B(1))));
        case Case3Sel::ShiftMinus:
            return mul(C(A(-1 + 3 * arg(0)), B(-1 + 3 * arg(1))), inverse(P, C(A(1), B(1))));
        case Case3Sel::General:
            return C(A(arg(0) + 3 * arg(2)), B(arg(1) + 3 * arg(3)));
    }
    return identity(P);
}

Elem case3_word_formula(const JGroup& J, Case3Sel sel, const std::vector<Int>& args, Case3Reading reading) {
    return eval_word(J, case3_rhs(J.params, sel, args, reading));
}

namespace {

struct Checker {
    const JGroup& J;
    const PcPresentation& P;
    std::vector<CheckLine> lines;

    explicit Checker(const JGroup& J_) : J(J_), P(J_.pres) {}

    Elem w(const LetterWord& word) const { return eval_word(J, word); }
    PcSubgroup sub(const std::vector<LetterWord>& words) const {
        std::vector<Elem> g;
        for (const auto& x : words) g.push_back(w(x));
        return subgroup(P, g);
    }
    void add(const std::string& name, bool pass, const std::string& detail = "") {
        lines.push_back({name, pass, detail});
    }
    void eq(const std::string& name, const PcSubgroup& x, const PcSubgroup& y) {
        add(name, x == y,
            "orders " + to_string(subgroup_order(P, x)) + " and " + to_string(subgroup_order(P, y)));
    }
    void order(const std::string& name, const Elem& x, const Int& expected) {
        Int o = element_order(P, x);
        add(name, o == expected, "computed " + to_string(o) + ", expected " + to_string(expected));
    }
    void invariants(const std::string& name, const PcSubgroup& S, const std::vector<Int>& expected) {
        std::vector<Int> got;
        bool ok = is_abelian(P, S);
        if (ok) got = abelian_invariants(P, S);
        std::string d;
        for (const auto& x : got) d += to_string(x) + " ";
        add(name, ok && got == expected, "computed " + (ok ? d : std::string("non-abelian")));
    }
};

std::vector<Int> section_invariants(const PcPresentation& P, const PcSubgroup& upper, const PcSubgroup& lower) {
    Quotient Q = quotient(P, lower);
    std::vector<Elem> g;
    for (const auto& x : upper.igs) g.push_back(Q.project(P, lower, x));
    return abelian_invariants(Q.pres, subgroup(Q.pres, g));
}

}  // namespace

std::vector<CheckLine> structural_constants(const JGroup& J) {
    Checker K(J);
    const Params& pr = J.params;
    const PcPresentation& P = J.pres;
    const int fam = case_family(pr.tag);
    const int m = pr.m;
    auto ucs = series(P, SeriesKind::UpperCentral);
    auto Z = [&](std::size_t i) { return i < ucs.size() ? ucs[i] : whole_group(P); };
    const PcSubgroup Gsub = whole_group(P);
    PcSubgroup A = K.sub({{{'a', 1}}}), B = K.sub({{{'b', 1}}}), C = K.sub({{{'c', 1}}});
    PcSubgroup AC = K.sub({{{'a', 1}}, {{'c', 1}}}), BC = K.sub({{{'b', 1}}, {{'c', 1}}});

    if (fam == 1) {
        Int r = ipow(pr.p, m), r2 = r * r;
        K.order("o(a) = p^(3m)", J.a, r2 * r);
        K.order("o(b) = p^(3m)", J.b, r2 * r);
        K.order("o(c) = p^(2m)", J.c, r2);
        K.add("a^(p^2m) b^(p^2m) = 1", is_identity(K.w({{'a', r2}, {'b', r2}})));
        K.eq("Z(J) = <a^(p^2m)>", Z(1), K.sub({{{'a', r2}}}));
        K.eq("Z(J) = <b^(p^2m)>", Z(1), K.sub({{{'b', r2}}}));
        K.eq("Z2(J) = <a^(p^2m), c^(p^m)>", Z(2), K.sub({{{'a', r2}}, {{'c', r}}}));
        K.eq("Z3(J) = <a^(p^m), b^(p^m), c^(p^m)>", Z(3), K.sub({{{'a', r}}, {{'b', r}}, {{'c', r}}}));
        K.add("Z3(J) abelian", is_abelian(P, Z(3)));
        K.eq("<a,c> meet <b> = Z(J)", intersection(P, AC, B), Z(1));
        K.eq("<b,c> meet <a> = Z(J)", intersection(P, BC, A), Z(1));
        K.eq("<a> meet <c> = 1", intersection(P, A, C), trivial_subgroup());
        K.eq("<b> meet <c> = 1", intersection(P, B, C), trivial_subgroup());
        auto lcs = series(P, SeriesKind::LowerCentral);
        K.add("lower central series has class 5", lcs.size() == 6 && lcs.back().igs.empty(),
              "length " + std::to_string(lcs.size()));
        if (lcs.size() == 6) {
            std::vector<std::vector<LetterWord>> basic = {{{{'a', 1}}, {{'b', 1}}},
                                                          {{{'c', 1}}},
                                                          {{{'a', r}}, {{'b', r}}},
                                                          {{{'c', r}}},
                                                          {{{'a', r2}}}};
            std::vector<std::vector<Int>> inv = {{r, r}, {r}, {r, r}, {r}, {r}};
            for (int i = 0; i < 5; ++i) {
                std::vector<Elem> g = lcs[i + 1].igs;
                for (const auto& x : basic[i]) g.push_back(K.w(x));
                std::string lvl = "gamma" + std::to_string(i + 1);
                K.eq(lvl + " generated by its basic generators and gamma" + std::to_string(i + 2),
                     subgroup(P, g), lcs[i]);
                auto got = section_invariants(P, lcs[i], lcs[i + 1]);
                K.add(lvl + "/gamma" + std::to_string(i + 2) + " invariants", got == inv[i]);
            }
            Elem abr = power(P, K.w({{'a', 1}, {'b', 1}}), r);
            PcSubgroup g3 = subgroup(P, {K.w({{'a', r}}), abr, K.w({{'c', r}})});
            K.eq("gamma3 = <a^r> x <(ab)^r> x <c^r>", g3, lcs[2]);
            Int prod = element_order(P, K.w({{'a', r}})) * element_order(P, abr) * element_order(P, K.w({{'c', r}}));
            K.add("gamma3 factors are independent", prod == subgroup_order(P, lcs[2]));
            K.invariants("gamma3 invariants (r^2, r, r)", lcs[2], {r2, r, r});
        }
    } else if (fam == 2) {
        Int e2m1 = ipow(2, 2 * m - 1), e3m2 = ipow(2, 3 * m - 2), em = ipow(2, m), em1 = ipow(2, m - 1);
        K.order("o(a) = 2^(3m-1)", J.a, ipow(2, 3 * m - 1));
        K.order("o(b) = 2^(3m-1)", J.b, ipow(2, 3 * m - 1));
        K.order("o(c) = 2^(2m)", J.c, ipow(2, 2 * m));
        K.add("a^(2^(2m-1)) b^(2^(2m-1)) = 1", is_identity(K.w({{'a', e2m1}, {'b', e2m1}})));
        K.add("a^(2^(3m-2)) = c^(2^(2m-1))", K.w({{'a', e3m2}}) == K.w({{'c', e2m1}}));
        K.add("c^(2^(2m-1)) = b^(2^(3m-2))", K.w({{'c', e2m1}}) == K.w({{'b', e3m2}}));
        K.eq("Z(J) = <a^(2^(2m-1))>", Z(1), K.sub({{{'a', e2m1}}}));
        K.eq("Z(J) = <b^(2^(2m-1))>", Z(1), K.sub({{{'b', e2m1}}}));
        K.eq("Z2(J) = <a^(2^(2m-1)), c^(2^(m-1))>", Z(2), K.sub({{{'a', e2m1}}, {{'c', em1}}}));
        if (m > 1) {
            K.eq("Z3(J) = <a^(2^m), b^(2^m), c^(2^(m-1))>", Z(3), K.sub({{{'a', em}}, {{'b', em}}, {{'c', em1}}}));
            K.add("Z3(J) abelian", is_abelian(P, Z(3)));
            K.eq("Z3(J) = <a^(2^m), a^(2^(2m-2)) c^(2^(m-1)), a^(2^m) b^(2^m)>", Z(3),
                 K.sub({{{'a', em}}, {{'a', ipow(2, 2 * m - 2)}, {'c', em1}}, {{'a', em}, {'b', em}}}));
            K.eq("Z3(J) = <b^(2^m), b^(2^(2m-2)) c^(2^(m-1)), a^(2^m) b^(2^m)>", Z(3),
                 K.sub({{{'b', em}}, {{'b', ipow(2, 2 * m - 2)}, {'c', em1}}, {{'a', em}, {'b', em}}}));
            K.invariants("Z3(J) invariants (2^(2m-1), 2^m, 2^(m-1))", Z(3), {e2m1, em, em1});
        }
        K.eq("<a,c> meet <b> = Z(J)", intersection(P, AC, B), Z(1));
        K.eq("<b,c> meet <a> = Z(J)", intersection(P, BC, A), Z(1));
        K.eq("<a> meet <c> = <c^(2^(2m-1))>", intersection(P, A, C), K.sub({{{'c', e2m1}}}));
        K.eq("<c^(2^(2m-1))> = <a^(2^(3m-2))>", K.sub({{{'c', e2m1}}}), K.sub({{{'a', e3m2}}}));
        K.eq("<b> meet <c> = <a^(2^(3m-2))>", intersection(P, B, C), K.sub({{{'a', e3m2}}}));
    } else if (fam == 3) {
        K.order("o(a) = 81", J.a, 81);
        K.order("o(b) = 81", J.b, 81);
        K.order("o(c) = 27", J.c, 27);
        K.add("a^27 b^27 = 1", is_identity(K.w({{'a', 27}, {'b', 27}})));
        K.eq("Z(J) = <a^27>", Z(1), K.sub({{{'a', 27}}}));
        K.eq("Z2(J) = <a^27, c^9>", Z(2), K.sub({{{'a', 27}}, {{'c', 9}}}));
        K.eq("Z3(J) = <a^9, b^9, c^9>", Z(3), K.sub({{{'a', 9}}, {{'b', 9}}, {{'c', 9}}}));
        K.eq("Z4(J) = <a^9, b^9, c^3>", Z(4), K.sub({{{'a', 9}}, {{'b', 9}}, {{'c', 3}}}));
        K.eq("Z5(J) = <a^3, b^3, c^3>", Z(5), K.sub({{{'a', 3}}, {{'b', 3}}, {{'c', 3}}}));
        K.eq("Z6(J) = <a^3, b^3, c>", Z(6), K.sub({{{'a', 3}}, {{'b', 3}}, {{'c', 1}}}));
        K.eq("Z7(J) = J", Z(7), Gsub);
        K.add("Z3(J) abelian of order 3^4", is_abelian(P, Z(3)) && subgroup_order(P, Z(3)) == 81);
        K.add("Z4(J) abelian of order 3^5", is_abelian(P, Z(4)) && subgroup_order(P, Z(4)) == 243);
        K.add("Z5(J) has order 3^7", subgroup_order(P, Z(5)) == 2187);
    }
    return K.lines;
}

Int conj_exponent_function(const Params& pr, const Int& i, bool plus) {
    if (case_family(pr.tag) != 1) throw Error(ErrorKind::Unsupported, "conjugation exponents are for Case 1");
    if (i < 0) throw Error(ErrorKind::Usage, "index must be non-negative");
    Int r = ipow(pr.p, pr.m), r3 = r * r * r;
    unsigned k = static_cast<unsigned>(i);
    if (plus) {
        const Int& a0 = pr.alpha0;
        Int num = (i - 1) * ipow(a0, k + 1) - i * ipow(a0, k) + a0;
        if (num % (a0 - 1) != 0) throw Error(ErrorKind::Formula, "f_i is not integral");
        return mod(num / (a0 - 1), r3);
    }
    Int v = -pr.ell + r * pr.ell * pr.ell;
    Int mu0 = 1 + r * v;
    Int num = i * ipow(mu0, k + 1) - (i + 1) * ipow(mu0, k) + 1;
    if (num % (1 - mu0) != 0) throw Error(ErrorKind::Formula, "g_i is not integral");
    return mod(num / (1 - mu0), r3);
}

Int conj_exponent_series(const Params& pr, const Int& i, bool plus) {
    if (case_family(pr.tag) != 1) throw Error(ErrorKind::Unsupported, "conjugation exponents are for Case 1");
    Int r = ipow(pr.p, pr.m), r3 = r * r * r;
    const Int& l = pr.ell;
    if (plus)
        return mod(binom(i, 2) * r * l + (2 * binom(i, 3) + binom(i, 2)) * r * r * l * l +
                       (4 * binom(i, 4) + 2 * binom(i, 3)) * r3 * l * l * l,
                   r3);
    Int v = -l + r * l * l;
    return mod(-binom(i + 1, 2) * v * r - 2 * binom(i + 1, 3) * v * v * r * r -
                   (4 * binom(i, 4) + 3 * binom(i, 3)) * r3 * v * v * v,
               r3);
}

std::vector<BasicCommutator> basic_commutators(const JGroup& J) {
    const Params& pr = J.params;
    if (case_family(pr.tag) != 1) throw Error(ErrorKind::Unsupported, "basic commutators are for Case 1");
    const PcPresentation& P = J.pres;
    Int r = ipow(pr.p, pr.m);
    const Int& l = pr.ell;
    Int v = -l + r * l * l;
    Int delta = pr.p == 3 ? ipow(3, pr.m - 1) : Int(0);
    Int e6 = r * r * (1 + 2 * delta * l) * v * l;
    if (e6 % 2 != 0) throw Error(ErrorKind::Formula, "a6 exponent is not integral");
    std::vector<BasicCommutator> out;
    auto L = [&](std::vector<Elem> xs) { return left_normed(P, xs); };
    const Elem &a = J.a, &b = J.b;
    out.push_back({"a3 = [b,a]", eval_word(J, {{'c', -1}}), L({b, a})});
    out.push_back({"a4 = [b,a,a]", eval_word(J, {{'a', -r * v}}), L({b, a, a})});
    out.push_back({"a5 = [b,a,b]", eval_word(J, {{'b', -r * l}}), L({b, a, b})});
    out.push_back({"a6 = [b,a,b,a]", eval_word(J, {{'c', r * l}, {'b', e6 / 2}}), L({b, a, b, a})});
    out.push_back({"a7 = [b,a,b,a,b]", eval_word(J, {{'b', -r * r * l * v}}), L({b, a, b, a, b})});
    return out;
}

std::vector<std::pair<Int, int>> order_of_G(const Int& alpha, const Int& gamma) {
    if (gamma <= 0) throw Error(ErrorKind::InvalidInstance, "gamma must be positive");
    Int a0 = ipow(alpha, static_cast<unsigned>(gamma));
    Int d = a0 - 1;
    if (d == 0) throw Error(ErrorKind::InvalidInstance, "alpha^gamma = 1");
    std::vector<std::pair<Int, int>> out;
    for (auto& [q, e] : factorize(d < 0 ? Int(-d) : d)) {
        int ex;
        if (q == 2)
            ex = 7 * e - 3;
        else if (q == 3 && mod(a0, 9) == 7)
            ex = 10;
        else
            ex = 7 * e;
        out.emplace_back(q, ex);
    }
    return out;
}

Int q_for(const Params& params) { return params.q; }

std::string j_fp_text(const Params& pr) {
    TripleGroup T(pr, Route::Relator);
    Int a0 = mod(pr.alpha0, T.oa());
    if (2 * a0 > T.oa()) a0 -= T.oa();
    std::ostringstream os;
    os << "# Sylow " << pr.p << "-subgroup J for alpha=" << pr.alpha << " gamma=" << pr.gamma << "\n";
    os << "generators: a, b\n";
    os << "a^[a,b] = a^" << a0 << "\n";
    os << "b^[b,a] = b^" << a0 << "\n";
    os << "a^" << T.oa() << "\n";
    os << "b^" << T.oa() << "\n";
    return os.str();
}

}  // namespace wamsley
