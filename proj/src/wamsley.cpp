#include "wamsley/wamsley.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "wamsley/hallwitt.hpp"

namespace wamsley {

namespace {

Int pw(const Int& p, int e) {
    if (e < 0) throw Error(ErrorKind::Formula, "negative exponent in a closed form");
    return ipow(p, static_cast<unsigned>(e));
}

Int mult_order(const Int& x0, const Int& modulus) {
    if (modulus == 1) return 1;
    Int x = mod(x0, modulus);
    // modulus is a prime power p^e, so the unit group has order p^{e-1}(p-1)
    auto f = factorize(modulus);
    const Int& p = f.front().first;
    Int n = modulus / p * (p - 1);
    std::vector<Int> primes{p};
    if (p > 2)
        for (auto& [q, e] : factorize(p - 1))
            if (q != p) primes.push_back(q);
    for (const auto& q : primes)
        while (n % q == 0 && powm(x, n / q, modulus) == 1) n /= q;
    return n;
}

Elem letter_elem(const std::map<std::string, Elem>& labels, char l) {
    auto it = labels.find(std::string(1, l));
    if (it == labels.end()) throw Error(ErrorKind::Usage, std::string("no element for letter ") + l);
    return it->second;
}

Elem eval_letters(const PcPresentation& P, const LetterWord& w) {
    Elem x = identity(P);
    for (const auto& [l, e] : w) x = multiply(P, x, power(P, letter_elem(P.labels, l), e));
    return x;
}

PcSubgroup span(const PcPresentation& P, const std::vector<LetterWord>& ws) {
    std::vector<Elem> g;
    for (const auto& w : ws) g.push_back(eval_letters(P, w));
    return subgroup(P, g);
}

std::string elem_text(const PcPresentation& P, const Elem& x) {
    std::string s;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
        if (x[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += P.names[i];
        if (x[i] != 1) s += "^" + std::to_string(x[i]);
    }
    return s.empty() ? "1" : s;
}

std::vector<std::string> igs_text(const PcPresentation& P, const PcSubgroup& S) {
    std::vector<std::string> out;
    for (const auto& g : S.igs) out.push_back(elem_text(P, g));
    return out;
}

std::string gens_text(const std::vector<LetterWord>& ws) {
    std::string s = "<";
    for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + word_string(ws[i]);
    return s + ">";
}

std::string ints_text(const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

std::vector<Int> drop_ones(std::vector<Int> v) {
    v.erase(std::remove(v.begin(), v.end(), Int(1)), v.end());
    std::sort(v.begin(), v.end(), std::greater<Int>());
    return v;
}

CheckLine line(std::string name, bool pass, std::string detail = {}) {
    return {std::move(name), pass, std::move(detail)};
}

CheckLine pair_line(const std::string& name, const Int& computed, const Int& expected) {
    return line(name, computed == expected, to_string(computed) + " vs " + to_string(expected));
}

Int sym_residue(const Int& x, const Int& n) {
    Int r = mod(x, n);
    if (2 * r > n) r -= n;
    return r;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

LetterWord L1(char l, const Int& e) { return {{l, e}}; }
LetterWord L2(char l1, const Int& e1, char l2, const Int& e2) { return {{l1, e1}, {l2, e2}}; }

}  // namespace

// V_i and F_i.

Elem v_element(const JGroup& J, const Int& i) {
    if (i < 1) throw Error(ErrorKind::Usage, "V_i needs i >= 1");
    const auto& P = J.pres;
    Int oa = element_order(P, J.a), ob = element_order(P, J.b);
    Elem x = power(P, J.a, powm(J.params.alpha, i, oa));
    Elem y = power(P, J.b, powm(J.params.mu, i, ob));
    return multiply(P, commutator(P, x, y), inverse(P, commutator(P, J.a, J.b)));
}

Elem f_element(const JGroup& J, const Int& i) {
    if (i < 1) throw Error(ErrorKind::Usage, "F_i needs i >= 1");
    const auto& P = J.pres;
    const auto& pr = J.params;
    Int oa = element_order(P, J.a), ob = element_order(P, J.b);
    Int s = pw(pr.p, pr.em);
    Elem x = power(P, J.a, mod(-s * (powm(pr.alpha, i, oa) - 1), oa));
    Elem y = power(P, J.b, mod(s * (powm(pr.mu, i, ob) - 1), ob));
    return multiply(P, x, y);
}

Int v_period(const JGroup& J) {
    Int oa = element_order(J.pres, J.a), ob = element_order(J.pres, J.b);
    return boost::multiprecision::lcm(mult_order(J.params.alpha, oa), mult_order(J.params.mu, ob));
}

int centre_level(const Params& params) { return case_family(params.tag) == 3 ? 5 : 3; }

PcSubgroup upper_central_term(const JGroup& J, int level) {
    auto s = series(J.pres, SeriesKind::UpperCentral);
    if (level < static_cast<int>(s.size())) return s[level];
    return whole_group(J.pres);
}

NpComputation compute_Np(const JGroup& J, std::uint64_t seed) {
    const auto& pr = J.params;
    NpComputation out;
    out.level = centre_level(pr);
    out.period = v_period(J);
    PcSubgroup Z = upper_central_term(J, out.level);
    auto take = [&](const Int& count) {
        std::vector<Elem> gens;
        for (Int i = 1; i <= count; ++i) {
            Elem v = v_element(J, i);
            if (!contains(J.pres, Z, v))
                throw Error(ErrorKind::Formula, "V_" + to_string(i) + " is not in Z_" + std::to_string(out.level));
            gens.push_back(std::move(v));
        }
        return gens;
    };
    const Int all = pr.gamma - 1;
    Int count = all;
    if (all > 512 && all > out.period) {
        count = out.period;
        out.reduced = true;
    }
    auto gens = take(count);
    out.generated = count;
    out.np = normal_closure(J.pres, gens);
    if (out.reduced) {
        std::mt19937_64 rng(seed);
        for (int s = 0; s < 16; ++s) {
            Int i = 1 + mod(Int(rng()) * Int(rng()), all);
            Elem v = v_element(J, i);
            Elem w = v_element(J, 1 + mod(i - 1, out.period));
            if (v != w || !contains(J.pres, out.np, v))
                throw Error(ErrorKind::Formula, "V_" + to_string(i) + " breaks the period reduction");
            ++out.sampled;
        }
    }
    if (mod(pr.alpha - 1, pr.p) == 0) {
        Int short_count = pw(pr.p, pr.n) - 1;
        if (short_count > out.period) short_count = out.period;
        out.short_closure_agrees = normal_closure(J.pres, take(short_count)) == out.np;
    }
    return out;
}

// Closed forms.

ClosedNp closed_form_Np(const JGroup& J, GeneratorReading reading, const PcSubgroup* computed) {
    const auto& pr = J.params;
    const auto& P = J.pres;
    const Int& p = pr.p;
    const int m = pr.m, h = pr.h, n = pr.n;
    ClosedNp c;
    auto trivial = [&](const std::string& form) {
        c.form = form;
        c.invariants = std::vector<Int>{};
        c.order = 1;
        c.quotient_order = sylow_order_J(pr.alpha0, p, m);
    };
    switch (pr.tag) {
        case CaseTag::Case1_hPos:
            c.form = "M_n meet L_2n";
            c.gens = {L1('a', pw(p, m + 2 * h)), L2('a', pw(p, m + h), 'b', pw(p, m + h)), L1('c', pw(p, m + h))};
            c.alt_gens = {L1('b', pw(p, m + 2 * h)), c.gens[1], c.gens[2]};
            c.has_alt = true;
            c.invariants = drop_ones({pw(p, 2 * n), pw(p, n), pw(p, n)});
            c.order = pw(p, 4 * n);
            c.quotient_order = pw(p, 7 * h + 3 * n);
            break;
        case CaseTag::Case1_NotPm1:
            c.form = "third centre";
            c.gens = {L1('a', pw(p, m)), L2('a', pw(p, m), 'b', pw(p, m)), L1('c', pw(p, m))};
            c.alt_gens = {L1('b', pw(p, m)), c.gens[1], c.gens[2]};
            c.has_alt = true;
            c.invariants = drop_ones({pw(p, 2 * m), pw(p, m), pw(p, m)});
            c.order = pw(p, 4 * m);
            c.quotient_order = pw(p, 3 * m);
            break;
        case CaseTag::Case1_MinusOne: {
            const int h0 = *pr.h0;
            c.form = "alpha = -1 mod p";
            Int s = pw(p, m);
            c.gens = {L1('c', s), L2('a', -s * (pr.alpha - 1), 'b', s * (pr.mu - 1)), L1('a', pw(p, m + h0))};
            c.alt_gens = {c.gens[0], c.gens[1], L1('b', pw(p, m + h0))};
            c.has_alt = true;
            c.order = pw(p, 4 * m - h0);
            c.quotient_order = pw(p, 3 * m + h0);
            break;
        }
        case CaseTag::Case2_hGe2:
            if (n == 0) {
                trivial("trivial, p | alpha-1 and p does not divide gamma");
                break;
            }
            c.form = "2-adic, h >= 2";
            c.gens = {L2('a', pw(2, m + h - 1) * (1 + pw(2, h)), 'b', pw(2, m + h - 1)), L1('a', pw(2, m + 2 * h)),
                      L2('a', pw(2, 2 * m + h - 2), 'c', pw(2, m + h - 1))};
            c.alt_gens = {L2('a', pw(2, m + h - 1), 'b', pw(2, m + h - 1) * (1 + pw(2, h))), L1('b', pw(2, m + 2 * h)),
                          L2('b', pw(2, 2 * m + h - 2), 'c', pw(2, m + h - 1))};
            c.has_alt = true;
            c.invariants = drop_ones({pw(2, 2 * n), pw(2, n), pw(2, n - 1)});
            c.order = pw(2, 4 * n - 1);
            c.quotient_order = pw(2, 7 * h + 3 * n - 2);
            break;
        case CaseTag::Case2_hEq1: {
            if (n == 0) {
                trivial("trivial, p | alpha-1 and p does not divide gamma");
                break;
            }
            c.form = reading == GeneratorReading::PowerOfTwo ? "2-adic, h = 1" : "2-adic, h = 1 (typeset exponent)";
            Int e = reading == GeneratorReading::PowerOfTwo ? pw(2, 2 * m + 1 - n) : Int(2 * m + 1 - n);
            Int s = pw(2, m), r = pw(2, m) * (1 + pw(2, m - n));
            c.gens = {L2('a', -s, 'b', r), L1('a', e), L2('a', pw(2, 2 * m - 1), 'c', s)};
            c.alt_gens = {L2('a', r, 'b', -s), L1('b', e), L2('b', pw(2, 2 * m - 1), 'c', s)};
            c.has_alt = true;
            c.invariants = drop_ones({pw(2, 2 * m - 2), pw(2, m - 1), pw(2, n - 1)});
            c.order = pw(2, 3 * m + n - 4);
            c.quotient_order = pw(2, 4 * m - n + 1);
            break;
        }
        case CaseTag::Case2_AlphaMinus1:
        case CaseTag::Case3_AlphaPlus:
            trivial("trivial, p | alpha-1 and p does not divide gamma");
            break;
        case CaseTag::Case3_AlphaMinus:
            c.form = "Case 3, alpha = -1 mod 3";
            c.gens = {L2('a', 3, 'b', -3), L1('a', 9), L1('b', 9), L1('c', 3)};
            c.alt_gens = {L2('a', 3, 'b', -3), L1('c', 3), L2('a', 9, 'b', 9)};
            c.has_alt = true;
            c.invariants = std::vector<Int>{27, 9, 3};
            c.order = pw(3, 6);
            c.quotient_order = 81;
            break;
        case CaseTag::GammaOnly:
            throw Error(ErrorKind::Usage, "no J for a prime dividing gamma only");
    }
    c.np = span(P, c.gens);
    c.alt = c.has_alt ? span(P, c.alt_gens) : c.np;
    if (computed == nullptr) return c;

    // Surrounding subgroups and membership lines.
    const PcSubgroup& N = *computed;
    auto upper = series(P, SeriesKind::UpperCentral);
    auto Zk = [&](int k) { return k < static_cast<int>(upper.size()) ? upper[k] : whole_group(P); };
    auto eq_line = [&](const std::string& name, const PcSubgroup& got, const std::vector<LetterWord>& ws) {
        c.aux.push_back(line(name + " = " + gens_text(ws), got == span(P, ws)));
    };
    auto member = [&](const std::string& name, const std::vector<LetterWord>& ws) {
        bool ok = true;
        for (const auto& w : ws) ok = ok && contains(P, N, eval_letters(P, w));
        c.aux.push_back(line(gens_text(ws) + " in N_p" + (name.empty() ? "" : " (" + name + ")"), ok));
    };
    const int level = centre_level(pr);
    c.aux.push_back(line("N_p inside Z_" + std::to_string(level), is_subset(P, N, Zk(level))));
    const int fam = case_family(pr.tag);
    const PcSubgroup Z = Zk(1), Z3 = Zk(3);
    if (fam == 1) {
        eq_line("Z(J)", Z, {L1('a', pw(p, 2 * m))});
        eq_line("Z(J)", Z, {L1('b', pw(p, 2 * m))});
        eq_line("Z_2(J)", Zk(2), {L1('a', pw(p, 2 * m)), L1('c', pw(p, m))});
        eq_line("Z_3(J)", Z3, {L1('a', pw(p, m)), L2('a', pw(p, m), 'b', pw(p, m)), L1('c', pw(p, m))});
        eq_line("Z_3(J)", Z3, {L1('b', pw(p, m)), L2('a', pw(p, m), 'b', pw(p, m)), L1('c', pw(p, m))});
        if (pr.tag == CaseTag::Case1_hPos && n > 0) {
            PcSubgroup M = power_preimage_subgroup(P, Z3, n, Z);
            PcSubgroup L = omega_subgroup(P, Z3, 2 * n);
            PcSubgroup I = intersection(P, M, L);
            Int s = pw(p, m + h);
            eq_line("M_n", M, {L1('a', s), L2('a', s, 'b', s), L1('c', s)});
            eq_line("M_n", M, {L1('b', s), L2('a', s, 'b', s), L1('c', s)});
            if (n >= h) {
                eq_line("L_2n", L, {L1('a', pw(p, m + 2 * h)), L2('a', pw(p, m), 'b', pw(p, m)), L1('c', pw(p, m))});
                eq_line("L_2n", L, {L1('b', pw(p, m + 2 * h)), L2('a', pw(p, m), 'b', pw(p, m)), L1('c', pw(p, m))});
            }
            if (n <= h) {
                Int t = pw(p, 2 * h);
                eq_line("L_2n", L, {L1('a', pw(p, m + 2 * h)), L2('a', t, 'b', t), L1('c', t)});
                eq_line("L_2n", L, {L1('b', pw(p, m + 2 * h)), L2('a', t, 'b', t), L1('c', t)});
            }
            eq_line("M_n meet L_2n", I, c.gens);
            c.aux.push_back(line("N_p = M_n meet L_2n", N == I));
            auto inv = drop_ones(abelian_invariants(P, I));
            c.aux.push_back(line("M_n meet L_2n invariants " + ints_text(inv),
                                 inv == drop_ones({pw(p, 2 * n), pw(p, n), pw(p, n)})));
            eq_line("Omega_n(Z(J))", omega_subgroup(P, Z, n), {L1('a', pw(p, 2 * m + h))});
            member("Omega_n(Z(J))", {L1('a', pw(p, 2 * m + h))});
            member("", {L1('c', pw(p, m + h))});
        }
        if (pr.tag == CaseTag::Case1_MinusOne) c.aux.push_back(line("Z_2(J) inside N_p", is_subset(P, Zk(2), N)));
    } else if (fam == 2) {
        eq_line("Z(J)", Z, {L1('a', pw(2, 2 * m - 1))});
        eq_line("Z(J)", Z, {L1('b', pw(2, 2 * m - 1))});
        if (m > 1) {
            eq_line("Z_2(J)", Zk(2), {L1('a', pw(2, 2 * m - 1)), L1('c', pw(2, m - 1))});
            eq_line("Z_3(J)", Z3, {L1('a', pw(2, m)), L1('b', pw(2, m)), L1('c', pw(2, m - 1))});
            eq_line("Z_3(J)", Z3,
                    {L1('a', pw(2, m)), L2('a', pw(2, 2 * m - 2), 'c', pw(2, m - 1)), L2('a', pw(2, m), 'b', pw(2, m))});
            eq_line("Z_3(J)", Z3,
                    {L1('b', pw(2, m)), L2('b', pw(2, 2 * m - 2), 'c', pw(2, m - 1)), L2('a', pw(2, m), 'b', pw(2, m))});
        }
        if (n > 0 && (pr.tag == CaseTag::Case2_hGe2 || pr.tag == CaseTag::Case2_hEq1)) {
            Int s = pw(2, m + h - 1), u = pw(2, 2 * m + h - 2);
            if (pr.tag == CaseTag::Case2_hGe2) {
                PcSubgroup M = power_preimage_subgroup(P, Z3, n, Z);
                PcSubgroup L = omega_subgroup(P, Z3, 2 * n);
                PcSubgroup I = intersection(P, M, L);
                eq_line("M_n", M, {L1('a', s), L2('a', u, 'c', s), L2('a', s, 'b', s)});
                eq_line("M_n", M, {L1('b', s), L2('b', u, 'c', s), L2('a', s, 'b', s)});
                if (n >= h) {
                    eq_line("L_2n", L,
                            {L1('a', pw(2, m + 2 * h - 1)), L2('a', pw(2, 2 * m - 2), 'c', pw(2, m - 1)),
                             L2('a', pw(2, m), 'b', pw(2, m))});
                    eq_line("L_2n", L,
                            {L1('b', pw(2, m + 2 * h - 1)), L2('b', pw(2, 2 * m - 2), 'c', pw(2, m - 1)),
                             L2('a', pw(2, m), 'b', pw(2, m))});
                } else {
                    Int t = pw(2, 2 * h - 1);
                    eq_line("L_2n", L,
                            {L1('a', pw(2, m + 2 * h - 1)), L2('a', pw(2, m + 2 * h - 2), 'c', t), L2('a', t, 'b', t)});
                    eq_line("L_2n", L,
                            {L1('b', pw(2, m + 2 * h - 1)), L2('b', pw(2, m + 2 * h - 2), 'c', t), L2('a', t, 'b', t)});
                }
                std::vector<LetterWord> ml = {L1('a', pw(2, m + 2 * h - 1)), L2('a', u, 'c', s), L2('a', s, 'b', s)};
                eq_line("M_n meet L_2n", I, ml);
                eq_line("M_n meet L_2n", I, {L1('b', pw(2, m + 2 * h - 1)), L2('b', u, 'c', s), L2('a', s, 'b', s)});
                auto inv = drop_ones(abelian_invariants(P, I));
                c.aux.push_back(line("M_n meet L_2n invariants " + ints_text(inv),
                                     inv == drop_ones({pw(2, 2 * n), pw(2, n), pw(2, n)})));
                c.aux.push_back(line("N_p has index 2 in M_n meet L_2n",
                                     is_subset(P, N, I) && subgroup_order(P, I) == 2 * subgroup_order(P, N)));
            }
            if (pr.tag == CaseTag::Case2_hGe2) {
                eq_line("Omega_n(Z(J))", omega_subgroup(P, Z, n), {L1('a', pw(2, 2 * m + h - 1))});
                eq_line("Omega_n(Z(J))", omega_subgroup(P, Z, n), {L1('b', pw(2, 2 * m + h - 1))});
            }
            member("", {L1('a', pw(2, 2 * m + h - 1))});
            member("", {L2('c', s, 'a', u), L2('c', s, 'b', u)});
            member("", {L1('c', pw(2, m + h))});
        }
    } else if (pr.tag == CaseTag::Case3_AlphaMinus) {
        c.aux.push_back(line("Z_4(J) inside N_p", is_subset(P, Zk(4), N)));
        auto inv = drop_ones(abelian_invariants(P, c.np));
        c.aux.push_back(line("closed form invariants " + ints_text(inv), inv == std::vector<Int>{27, 9, 3}));
    }
    return c;
}

// Readings of two relations whose typeset exponents are in doubt.

bool TypoCandidate::holds_everywhere() const {
    return !holds.empty() && std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

namespace {

std::string instance_name(const Params& pr) {
    return "(" + to_string(pr.alpha) + "," + to_string(pr.gamma) + "," + to_string(pr.p) + ")";
}

void settle(TypoResolution& r) {
    std::string found;
    int count = 0;
    for (const auto& c : r.candidates)
        if (c.holds_everywhere()) {
            found = c.reading;
            ++count;
        }
    r.resolved = count == 1 ? found : "";
}

}  // namespace

TypoResolution resolve_power_relation(const std::vector<const JGroup*>& groups) {
    TypoResolution r;
    r.relation = "power relation among a, b, c in Case 2";
    const std::vector<std::pair<std::string, std::pair<bool, bool>>> readings = {
        {"a^{3^{3m-2}} = c^{2m-1} = b^{2^{3m-2}} (as typeset)", {true, true}},
        {"a^{2^{3m-2}} = c^{2^{2m-1}} = b^{2^{3m-2}}", {false, false}},
        {"a^{2^{3m-2}} = c^{2m-1} = b^{2^{3m-2}}", {false, true}},
        {"a^{3^{3m-2}} = c^{2^{2m-1}} = b^{2^{3m-2}}", {true, false}},
    };
    for (const auto& [name, flags] : readings) r.candidates.push_back({name, {}});
    for (const JGroup* J : groups) {
        if (case_family(J->params.tag) != 2) throw Error(ErrorKind::Usage, "the power relation needs Case 2");
        const int m = J->params.m;
        r.instances.push_back(instance_name(J->params));
        const auto& P = J->pres;
        Elem base = eval_word(*J, {{'a', pw(2, 2 * m - 1)}, {'b', pw(2, 2 * m - 1)}});
        Elem bb = eval_word(*J, {{'b', pw(2, 3 * m - 2)}});
        for (std::size_t k = 0; k < readings.size(); ++k) {
            const auto& [three_a, linear_c] = readings[k].second;
            Elem aa = eval_word(*J, {{'a', three_a ? pw(3, 3 * m - 2) : pw(2, 3 * m - 2)}});
            Elem cc = eval_word(*J, {{'c', linear_c ? Int(2 * m - 1) : pw(2, 2 * m - 1)}});
            r.candidates[k].holds.push_back(is_identity(base) && aa == cc && cc == bb);
        }
        (void)P;
    }
    settle(r);
    return r;
}

TypoResolution resolve_generator_reading(const std::vector<const JGroup*>& groups) {
    TypoResolution r;
    r.relation = "second generator of N_2 for h = 1";
    r.candidates = {{"a^{2^{2m+1-n}}, b^{2^{2m+1-n}}", {}}, {"a^{2m+1-n}, b^{2m+1-n} (as typeset)", {}}};
    for (const JGroup* J : groups) {
        if (J->params.tag != CaseTag::Case2_hEq1 || J->params.n == 0)
            throw Error(ErrorKind::Usage, "the generator reading needs Case 2 with h = 1 and n > 0");
        r.instances.push_back(instance_name(J->params));
        PcSubgroup N = compute_Np(*J).np;
        for (int k = 0; k < 2; ++k) {
            auto c = closed_form_Np(*J, k == 0 ? GeneratorReading::PowerOfTwo : GeneratorReading::Typeset);
            r.candidates[k].holds.push_back(c.np == N && c.alt == N);
        }
    }
    settle(r);
    return r;
}

TypoResolution resolve_relation_signs(const std::vector<const JGroup*>& groups) {
    TypoResolution r;
    r.relation = "signs in the h = 1 quotient relations";
    r.candidates = {{"a^{2^m(1+2^{m-n})} b^{2^m} = 1 = b^{2^m(1+2^{m-n})} a^{2^m} (as typeset)", {}},
                    {"a^{2^m(1+2^{m-n})} b^{-2^m} = 1 = b^{2^m(1+2^{m-n})} a^{-2^m}", {}}};
    for (const JGroup* J : groups) {
        const auto& pr = J->params;
        if (pr.tag != CaseTag::Case2_hEq1 || pr.n == 0)
            throw Error(ErrorKind::Usage, "the relation signs need Case 2 with h = 1 and n > 0");
        r.instances.push_back(instance_name(pr));
        PcSubgroup N = compute_Np(*J).np;
        Int s = pw(2, pr.m), t = s * (1 + pw(2, pr.m - pr.n));
        for (int k = 0; k < 2; ++k) {
            Int e = k == 0 ? s : Int(-s);
            bool ok = contains(J->pres, N, eval_word(*J, {{'a', t}, {'b', e}})) &&
                      contains(J->pres, N, eval_word(*J, {{'b', t}, {'a', e}}));
            r.candidates[k].holds.push_back(ok);
        }
    }
    settle(r);
    return r;
}

TypoResolution resolve_np_type(const std::vector<const JGroup*>& groups) {
    if (groups.empty()) throw Error(ErrorKind::Usage, "the type of N_2 needs at least one group");
    const CaseTag tag = groups.front()->params.tag;
    TypoResolution r;
    if (tag == CaseTag::Case2_hEq1) {
        r.relation = "isomorphism type of N_2 for h = 1";
        r.candidates = {{"C_{2^{m+n-2}} x C_{2^{m-1}} x C_{2^{m-1}} (as typeset)", {}},
                        {"C_{2^{2m-2}} x C_{2^{m-1}} x C_{2^{n-1}}", {}}};
    } else {
        r.relation = "isomorphism type of N_2 for h >= 2";
        r.candidates = {{"C_{2^{2n-1}} x C_{2^n} x C_{2^n} (as typeset)", {}},
                        {"C_{2^{2n}} x C_{2^n} x C_{2^{n-1}}", {}}};
    }
    for (const JGroup* J : groups) {
        const auto& pr = J->params;
        if ((tag != CaseTag::Case2_hEq1 && tag != CaseTag::Case2_hGe2) || pr.tag != tag || pr.n == 0)
            throw Error(ErrorKind::Usage, "the type of N_2 needs Case 2 groups with n > 0 and a common h branch");
        r.instances.push_back(instance_name(pr));
        PcSubgroup N = compute_Np(*J).np;
        auto inv = drop_ones(abelian_invariants(J->pres, N));
        const int m = pr.m, n = pr.n;
        std::vector<Int> typeset, corrected;
        if (tag == CaseTag::Case2_hEq1) {
            typeset = {pw(2, m + n - 2), pw(2, m - 1), pw(2, m - 1)};
            corrected = {pw(2, 2 * m - 2), pw(2, m - 1), pw(2, n - 1)};
        } else {
            typeset = {pw(2, 2 * n - 1), pw(2, n), pw(2, n)};
            corrected = {pw(2, 2 * n), pw(2, n), pw(2, n - 1)};
        }
        r.candidates[0].holds.push_back(inv == drop_ones(typeset));
        r.candidates[1].holds.push_back(inv == drop_ones(corrected));
    }
    settle(r);
    return r;
}

// W_p.

WpGroup build_Wp(const JGroup& J, const PcSubgroup& np) {
    const auto& pr = J.params;
    if (!is_normal(J.pres, np)) throw Error(ErrorKind::NotNormal, "N_p is not normal in J");
    auto layout = chain_layout(pr);
    if (static_cast<int>(layout.size()) != J.pres.size())
        throw Error(ErrorKind::Construction, "chain layout does not match J");
    for (int i = 0; i < J.pres.size(); ++i) {
        Elem base = letter_elem(J.pres.labels, layout[i].letter);
        if (power(J.pres, base, pw(pr.p, layout[i].digit)) != unit(J.pres, i))
            throw Error(ErrorKind::Construction, "generator " + std::to_string(i + 1) + " is not a letter power");
    }
    WpGroup W;
    W.params = pr;
    W.np = np;
    W.quotient = quotient(J.pres, np);
    const PcPresentation& Q = W.quotient.pres;
    for (int i = 0; i < Q.size(); ++i) W.slots.push_back(layout[W.quotient.kept[i]]);
    Elem a0 = letter_elem(Q.labels, 'a'), b0 = letter_elem(Q.labels, 'b'), c0 = letter_elem(Q.labels, 'c');
    if (pr.n == 0) {
        W.pres = Q;
        W.a0 = a0;
        W.b0 = b0;
        W.c0 = c0;
        return W;
    }
    Int oa = element_order(Q, a0), ob = element_order(Q, b0), oc = element_order(Q, c0);
    Int qk = pr.q * pr.k;
    W.qk_alpha = powm(pr.alpha, qk, oa);
    W.qk_mu = powm(pr.mu, qk, ob);
    W.q_residue = mod(pr.q, oc);
    Elem la = power(Q, a0, W.qk_alpha), lb = power(Q, b0, W.qk_mu), lc = commutator(Q, la, lb);
    GenMap lambda;
    for (const auto& s : W.slots) {
        const Elem& base = s.letter == 'a' ? la : s.letter == 'b' ? lb : lc;
        lambda.images.push_back(power(Q, base, pw(pr.p, s.digit)));
    }
    W.pres = cyclic_extension(Q, lambda, power(Q, c0, W.q_residue), pw(pr.p, pr.n));
    W.d_count = W.pres.size() - Q.size();
    W.a0 = letter_elem(W.pres.labels, 'a');
    W.b0 = letter_elem(W.pres.labels, 'b');
    W.c0 = letter_elem(W.pres.labels, 'c');
    W.d0 = letter_elem(W.pres.labels, 'd');
    return W;
}

Elem wp_element(const WpGroup& W, const LetterWord& w) { return eval_letters(W.pres, w); }
Elem quotient_element(const WpGroup& W, const LetterWord& w) { return eval_letters(W.quotient.pres, w); }

// Order of W.

int v_exponent(const Int& p, const Int& alpha, const Int& gamma) {
    if (gamma <= 0) throw Error(ErrorKind::InvalidInstance, "gamma must be positive");
    if (!is_prime(p)) throw Error(ErrorKind::Usage, "p must be prime");
    Int ag = ipow(alpha, static_cast<unsigned>(gamma));
    if (ag == 1) throw Error(ErrorKind::InvalidInstance, "alpha^gamma = 1");
    const int m = vp(p, ag - 1);
    const int n = vp(p, gamma);
    if (m == 0) return n;
    const int h = vp(p, alpha - 1);
    if (p == 2) {
        if (n == 0) return 7 * m - 3;
        if (h > 1) return 7 * m - 3 * n - 2;
        if (alpha != -1) return 4 * m + 1;
        throw Error(ErrorKind::InvalidInstance, "alpha = -1 needs odd gamma");
    }
    if (p == 3 && mod(ag, 9) == 7) return mod(alpha, 3) == 1 ? 10 : 4;
    if (mod(alpha, p) == 1) return 7 * m - 3 * n;
    if (mod(alpha + 1, p) == 0) return 4 * m;
    return 3 * m + n;
}

std::vector<std::pair<Int, int>> order_of_W(const Int& alpha, const Int& gamma) {
    Int d = ipow(alpha, static_cast<unsigned>(gamma)) - 1;
    if (d == 0) throw Error(ErrorKind::InvalidInstance, "alpha^gamma = 1");
    std::set<Int> primes;
    for (auto& [q, e] : factorize(d < 0 ? Int(-d) : d)) primes.insert(q);
    if (gamma > 1)
        for (auto& [q, e] : factorize(gamma)) primes.insert(q);
    std::vector<std::pair<Int, int>> out;
    for (const auto& q : primes) out.emplace_back(q, v_exponent(q, alpha, gamma));
    return out;
}

// Nilpotency class.

NilpotencyForm nilpotency_class_Wp(const Params& pr) {
    NilpotencyForm f;
    const Int& p = pr.p;
    const int m = pr.m, h = pr.h, n = pr.n;
    auto general = [&](int step, int cls, const std::string& branch) {
        f.branch = branch;
        f.cls = cls;
        for (int i = 1; i < cls; ++i)
            f.levels.push_back({L1('a', pw(p, i * step)), L1('b', pw(p, i * step)), L1('c', pw(p, (i - 1) * step))});
    };
    auto five = [&](const std::string& branch) {
        f.branch = branch;
        f.cls = 5;
        f.levels = {{L1('a', pw(p, h)), L1('b', pw(p, h)), L1('c', 1)},
                    {L1('a', pw(p, m)), L1('b', pw(p, m)), L1('c', pw(p, h))},
                    {L1('a', pw(p, m + h)), L1('c', pw(p, m))},
                    {L1('a', pw(p, 2 * m))}};
        if (p == 2 && n == 0) {
            // c0^{2^m} alone is not in gamma_4 when N_2 = 1
            f.levels[2] = {L1('a', pw(p, m + h)), L2('a', pw(p, 2 * m - 1), 'c', pw(p, m))};
            f.note = "gamma_4 uses a0^{2^{2m-1}} c0^{2^m}";
        }
    };
    switch (pr.tag) {
        case CaseTag::GammaOnly:
            f.branch = "cyclic";
            f.cls = 1;
            break;
        case CaseTag::Case1_hPos:
            if (h > n)
                five("Case 1, h > n");
            else
                general(h, ceil_div(m, h) + 2, "Case 1, 0 < h <= n");
            break;
        case CaseTag::Case1_NotPm1: {
            Int top = pw(p, m + 1);
            int s = vp(p, mod(powm(pr.alpha, pr.k, top) - 1, top));
            general(s, ceil_div(m, s) + 1, "Case 1, alpha != +-1 mod p");
            break;
        }
        case CaseTag::Case1_MinusOne: {
            const int h0 = *pr.h0;
            if (h0 > n) {
                f.branch = "Case 1, alpha = -1 mod p, h0 > n";
                f.cls = 3;
                f.levels = {{L1('a', pw(p, h0)), L1('b', pw(p, h0)), L1('c', 1)},
                            {L1('a', pw(p, m)), L1('b', pw(p, m)), L1('c', pw(p, h0))}};
            } else {
                general(h0, ceil_div(m, h0) + 1, "Case 1, alpha = -1 mod p, h0 <= n");
            }
            break;
        }
        case CaseTag::Case2_hGe2:
            if (h > n)
                five("Case 2, h > n, h > 1");
            else
                general(h, ceil_div(m, h) + 2, "Case 2, 1 < h <= n");
            break;
        case CaseTag::Case2_hEq1:
            if (n > 0) {
                general(1, 2 * m + 1 - n, "Case 2, h = 1, n > 0");
            } else {
                f.branch = "Case 2, h = 1, n = 0";
                f.cls = 3;
            }
            break;
        case CaseTag::Case2_AlphaMinus1:
            f.branch = "Case 2, alpha = -1";
            f.cls = 3;
            break;
        case CaseTag::Case3_AlphaPlus:
            f.branch = "Case 3, alpha = 1 mod 3";
            f.cls = 7;
            break;
        case CaseTag::Case3_AlphaMinus:
            f.branch = "Case 3, alpha = -1 mod 3";
            f.cls = 3;
            f.levels = {{L1('a', 3), L1('c', 1)}, {L1('a', 3)}};
            break;
    }
    return f;
}

// Derived length.

int derived_length_W(const Int& alpha, const Int& gamma) {
    if ((alpha == -1 && gamma % 2 != 0) || (alpha == 3 && gamma == 1)) return 2;
    return 3;
}

std::vector<std::pair<Int, int>> commutator_subgroup_parts(const Int& alpha, const Int& gamma) {
    Int d = ipow(alpha, static_cast<unsigned>(gamma)) - 1;
    if (d == 0) throw Error(ErrorKind::InvalidInstance, "alpha^gamma = 1");
    std::vector<std::pair<Int, int>> out;
    for (auto& [q, e] : factorize(d < 0 ? Int(-d) : d)) {
        Params pr = classify(alpha, gamma, q);
        int len = 2;
        if (pr.h > 0 && q == 2 && pr.h == 1 && pr.n == 0) len = 1;
        out.emplace_back(q, len);
    }
    return out;
}

int computed_commutator_part_length(const WpGroup& W) {
    const auto& P = W.pres;
    Int e = pw(W.params.p, W.params.h);
    PcSubgroup H = subgroup(P, {power(P, W.a0, e), power(P, W.b0, e), W.c0});
    auto ds = derived_series_of(P, H);
    if (!ds.back().igs.empty()) throw Error(ErrorKind::Formula, "derived series does not reach 1");
    return static_cast<int>(ds.size()) - 1;
}

// Normal forms.

std::optional<std::vector<Int>> normal_form_ranges(const Params& pr, bool with_d) {
    const Int& p = pr.p;
    const int m = pr.m, h = pr.h, n = pr.n;
    std::vector<Int> r;
    switch (pr.tag) {
        case CaseTag::Case1_hPos:
            r = {pw(p, m + 2 * h), pw(p, m + h), pw(p, m + h)};
            break;
        case CaseTag::Case1_NotPm1:
            r = {pw(p, m), pw(p, m), pw(p, m)};
            break;
        case CaseTag::Case1_MinusOne:
            r = {pw(p, m + *pr.h0), pw(p, m), pw(p, m)};
            break;
        case CaseTag::Case2_hGe2:
            if (n == 0) return std::nullopt;
            r = {pw(2, m + 2 * h), pw(2, m + h - 1), pw(2, m + h - 1)};
            break;
        case CaseTag::Case2_hEq1:
            if (n == 0) return std::nullopt;
            r = {pw(2, 2 * m + 1 - n), pw(2, m), pw(2, m)};
            break;
        default:
            return std::nullopt;
    }
    if (with_d) r.push_back(pw(p, n));
    return r;
}

namespace {

struct ElemHash {
    std::size_t operator()(const Elem& x) const {
        std::size_t h = 1469598103934665603ULL;
        for (Exp e : x) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ULL;
        return h;
    }
};

}  // namespace

std::optional<NormalFormCount> count_normal_forms(const WpGroup& W, bool with_d, std::uint64_t max_enumerate) {
    auto ranges = normal_form_ranges(W.params, with_d);
    if (!ranges) return std::nullopt;
    const PcPresentation& P = with_d ? W.pres : W.quotient.pres;
    NormalFormCount c;
    c.ranges = *ranges;
    c.product = 1;
    for (const auto& r : c.ranges) c.product *= r;
    c.order = P.order();
    if (c.product > Int(max_enumerate)) return c;
    std::vector<Elem> base = {eval_letters(P, {{'a', 1}}), eval_letters(P, {{'b', 1}}), eval_letters(P, {{'c', 1}})};
    if (with_d) base.push_back(W.extended() ? W.d0 : identity(P));
    std::vector<std::vector<Elem>> pows(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
        Elem x = identity(P);
        for (Int e = 0; e < c.ranges[k]; ++e) {
            pows[k].push_back(x);
            x = multiply(P, x, base[k]);
        }
    }
    // Suffix products first so each tuple costs one multiplication.
    std::vector<Elem> tail = pows.back();
    for (int k = static_cast<int>(base.size()) - 2; k >= 1; --k) {
        std::vector<Elem> next;
        next.reserve(pows[k].size() * tail.size());
        for (const auto& x : pows[k])
            for (const auto& y : tail) next.push_back(multiply(P, x, y));
        tail = std::move(next);
    }
    std::unordered_set<Elem, ElemHash> seen;
    seen.reserve(static_cast<std::size_t>(c.product));
    for (const auto& x : pows[0])
        for (const auto& y : tail) seen.insert(multiply(P, x, y));
    c.distinct = seen.size();
    c.enumerated = true;
    return c;
}

// Presentations as text.

namespace {

struct PowerBounds {
    Int a, b, c;  // exponents killing a0, b0, c0 by the relations
};

PowerBounds power_bounds(const Params& pr) {
    const Int& p = pr.p;
    const int m = pr.m, h = pr.h, n = pr.n;
    switch (pr.tag) {
        case CaseTag::Case1_hPos:
            return {pw(p, m + 2 * h), pw(p, m + 2 * h), pw(p, m + h)};
        case CaseTag::Case1_NotPm1:
            return {pw(p, m), pw(p, m), pw(p, m)};
        case CaseTag::Case1_MinusOne:
            return {pw(p, m + *pr.h0), pw(p, m + *pr.h0), pw(p, m)};
        case CaseTag::Case2_hGe2:
            return {pw(2, m + 2 * h), pw(2, m + 2 * h), pw(2, m + h)};
        case CaseTag::Case2_hEq1:
            return {pw(2, 2 * m + 1 - n), pw(2, 2 * m + 1 - n), pw(2, m + 1)};
        case CaseTag::Case3_AlphaMinus:
            return {9, 9, 3};
        default:
            return {pr.order_b, pr.order_b, 0};
    }
}

bool trivial_np(const Params& pr) {
    switch (pr.tag) {
        case CaseTag::Case2_hGe2:
        case CaseTag::Case2_hEq1:
            return pr.n == 0;
        case CaseTag::Case2_AlphaMinus1:
        case CaseTag::Case3_AlphaPlus:
            return true;
        case CaseTag::Case1_hPos:
            return pr.n == 0;
        default:
            return false;
    }
}

}  // namespace

std::string quotient_fp_text(const WpGroup& W, bool typeset_signs) {
    const auto& pr = W.params;
    if (trivial_np(pr)) return j_fp_text(pr);
    const Int& p = pr.p;
    const int m = pr.m, h = pr.h, n = pr.n;
    PowerBounds B = power_bounds(pr);
    Int A = sym_residue(powm(pr.alpha, pr.gamma, B.a), B.a);
    Int Ab = sym_residue(powm(pr.alpha, pr.gamma, B.b), B.b);
    std::ostringstream os;
    os << "# G_p/N_p for alpha=" << pr.alpha << " gamma=" << pr.gamma << " p=" << p << "\n";
    os << "generators: a, b, c\n";
    auto rel0 = [&] {
        os << "c = [a,b]\n";
        os << "a^c = a^" << A << "\n";
        os << "c b c^-1 = b^" << Ab << "\n";
    };
    switch (pr.tag) {
        case CaseTag::Case1_hPos:
            rel0();
            os << "a^" << pw(p, m + 2 * h) << "\n";
            os << "a^" << pw(p, m + h) << " b^" << pw(p, m + h) << "\n";
            os << "b^" << pw(p, m + 2 * h) << "\n";
            os << "c^" << pw(p, m + h) << "\n";
            break;
        case CaseTag::Case1_NotPm1:
            os << "c = [a,b]\n[a,c]\n[b,c]\n";
            os << "a^" << pw(p, m) << "\nb^" << pw(p, m) << "\nc^" << pw(p, m) << "\n";
            break;
        case CaseTag::Case1_MinusOne: {
            rel0();
            Int s = pw(p, m);
            os << "a^" << B.a << "\n";
            os << "a^" << sym_residue(s * (pr.alpha - 1), B.a) << " = b^" << sym_residue(s * (pr.mu - 1), B.b)
               << "\n";
            os << "b^" << B.b << "\n";
            os << "c^" << s << "\n";
            break;
        }
        case CaseTag::Case2_hGe2: {
            rel0();
            Int s = pw(2, m + h - 1), u = pw(2, 2 * m + h - 2), t = s * (1 + pw(2, h));
            os << "a^" << B.a << "\nb^" << B.b << "\n";
            os << "a^" << u << " c^" << s << "\n";
            os << "b^" << u << " c^" << s << "\n";
            os << "a^" << t << " b^" << s << "\n";
            os << "a^" << s << " b^" << t << "\n";
            break;
        }
        case CaseTag::Case2_hEq1: {
            rel0();
            Int s = pw(2, m), t = s * (1 + pw(2, m - n));
            os << "a^" << B.a << "\nb^" << B.b << "\n";
            os << "a^" << pw(2, 2 * m - 1) << " c^" << s << "\n";
            os << "b^" << pw(2, 2 * m - 1) << " c^" << s << "\n";
            Int e = typeset_signs ? s : Int(-s);
            os << "a^" << t << " b^" << e << "\n";
            os << "b^" << t << " a^" << e << "\n";
            break;
        }
        case CaseTag::Case3_AlphaMinus:
            os << "a^c = a^-2\nb^c = b^4\na^9\nb^9\nc^3\na^3 = b^3\n[a,b] = c\n";
            break;
        default:
            throw Error(ErrorKind::Unsupported, "no quotient presentation for this case");
    }
    return os.str();
}

std::string wp_fp_text(const WpGroup& W, bool typeset_signs) {
    const auto& pr = W.params;
    if (pr.n == 0) return quotient_fp_text(W, typeset_signs);
    PowerBounds B = power_bounds(pr);
    std::string q = quotient_fp_text(W, typeset_signs);
    auto pos = q.find("generators: a, b, c");
    if (pos == std::string::npos) throw Error(ErrorKind::Unsupported, "quotient text has no c");
    q.replace(pos, 19, "generators: a, b, c, d");
    auto first = q.find('\n');
    q.replace(0, first, "# W_p for alpha=" + to_string(pr.alpha) + " gamma=" + to_string(pr.gamma) +
                            " p=" + to_string(pr.p));
    Int qk = pr.q * pr.k;
    std::ostringstream os;
    os << q;
    os << "a^d = a^" << sym_residue(powm(pr.alpha, qk, B.a), B.a) << "\n";
    os << "d b d^-1 = b^" << sym_residue(powm(pr.alpha, qk, B.b), B.b) << "\n";
    os << "d^" << pw(pr.p, pr.n) << " = c^" << sym_residue(pr.q, B.c) << "\n";
    return os.str();
}

std::string general_fp_text(const Int& alpha, const Int& beta, const Int& gamma) {
    if (gamma <= 0) throw Error(ErrorKind::InvalidInstance, "gamma must be positive");
    const Int limit = Int(1) << 31;
    Int ag = ipow(alpha, static_cast<unsigned>(gamma)), bg = ipow(beta, static_cast<unsigned>(gamma));
    if (ag == 1 || bg == 1) throw Error(ErrorKind::InvalidInstance, "alpha^gamma and beta^gamma must differ from 1");
    if (ag >= limit || -ag >= limit || bg >= limit || -bg >= limit) throw Error(ErrorKind::Usage, "exponents too large for a text file");
    std::ostringstream os;
    os << "# W(" << alpha << "," << beta << "," << gamma << ")\n";
    os << "generators: a, b, d\n";
    os << "a^[a,b] = a^" << ag << "\n";
    os << "[a,b] b [a,b]^-1 = b^" << bg << "\n";
    for (Int i = 1; i < gamma; ++i)
        os << "[a^" << ipow(alpha, static_cast<unsigned>(i)) << ", "
           << (i == 1 ? std::string("d^-1 b d") : "d^-" + to_string(i) + " b d^" + to_string(i)) << "] = [a,b]\n";
    os << "a^d = a^" << alpha << "\n";
    os << "d b d^-1 = b^" << beta << "\n";
    os << "d^" << gamma << " = [a,b]\n";
    return os.str();
}

GenMap fp_assignment(const WpGroup& W, const FpPresentation& fp, bool on_quotient) {
    const PcPresentation& P = on_quotient ? W.quotient.pres : W.pres;
    GenMap g;
    for (const auto& name : fp.generators) {
        if (name.size() != 1) throw Error(ErrorKind::Usage, "unexpected generator " + name);
        if (name == "d" && !(W.extended() && !on_quotient)) throw Error(ErrorKind::Usage, "no d0 here");
        g.images.push_back(name == "d" ? W.d0 : letter_elem(P.labels, name[0]));
    }
    return g;
}

AutomorphismCheck swap_automorphism(const WpGroup& W, bool on_quotient) {
    const PcPresentation& P = on_quotient ? W.quotient.pres : W.pres;
    const int s = on_quotient ? 0 : W.d_count;
    Elem a = letter_elem(P.labels, 'a'), b = letter_elem(P.labels, 'b');
    Elem ci = inverse(P, letter_elem(P.labels, 'c'));
    GenMap sigma;
    for (int k = 0; k < s; ++k) sigma.images.push_back(power(P, inverse(P, W.d0), pw(W.params.p, k)));
    for (const auto& slot : W.slots) {
        const Elem& base = slot.letter == 'a' ? b : slot.letter == 'b' ? a : ci;
        sigma.images.push_back(power(P, base, pw(W.params.p, slot.digit)));
    }
    AutomorphismCheck r;
    r.violations = verify_map(P, P, sigma);
    r.surjective = subgroup(P, sigma.images) == whole_group(P);
    return r;
}

// Formula suites.

std::vector<CheckLine> formula_suite(const JGroup& J, int bound) {
    std::vector<CheckLine> out;
    const int fam = case_family(J.params.tag);
    const char* names[] = {"[c^i,a^j]", "[c^i,b^j]", "[a^i,b^j]"};
    for (int k = 0; k < 3; ++k) {
        if (k == 2 && fam == 3) continue;
        long bad = 0, total = 0;
        for (int i = -bound; i <= bound; ++i)
            for (int j = -bound; j <= bound; ++j) {
                ++total;
                if (comm_formula(J, i, j, static_cast<CommKind>(k)) != comm_direct(J, i, j, static_cast<CommKind>(k)))
                    ++bad;
            }
        out.push_back(line(std::string("closed ") + names[k], bad == 0,
                           std::to_string(bad) + " mismatches of " + std::to_string(total)));
    }
    if (fam == 1) {
        long bad = 0, total = 0;
        for (int i = -bound; i <= bound; ++i)
            for (int j = -bound; j <= bound; ++j) {
                ++total;
                if (!final_commutator_chi(J, i, j).pass()) ++bad;
            }
        out.push_back(line("chi form of [a^i,b^j]", bad == 0,
                           std::to_string(bad) + " mismatches of " + std::to_string(total)));
    }
    if (fam == 3) {
        for (auto sel : all_case3_selectors()) {
            const int ar = case3_arity(sel);
            std::vector<std::vector<Int>> argsets;
            if (ar == 0) {
                argsets = {{}};
            } else if (ar == 1) {
                for (int i = -bound; i <= bound; ++i) argsets.push_back({i});
            } else {
                std::vector<Int> cur;
                const int lead = ar - 2;
                std::function<void(int)> rec = [&](int pos) {
                    if (pos == ar) {
                        argsets.push_back(cur);
                        return;
                    }
                    int lo = pos < lead ? -1 : -bound, hi = pos < lead ? 1 : bound;
                    for (int v = lo; v <= hi; ++v) {
                        cur.push_back(v);
                        rec(pos + 1);
                        cur.pop_back();
                    }
                };
                rec(0);
            }
            long bad = 0;
            for (const auto& args : argsets)
                if (case3_lhs(J, sel, args) != case3_word_formula(J, sel, args)) ++bad;
            out.push_back(line(std::string("identity ") + case3_sel_name(sel), bad == 0,
                               std::to_string(bad) + " mismatches of " + std::to_string(argsets.size())));
        }
    }
    for (auto& l : structural_constants(J)) out.push_back(std::move(l));
    if (case_family(J.params.tag) != 1) return out;
    long bad = 0;
    auto basics = basic_commutators(J);
    for (const auto& b : basics)
        if (b.closed != b.collected) ++bad;
    out.push_back(line("basic commutators", bad == 0,
                       std::to_string(bad) + " mismatches of " + std::to_string(basics.size())));
    return out;
}

// Reports.

bool StructureReport::green() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::vector<std::string> StructureReport::mismatches() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.pass) out.push_back(c.detail.empty() ? c.name : c.name + ": " + c.detail);
    return out;
}

namespace {

template <class F>
void guarded(StructureReport& r, const std::string& name, F&& f) {
    try {
        f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Budget)
            r.skipped.push_back(name + ": " + e.what());
        else
            r.checks.push_back(line(name, false, e.what()));
    } catch (const std::exception& e) {
        r.checks.push_back(line(name, false, e.what()));
    }
}

void add_cross_check(StructureReport& r, const std::string& name, const CrossCheck& cc) {
    std::string detail = "index " + to_string(cc.index) + " times " + to_string(cc.subgroup_bound) + " = " +
                         to_string(cc.tc_order) + ", pc order " + to_string(cc.pc_order);
    if (!cc.violations.empty()) detail += ", " + cc.violations.front();
    if (!cc.enumerated && cc.violations.empty()) {
        r.checks.push_back(line(name + " relators hold", cc.relators_hold && cc.surjective));
        r.skipped.push_back(name + ": coset enumeration over budget");
        return;
    }
    r.checks.push_back(line(name, cc.pass(), detail));
}

}  // namespace

StructureReport verify_instance(const Int& alpha, const Int& gamma, const Int& p, const ReportOptions& opt) {
    StructureReport r;
    r.params = classify(alpha, gamma, p);
    const Params& pr = r.params;
    if (pr.tag == CaseTag::GammaOnly) {
        r.cyclic = true;
        r.np_form = "none, p divides gamma only";
        r.order_J = r.order_J_closed = 1;
        r.order_Np = r.order_Np_closed = 1;
        r.order_quotient = r.order_quotient_closed = 1;
        r.order_Wp = pw(p, pr.n);
        r.order_Wp_closed = pw(p, v_exponent(p, alpha, gamma));
        r.np_invariants_closed = std::vector<Int>{};
        r.class_computed = r.class_formula = 1;
        r.checks.push_back(pair_line("|W_p| cyclic of order p^n", r.order_Wp, r.order_Wp_closed));
        return r;
    }

    JGroup J;
    try {
        J = build_J(pr);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Budget)
            r.skipped.push_back(std::string("build J: ") + e.what());
        else
            r.checks.push_back(line("build J", false, e.what()));
        return r;
    } catch (const std::exception& e) {
        r.checks.push_back(line("build J", false, e.what()));
        return r;
    }
    r.order_J = J.pres.order();
    r.order_J_closed = sylow_order_J(pr.alpha0, p, pr.m);
    r.checks.push_back(pair_line("|J|", r.order_J, r.order_J_closed));
    r.checks.push_back(line("J is a central chain", J.central_chain));
    r.checks.push_back(line("relator and formula routes agree", J.formula_route_agrees, J.formula_route_note));

    GeneratorReading reading = GeneratorReading::PowerOfTwo;
    bool typeset_signs = false;
    if (case_family(pr.tag) == 2) {
        guarded(r, "power relation reading", [&] {
            r.readings.push_back(resolve_power_relation({&J}));
            const auto& t = r.readings.back();
            r.checks.push_back(line("power relation reading", t.unique(), t.unique() ? t.resolved : "no unique reading"));
        });
    }
    if (pr.tag == CaseTag::Case2_hEq1 && pr.n > 0) {
        guarded(r, "generator reading", [&] {
            r.readings.push_back(resolve_generator_reading({&J}));
            const auto& t = r.readings.back();
            r.checks.push_back(line("generator reading", t.unique(), t.unique() ? t.resolved : "no unique reading"));
            if (t.unique() && t.resolved == t.candidates[1].reading) reading = GeneratorReading::Typeset;
        });
        guarded(r, "relation signs", [&] {
            r.readings.push_back(resolve_relation_signs({&J}));
            const auto& t = r.readings.back();
            r.checks.push_back(line("relation signs", t.unique(), t.unique() ? t.resolved : "no unique reading"));
            if (t.unique() && t.resolved == t.candidates[0].reading) typeset_signs = true;
        });
    }
    if ((pr.tag == CaseTag::Case2_hEq1 || pr.tag == CaseTag::Case2_hGe2) && pr.n > 0) {
        guarded(r, "type of N_2", [&] {
            r.readings.push_back(resolve_np_type({&J}));
            const auto& t = r.readings.back();
            r.checks.push_back(line("type of N_2", t.unique(), t.unique() ? t.resolved : "no unique reading"));
        });
    }

    NpComputation npc;
    try {
        npc = compute_Np(J, opt.seed);
    } catch (const std::exception& e) {
        r.checks.push_back(line("compute N_p", false, e.what()));
        return r;
    }
    r.checks.push_back(line("V_i inside Z_" + std::to_string(npc.level), true,
                            to_string(npc.generated) + " elements, period " + to_string(npc.period)));
    if (npc.reduced)
        r.checks.push_back(line("period reduction", npc.sampled > 0, to_string(npc.sampled) + " sampled"));
    if (npc.short_closure_agrees)
        r.checks.push_back(line("closure of V_1..V_{p^n-1} equals N_p", *npc.short_closure_agrees));
    r.order_Np = subgroup_order(J.pres, npc.np);
    r.np_invariants = drop_ones(abelian_invariants(J.pres, npc.np));

    if (opt.np) {
        guarded(r, "closed form of N_p", [&] {
            ClosedNp c = closed_form_Np(J, reading, &npc.np);
            r.np_form = c.form;
            r.order_Np_closed = c.order;
            r.order_quotient_closed = c.quotient_order;
            r.np_invariants_closed = c.invariants;
            r.checks.push_back(line("closed form equals N_p", c.np == npc.np, gens_text(c.gens)));
            if (c.has_alt) r.checks.push_back(line("second generating set agrees", c.forms_agree(), gens_text(c.alt_gens)));
            r.checks.push_back(pair_line("|N_p|", r.order_Np, c.order));
            if (c.invariants)
                r.checks.push_back(line("N_p invariants", r.np_invariants == *c.invariants,
                                        ints_text(r.np_invariants) + " vs " + ints_text(*c.invariants)));
            for (auto& a : c.aux) r.checks.push_back(std::move(a));
        });
    }

    WpGroup W;
    try {
        W = build_Wp(J, npc.np);
    } catch (const std::exception& e) {
        r.checks.push_back(line("build W_p", false, e.what()));
        return r;
    }
    r.order_quotient = W.quotient.pres.order();
    r.order_Wp = W.pres.order();
    r.order_Wp_closed = pw(p, v_exponent(p, alpha, gamma));
    if (r.order_quotient_closed == 0) r.order_quotient_closed = r.order_Wp_closed / pw(p, pr.n);
    if (r.order_Np_closed == 0) r.order_Np_closed = r.order_J_closed / r.order_quotient_closed;
    r.checks.push_back(pair_line("|G_p/N_p|", r.order_quotient, r.order_quotient_closed));
    r.checks.push_back(pair_line("|G_p/N_p| = |J|/|N_p|", r.order_quotient, r.order_J / r.order_Np));
    r.checks.push_back(pair_line("|W_p| = p^v", r.order_Wp, r.order_Wp_closed));
    r.checks.push_back(pair_line("|W_p| = p^n |G_p|/|N_p|", r.order_Wp, pw(p, pr.n) * r.order_J / r.order_Np));
    r.checks.push_back(line("W_p consistent", consistency_check(W.pres).empty()));
    if (W.extended()) {
        guarded(r, "extension relations", [&] {
            const auto& P = W.pres;
            bool ok = power(P, W.d0, pw(p, pr.n)) == power(P, W.c0, W.q_residue) &&
                      conjugate(P, W.a0, W.d0) == power(P, W.a0, W.qk_alpha) &&
                      conjugate(P, W.b0, W.d0) == power(P, W.b0, W.qk_mu);
            r.checks.push_back(line("d0^{p^n} = c0^q and conjugation by d0", ok));
        });
    }

    guarded(r, "normal forms", [&] {
        for (bool with_d : {false, true}) {
            auto c = count_normal_forms(W, with_d, opt.max_enumerate);
            if (!c) continue;
            std::string name = with_d ? "normal forms of W_p" : "normal forms of G_p/N_p";
            if (!c->enumerated) {
                r.checks.push_back(pair_line(name + " ranges multiply to the order", c->product, c->order));
                r.skipped.push_back(name + ": enumeration over budget");
                continue;
            }
            std::string detail = "ranges " + ints_text(c->ranges) + ", " +
                                 (c->enumerated ? to_string(c->distinct) + " distinct" : "not enumerated") +
                                 ", order " + to_string(c->order);
            r.checks.push_back(line(name, c->pass(), detail));
        }
    });

    if (opt.series) {
        guarded(r, "lower central series", [&] {
            auto lc = series(W.pres, SeriesKind::LowerCentral);
            bool reaches = lc.back().igs.empty();
            r.class_computed = reaches ? static_cast<int>(lc.size()) - 1 : -1;
            NilpotencyForm f = nilpotency_class_Wp(pr);
            r.class_formula = f.cls;
            r.checks.push_back(line("nilpotency class", r.class_computed == r.class_formula,
                                    std::to_string(r.class_computed) + " vs " + std::to_string(r.class_formula) + ", " +
                                        f.branch + (f.note.empty() ? "" : ", " + f.note)));
            for (std::size_t i = 0; i < f.levels.size(); ++i) {
                SeriesLevel lv;
                lv.index = static_cast<int>(i) + 2;
                PcSubgroup closed = span(W.pres, f.levels[i]);
                PcSubgroup got = i + 1 < lc.size() ? lc[i + 1] : trivial_subgroup();
                lv.computed = igs_text(W.pres, got);
                lv.closed.clear();
                for (const auto& w : f.levels[i]) lv.closed.push_back(word_string(w));
                lv.equal = closed == got;
                r.checks.push_back(line("gamma_" + std::to_string(lv.index) + " = " + gens_text(f.levels[i]), lv.equal));
                r.series.push_back(std::move(lv));
            }
        });
        guarded(r, "derived length", [&] {
            r.derived_computed = computed_commutator_part_length(W);
            int len = 2;
            if (pr.h > 0 && p == 2 && pr.h == 1 && pr.n == 0) len = 1;
            r.derived_formula = len;
            r.checks.push_back(line("derived length of [W,W]_p", r.derived_computed == r.derived_formula,
                                    std::to_string(r.derived_computed) + " vs " + std::to_string(r.derived_formula)));
        });
    }

    guarded(r, "automorphism", [&] {
        auto aq = swap_automorphism(W, true);
        r.checks.push_back(line("a0 <-> b0, c0 -> c0^-1 on G_p/N_p", aq.pass(),
                                aq.violations.empty() ? "" : aq.violations.front()));
        if (W.extended()) {
            auto aw = swap_automorphism(W, false);
            r.checks.push_back(line("extension by d0 -> d0^-1", aw.pass(),
                                    aw.violations.empty() ? "" : aw.violations.front()));
        }
    });

    if (opt.oracle) {
        guarded(r, "coset enumeration", [&] {
            CrossCheckOptions co;
            co.max_cosets = opt.max_cosets;
            FpPresentation qf = parse_fp(quotient_fp_text(W, typeset_signs));
            co.cyclic_subgroup = parse_fp_word(qf, "a");
            CrossCheck cq = cross_check(W.quotient.pres, qf, fp_assignment(W, qf, true), co);
            r.oracle_ran = true;
            r.tc_order_quotient = cq.tc_order;
            r.relations_pass = cq.relators_hold;
            add_cross_check(r, "G_p/N_p presentation", cq);
            if (W.extended()) {
                FpPresentation wf = parse_fp(wp_fp_text(W, typeset_signs));
                co.cyclic_subgroup = parse_fp_word(wf, "a");
                CrossCheck cw = cross_check(W.pres, wf, fp_assignment(W, wf, false), co);
                r.tc_order_Wp = cw.tc_order;
                r.relations_pass = r.relations_pass && cw.relators_hold;
                add_cross_check(r, "W_p presentation", cw);
            } else {
                r.tc_order_Wp = cq.tc_order;
            }
        });
    }

    if (opt.formulas) {
        guarded(r, "formula suite", [&] {
            int bound = 2 * static_cast<int>(pw(p, pr.m)) + 3;
            for (auto& l : formula_suite(J, bound)) r.checks.push_back(std::move(l));
        });
    }
    return r;
}

OrderSummary order_summary(const Int& alpha, const Int& gamma, const std::vector<StructureReport>& reports) {
    OrderSummary s;
    s.formula = 1;
    for (auto& [q, v] : order_of_W(alpha, gamma)) s.formula *= pw(q, v);
    s.pipeline = 1;
    for (const auto& r : reports) s.pipeline *= r.order_Wp;
    return s;
}

}  // namespace wamsley
