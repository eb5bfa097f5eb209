#include "wamsley/macdonald.hpp"

namespace wamsley {

namespace {

void require_m(const Params& P) {
    if (P.m == 0 || case_family(P.tag) == 0) throw Error(ErrorKind::Unsupported, "formulas need m > 0");
}

void require_case3(const Params& P) {
    if (case_family(P.tag) != 3) throw Error(ErrorKind::Usage, "selector needs Case 3 parameters");
}

}  // namespace

Int xi_exponent(const Params& P, const Int& i, const Int& j) {
    require_m(P);
    const int fam = case_family(P.tag);
    const Int& l = P.ell;
    Int brace = 2 * varphi(i + 1) * j + (2 * i - 7) * phi(i) * phi(j) - 2 * i * phi(j) - (3 * i + 1) * i * varphi(j);
    if (fam == 1) {
        Int r = ipow(P.p, P.m);
        if (P.p == 3) brace -= 2 * ipow(3, P.m - 1) * l * phi(i) * phi(j);
        Int r3 = r * r * r;
        return mod(r * r * l * l * brace * mod_inverse(2, r3), r3);
    }
    if (fam == 2) return ipow(2, 2 * P.m - 1) * l * l * brace;
    throw Error(ErrorKind::Unsupported, "xi is defined in Cases 1 and 2");
}

LetterWord comm_formula_word(const Params& P, const Int& i, const Int& j, CommKind kind) {
    require_m(P);
    const int fam = case_family(P.tag);
    const Int& l = P.ell;
    if (fam == 3) {
        switch (kind) {
            case CommKind::CA:
                return {{'a', -3 * l * i * j - 9 * l * l * phi(i) * j + 27 * varphi(i) * j}};
            case CommKind::CB:
                return {{'b', 3 * l * i * j - 9 * l * l * phi(i + 1) * j - 27 * varphi(i + 2) * j}};
            case CommKind::AB:
                throw Error(ErrorKind::Unsupported, "[a^i,b^j] has no general closed form in Case 3");
        }
    }
    Int r = ipow(P.p, P.m);
    switch (kind) {
        case CommKind::CA:
            return {{'a', -r * l * i * j - r * r * l * l * phi(i) * j}};
        case CommKind::CB:
            return {{'b', r * l * i * j - r * r * l * l * phi(i + 1) * j}};
        case CommKind::AB:
            return {{'a', -r * l * phi(i) * j},
                    {'b', r * l * i * phi(j)},
                    {'c', i * j - r * l * phi(i) * phi(j)},
                    {'a', xi_exponent(P, i, j)}};
    }
    return {};
}

const char* case3_sel_name(Case3Sel s) {
    switch (s) {
        case Case3Sel::ABj: return "[a,b^i]";
        case Case3Sel::BAj: return "[b,a^i]";
        case Case3Sel::AB3: return "[a,b^3]";
        case Case3Sel::A3B3: return "[a^3,b^3]";
        case Case3Sel::A3iB3j: return "[a^3i,b^3j]";
        case Case3Sel::ABConjBA: return "[a,b]^(b^3j a^3i)";
        case Case3Sel::AB3iConjA: return "[a,b^3i]^(a^3j)";
        case Case3Sel::AinvB3i: return "[a^-1,b^3i]";
        case Case3Sel::AinvB3iConjA: return "[a^-1,b^3i]^(a^3j)";
        case Case3Sel::A3iBConjB: return "[a^3i,b]^(b^3j)";
        case Case3Sel::A3iBinvConjB: return "[a^3i,b^-1]^(b^3j)";
        case Case3Sel::AinvBinv: return "[a^-1,b^-1]";
        case Case3Sel::AinvBinvConjBA: return "[a^-1,b^-1]^(b^3j a^3i)";
        case Case3Sel::ABinvConjBA: return "[a,b^-1]^(b^3j a^3i)";
        case Case3Sel::AinvBConjBA: return "[a^-1,b]^(b^3j a^3i)";
        case Case3Sel::ShiftPlus: return "[a^(1+3i),b^(1+3j)][a,b]^-1";
        case Case3Sel::ShiftMinus: return "[a^(-1+3i),b^(-1+3j)][a,b]^-1";
        case Case3Sel::General: return "[a^(i+3k),b^(j+3l)]";
    }
    return "?";
}

std::vector<Case3Sel> all_case3_selectors() {
    return {Case3Sel::ABj,  Case3Sel::BAj,  Case3Sel::AB3,    Case3Sel::A3B3,    Case3Sel::A3iB3j,
            Case3Sel::ABConjBA,   Case3Sel::AB3iConjA, Case3Sel::AinvB3i,    Case3Sel::AinvB3iConjA,   Case3Sel::A3iBConjB,
            Case3Sel::A3iBinvConjB,  Case3Sel::AinvBinv,  Case3Sel::AinvBinvConjBA,   Case3Sel::ABinvConjBA, Case3Sel::AinvBConjBA,
            Case3Sel::ShiftPlus,  Case3Sel::ShiftMinus,  Case3Sel::General};
}

int case3_arity(Case3Sel s) {
    switch (s) {
        case Case3Sel::AB3:
        case Case3Sel::A3B3:
        case Case3Sel::AinvBinv:
            return 0;
        case Case3Sel::ABj:
        case Case3Sel::BAj:
        case Case3Sel::AinvB3i:
            return 1;
        case Case3Sel::General:
            return 4;
        default:
            return 2;
    }
}

bool case3_corrected(Case3Sel sel) {
    switch (sel) {
        case Case3Sel::ABConjBA:
        case Case3Sel::AinvB3i:
        case Case3Sel::AinvB3iConjA:
        case Case3Sel::A3iBinvConjB:
        case Case3Sel::AinvBinv:
        case Case3Sel::AinvBinvConjBA:
        case Case3Sel::AinvBConjBA:
        case Case3Sel::ShiftPlus:
        case Case3Sel::ShiftMinus:
        case Case3Sel::General:
            return true;
        default:
            return false;
    }
}

LetterWord case3_rhs(const Params& P, Case3Sel sel, const std::vector<Int>& args, Case3Reading reading) {
    require_case3(P);
    if (static_cast<int>(args.size()) != case3_arity(sel))
        throw Error(ErrorKind::Usage, std::string("wrong argument count for ") + case3_sel_name(sel));
    const Int& l = P.ell;
    const Int& g = *P.g;
    auto A = [&](std::size_t k) { return args.at(k); };
    const bool fix = reading == Case3Reading::Corrected;
    switch (sel) {
        case Case3Sel::ABj: {
            Int i = A(0);
            auto [F, G] = case3_helpers(i);
            return {{'b', 3 * l * phi(i) + 9 * l * l * F + 27 * G}, {'c', i}};
        }
        case Case3Sel::BAj: {
            Int i = A(0);
            auto [F, G] = case3_helpers(i);
            return {{'a', 3 * l * phi(i) + 9 * l * l * F + 27 * G}, {'c', -i}};
        }
        case Case3Sel::AB3:
            return {{'b', 63}, {'c', 3}};
        case Case3Sel::A3B3:
            return {{'b', 27}, {'c', 9}};
        case Case3Sel::A3iB3j:
            return {{'a', -27 * A(0) * A(1)}, {'c', 9 * A(0) * A(1)}};
        case Case3Sel::ABConjBA: {
            Int i = A(0), j = A(1);
            return {{'a', -9 * i * l + (fix ? Int(27 * i) : Int(-27 * i))}, {'b', 9 * j * l}, {'c', 1}};
        }
        case Case3Sel::AB3iConjA: {
            Int i = A(0), j = A(1);
            return {{'b', 9 * i + 27 * i * (i - j + 1)}, {'c', 3 * i}};
        }
        case Case3Sel::AinvB3i: {
            Int i = A(0);
            return {{'a', -9 * l * i + 27 * i * (fix ? Int(i) : Int(i + 2))}, {'b', -9 * i}, {'c', -12 * i}};
        }
        case Case3Sel::AinvB3iConjA: {
            Int i = A(0), j = A(1);
            return {{'a', -9 * l * i + 27 * i * (fix ? Int(i - j) : Int(i - j + 2))}, {'b', -9 * i}, {'c', -12 * i}};
        }
        case Case3Sel::A3iBConjB: {
            Int i = A(0), j = A(1);
            return {{'a', -9 * i - 27 * i * (i - j + 1)}, {'c', 3 * i}};
        }
        case Case3Sel::A3iBinvConjB: {
            Int i = A(0), j = A(1);
            return {{'a', 9 * i}, {'b', 9 * l * i - 27 * i * (fix ? Int(i - j) : Int(i - j + 2))}, {'c', -12 * i}};
        }
        case Case3Sel::AinvBinv:
            return {{'a', 3 * l - 18 * l * l - (fix ? 27 : 0)}, {'b', -12 * l}, {'c', 10 - 12 * l}};
        case Case3Sel::AinvBinvConjBA: {
            Int i = A(0), j = A(1);
            if (fix)
                return {{'a', 3 * l - 9 * l * i - 18 * l * l - 27 * j + 27 * (g * (1 - j) - 1)},
                        {'b', -3 * l + 9 * (1 - j)},
                        {'c', 1 - 3 * l + 9 * (1 - i - j - l)}};
            return {{'a', 3 * l - 9 * l * i - 18 * l * l - 27 * j},
                    {'b', -3 * l},
                    {'c', 1 - 3 * l + 9 * (1 + i + j - l)}};
        }
        case Case3Sel::ABinvConjBA: {
            Int i = A(0), j = A(1);
            return {{'a', 9 * l * i + 27 * (-i - j + 1)}, {'b', 3 * l - 9 * l * (l + j)}, {'c', -1 + 9 * i}};
        }
        case Case3Sel::AinvBConjBA: {
            Int i = A(0), j = A(1);
            return {{'a', -3 * l + 9 * i * l + (fix ? Int(27 * j) : Int(0))}, {'b', -9 * j * l}, {'c', -1 + 9 * j}};
        }
        case Case3Sel::ShiftPlus: {
            Int i = A(0), j = A(1);
            return {{'a', -27 * ((fix ? Int(i + j) : Int(j)) - i * j + i * i + j * j + (i + j) * g)}, {'c', 3 * (i + j) + 9 * i * j}};
        }
        case Case3Sel::ShiftMinus: {
            Int i = A(0), j = A(1);
            if (fix)
                return {{'a', 3 * l - 9 * (l * (i + j) - i + 2 * l * l) + 27 * (i * i + j * j - 1 + g * (1 - j))},
                        {'b', -3 * l + 9 * (l * i + j + 1)},
                        {'c', -3 * (i + j + l) + 9 * (1 + i + j + i * j - l)}};
            return {{'a', 3 * l - 9 * (l * (i + j) - i + 2 * l * l) + 27 * (i * i + j * j + 2 * i + j)},
                    {'b', -3 * l + 9 * (l * i - j)},
                    {'c', -3 * (i + j + l) + 9 * (1 - i * j - l)}};
        }
        case Case3Sel::General: {
            Int e = A(0), f = A(1), i = A(2), j = A(3);
            if (abs(e) > 1 || abs(f) > 1) throw Error(ErrorKind::Usage, "delta5 needs e, f in {-1,0,1}");
            LetterWord w;
            if (e == 1) w = word_concat(w, case3_rhs(P, Case3Sel::AB3iConjA, {j, i}, reading));
            if (e == -1) w = word_concat(w, case3_rhs(P, Case3Sel::AinvB3iConjA, {j, i}, reading));
            if (e != 0 && f != 0) {
                Case3Sel s = e == 1 ? (f == 1 ? Case3Sel::ABConjBA : Case3Sel::ABinvConjBA)
                                    : (f == 1 ? Case3Sel::AinvBConjBA : Case3Sel::AinvBinvConjBA);
                w = word_concat(w, case3_rhs(P, s, {i, j}, reading));
            }
            w = word_concat(w, case3_rhs(P, Case3Sel::A3iB3j, {i, j}, reading));
            if (f == 1) w = word_concat(w, case3_rhs(P, Case3Sel::A3iBConjB, {i, j}, reading));
            if (f == -1) w = word_concat(w, case3_rhs(P, Case3Sel::A3iBinvConjB, {i, j}, reading));
            return w;
        }
    }
    return {};
}

}  // namespace wamsley
