#include "wamsley/arith.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <random>

namespace wamsley {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::UndefinedValuation: return "undefined-valuation";
        case ErrorKind::NotInvertible: return "not-invertible";
        case ErrorKind::NotRelevantPrime: return "not-relevant-prime";
        case ErrorKind::InvalidInstance: return "invalid-instance";
        case ErrorKind::Budget: return "budget-exceeded";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::Formula: return "formula";
        case ErrorKind::Construction: return "construction";
        case ErrorKind::Extension: return "extension-hypothesis";
        case ErrorKind::NotAbelian: return "not-abelian";
        case ErrorKind::NotNormal: return "not-normal";
        case ErrorKind::Enumeration: return "enumeration-bound";
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Incomplete: return "incomplete";
    }
    return "error";
}

const char* case_name(CaseTag t) {
    switch (t) {
        case CaseTag::Case1_hPos: return "Case1_hPos";
        case CaseTag::Case1_NotPm1: return "Case1_NotPm1";
        case CaseTag::Case1_MinusOne: return "Case1_MinusOne";
        case CaseTag::Case2_hGe2: return "Case2_hGe2";
        case CaseTag::Case2_hEq1: return "Case2_hEq1";
        case CaseTag::Case2_AlphaMinus1: return "Case2_AlphaMinus1";
        case CaseTag::Case3_AlphaPlus: return "Case3_AlphaPlus";
        case CaseTag::Case3_AlphaMinus: return "Case3_AlphaMinus";
        case CaseTag::GammaOnly: return "GammaOnly";
    }
    return "?";
}

int case_family(CaseTag t) {
    switch (t) {
        case CaseTag::Case1_hPos:
        case CaseTag::Case1_NotPm1:
        case CaseTag::Case1_MinusOne: return 1;
        case CaseTag::Case2_hGe2:
        case CaseTag::Case2_hEq1:
        case CaseTag::Case2_AlphaMinus1: return 2;
        case CaseTag::Case3_AlphaPlus:
        case CaseTag::Case3_AlphaMinus: return 3;
        case CaseTag::GammaOnly: return 0;
    }
    return 0;
}

std::string to_string(const Int& x) { return x.str(); }

Int ipow(const Int& base, unsigned e) { return boost::multiprecision::pow(base, e); }

Int mod(const Int& a, const Int& n) {
    Int r = a % n;
    if (r < 0) r += n;
    return r;
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Int powm(const Int& base, const Int& e, const Int& m) {
    if (m == 1) return 0;
    if (e < 0) return powm(mod_inverse(base, m), -e, m);
    return boost::multiprecision::powm(mod(base, m), e, m);
}

int vp(const Int& p, const Int& x) {
    if (x == 0) throw Error(ErrorKind::UndefinedValuation, "valuation of zero");
    if (p < 2) throw Error(ErrorKind::Usage, "valuation base must be a prime");
    int e = 0;
    Int y = x;
    while (y % p == 0) {
        y /= p;
        ++e;
    }
    return e;
}

Int mod_inverse(const Int& a, const Int& n) {
    if (n < 1) throw Error(ErrorKind::Usage, "modulus must be positive");
    if (n == 1) return 0;
    Int r0 = n, r1 = mod(a, n), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int qq = r0 / r1;
        Int r2 = r0 - qq * r1;
        r0 = r1;
        r1 = r2;
        Int s2 = s0 - qq * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw Error(ErrorKind::NotInvertible, to_string(a) + " mod " + to_string(n));
    return mod(s0, n);
}

Int phi(const Int& i) { return (i - 1) * i / 2; }

Int varphi(const Int& i) { return i * (i - 1) * (i - 2) / 6; }

std::pair<Int, Int> case3_helpers(const Int& i) {
    Int F = (i - 1) * i * (2 * i - 1) / 6;
    Int G = floor_div(i, 3);
    return {F, G};
}

Int binom(const Int& z, int k) {
    if (k < 0) return 0;
    Int num = 1, den = 1;
    for (int s = 0; s < k; ++s) {
        num *= (z - s);
        den *= (s + 1);
    }
    return num / den;
}

UVW uvw_sequences(const Params& params, const Int& i) {
    if (i < 1) throw Error(ErrorKind::Usage, "uvw index must be positive");
    Int u = 0, v = 0, pa = 1, pm = 1;
    for (Int s = 0; s < i; ++s) {
        u += pa;
        v += pm;
        pa *= params.alpha;
        pm *= params.mu;
    }
    return {u, v, v - u};
}

int mobius(int n) {
    if (n < 1) return 0;
    int result = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

Int witt_rank(int r, int w) {
    if (r < 1 || w < 1) throw Error(ErrorKind::Usage, "witt_rank needs r >= 1 and w >= 1");
    Int s = 0;
    for (int d = 1; d <= w; ++d)
        if (w % d == 0) s += mobius(w / d) * ipow(Int(r), static_cast<unsigned>(d));
    return s / w;
}

static Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Int witt_rank_multi(const std::vector<int>& ws) {
    int w = 0, g = 0;
    for (int x : ws) {
        if (x < 0) throw Error(ErrorKind::Usage, "negative multidegree");
        w += x;
        g = std::gcd(g, x);
    }
    if (w == 0) throw Error(ErrorKind::Usage, "multidegree must be nonzero");
    Int s = 0;
    for (int d = 1; d <= g; ++d) {
        if (g % d != 0) continue;
        Int term = factorial(w / d);
        for (int x : ws) term /= factorial(x / d);
        s += mobius(d) * term;
    }
    return s / w;
}

bool is_prime(const Int& x) {
    if (x < 2) return false;
    for (int sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (x == sp) return true;
        if (x % sp == 0) return false;
    }
    std::mt19937_64 gen(0x5eed);
    return boost::multiprecision::miller_rabin_test(x, 40, gen);
}

static Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

static Int pollard_brent(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int c = 1; c < 200; ++c) {
        Int y = 2, x = 2, d = 1, ys = 2, qq = 1;
        auto f = [&](const Int& v) { return (v * v + c) % n; };
        std::size_t r = 1, m = 64;
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = f(y);
            std::size_t kk = 0;
            do {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - kk); ++i) {
                    y = f(y);
                    Int diff = x > y ? x - y : y - x;
                    qq = (qq * diff) % n;
                }
                d = gcd_int(qq, n);
                kk += m;
            } while (kk < r && d == 1);
            r *= 2;
        } while (d == 1 && r < (std::size_t(1) << 26));
        if (d == n) {
            do {
                ys = f(ys);
                Int diff = x > ys ? x - ys : ys - x;
                d = gcd_int(diff, n);
            } while (d == 1);
        }
        if (d != n && d != 1) return d;
    }
    throw Error(ErrorKind::Unsupported, "could not factor " + to_string(n));
}

static void factor_into(Int x, std::map<Int, int>& out) {
    if (x == 1) return;
    if (is_prime(x)) {
        out[x] += 1;
        return;
    }
    Int d = pollard_brent(x);
    factor_into(d, out);
    factor_into(x / d, out);
}

std::vector<std::pair<Int, int>> factorize(const Int& x0) {
    if (x0 <= 0) throw Error(ErrorKind::Usage, "factorize needs a positive integer");
    std::map<Int, int> out;
    Int x = x0;
    for (int d = 2; d < 100000 && Int(d) * d <= x; ++d) {
        while (x % d == 0) {
            out[Int(d)] += 1;
            x /= d;
        }
    }
    factor_into(x, out);
    return {out.begin(), out.end()};
}

static Int checked_alpha0(const Int& alpha, const Int& gamma) {
    if (gamma <= 0) throw Error(ErrorKind::InvalidInstance, "gamma must be positive");
    if (gamma > 100000) throw Error(ErrorKind::Unsupported, "gamma too large for exact evaluation");
    Int a0 = ipow(alpha, static_cast<unsigned>(gamma));
    if (a0 == 1) throw Error(ErrorKind::InvalidInstance, "alpha^gamma = 1");
    return a0;
}

static bool is_case3(const Int& p, const Int& alpha0) { return p == 3 && mod(alpha0, 9) == 7; }

Int sylow_order_J(const Int& alpha0, const Int& p, int m) {
    if (m == 0) return 1;
    if (p == 2) return ipow(Int(2), static_cast<unsigned>(7 * m - 3));
    if (is_case3(p, alpha0)) return ipow(Int(3), 10);
    return ipow(p, static_cast<unsigned>(7 * m));
}

static Int order_b_for(const Int& alpha0, const Int& p, int m) {
    if (m == 0) return 0;
    if (p == 2) return ipow(Int(2), static_cast<unsigned>(3 * m - 1));
    if (is_case3(p, alpha0)) return 81;
    return ipow(p, static_cast<unsigned>(3 * m));
}

std::vector<Int> relevant_primes(const Int& alpha, const Int& gamma) {
    Int a0 = checked_alpha0(alpha, gamma);
    Int prod = a0 - 1;
    if (prod < 0) prod = -prod;
    std::map<Int, int> ps;
    if (prod != 0)
        for (auto& [q, e] : factorize(prod)) ps[q] = e;
    for (auto& [q, e] : factorize(gamma)) ps[q] += e;
    std::vector<Int> out;
    for (auto& [q, e] : ps) out.push_back(q);
    return out;
}

Params classify(const Int& alpha, const Int& gamma, const Int& p) {
    Params P;
    P.alpha = alpha;
    P.gamma = gamma;
    P.p = p;
    P.alpha0 = checked_alpha0(alpha, gamma);
    if (!is_prime(p)) throw Error(ErrorKind::Usage, "p must be prime");
    Int d = P.alpha0 - 1;
    bool divides_a0 = (d % p == 0);
    bool divides_g = (gamma % p == 0);
    if (!divides_a0 && !divides_g)
        throw Error(ErrorKind::NotRelevantPrime, to_string(p) + " does not divide (alpha^gamma-1)*gamma");
    P.m = divides_a0 ? vp(p, d) : 0;
    P.n = vp(p, gamma);
    P.k = gamma / ipow(p, static_cast<unsigned>(P.n));
    P.ell = d / ipow(p, static_cast<unsigned>(P.m));
    if (alpha != 1) {
        P.h = vp(p, alpha - 1);
        P.t = (alpha - 1) / ipow(p, static_cast<unsigned>(P.h));
    }
    P.em = (p == 2) ? std::max(P.m - 1, 0) : P.m;
    P.order_b = order_b_for(P.alpha0, p, P.m);

    Int absd = d < 0 ? Int(-d) : d;
    Int G = 1;
    if (absd != 0)
        for (auto& [q, e] : factorize(absd)) G *= sylow_order_J(P.alpha0, q, e);
    P.q = G / sylow_order_J(P.alpha0, p, P.m);

    if (P.m == 0) {
        P.tag = CaseTag::GammaOnly;
        return P;
    }
    P.mu = mod_inverse(alpha, P.order_b);
    P.mu0 = mod_inverse(P.alpha0, P.order_b);
    if (p == 2) {
        if (alpha == -1)
            P.tag = CaseTag::Case2_AlphaMinus1;
        else if (P.h >= 2)
            P.tag = CaseTag::Case2_hGe2;
        else
            P.tag = CaseTag::Case2_hEq1;
    } else if (is_case3(p, P.alpha0)) {
        P.g = (P.ell + 1) / 3;
        if (mod(alpha, 3) == 1) {
            P.tag = CaseTag::Case3_AlphaPlus;
        } else {
            P.tag = CaseTag::Case3_AlphaMinus;
            Int u = (alpha + 1) / 3;
            P.u = u;
            P.v = -(u + 3 * u * u + 9 * u * u * u);
        }
    } else if (P.h > 0) {
        P.tag = CaseTag::Case1_hPos;
    } else if (mod(alpha + 1, p) == 0) {
        P.tag = CaseTag::Case1_MinusOne;
        P.h0 = vp(p, alpha + 1);
    } else {
        P.tag = CaseTag::Case1_NotPm1;
    }
    return P;
}

}  // namespace wamsley
