#include <sstream>

#include "wamsley/macdonald.hpp"

namespace wamsley {

namespace {

constexpr int kMaxDepth = 256;

Exp to_exp(const Int& x) { return static_cast<Exp>(x); }

Exp mulmod(Exp a, Exp b, Exp n) {
    __int128 r = static_cast<__int128>(a) * b % n;
    if (r < 0) r += n;
    return static_cast<Exp>(r);
}

Exp modn(Exp a, Exp n) {
    Exp r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

LetterWord word_inverse(const LetterWord& w) {
    LetterWord r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.emplace_back(it->first, -it->second);
    return r;
}

LetterWord word_concat(const LetterWord& x, const LetterWord& y) {
    LetterWord r = x;
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

std::string word_string(const LetterWord& w) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, e] : w) {
        if (e == 0) continue;
        if (!first) os << " ";
        first = false;
        os << l;
        if (e != 1) os << "^" << e;
    }
    if (first) os << "1";
    return os.str();
}

TripleGroup::TripleGroup(const Params& params, Route route) : params_(params), route_(route) {
    const int fam = case_family(params.tag);
    const int m = params.m;
    if (fam == 0 || m == 0) throw Error(ErrorKind::Unsupported, "J is only built when m > 0");
    auto P = [&](unsigned e) { return to_exp(ipow(params.p, e)); };
    if (fam == 1) {
        oa_ = P(3 * m);
        nb_ = nc_ = zc_ = P(2 * m);
        bover_ = -nb_;
        cover_ = 0;
    } else if (fam == 2) {
        oa_ = P(3 * m - 1);
        nb_ = nc_ = zc_ = P(2 * m - 1);
        bover_ = -nb_;
        cover_ = P(3 * m - 2);
    } else {
        oa_ = 81;
        nb_ = nc_ = zc_ = 27;
        bover_ = -27;
        cover_ = 0;
    }
    alpha0_ = to_exp(mod(params.alpha0, oa_));
    mu0_ = to_exp(mod_inverse(params.alpha0, oa_));
    if (route_ == Route::Relator) {
        gk_.assign(static_cast<std::size_t>(oa_), 0);
        Exp apow = 1;
        for (Exp k = 0; k + 1 < oa_; ++k) {
            apow = mulmod(apow, alpha0_, oa_);
            gk_[k + 1] = modn(mulmod(alpha0_, modn(gk_[k] - 1, oa_), oa_) + apow, oa_);
        }
    }
}

Triple TripleGroup::normalize(const Int& x0, const Int& y0, const Int& z0) const {
    Int x = x0;
    Int y = mod(y0, oa_);
    Int q = floor_div(y, nb_);
    y -= q * nb_;
    x += q * bover_;
    Int z = z0;
    Int qz = floor_div(z, nc_);
    z -= qz * nc_;
    x += qz * cover_;
    return Triple{to_exp(mod(x, oa_)), to_exp(y), to_exp(z)};
}

Triple TripleGroup::letter(char l, const Int& e) const {
    switch (l) {
        case 'a':
            return normalize(e, 0, 0);
        case 'b':
            return normalize(0, e, 0);
        case 'c':
            return normalize(0, 0, e);
    }
    throw Error(ErrorKind::Usage, std::string("unknown letter ") + l);
}

Exp TripleGroup::ca_shift(Exp z, Exp k, int depth) {
    k = modn(k, oa_);
    if (z == 0 || k == 0) return k;
    if (route_ == Route::Relator) return mulmod(k, to_exp(powm(mu0_, z, oa_)), oa_);
    Exp total = 0;
    Exp cur = k;
    for (int it = 0; cur != 0; ++it) {
        if (it + depth > kMaxDepth) throw Error(ErrorKind::Construction, "a-shift does not terminate");
        total = modn(total + cur, oa_);
        LetterWord w = comm_formula_word(params_, z, cur, CommKind::CA);
        cur = to_exp(mod(w.at(0).second, oa_));
    }
    return total;
}

Exp TripleGroup::cb_shift(Exp z, Exp k, int depth) {
    k = modn(k, oa_);
    if (z == 0 || k == 0) return k;
    if (route_ == Route::Relator) return mulmod(k, to_exp(powm(alpha0_, z, oa_)), oa_);
    Exp total = 0;
    Exp cur = k;
    for (int it = 0; cur != 0; ++it) {
        if (it + depth > kMaxDepth) throw Error(ErrorKind::Construction, "b-shift does not terminate");
        total = modn(total + cur, oa_);
        LetterWord w = comm_formula_word(params_, z, cur, CommKind::CB);
        cur = to_exp(mod(w.at(0).second, oa_));
    }
    return total;
}

Triple TripleGroup::ba(Exp y, Exp k, int depth) {
    if (depth > kMaxDepth) throw Error(ErrorKind::Construction, "multiplier recursion too deep");
    k = modn(k, oa_);
    if (y == 0 || k == 0 || k % zc_ == 0) return normalize(k, y, 0);
    auto key = std::make_pair(y, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Triple r;
    if (route_ == Route::Relator) {
        Triple u = mul_d(ba(1, gk_[k], depth + 1), letter('c', -k), depth + 1);
        r = mul_d(letter('a', k), pow_d(u, y, depth + 1), depth + 1);
    } else {
        LetterWord w;
        if (case_family(params_.tag) == 3) {
            Int e = mod(Int(k) + 1, 3) - 1, f = mod(Int(y) + 1, 3) - 1;
            w = case3_rhs(params_, Case3Sel::General, {e, f, (Int(k) - e) / 3, (Int(y) - f) / 3});
        } else {
            w = comm_formula_word(params_, k, y, CommKind::AB);
        }
        r = mul_d(normalize(k, y, 0), eval_d(word_inverse(w), depth + 1), depth + 1);
    }
    memo_[key] = r;
    return r;
}

Triple TripleGroup::mul_d(const Triple& u, const Triple& v, int depth) {
    if (depth > kMaxDepth) throw Error(ErrorKind::Construction, "multiplier recursion too deep");
    Exp X = ca_shift(u.z, v.x, depth);
    Exp Y = cb_shift(u.z, v.y, depth);
    Triple S = ba(u.y, X, depth + 1);
    Exp Y2 = cb_shift(S.z, Y, depth);
    return normalize(Int(u.x) + S.x, Int(S.y) + Y2, Int(S.z) + u.z + v.z);
}

Triple TripleGroup::pow_d(const Triple& u, Int e, int depth) {
    Triple base = u;
    if (e < 0) {
        base = inv(u);
        e = -e;
    }
    Triple r;
    while (e > 0) {
        if ((e & 1) != 0) r = mul_d(r, base, depth);
        e >>= 1;
        if (e > 0) base = mul_d(base, base, depth);
    }
    return r;
}

Triple TripleGroup::eval_d(const LetterWord& w, int depth) {
    Triple r;
    for (const auto& [l, e] : w) r = mul_d(r, letter(l, e), depth);
    return r;
}

Triple TripleGroup::mul(const Triple& u, const Triple& v) { return mul_d(u, v, 0); }

Triple TripleGroup::inv(const Triple& u) {
    return mul(mul(letter('c', -Int(u.z)), letter('b', -Int(u.y))), letter('a', -Int(u.x)));
}

Triple TripleGroup::pow(const Triple& u, const Int& e) { return pow_d(u, e, 0); }

Triple TripleGroup::comm(const Triple& u, const Triple& v) {
    return mul(mul(inv(u), inv(v)), mul(u, v));
}

Triple TripleGroup::conj(const Triple& u, const Triple& v) { return mul(mul(inv(v), u), v); }

Triple TripleGroup::eval(const LetterWord& w) { return eval_d(w, 0); }

}  // namespace wamsley
