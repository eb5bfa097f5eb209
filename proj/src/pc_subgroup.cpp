#include "wamsley/pc.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace wamsley {

std::vector<int> PcSubgroup::depths() const {
    std::vector<int> d;
    for (const auto& x : igs) d.push_back(depth(x));
    return d;
}

namespace {

Exp inverse_mod_prime(Exp e, Exp r) {
    Int inv = mod_inverse(Int(e), Int(r));
    return static_cast<Exp>(inv);
}

void require_prime_orders(const PcPresentation& P) {
    for (int i = 0; i < P.size(); ++i) {
        if (!P.finite(i)) throw Error(ErrorKind::Unsupported, "subgroup algorithms need finite relative orders");
        if (!is_prime(Int(P.rel_orders[i])))
            throw Error(ErrorKind::Unsupported, "subgroup algorithms need prime relative orders");
    }
}

// Working echelon table indexed by depth.
struct Echelon {
    const PcPresentation& P;
    std::vector<Elem> at;
    std::vector<bool> used;

    explicit Echelon(const PcPresentation& P_) : P(P_), at(P_.size()), used(P_.size(), false) {}

    Elem reduce(Elem x) const {
        while (!is_identity(x)) {
            int d = depth(x);
            if (!used[d]) break;
            x = multiply(P, x, power(P, at[d], -Int(x[d])));
        }
        return x;
    }

    std::vector<Elem> list() const {
        std::vector<Elem> out;
        for (int d = 0; d < P.size(); ++d)
            if (used[d]) out.push_back(at[d]);
        return out;
    }
};

PcSubgroup canonical(const PcPresentation& P, std::vector<Elem> igs) {
    std::sort(igs.begin(), igs.end(), [](const Elem& x, const Elem& y) { return depth(x) < depth(y); });
    for (std::size_t k = 0; k < igs.size(); ++k) {
        int d = depth(igs[k]);
        for (std::size_t l = 0; l < k; ++l) {
            Exp e = igs[l][d];
            if (e != 0) igs[l] = multiply(P, igs[l], power(P, igs[k], -Int(e)));
        }
    }
    return PcSubgroup{std::move(igs)};
}

}  // namespace

PcSubgroup trivial_subgroup() { return PcSubgroup{}; }

PcSubgroup whole_group(const PcPresentation& P) {
    PcSubgroup S;
    for (int i = 0; i < P.size(); ++i) S.igs.push_back(unit(P, i));
    return S;
}

PcSubgroup closure(const PcPresentation& P, const std::vector<Elem>& gens,
                   const std::vector<Elem>& conjugators) {
    require_prime_orders(P);
    Echelon E(P);
    std::deque<Elem> queue(gens.begin(), gens.end());
    while (!queue.empty()) {
        Elem x = E.reduce(queue.front());
        queue.pop_front();
        if (is_identity(x)) continue;
        int d = depth(x);
        Exp r = P.rel_orders[d];
        if (x[d] != 1) x = power(P, x, inverse_mod_prime(x[d], r));
        E.at[d] = x;
        E.used[d] = true;
        queue.push_back(power(P, x, r));
        for (int e = 0; e < P.size(); ++e)
            if (E.used[e] && e != d) queue.push_back(commutator(P, x, E.at[e]));
        for (const auto& c : conjugators) queue.push_back(conjugate(P, x, c));
    }
    return canonical(P, E.list());
}

PcSubgroup subgroup(const PcPresentation& P, const std::vector<Elem>& gens) { return closure(P, gens, {}); }

PcSubgroup normal_closure(const PcPresentation& P, const std::vector<Elem>& gens) {
    return closure(P, gens, whole_group(P).igs);
}

PcSubgroup join(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B) {
    std::vector<Elem> g = A.igs;
    g.insert(g.end(), B.igs.begin(), B.igs.end());
    return subgroup(P, g);
}

Elem sift(const PcPresentation& P, const PcSubgroup& S, const Elem& x0) {
    Elem x = x0;
    std::size_t k = 0;
    while (!is_identity(x)) {
        int d = depth(x);
        while (k < S.igs.size() && depth(S.igs[k]) < d) ++k;
        if (k == S.igs.size() || depth(S.igs[k]) != d) return x;
        x = multiply(P, x, power(P, S.igs[k], -Int(x[d])));
    }
    return x;
}

bool contains(const PcPresentation& P, const PcSubgroup& S, const Elem& x) {
    return is_identity(sift(P, S, x));
}

bool is_subset(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B) {
    return std::all_of(A.igs.begin(), A.igs.end(), [&](const Elem& x) { return contains(P, B, x); });
}

Int subgroup_order(const PcPresentation& P, const PcSubgroup& S) {
    Int o = 1;
    for (const auto& x : S.igs) o *= P.rel_orders[depth(x)];
    return o;
}

bool is_normal(const PcPresentation& P, const PcSubgroup& S) {
    for (const auto& x : S.igs)
        for (int i = 0; i < P.size(); ++i)
            if (!contains(P, S, conjugate(P, x, unit(P, i)))) return false;
    return true;
}

bool is_abelian(const PcPresentation& P, const PcSubgroup& S) {
    for (std::size_t i = 0; i < S.igs.size(); ++i)
        for (std::size_t j = i + 1; j < S.igs.size(); ++j)
            if (!is_identity(commutator(P, S.igs[i], S.igs[j]))) return false;
    return true;
}

PcSubgroup commutator_subgroup(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B) {
    std::vector<Elem> gens;
    for (const auto& x : A.igs)
        for (const auto& y : B.igs) gens.push_back(commutator(P, x, y));
    std::vector<Elem> conj = A.igs;
    conj.insert(conj.end(), B.igs.begin(), B.igs.end());
    return closure(P, gens, conj);
}

std::vector<Elem> enumerate_subgroup(const PcPresentation& P, const PcSubgroup& S,
                                     std::uint64_t max_enumerate) {
    if (subgroup_order(P, S) > max_enumerate)
        throw Error(ErrorKind::Enumeration, "subgroup too large to enumerate; use the symbolic path");
    std::vector<Elem> out{identity(P)};
    for (auto it = S.igs.rbegin(); it != S.igs.rend(); ++it) {
        Exp r = P.rel_orders[depth(*it)];
        std::vector<Elem> next;
        next.reserve(out.size() * r);
        Elem pw = identity(P);
        for (Exp e = 0; e < r; ++e) {
            for (const auto& y : out) next.push_back(multiply(P, pw, y));
            pw = multiply(P, pw, *it);
        }
        out.swap(next);
    }
    return out;
}

std::vector<Elem> enumerate(const PcPresentation& P, std::uint64_t max_enumerate) {
    Int N = P.order();
    if (N > max_enumerate)
        throw Error(ErrorKind::Enumeration, "group too large to enumerate; use the symbolic path");
    std::vector<Elem> out;
    Elem x = identity(P);
    while (true) {
        out.push_back(x);
        int i = P.size() - 1;
        while (i >= 0 && ++x[i] == P.rel_orders[i]) x[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

PcSubgroup intersection(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B,
                        std::uint64_t max_enumerate) {
    if (is_subset(P, A, B)) return A;
    if (is_subset(P, B, A)) return B;
    const PcSubgroup& small = subgroup_order(P, A) <= subgroup_order(P, B) ? A : B;
    const PcSubgroup& big = &small == &A ? B : A;
    PcSubgroup I = trivial_subgroup();
    for (const auto& x : enumerate_subgroup(P, small, max_enumerate))
        if (!contains(P, I, x) && contains(P, big, x)) {
            std::vector<Elem> g = I.igs;
            g.push_back(x);
            I = subgroup(P, g);
        }
    return I;
}

namespace {

using Matrix = std::vector<std::vector<Int>>;

// Diagonalises A by unimodular row and column operations. Returns the inverse of the
// accumulated column transform: row k gives the k-th basis vector in old coordinates.
Matrix smith(Matrix A, std::size_t cols, std::vector<Int>& diag) {
    const std::size_t rows = A.size();
    Matrix Vinv(cols, std::vector<Int>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) Vinv[i][i] = 1;
    auto col_sub = [&](std::size_t j, std::size_t t, const Int& q) {
        for (auto& row : A) row[j] -= q * row[t];
        for (std::size_t c = 0; c < cols; ++c) Vinv[t][c] += q * Vinv[j][c];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : A) std::swap(row[a], row[b]);
        std::swap(Vinv[a], Vinv[b]);
    };
    diag.assign(cols, 0);
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (A[i][j] != 0 && (pi == rows || abs(A[i][j]) < abs(A[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) {
                t = std::min(rows, cols);
                break;
            }
            std::swap(A[t], A[pi]);
            col_swap(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (A[i][t] == 0) continue;
                Int q = floor_div(A[i][t], A[t][t]);
                for (std::size_t j = t; j < cols; ++j) A[i][j] -= q * A[t][j];
                if (A[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (A[t][j] == 0) continue;
                col_sub(j, t, floor_div(A[t][j], A[t][t]));
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        for (std::size_t c = t; c < cols; ++c) A[t][c] += A[i][c];
                        divisible = false;
                        break;
                    }
            if (divisible) {
                diag[t] = abs(A[t][t]);
                break;
            }
        }
    }
    return Vinv;
}

std::vector<Int> coordinates(const PcPresentation& P, const PcSubgroup& S, Elem x) {
    std::vector<Int> c(S.igs.size(), 0);
    for (std::size_t k = 0; k < S.igs.size() && !is_identity(x); ++k) {
        int d = depth(S.igs[k]);
        if (x[d] == 0) continue;
        c[k] += x[d];
        x = multiply(P, x, power(P, S.igs[k], -Int(x[d])));
    }
    if (!is_identity(x)) throw Error(ErrorKind::Construction, "element outside the subgroup");
    return c;
}

struct AbelianBasis {
    std::vector<Elem> gens;
    std::vector<Int> orders;
};

// Basis of S modulo the subgroup generated by `extra` (elements of S).
AbelianBasis abelian_basis(const PcPresentation& P, const PcSubgroup& S, const std::vector<Elem>& extra) {
    if (!is_abelian(P, S)) throw Error(ErrorKind::NotAbelian, "subgroup is not abelian");
    const std::size_t L = S.igs.size();
    Matrix R;
    for (std::size_t i = 0; i < L; ++i) {
        Exp r = P.rel_orders[depth(S.igs[i])];
        auto c = coordinates(P, S, power(P, S.igs[i], r));
        std::vector<Int> row(L);
        for (std::size_t j = 0; j < L; ++j) row[j] = -c[j];
        row[i] += r;
        R.push_back(row);
    }
    for (const auto& z : extra) R.push_back(coordinates(P, S, z));
    std::vector<Int> diag;
    Matrix Vinv = smith(R, L, diag);
    AbelianBasis B;
    for (std::size_t k = 0; k < L; ++k) {
        Elem b = identity(P);
        for (std::size_t j = 0; j < L; ++j)
            if (Vinv[k][j] != 0) b = multiply(P, b, power(P, S.igs[j], Vinv[k][j]));
        B.gens.push_back(b);
        B.orders.push_back(diag[k]);
    }
    return B;
}

}  // namespace

std::vector<Int> abelian_invariants(const PcPresentation& P, const PcSubgroup& S) {
    AbelianBasis B = abelian_basis(P, S, {});
    std::vector<Int> inv;
    for (const auto& d : B.orders)
        if (d > 1) inv.push_back(d);
    std::sort(inv.begin(), inv.end(), std::greater<Int>());
    Int prod = 1;
    for (const auto& d : inv) prod *= d;
    if (prod != subgroup_order(P, S)) throw Error(ErrorKind::Construction, "abelian invariants do not match order");
    return inv;
}

namespace {

PcSubgroup torsion_preimage(const PcPresentation& P, const PcSubgroup& S, int k, const PcSubgroup& Z) {
    if (S.igs.empty()) return S;
    Int prime = P.rel_orders[depth(S.igs[0])];
    Int pk = ipow(prime, static_cast<unsigned>(k));
    AbelianBasis B = abelian_basis(P, S, Z.igs);
    std::vector<Elem> gens = Z.igs;
    for (std::size_t i = 0; i < B.gens.size(); ++i) {
        const Int& d = B.orders[i];
        if (d == 0) throw Error(ErrorKind::Construction, "infinite abelian factor");
        Int g = gcd(d, pk);
        gens.push_back(power(P, B.gens[i], d / g));
    }
    return subgroup(P, gens);
}

}  // namespace

PcSubgroup omega_subgroup(const PcPresentation& P, const PcSubgroup& S, int k) {
    return torsion_preimage(P, S, k, trivial_subgroup());
}

PcSubgroup power_preimage_subgroup(const PcPresentation& P, const PcSubgroup& S, int k,
                                   const PcSubgroup& Z, std::uint64_t max_enumerate) {
    PcSubgroup ZS = intersection(P, S, Z, max_enumerate);
    return torsion_preimage(P, S, k, ZS);
}

std::vector<PcSubgroup> derived_series_of(const PcPresentation& P, const PcSubgroup& H) {
    std::vector<PcSubgroup> out{H};
    while (!out.back().igs.empty()) {
        const auto& cur = out.back();
        std::vector<Elem> gens;
        for (std::size_t i = 0; i < cur.igs.size(); ++i)
            for (std::size_t j = i + 1; j < cur.igs.size(); ++j) gens.push_back(commutator(P, cur.igs[i], cur.igs[j]));
        PcSubgroup next = closure(P, gens, cur.igs);
        if (next == cur) break;
        out.push_back(std::move(next));
    }
    return out;
}

PcSubgroup centre(const PcPresentation& P) {
    if (!is_central_chain(P)) throw Error(ErrorKind::Unsupported, "centre needs a central pc chain");
    const int n = P.size();
    PcSubgroup C = whole_group(P);
    for (int j = 0; j < n; ++j) {
        const Exp r = P.rel_orders[j];
        std::vector<std::vector<Exp>> vals;
        bool all_zero = true;
        for (const auto& x : C.igs) {
            std::vector<Exp> row(n);
            for (int k = 0; k < n; ++k) {
                Elem c = commutator(P, x, unit(P, k));
                row[k] = c[j];
                for (int l = 0; l < j; ++l)
                    if (c[l] != 0) throw Error(ErrorKind::Construction, "centraliser layer violated");
                if (row[k] != 0) all_zero = false;
            }
            vals.push_back(row);
        }
        if (all_zero) continue;
        // Nullspace over Z/r of the value matrix (rows are elements of C).
        const std::size_t L = C.igs.size();
        std::vector<std::vector<Exp>> M(L, std::vector<Exp>(n + L, 0));
        for (std::size_t i = 0; i < L; ++i) {
            for (int k = 0; k < n; ++k) M[i][k] = ((vals[i][k] % r) + r) % r;
            M[i][n + i] = 1;
        }
        std::size_t row = 0;
        for (int col = 0; col < n && row < L; ++col) {
            std::size_t piv = row;
            while (piv < L && M[piv][col] == 0) ++piv;
            if (piv == L) continue;
            std::swap(M[row], M[piv]);
            Exp inv = inverse_mod_prime(M[row][col], r);
            for (auto& v : M[row]) v = static_cast<Exp>((static_cast<__int128>(v) * inv) % r);
            for (std::size_t i = 0; i < L; ++i) {
                if (i == row || M[i][col] == 0) continue;
                Exp f = M[i][col];
                for (std::size_t c2 = 0; c2 < M[i].size(); ++c2)
                    M[i][c2] = static_cast<Exp>(((M[i][c2] - static_cast<__int128>(f) * M[row][c2]) % r + r) % r);
            }
            ++row;
        }
        std::vector<Elem> gens;
        for (std::size_t i = row; i < L; ++i) {
            Elem y = identity(P);
            for (std::size_t l = 0; l < L; ++l)
                if (M[i][n + l] != 0) y = multiply(P, y, power(P, C.igs[l], M[i][n + l]));
            gens.push_back(y);
        }
        for (std::size_t i = 0; i < L; ++i) {
            gens.push_back(power(P, C.igs[i], r));
            for (std::size_t l = i + 1; l < L; ++l) gens.push_back(commutator(P, C.igs[i], C.igs[l]));
        }
        C = closure(P, gens, C.igs);
    }
    return C;
}

std::vector<PcSubgroup> series(const PcPresentation& P, SeriesKind kind) {
    PcSubgroup G = whole_group(P);
    std::vector<PcSubgroup> out;
    switch (kind) {
        case SeriesKind::Derived:
            return derived_series_of(P, G);
        case SeriesKind::LowerCentral: {
            out.push_back(G);
            while (!out.back().igs.empty()) {
                PcSubgroup next = commutator_subgroup(P, out.back(), G);
                if (next == out.back()) break;
                out.push_back(std::move(next));
            }
            return out;
        }
        case SeriesKind::UpperCentral: {
            out.push_back(trivial_subgroup());
            while (out.back() != G) {
                const PcSubgroup& Zi = out.back();
                Quotient Q = quotient(P, Zi);
                PcSubgroup Zq = centre(Q.pres);
                PcSubgroup next = preimage(P, Zi, Q, Zq);
                if (next == Zi) break;
                out.push_back(std::move(next));
            }
            return out;
        }
    }
    return out;
}

Elem apply_map(const PcPresentation& target, const GenMap& map, const Elem& x) {
    Elem y = identity(target);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) y = multiply(target, y, power(target, map.images[i], x[i]));
    return y;
}

namespace {

Elem apply_word(const PcPresentation& target, const GenMap& map, const Word& w) {
    Elem y = identity(target);
    for (const auto& [g, e] : w) y = multiply(target, y, power(target, map.images[g], e));
    return y;
}

}  // namespace

std::vector<std::string> verify_map(const PcPresentation& src, const PcPresentation& target, const GenMap& map) {
    std::vector<std::string> bad;
    if (static_cast<int>(map.images.size()) != src.size()) {
        bad.push_back("image count differs from generator count");
        return bad;
    }
    for (int i = 0; i < src.size(); ++i) {
        if (src.finite(i)) {
            Elem lhs = power(target, map.images[i], src.rel_orders[i]);
            if (lhs != apply_word(target, map, src.powers[i]))
                bad.push_back("power relation of " + src.names[i]);
        }
        for (int j = i + 1; j < src.size(); ++j) {
            Elem lhs = conjugate(target, map.images[j], map.images[i]);
            if (lhs != apply_word(target, map, src.conj(j, i)))
                bad.push_back("conjugate " + src.names[j] + "^" + src.names[i]);
            if (!src.finite(i)) {
                Elem lhs2 = conjugate(target, map.images[j], inverse(target, map.images[i]));
                if (lhs2 != apply_word(target, map, src.conj_inv(j, i)))
                    bad.push_back("conjugate " + src.names[j] + "^" + src.names[i] + "^-1");
            }
        }
    }
    return bad;
}

Elem reduce_mod(const PcPresentation& P, const PcSubgroup& N, const Elem& x0) {
    Elem x = x0;
    for (const auto& s : N.igs) {
        int d = depth(s);
        if (x[d] != 0) x = multiply(P, x, power(P, s, -Int(x[d])));
    }
    return x;
}

Elem Quotient::project(const PcPresentation& src, const PcSubgroup& N, const Elem& x) const {
    Elem r = reduce_mod(src, N, x);
    Elem y(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) y[k] = r[kept[k]];
    return y;
}

Elem Quotient::lift(const PcPresentation& src, const Elem& y) const {
    Elem x = identity(src);
    for (std::size_t k = 0; k < kept.size(); ++k) x[kept[k]] = y[k];
    return x;
}

Quotient quotient(const PcPresentation& P, const PcSubgroup& N) {
    if (!is_normal(P, N)) throw Error(ErrorKind::NotNormal, "quotient by a non-normal subgroup");
    std::vector<bool> lead(P.size(), false);
    for (const auto& s : N.igs) lead[depth(s)] = true;
    Quotient Q;
    for (int i = 0; i < P.size(); ++i)
        if (!lead[i]) Q.kept.push_back(i);
    const int n = static_cast<int>(Q.kept.size());
    Q.pres = PcPresentation(n);
    auto proj_word = [&](const Word& w) { return to_word(Q.project(P, N, collect(P, w))); };
    for (int a = 0; a < n; ++a) {
        int i = Q.kept[a];
        Q.pres.names[a] = P.names[i];
        Q.pres.rel_orders[a] = P.rel_orders[i];
        Q.pres.powers[a] = proj_word(P.powers[i]);
        for (int b = a + 1; b < n; ++b) {
            int j = Q.kept[b];
            Q.pres.conj(b, a) = proj_word(P.conj(j, i));
            Q.pres.conj_inv(b, a) = proj_word(P.conj_inv(j, i));
        }
    }
    Q.pres.finalize(false);
    for (const auto& [name, x] : P.labels) Q.pres.labels[name] = Q.project(P, N, x);
    for (int i = 0; i < P.size(); ++i) Q.projection.images.push_back(Q.project(P, N, unit(P, i)));
    return Q;
}

PcSubgroup preimage(const PcPresentation& P, const PcSubgroup& N, const Quotient& Q, const PcSubgroup& H) {
    std::vector<Elem> gens = N.igs;
    for (const auto& h : H.igs) gens.push_back(Q.lift(P, h));
    return subgroup(P, gens);
}

namespace {

GenMap compose(const PcPresentation& P, const GenMap& outer, const GenMap& inner) {
    GenMap r;
    for (const auto& x : inner.images) r.images.push_back(apply_map(P, outer, x));
    return r;
}

GenMap map_power(const PcPresentation& P, const GenMap& f, Int e) {
    GenMap result;
    for (int i = 0; i < P.size(); ++i) result.images.push_back(unit(P, i));
    GenMap base = f;
    while (e > 0) {
        if ((e & 1) != 0) result = compose(P, base, result);
        e >>= 1;
        if (e > 0) base = compose(P, base, base);
    }
    return result;
}

Word shift_word(const Word& w, int s) {
    Word r = w;
    for (auto& syl : r) syl.first += s;
    return r;
}

Elem shift_elem(const Elem& x, int s) {
    Elem r(s, 0);
    r.insert(r.end(), x.begin(), x.end());
    return r;
}

}  // namespace

PcPresentation cyclic_extension(const PcPresentation& P, const GenMap& lambda, const Elem& t, const Int& ord) {
    auto bad = verify_map(P, P, lambda);
    if (!bad.empty()) throw Error(ErrorKind::Extension, "map is not a homomorphism: " + bad.front());
    if (subgroup(P, lambda.images) != whole_group(P))
        throw Error(ErrorKind::Extension, "map is not surjective");
    if (apply_map(P, lambda, t) != t) throw Error(ErrorKind::Extension, "map does not fix t");
    GenMap lk = map_power(P, lambda, ord);
    for (int i = 0; i < P.size(); ++i)
        if (lk.images[i] != conjugate(P, unit(P, i), t))
            throw Error(ErrorKind::Extension, "map^ord is not conjugation by t on " + P.names[i]);

    std::vector<Int> primes;
    for (auto& [q, e] : factorize(ord))
        for (int k = 0; k < e; ++k) primes.push_back(q);
    const int s = static_cast<int>(primes.size());
    const int n = P.size();
    PcPresentation E(s + n);
    Int span = 1;
    for (int k = 0; k < s; ++k) {
        E.names[k] = s == 1 ? "d" : "d" + std::to_string(k);
        E.rel_orders[k] = static_cast<Exp>(primes[k]);
        E.powers[k] = k + 1 < s ? Word{{k + 1, 1}} : shift_word(to_word(t), s);
        GenMap lp = map_power(P, lambda, span);
        for (int j = 0; j < n; ++j) E.conj(s + j, k) = shift_word(to_word(lp.images[j]), s);
        span *= primes[k];
    }
    for (int i = 0; i < n; ++i) {
        E.names[s + i] = P.names[i];
        E.rel_orders[s + i] = P.rel_orders[i];
        E.powers[s + i] = shift_word(P.powers[i], s);
        for (int j = i + 1; j < n; ++j) {
            E.conj(s + j, s + i) = shift_word(P.conj(j, i), s);
            E.conj_inv(s + j, s + i) = shift_word(P.conj_inv(j, i), s);
        }
    }
    E.finalize(true);
    for (const auto& [name, x] : P.labels) E.labels[name] = shift_elem(x, s);
    if (s > 0) E.labels["d"] = unit(E, 0);
    auto viol = consistency_check(E);
    if (!viol.empty()) throw Error(ErrorKind::Construction, "extension is inconsistent: " + viol.front());
    return E;
}

}  // namespace wamsley
