#pragma once

// Reference computations that share no code with the library.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

inline int vp(long long p, long long x) {
    if (x < 0) x = -x;
    int v = 0;
    while (x != 0 && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline std::vector<long long> prime_divisors(long long x) {
    if (x < 0) x = -x;
    std::vector<long long> out;
    for (long long d = 2; d * d <= x; ++d)
        if (x % d == 0) {
            out.push_back(d);
            while (x % d == 0) x /= d;
        }
    if (x > 1) out.push_back(x);
    return out;
}

inline long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Number of Lyndon words of length n over k letters, by brute force.
inline long long lyndon_count(int k, int n) {
    long long count = 0, total = ipow(k, n);
    std::vector<int> w(n);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = n - 1; i >= 0; --i) {
            w[i] = static_cast<int>(c % k);
            c /= k;
        }
        bool lyndon = true;
        for (int s = 1; s < n && lyndon; ++s) {
            // the rotation starting at s must be strictly greater
            int cmp = 0;
            for (int i = 0; i < n && cmp == 0; ++i) cmp = w[(s + i) % n] - w[i];
            if (cmp <= 0) lyndon = false;
        }
        if (lyndon) ++count;
    }
    return count;
}

// Generalised quaternion group of order 16 as pairs x^k y^e with y x = x^-1 y, y^2 = x^4.
struct Q16 {
    int k = 0, e = 0;
    friend Q16 operator*(Q16 u, Q16 v) {
        Q16 r;
        int k = u.e == 0 ? u.k + v.k : u.k - v.k;
        int e = u.e + v.e;
        if (e == 2) {
            e = 0;
            k += 4;
        }
        r.k = ((k % 8) + 8) % 8;
        r.e = e;
        return r;
    }
    bool operator==(const Q16& o) const { return k == o.k && e == o.e; }
    bool is_one() const { return k == 0 && e == 0; }
};

// Order histogram of a finite group given by its element list and product.
template <class G, class Mul>
std::map<int, int> order_histogram(const std::vector<G>& elems, const G& one, Mul mul) {
    std::map<int, int> h;
    for (const auto& g : elems) {
        G x = g;
        int o = 1;
        while (!(x == one)) {
            x = mul(x, g);
            ++o;
        }
        ++h[o];
    }
    return h;
}

inline std::vector<Q16> q16_elements() {
    std::vector<Q16> out;
    for (int e = 0; e < 2; ++e)
        for (int k = 0; k < 8; ++k) out.push_back({k, e});
    return out;
}

// Upper unitriangular 3x3 matrices over Z/p as (x, y, z) = [[1,x,z],[0,1,y],[0,0,1]].
struct Heis {
    long long x = 0, y = 0, z = 0;
    bool operator==(const Heis& o) const { return x == o.x && y == o.y && z == o.z; }
};
inline Heis heis_mul(const Heis& u, const Heis& v, long long p) {
    return {(u.x + v.x) % p, (u.y + v.y) % p, (u.z + v.z + u.x * v.y) % p};
}

// Coset enumeration over the trivial subgroup by plain HLT with coincidence handling.
// Letters are +g / -g for generator g-1; returns the number of cosets, 0 past the limit.
class ToddCoxeter {
public:
    ToddCoxeter(int ngens, std::vector<std::vector<int>> relators)
        : n_(ngens), rels_(std::move(relators)) {}

    long long run(std::size_t limit) {
        table_.assign(1, row());
        parent_.assign(1, 0);
        for (std::size_t c = 0; c < table_.size(); ++c) {
            if (!alive(c)) continue;
            for (const auto& r : rels_) {
                if (!alive(c)) break;
                scan_and_fill(c, r, limit);
                if (overflow_) return 0;
            }
            for (int g = 0; g < 2 * n_ && alive(c); ++g)
                if (table_[c][g] < 0) {
                    if (table_.size() >= limit) return 0;
                    define(c, g);
                }
        }
        long long live = 0;
        for (std::size_t c = 0; c < table_.size(); ++c)
            if (alive(c)) ++live;
        return live;
    }

private:
    using Row = std::vector<long long>;
    Row row() const { return Row(2 * n_, -1); }
    int col(int letter) const { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
    int inv_col(int c) const { return c ^ 1; }
    bool alive(std::size_t c) const { return parent_[c] == static_cast<long long>(c); }

    long long define(std::size_t c, int g) {
        long long d = static_cast<long long>(table_.size());
        table_.push_back(row());
        parent_.push_back(d);
        table_[c][g] = d;
        table_[d][inv_col(g)] = static_cast<long long>(c);
        return d;
    }

    long long find(long long c) {
        while (parent_[c] != c) c = parent_[c] = parent_[parent_[c]];
        return c;
    }

    // Merge two cosets and everything their merger forces.
    void coincidence(long long a, long long b) {
        std::vector<std::pair<long long, long long>> queue{{a, b}};
        while (!queue.empty()) {
            auto [x, y] = queue.back();
            queue.pop_back();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (x > y) std::swap(x, y);
            parent_[y] = x;
            for (int g = 0; g < 2 * n_; ++g) {
                long long d = table_[y][g];
                if (d < 0) continue;
                table_[y][g] = -1;
                if (table_[d][inv_col(g)] == y) table_[d][inv_col(g)] = -1;
                long long mu = find(x), nu = find(d);
                if (table_[mu][g] >= 0) {
                    queue.push_back({table_[mu][g], nu});
                } else if (table_[nu][inv_col(g)] >= 0) {
                    queue.push_back({table_[nu][inv_col(g)], mu});
                } else {
                    table_[mu][g] = nu;
                    table_[nu][inv_col(g)] = mu;
                }
            }
        }
    }

    long long act(long long c, int g) {
        long long t = table_[c][g];
        return t < 0 ? -1 : find(t);
    }

    void scan_and_fill(std::size_t c0, const std::vector<int>& r, std::size_t limit) {
        const long long c = static_cast<long long>(c0);
        for (;;) {
            long long f = find(c), b = find(c);
            std::size_t i = 0, j = r.size();
            while (i < j) {
                long long t = act(f, col(r[i]));
                if (t < 0) break;
                f = t;
                ++i;
            }
            if (i == j) {
                if (f != find(c)) coincidence(f, find(c));
                return;
            }
            while (j > i) {
                long long t = act(b, inv_col(col(r[j - 1])));
                if (t < 0) break;
                b = t;
                --j;
            }
            if (j == i) {
                coincidence(f, b);
                return;
            }
            if (j == i + 1) {
                int g = col(r[i]);
                table_[f][g] = b;
                if (table_[b][inv_col(g)] < 0)
                    table_[b][inv_col(g)] = f;
                else if (find(table_[b][inv_col(g)]) != f)
                    coincidence(table_[b][inv_col(g)], f);
                return;
            }
            if (table_.size() >= limit) {
                overflow_ = true;
                return;
            }
            define(static_cast<std::size_t>(f), col(r[i]));
        }
    }

    int n_;
    std::vector<std::vector<int>> rels_;
    std::vector<Row> table_;
    std::vector<long long> parent_;
    bool overflow_ = false;
};

// Word helpers for relators: gen g (1-based) to the power e.
inline std::vector<int> pw(int g, int e) {
    return std::vector<int>(static_cast<std::size_t>(e < 0 ? -e : e), e < 0 ? -g : g);
}
inline std::vector<int> cat(std::initializer_list<std::vector<int>> parts) {
    std::vector<int> w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}
inline std::vector<int> inv(const std::vector<int>& w) {
    std::vector<int> r(w.rbegin(), w.rend());
    for (int& x : r) x = -x;
    return r;
}
// [x, y] = x^-1 y^-1 x y
inline std::vector<int> comm(const std::vector<int>& x, const std::vector<int>& y) {
    return cat({inv(x), inv(y), x, y});
}

}  // namespace oracle
