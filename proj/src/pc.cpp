#include "wamsley/pc.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>
#include <sstream>

namespace wamsley {

struct ConjPowerCache {
    std::mutex mu;
    // (i, j, t, inverse) -> (g_j^{g_i^{+-1}})^t
    std::map<std::tuple<int, int, Exp, bool>, Elem> entries;
};

PcPresentation::PcPresentation(int n)
    : names(n), rel_orders(n, 0), powers(n), n_(n),
      conj_(static_cast<std::size_t>(n) * n), conj_inv_(static_cast<std::size_t>(n) * n),
      commute_(static_cast<std::size_t>(n) * n, 1) {
    for (int i = 0; i < n; ++i) {
        names[i] = "g" + std::to_string(i + 1);
        for (int j = i + 1; j < n; ++j) {
            conj(j, i) = {{j, 1}};
            conj_inv(j, i) = {{j, 1}};
        }
    }
}

Int PcPresentation::order() const {
    Int o = 1;
    for (Exp r : rel_orders) {
        if (r == 0) throw Error(ErrorKind::Usage, "order of an infinite presentation");
        o *= r;
    }
    return o;
}

bool PcPresentation::operator==(const PcPresentation& o) const {
    return n_ == o.n_ && rel_orders == o.rel_orders && powers == o.powers && conj_ == o.conj_ &&
           conj_inv_ == o.conj_inv_;
}

Elem identity(const PcPresentation& P) { return Elem(P.size(), 0); }

Elem unit(const PcPresentation& P, int i, Exp e) {
    Elem x(P.size(), 0);
    x[i] = e;
    return x;
}

bool is_identity(const Elem& x) {
    return std::all_of(x.begin(), x.end(), [](Exp e) { return e == 0; });
}

int depth(const Elem& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) return static_cast<int>(i);
    return static_cast<int>(x.size());
}

Word to_word(const Elem& x) {
    Word w;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) w.emplace_back(static_cast<int>(i), x[i]);
    return w;
}

Word invert_word(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.emplace_back(it->first, -it->second);
    return r;
}

namespace {

struct Item {
    const Word* word;  // null for a single syllable
    int gen;
    Exp exp;
    Exp reps;
    bool inverted;
};

Exp floor_div64(Exp a, Exp b) {
    Exp q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Exp checked_add(Exp a, Exp b) {
    Exp r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Budget, "exponent overflow");
    return r;
}

class Collector {
public:
    explicit Collector(const PcPresentation& P) : P_(P), n_(P.size()) {}

    void run(Elem& e, const Word& w) {
        stack_.clear();
        stack_.push_back({&w, 0, 0, 1, false});
        std::uint64_t steps = 0;
        while (!stack_.empty()) {
            if (++steps > P_.step_budget)
                throw Error(ErrorKind::Budget, "collection exceeded the step budget");
            Item it = stack_.back();
            stack_.pop_back();
            if (it.word) {
                expand(it);
                continue;
            }
            step(e, it.gen, it.exp);
        }
    }

    // (g_j^{g_i^{+-1}})^t in normal form.
    static Elem conj_power(const PcPresentation& P, int i, int j, Exp t, bool inv) {
        ConjPowerCache& c = *P.conj_cache();
        auto key = std::make_tuple(i, j, t, inv);
        {
            std::lock_guard<std::mutex> lock(c.mu);
            auto it = c.entries.find(key);
            if (it != c.entries.end()) return it->second;
        }
        Elem v = power(P, collect(P, inv ? P.conj_inv(j, i) : P.conj(j, i)), t);
        std::lock_guard<std::mutex> lock(c.mu);
        return c.entries.emplace(key, std::move(v)).first->second;
    }

private:
    void push_syl(int g, Exp x) {
        if (x != 0) stack_.push_back({nullptr, g, x, 0, false});
    }
    void push_word(const Word* w, Exp reps, bool inverted) {
        if (reps > 0 && !w->empty()) stack_.push_back({w, 0, 0, reps, inverted});
    }

    void expand(Item it) {
        const Word& w = *it.word;
        if (it.reps > 1) stack_.push_back({it.word, 0, 0, it.reps - 1, it.inverted});
        if (!it.inverted) {
            for (auto s = w.rbegin(); s != w.rend(); ++s) push_syl(s->first, s->second);
        } else {
            for (auto s = w.begin(); s != w.end(); ++s) push_syl(s->first, -s->second);
        }
    }

    void step(Elem& e, int i, Exp x) {
        if (x == 0) return;
        const Exp r = P_.rel_orders[i];
        if (r != 0 && (x < 0 || x >= r)) {
            Exp q = floor_div64(x, r);
            Exp rem = x - q * r;
            push_syl(i, rem);
            push_word(&P_.powers[i], q < 0 ? -q : q, q < 0);
            return;
        }
        bool clean = true;
        for (int j = i + 1; j < n_; ++j) {
            if (e[j] != 0 && !P_.commutes(j, i)) {
                clean = false;
                break;
            }
        }
        if (clean) {
            if (r != 0) {
                e[i] += x;
                if (e[i] >= r) {
                    e[i] -= r;
                    push_word(&P_.powers[i], 1, false);
                }
            } else {
                e[i] = checked_add(e[i], x);
            }
            return;
        }
        if (P_.conj_cache()) {
            shift_tail(e, i, x);
            return;
        }
        tail_.assign(e.begin() + i + 1, e.end());
        std::fill(e.begin() + i + 1, e.end(), 0);
        if (x > 0) {
            push_syl(i, x - 1);
            bool overflow = false;
            if (r != 0) {
                e[i] += 1;
                if (e[i] == r) {
                    e[i] = 0;
                    overflow = true;
                }
            } else {
                e[i] = checked_add(e[i], 1);
            }
            for (int j = n_ - 1; j > i; --j) {
                Exp t = tail_[j - i - 1];
                if (t > 0) push_word(&P_.conj(j, i), t, false);
                if (t < 0) push_word(&P_.conj(j, i), -t, true);
            }
            if (overflow) push_word(&P_.powers[i], 1, false);
        } else {
            push_syl(i, x + 1);
            e[i] = checked_add(e[i], -1);
            for (int j = n_ - 1; j > i; --j) {
                Exp t = tail_[j - i - 1];
                if (t > 0) push_word(&P_.conj_inv(j, i), t, false);
                if (t < 0) push_word(&P_.conj_inv(j, i), -t, true);
            }
        }
    }

    // e = e_{<i} g_i^{e_i} u with u in G_{i+1}, so e g_i^x = e_{<i} g_i^{e_i+x} u^{g_i^x}.
    void shift_tail(Elem& e, int i, Exp x) {
        const Exp r = P_.rel_orders[i];
        const bool inv = x < 0;
        Elem u(e.begin(), e.end());
        std::fill(u.begin(), u.begin() + i + 1, 0);
        for (Exp s = 0; s < (inv ? -x : x); ++s) {
            Elem v = identity(P_);
            for (int j = i + 1; j < n_; ++j)
                if (u[j] != 0) collect_into(P_, v, to_word(conj_power(P_, i, j, u[j], inv)));
            u = std::move(v);
        }
        std::fill(e.begin() + i + 1, e.end(), 0);
        for (int j = n_ - 1; j > i; --j) push_syl(j, u[j]);
        if (r != 0) {
            e[i] += x;
            if (e[i] >= r) {
                e[i] -= r;
                push_word(&P_.powers[i], 1, false);
            }
        } else {
            e[i] = checked_add(e[i], x);
        }
    }

    const PcPresentation& P_;
    int n_;
    std::vector<Item> stack_;
    std::vector<Exp> tail_;
};

}  // namespace

void collect_into(const PcPresentation& P, Elem& e, const Word& w) {
    Collector c(P);
    c.run(e, w);
}

Elem collect(const PcPresentation& P, const Word& w) {
    Elem e = identity(P);
    collect_into(P, e, w);
    return e;
}

Elem multiply(const PcPresentation& P, const Elem& x, const Elem& y) {
    Elem e = x;
    collect_into(P, e, to_word(y));
    return e;
}

Elem inverse(const PcPresentation& P, const Elem& x) { return collect(P, invert_word(to_word(x))); }

Elem power(const PcPresentation& P, const Elem& x, const Int& e) {
    Elem base = e < 0 ? inverse(P, x) : x;
    Int k = e < 0 ? Int(-e) : e;
    Elem result = identity(P);
    while (k > 0) {
        if ((k & 1) != 0) result = multiply(P, result, base);
        k >>= 1;
        if (k > 0) base = multiply(P, base, base);
    }
    return result;
}

Elem commutator(const PcPresentation& P, const Elem& x, const Elem& y) {
    Word w = invert_word(to_word(x));
    Word yi = invert_word(to_word(y));
    w.insert(w.end(), yi.begin(), yi.end());
    Word xw = to_word(x), yw = to_word(y);
    w.insert(w.end(), xw.begin(), xw.end());
    w.insert(w.end(), yw.begin(), yw.end());
    return collect(P, w);
}

Elem conjugate(const PcPresentation& P, const Elem& x, const Elem& y) {
    Word w = invert_word(to_word(y));
    Word xw = to_word(x), yw = to_word(y);
    w.insert(w.end(), xw.begin(), xw.end());
    w.insert(w.end(), yw.begin(), yw.end());
    return collect(P, w);
}

Elem left_normed(const PcPresentation& P, const std::vector<Elem>& xs) {
    if (xs.empty()) return identity(P);
    Elem c = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) c = commutator(P, c, xs[i]);
    return c;
}

Int element_order(const PcPresentation& P, const Elem& x) {
    Int N = P.order();
    Int ord = N;
    for (auto& [q, e] : factorize(N)) {
        (void)e;
        while (ord % q == 0 && is_identity(power(P, x, ord / q))) ord /= q;
    }
    return ord;
}

void PcPresentation::finalize(bool derive_inverse_conjugates) {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            const Word& w = conj(j, i);
            commute_[index(j, i)] = (w.size() == 1 && w[0].first == j && w[0].second == 1) ? 1 : 0;
        }
    finalized_ = true;
    if (!derive_inverse_conjugates) {
        cache_ = std::make_shared<ConjPowerCache>();
        return;
    }
    for (int i = n_ - 1; i >= 0; --i) {
        bool unitriangular = true;
        for (int j = i + 1; j < n_ && unitriangular; ++j) {
            const Word& w = conj(j, i);
            if (w.empty() || w[0].first != j || w[0].second != 1) unitriangular = false;
        }
        if (unitriangular) {
            std::vector<Elem> psi(n_);
            for (int j = n_ - 1; j > i; --j) {
                const Word& w = conj(j, i);
                Elem img = identity(*this);
                for (std::size_t s = 1; s < w.size(); ++s)
                    img = multiply(*this, img, power(*this, psi[w[s].first], w[s].second));
                Elem r = unit(*this, j);
                r = multiply(*this, r, inverse(*this, img));
                psi[j] = r;
                conj_inv(j, i) = to_word(r);
            }
        } else {
            if (rel_orders[i] == 0)
                throw Error(ErrorKind::Construction,
                            "conjugates by an infinite generator must be unitriangular");
            Elem w = collect(*this, powers[i]);
            Elem winv = inverse(*this, w);
            for (int j = n_ - 1; j > i; --j) {
                Elem x = unit(*this, j);
                for (Exp s = 0; s < rel_orders[i] - 1; ++s) {
                    Elem y = identity(*this);
                    for (int k = i + 1; k < n_; ++k)
                        if (x[k] != 0)
                            y = multiply(*this, y, power(*this, collect(*this, conj(k, i)), x[k]));
                    x = y;
                }
                Elem c = multiply(*this, multiply(*this, w, x), winv);
                conj_inv(j, i) = to_word(c);
            }
        }
    }
    cache_ = std::make_shared<ConjPowerCache>();
}

namespace {

std::string gen_label(const PcPresentation& P, int i, int sign) {
    return P.names[i] + (sign < 0 ? "^-1" : "");
}

std::string elem_str(const Elem& x) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << "]";
    return os.str();
}

}  // namespace

std::vector<std::string> consistency_check(const PcPresentation& P) {
    std::vector<std::string> bad;
    const int n = P.size();
    auto signs = [&](int i) {
        return P.finite(i) ? std::vector<int>{1} : std::vector<int>{1, -1};
    };
    auto guard = [&](const std::string& label, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            bad.push_back(label + ": " + e.what());
        }
    };
    for (int k = n - 1; k >= 0; --k)
        for (int j = k - 1; j >= 0; --j)
            for (int i = j - 1; i >= 0; --i)
                for (int sk : signs(k))
                    for (int sj : signs(j))
                        for (int si : signs(i)) {
                            std::string label = "(" + gen_label(P, k, sk) + " " + gen_label(P, j, sj) +
                                                ") " + gen_label(P, i, si);
                            guard(label, [&] {
                                Elem lhs = unit(P, k, sk);
                                collect_into(P, lhs, {{j, sj}});
                                collect_into(P, lhs, {{i, si}});
                                Elem ji = unit(P, j, sj);
                                collect_into(P, ji, {{i, si}});
                                Elem rhs = unit(P, k, sk);
                                collect_into(P, rhs, to_word(ji));
                                if (lhs != rhs)
                                    bad.push_back("associativity " + label + " " + elem_str(lhs) +
                                                  " vs " + elem_str(rhs));
                            });
                        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (P.finite(j)) {
                std::string label = gen_label(P, j, 1) + "^r " + gen_label(P, i, 1);
                guard(label, [&] {
                    Elem lhs = collect(P, P.powers[j]);
                    collect_into(P, lhs, {{i, 1}});
                    Elem ji = unit(P, j);
                    collect_into(P, ji, {{i, 1}});
                    Elem rhs = unit(P, j, P.rel_orders[j] - 1);
                    collect_into(P, rhs, to_word(ji));
                    if (lhs != rhs)
                        bad.push_back("power overlap " + label + " " + elem_str(lhs) + " vs " +
                                      elem_str(rhs));
                });
            }
            if (P.finite(i)) {
                std::string label = gen_label(P, j, 1) + " " + gen_label(P, i, 1) + "^r";
                guard(label, [&] {
                    Elem lhs = unit(P, j);
                    collect_into(P, lhs, P.powers[i]);
                    Elem rhs = unit(P, j);
                    collect_into(P, rhs, {{i, 1}});
                    collect_into(P, rhs, {{i, P.rel_orders[i] - 1}});
                    if (lhs != rhs)
                        bad.push_back("power overlap " + label + " " + elem_str(lhs) + " vs " +
                                      elem_str(rhs));
                });
            } else {
                std::string label = "inverse conjugate " + gen_label(P, j, 1) + " by " + gen_label(P, i, 1);
                guard(label, [&] {
                    Word w{{i, 1}};
                    w.insert(w.end(), P.conj(j, i).begin(), P.conj(j, i).end());
                    w.push_back({i, -1});
                    Word v{{i, -1}};
                    v.insert(v.end(), P.conj_inv(j, i).begin(), P.conj_inv(j, i).end());
                    v.push_back({i, 1});
                    if (collect(P, w) != unit(P, j) || collect(P, v) != unit(P, j))
                        bad.push_back(label);
                });
            }
        }
    for (int i = 0; i < n; ++i) {
        if (!P.finite(i)) continue;
        std::string label = gen_label(P, i, 1) + " " + gen_label(P, i, 1) + "^r";
        guard(label, [&] {
            Elem lhs = unit(P, i);
            collect_into(P, lhs, P.powers[i]);
            Elem rhs = collect(P, P.powers[i]);
            collect_into(P, rhs, {{i, 1}});
            if (lhs != rhs)
                bad.push_back("power overlap " + label + " " + elem_str(lhs) + " vs " + elem_str(rhs));
        });
    }
    return bad;
}

bool is_central_chain(const PcPresentation& P) {
    const int n = P.size();
    for (int i = 0; i < n; ++i) {
        if (!P.finite(i)) return false;
        Elem w = collect(P, P.powers[i]);
        if (depth(w) <= i) return false;
        for (int j = i + 1; j < n; ++j) {
            Elem c = collect(P, P.conj(j, i));
            if (depth(c) != j || c[j] != 1) return false;
        }
    }
    return true;
}

}  // namespace wamsley
