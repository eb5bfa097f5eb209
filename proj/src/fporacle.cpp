#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "wamsley/fporacle.hpp"

namespace wamsley {

FpWord free_reduce(const FpWord& w) {
    FpWord r;
    for (int x : w) {
        if (!r.empty() && r.back() == -x)
            r.pop_back();
        else
            r.push_back(x);
    }
    return r;
}

FpWord fp_inverse(const FpWord& w) {
    FpWord r(w.rbegin(), w.rend());
    for (int& x : r) x = -x;
    return r;
}

namespace {

constexpr std::size_t kMaxWordLength = 50000000;

FpWord concat(FpWord x, const FpWord& y) {
    x.insert(x.end(), y.begin(), y.end());
    return free_reduce(x);
}

FpWord word_power(const FpWord& w, long long e) {
    FpWord base = e < 0 ? fp_inverse(w) : w;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    if (!base.empty() && k > kMaxWordLength / base.size()) throw Error(ErrorKind::Parse, "word too long");
    FpWord r;
    r.reserve(base.size() * k);
    for (unsigned long long i = 0; i < k; ++i) r.insert(r.end(), base.begin(), base.end());
    return free_reduce(r);
}

FpWord commutator_word(const FpWord& x, const FpWord& y) {
    return concat(concat(fp_inverse(x), fp_inverse(y)), concat(x, y));
}

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& gens) : s_(s), gens_(gens) {}

    FpWord word() {
        FpWord w;
        for (;;) {
            skip();
            if (done() || std::string(",)]=").find(peek()) != std::string::npos) break;
            if (peek() == '*' || peek() == '.') {
                ++pos_;
                continue;
            }
            w = concat(w, factor());
        }
        return w;
    }

    bool done() {
        skip();
        return pos_ >= s_.size();
    }
    char peek() const { return s_[pos_]; }
    void expect(char c) {
        skip();
        if (done() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::Parse, msg + " at column " + std::to_string(pos_ + 1) + " in \"" + s_ + "\"");
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool integer_ahead() const {
        std::size_t q = pos_;
        if (q < s_.size() && (s_[q] == '-' || s_[q] == '+')) ++q;
        return q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]));
    }

    long long integer() {
        skip();
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = s_[pos_++] == '-';
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        long long v = 0;
        try {
            v = std::stoll(s_.substr(start, pos_ - start));
        } catch (const std::out_of_range&) {
            fail("exponent out of range");
        }
        return neg ? -v : v;
    }

    FpWord factor() {
        FpWord base = primary();
        for (;;) {
            skip();
            if (done() || peek() != '^') return base;
            ++pos_;
            skip();
            if (integer_ahead()) {
                base = word_power(base, integer());
            } else if (peek() == '(') {
                std::size_t save = pos_++;
                skip();
                if (integer_ahead()) {
                    long long e = integer();
                    skip();
                    if (!done() && peek() == ')') {
                        ++pos_;
                        base = word_power(base, e);
                        continue;
                    }
                }
                pos_ = save;
                FpWord y = primary();
                base = concat(concat(fp_inverse(y), base), y);
            } else {
                FpWord y = primary();
                base = concat(concat(fp_inverse(y), base), y);
            }
        }
    }

    FpWord primary() {
        skip();
        if (done()) fail("unexpected end of input");
        char ch = peek();
        if (ch == '(') {
            ++pos_;
            FpWord w = word();
            expect(')');
            return w;
        }
        if (ch == '[') {
            ++pos_;
            FpWord acc = word();
            int entries = 1;
            while (!done() && peek() == ',') {
                ++pos_;
                acc = commutator_word(acc, word());
                ++entries;
            }
            expect(']');
            if (entries < 2) fail("commutator needs two entries");
            return acc;
        }
        if (ch == '1') {
            ++pos_;
            return {};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            auto it = std::find(gens_.begin(), gens_.end(), name);
            if (it == gens_.end()) fail("unknown generator '" + name + "'");
            return {static_cast<int>(it - gens_.begin()) + 1};
        }
        fail(std::string("unexpected character '") + ch + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& gens_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

FpWord parse_fp_word(const FpPresentation& P, const std::string& text) {
    Parser ps(text, P.generators);
    FpWord w = ps.word();
    if (!ps.done()) ps.fail("trailing input");
    return w;
}

FpPresentation parse_fp(const std::string& text) {
    FpPresentation P;
    bool have_gens = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon != std::string::npos) {
            std::string key = trim(line.substr(0, colon));
            if (key != "generators" && key != "gens") throw Error(ErrorKind::Parse, "unknown header '" + key + "'");
            if (have_gens) throw Error(ErrorKind::Parse, "generators given twice");
            std::string rest = line.substr(colon + 1);
            std::replace(rest.begin(), rest.end(), ',', ' ');
            std::istringstream ns(rest);
            std::string name;
            while (ns >> name) {
                if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
                    throw Error(ErrorKind::Parse, "bad generator name '" + name + "'");
                if (std::find(P.generators.begin(), P.generators.end(), name) != P.generators.end())
                    throw Error(ErrorKind::Parse, "duplicate generator '" + name + "'");
                P.generators.push_back(name);
            }
            have_gens = true;
            continue;
        }
        if (!have_gens) throw Error(ErrorKind::Parse, "relation before the generators line");
        Parser ps(line, P.generators);
        std::vector<FpWord> sides{ps.word()};
        while (!ps.done()) {
            ps.expect('=');
            sides.push_back(ps.word());
        }
        if (sides.size() == 1) {
            if (!sides[0].empty()) P.relators.push_back(sides[0]);
            continue;
        }
        for (std::size_t k = 0; k + 1 < sides.size(); ++k) {
            FpWord r = concat(sides[k], fp_inverse(sides[k + 1]));
            if (!r.empty()) P.relators.push_back(r);
        }
    }
    if (!have_gens) throw Error(ErrorKind::Parse, "missing generators line");
    return P;
}

std::string fp_word_string(const FpPresentation& P, const FpWord& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < w.size()) {
        int g = std::abs(w[i]);
        long long e = 0;
        std::size_t j = i;
        while (j < w.size() && std::abs(w[j]) == g && (w[j] > 0) == (w[i] > 0)) {
            e += w[j] > 0 ? 1 : -1;
            ++j;
        }
        if (!first) os << " ";
        first = false;
        os << P.generators.at(g - 1);
        if (e != 1) os << "^" << e;
        i = j;
    }
    return os.str();
}

std::string fp_to_text(const FpPresentation& P) {
    std::ostringstream os;
    os << "generators: ";
    for (std::size_t i = 0; i < P.generators.size(); ++i) os << (i ? ", " : "") << P.generators[i];
    os << "\n";
    for (const auto& r : P.relators) os << fp_word_string(P, r) << "\n";
    return os.str();
}

namespace {

using Col = int;

Col column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

class Enumerator {
public:
    Enumerator(int ngens, std::size_t max_cosets) : ncols_(2 * ngens), max_(max_cosets) {}

    std::vector<std::int32_t> tab;
    std::vector<std::int32_t> fwd;
    std::size_t n = 0;
    std::size_t live = 0;
    std::size_t peak = 0;

    void start() { add(); }

    bool record = false;
    std::vector<std::pair<std::int32_t, Col>> deductions;

    bool define(std::int32_t c, Col x) {
        if (n >= max_) return false;
        std::int32_t d = add();
        set(c, x, d);
        return true;
    }

    void set(std::int32_t c, Col x, std::int32_t d) {
        at(c, x) = d;
        at(d, x ^ 1) = c;
        if (record) deductions.emplace_back(c, x);
    }

    bool alive(std::size_t c) const { return fwd[c] == static_cast<std::int32_t>(c); }

    // Trace w from c in both directions, defining new cosets when allowed.
    // Returns false only when a definition is needed but the table is full.
    bool scan(std::int32_t c, const std::vector<Col>& w, bool fill) {
        if (w.empty()) return true;
        std::int32_t f = c, b = c;
        std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
        for (;;) {
            while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return true;
            }
            while (j >= i && at(b, w[j] ^ 1) >= 0) b = at(b, w[j--] ^ 1);
            if (j < i) {
                coincidence(f, b);
                return true;
            }
            if (i == j) {
                set(f, w[i], b);
                return true;
            }
            if (!fill) return true;
            if (!define(f, w[i])) return false;
        }
    }

    // Renumbers live cosets in order and returns the new index of the first
    // live coset at or after c.
    std::size_t compact(std::size_t c) {
        std::vector<std::int32_t> renum(n, -1);
        std::size_t k = 0, newc = 0;
        for (std::size_t e = 0; e < n; ++e) {
            if (e == c) newc = k;
            if (alive(e)) renum[e] = static_cast<std::int32_t>(k++);
        }
        if (c >= n) newc = k;
        std::vector<std::int32_t> t2(k * ncols_, -1);
        for (std::size_t e = 0; e < n; ++e) {
            if (renum[e] < 0) continue;
            for (Col x = 0; x < ncols_; ++x) {
                std::int32_t d = tab[e * ncols_ + x];
                t2[renum[e] * ncols_ + x] = d < 0 ? -1 : renum[d];
            }
        }
        tab.swap(t2);
        n = k;
        live = k;
        fwd.resize(k);
        std::iota(fwd.begin(), fwd.end(), 0);
        return newc;
    }

    std::int32_t& at(std::int32_t c, Col x) { return tab[static_cast<std::size_t>(c) * ncols_ + x]; }

private:
    std::int32_t add() {
        std::int32_t d = static_cast<std::int32_t>(n++);
        tab.insert(tab.end(), ncols_, -1);
        fwd.push_back(d);
        ++live;
        peak = std::max(peak, live);
        return d;
    }

    std::int32_t rep(std::int32_t k) {
        std::int32_t r = k;
        while (fwd[r] != r) r = fwd[r];
        while (fwd[k] != r) {
            std::int32_t nx = fwd[k];
            fwd[k] = r;
            k = nx;
        }
        return r;
    }

    void merge(std::int32_t k, std::int32_t l) {
        std::int32_t a = rep(k), b = rep(l);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        fwd[b] = a;
        queue_.push_back(b);
        --live;
    }

    void coincidence(std::int32_t a, std::int32_t b) {
        queue_.clear();
        merge(a, b);
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            std::int32_t g = queue_[qi];
            for (Col x = 0; x < ncols_; ++x) {
                std::int32_t d = at(g, x);
                if (d < 0) continue;
                at(d, x ^ 1) = -1;
                std::int32_t mu = rep(g), nu = rep(d);
                if (at(mu, x) >= 0)
                    merge(nu, at(mu, x));
                else if (at(nu, x ^ 1) >= 0)
                    merge(mu, at(nu, x ^ 1));
                else
                    set(mu, x, nu);
            }
        }
    }

    int ncols_;
    std::size_t max_;
    std::vector<std::int32_t> queue_;
};

std::vector<Col> columns(const FpWord& w) {
    std::vector<Col> r;
    for (int x : w) r.push_back(column(x));
    return r;
}

bool table_closes(Enumerator& E, const std::vector<std::vector<Col>>& rels) {
    if (std::any_of(E.tab.begin(), E.tab.end(), [](std::int32_t v) { return v < 0; })) return false;
    for (std::size_t e = 0; e < E.n; ++e)
        for (const auto& r : rels) {
            std::int32_t f = static_cast<std::int32_t>(e);
            for (Col x : r) f = E.at(f, x);
            if (f != static_cast<std::int32_t>(e)) return false;
        }
    return true;
}

CosetTable felsch(const std::vector<std::vector<Col>>& rels, const std::vector<std::vector<Col>>& subs, int ng,
                  std::size_t max_cosets) {
    const int ncols = 2 * ng;
    // Distinct cyclic conjugates of every relator and its inverse, by first letter.
    std::vector<std::vector<std::vector<Col>>> by_col(ncols);
    {
        std::set<std::vector<Col>> seen;
        for (const auto& r : rels) {
            std::vector<Col> ri(r.rbegin(), r.rend());
            for (Col& x : ri) x ^= 1;
            for (const std::vector<Col>* w : std::array<const std::vector<Col>*, 2>{&r, &ri})
                for (std::size_t k = 0; k < w->size(); ++k) {
                    std::vector<Col> v(w->begin() + k, w->end());
                    v.insert(v.end(), w->begin(), w->begin() + k);
                    if (seen.insert(v).second) by_col[v[0]].push_back(v);
                }
        }
    }
    Enumerator E(ng, max_cosets);
    E.start();
    E.record = true;
    auto process = [&]() {
        while (!E.deductions.empty()) {
            auto [c, x] = E.deductions.back();
            E.deductions.pop_back();
            for (const auto& w : by_col[x]) {
                if (!E.alive(c)) break;
                E.scan(c, w, false);
            }
        }
    };
    bool overflow = false;
    for (const auto& h : subs) {
        if (!E.scan(0, h, true)) overflow = true;
        process();
    }
    for (std::size_t c = 0; !overflow && c < E.n; ++c) {
        for (Col x = 0; x < ncols && E.alive(c); ++x) {
            if (E.at(static_cast<std::int32_t>(c), x) >= 0) continue;
            if (!E.define(static_cast<std::int32_t>(c), x)) {
                overflow = true;
                break;
            }
            process();
        }
    }
    if (overflow) return CosetTable(ng, {}, false, E.peak);
    E.compact(0);
    bool complete = table_closes(E, rels);
    return CosetTable(ng, std::move(E.tab), complete, E.peak);
}

CosetTable hlt(const std::vector<std::vector<Col>>& rels, const std::vector<std::vector<Col>>& subs, int ng,
               std::size_t max_cosets) {
    const int ncols = 2 * ng;
    Enumerator E(ng, max_cosets);
    E.start();
    auto lookahead = [&]() {
        for (const auto& h : subs) E.scan(0, h, false);
        for (std::size_t e = 0; e < E.n; ++e) {
            for (const auto& r : rels) {
                if (!E.alive(e)) break;
                E.scan(static_cast<std::int32_t>(e), r, false);
            }
        }
    };

    bool overflow = false;
    for (const auto& h : subs)
        if (!E.scan(0, h, true)) overflow = true;
    std::size_t c = 0;
    while (!overflow && c < E.n) {
        if (!E.alive(c)) {
            ++c;
            continue;
        }
        bool stuck = false;
        for (const auto& r : rels) {
            if (!E.scan(static_cast<std::int32_t>(c), r, true)) {
                stuck = true;
                break;
            }
            if (!E.alive(c)) break;
        }
        if (!stuck && E.alive(c)) {
            for (Col x = 0; x < ncols; ++x) {
                if (E.at(static_cast<std::int32_t>(c), x) < 0 && !E.define(static_cast<std::int32_t>(c), x)) {
                    stuck = true;
                    break;
                }
            }
        }
        if (!stuck) {
            ++c;
            continue;
        }
        lookahead();
        c = E.compact(c);
        if (E.n * 10 > max_cosets * 9) overflow = true;
    }
    if (overflow) return CosetTable(ng, {}, false, E.peak);
    lookahead();
    E.compact(0);
    bool complete = table_closes(E, rels);
    return CosetTable(ng, std::move(E.tab), complete, E.peak);
}

}  // namespace

CosetTable todd_coxeter(const FpPresentation& P, const std::vector<FpWord>& sub, std::size_t max_cosets,
                        TcStrategy strategy) {
    const int ng = static_cast<int>(P.generators.size());
    if (ng == 0) return CosetTable(0, {}, true, 1);
    if (max_cosets == 0) return CosetTable(ng, {}, false, 0);
    std::vector<std::vector<Col>> rels, subs;
    for (const auto& r : P.relators)
        if (auto w = free_reduce(r); !w.empty()) rels.push_back(columns(w));
    for (const auto& h : sub)
        if (auto w = free_reduce(h); !w.empty()) subs.push_back(columns(w));
    return strategy == TcStrategy::Felsch ? felsch(rels, subs, ng, max_cosets) : hlt(rels, subs, ng, max_cosets);
}

bool relators_fix_all(const FpPresentation& P, const CosetTable& T) {
    if (!T.complete()) return false;
    for (std::size_t c = 0; c < T.size(); ++c)
        for (const auto& r : P.relators) {
            std::int32_t f = static_cast<std::int32_t>(c);
            for (int x : r) f = T.act(f, std::abs(x) - 1, x < 0);
            if (f != static_cast<std::int32_t>(c)) return false;
        }
    return true;
}

std::vector<Perm> perm_image(const CosetTable& T) {
    if (!T.complete()) throw Error(ErrorKind::Incomplete, "coset table is incomplete");
    std::vector<Perm> out(T.ngens(), Perm(T.size()));
    for (int g = 0; g < T.ngens(); ++g)
        for (std::size_t c = 0; c < T.size(); ++c) out[g][c] = static_cast<std::uint32_t>(T.act(c, g));
    return out;
}

Perm perm_identity(std::size_t degree) {
    Perm p(degree);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

Perm perm_mul(const Perm& x, const Perm& y) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
    return r;
}

Perm perm_inverse(const Perm& x) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[x[i]] = static_cast<std::uint32_t>(i);
    return r;
}

bool perm_is_identity(const Perm& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != i) return false;
    return true;
}

Int perm_order(const Perm& x) {
    std::vector<char> seen(x.size(), 0);
    Int l = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (seen[i]) continue;
        Int len = 0;
        for (std::size_t j = i; !seen[j]; j = x[j]) {
            seen[j] = 1;
            ++len;
        }
        l = l / boost::multiprecision::gcd(l, len) * len;
    }
    return l;
}

Perm perm_of_word(const std::vector<Perm>& gens, const FpWord& w) {
    std::size_t deg = gens.empty() ? 0 : gens[0].size();
    Perm r = perm_identity(deg);
    for (int x : w) r = perm_mul(r, x > 0 ? gens.at(x - 1) : perm_inverse(gens.at(-x - 1)));
    return r;
}

namespace {

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto v : p) h = (h ^ v) * 1099511628211ULL;
        return h;
    }
};

}  // namespace

std::vector<Perm> perm_group_elements(const std::vector<Perm>& gens, std::size_t limit) {
    std::size_t deg = gens.empty() ? 0 : gens[0].size();
    std::vector<Perm> out{perm_identity(deg)};
    std::unordered_set<Perm, PermHash> seen{out[0]};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            Perm y = perm_mul(out[i], g);
            if (seen.insert(y).second) {
                if (out.size() >= limit) throw Error(ErrorKind::Enumeration, "permutation group exceeds the element limit");
                out.push_back(std::move(y));
            }
        }
    }
    return out;
}

Elem fp_eval(const PcPresentation& pc, const GenMap& assignment, const FpWord& w) {
    Elem x = identity(pc);
    for (int l : w) {
        const Elem& g = assignment.images.at(std::abs(l) - 1);
        x = multiply(pc, x, l > 0 ? g : inverse(pc, g));
    }
    return x;
}

std::vector<std::string> verify_fp_map(const FpPresentation& fp, const PcPresentation& pc, const GenMap& assignment) {
    std::vector<std::string> out;
    if (assignment.images.size() != fp.generators.size()) {
        out.push_back("assignment has " + std::to_string(assignment.images.size()) + " images for " +
                      std::to_string(fp.generators.size()) + " generators");
        return out;
    }
    for (std::size_t k = 0; k < fp.relators.size(); ++k) {
        if (!is_identity(fp_eval(pc, assignment, fp.relators[k])))
            out.push_back("relator " + std::to_string(k + 1) + " fails: " + fp_word_string(fp, fp.relators[k]));
    }
    return out;
}

std::optional<Int> relator_power_bound(const FpPresentation& fp, const FpWord& w0) {
    FpWord w = free_reduce(w0);
    if (w.empty()) return Int(1);
    std::optional<Int> best;
    for (const auto& r0 : fp.relators) {
        FpWord r = free_reduce(r0);
        if (r.empty() || r.size() % w.size() != 0) continue;
        FpWord wn = word_power(w, static_cast<long long>(r.size() / w.size()));
        if (wn.size() != r.size()) continue;
        for (const FpWord& v : {r, fp_inverse(r)}) {
            FpWord twice = v;
            twice.insert(twice.end(), v.begin(), v.end());
            if (std::search(twice.begin(), twice.end(), wn.begin(), wn.end()) == twice.end()) continue;
            Int n = static_cast<long long>(r.size() / w.size());
            if (!best || n < *best) best = n;
        }
    }
    return best;
}

CrossCheck cross_check(const PcPresentation& pc, const FpPresentation& fp, const GenMap& assignment,
                       const CrossCheckOptions& opt) {
    CrossCheck r;
    r.violations = verify_fp_map(fp, pc, assignment);
    r.relators_hold = r.violations.empty();
    r.pc_order = pc.order();
    r.surjective = subgroup_order(pc, subgroup(pc, assignment.images)) == r.pc_order;
    std::vector<FpWord> sub;
    if (opt.cyclic_subgroup) {
        auto bound = relator_power_bound(fp, *opt.cyclic_subgroup);
        if (!bound) throw Error(ErrorKind::Usage, "no relator is a power of the subgroup generator");
        r.subgroup_bound = *bound;
        sub.push_back(*opt.cyclic_subgroup);
    }
    CosetTable T = todd_coxeter(fp, sub, opt.max_cosets, opt.strategy);
    r.enumerated = T.complete();
    if (r.enumerated) {
        r.index = T.size();
        r.tc_order = r.index * r.subgroup_bound;
    }
    r.orders_agree = r.enumerated && r.tc_order == r.pc_order;
    return r;
}

}  // namespace wamsley
