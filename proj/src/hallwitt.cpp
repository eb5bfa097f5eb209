#include "wamsley/hallwitt.hpp"

#include <algorithm>

namespace wamsley {

CubicArray cover_array() {
    return {{1, 2, 3, 1}, {1, 3, 4, 1}, {2, 3, 5, 1}, {1, 5, 6, 1}, {2, 6, 7, 1},
            {1, 6, 7, 1}, {2, 4, 6, 1}, {3, 4, 7, 1}, {3, 5, 7, -1}};
}

int hirsch_length(const PcPresentation& P) {
    int h = 0;
    for (int i = 0; i < P.size(); ++i)
        if (!P.finite(i)) ++h;
    return h;
}

HallCover build_cover() {
    HallCover H;
    H.t = cover_array();
    PcPresentation P(7);
    for (int i = 0; i < 7; ++i) {
        P.names.push_back("a" + std::to_string(i + 1));
        P.rel_orders.push_back(0);
        P.powers.push_back({});
    }
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < j; ++i) P.conj(j, i) = {{j, 1}};
    for (const auto& e : H.t) P.conj(e.j - 1, e.i - 1).push_back({e.k - 1, e.value});
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < j; ++i) {
            auto& w = P.conj(j, i);
            std::sort(w.begin() + 1, w.end());
        }
    P.finalize(true);
    auto bad = consistency_check(P);
    if (!bad.empty()) throw Error(ErrorKind::Construction, "cover is inconsistent: " + bad.front());
    H.pres = std::move(P);
    return H;
}

Int hall_F7_rational(const Int& i, const Int& j) {
    Int num = -6 * i * j * j + 3 * i * i * i * j * j + 3 * i * i * j * j + i * j - 3 * i * i * j * j * j +
              i * i * i * j + i * j * j * j;
    if (num % 12 != 0) throw Error(ErrorKind::Formula, "F_7 is not integral");
    return num / 12;
}

Int hall_F7_binomial(const Int& i, const Int& j) {
    return 3 * binom(i, 3) * binom(j, 2) - 3 * binom(i, 2) * binom(j, 3) + binom(i, 2) * binom(j, 2) -
           i * binom(j, 3) + 2 * j * binom(i, 3) + 2 * j * binom(i, 2) - i * binom(j, 2);
}

Int hall_F(int k, const Int& i, const Int& j) {
    switch (k) {
        case 1:
        case 2:
            return 0;
        case 3:
            return -i * j;
        case 4:
            return -j * binom(i, 2);
        case 5:
            return -i * binom(j, 2);
        case 6:
            return -binom(i, 2) * binom(j, 2);
        case 7: {
            Int a = hall_F7_rational(i, j), b = hall_F7_binomial(i, j);
            if (a != b) throw Error(ErrorKind::Formula, "the two forms of F_7 disagree");
            return a;
        }
    }
    throw Error(ErrorKind::Usage, "hall_F needs k in 1..7");
}

HallCheck check_hall_identity(const HallCover& cover, Exp i, Exp j) {
    const auto& P = cover.pres;
    HallCheck h{i, j, {}, identity(P), false};
    h.lhs = commutator(P, unit(P, 0, i), unit(P, 1, j));
    for (int k = 1; k <= 7; ++k) h.rhs[k - 1] = static_cast<Exp>(hall_F(k, i, j));
    h.pass = h.lhs == h.rhs;
    return h;
}

std::vector<HallCheck> check_hall_range(const HallCover& cover, Exp lo, Exp hi) {
    std::vector<HallCheck> out;
    for (Exp i = lo; i <= hi; ++i)
        for (Exp j = lo; j <= hi; ++j) out.push_back(check_hall_identity(cover, i, j));
    return out;
}

namespace {

void require_case1(const Params& P) {
    if (case_family(P.tag) != 1) throw Error(ErrorKind::Usage, "the chi form needs Case 1 parameters");
}

}  // namespace

Int chi_value(const Params& P, const Int& i, const Int& j) {
    require_case1(P);
    Int chi = 6 * binom(i, 3) * binom(j, 2) - 6 * binom(i, 2) * binom(j, 3) + 4 * binom(i, 3) * j +
              3 * binom(i, 2) * binom(j, 2) - 2 * i * binom(j, 3) + 2 * binom(i, 2) * j - 2 * i * binom(j, 2);
    if (P.p == 3) chi += 2 * ipow(3, P.m - 1) * P.ell * binom(i, 2) * binom(j, 2);
    return chi;
}

LetterWord chi_form_word(const Params& P, const Int& i, const Int& j) {
    require_case1(P);
    const Int& l = P.ell;
    Int r = ipow(P.p, P.m);
    Int v = -l + r * l * l;
    if (v % 2 != 0) throw Error(ErrorKind::Formula, "v is odd");
    Int bi = binom(i, 2), bj = binom(j, 2);
    return {{'c', i * j},
            {'a', -r * l * j * bi},
            {'b', r * l * i * bj},
            {'c', -r * l * bi * bj},
            {'b', -r * r * (v / 2) * l * chi_value(P, i, j)}};
}

ChiCheck final_commutator_chi(const JGroup& J, const Int& i, const Int& j) {
    ChiCheck c;
    c.chi_form = eval_word(J, chi_form_word(J.params, i, j));
    c.formula = comm_formula(J, i, j, CommKind::AB);
    c.direct = comm_direct(J, i, j, CommKind::AB);
    return c;
}

namespace {

struct BasicNode {
    int weight;
    int left = -1, right = -1;  // children for weight > 1
    std::string text;
};

std::string commutator_text(const BasicNode& u, const BasicNode& v) {
    if (u.weight > 1 && v.weight == 1) return u.text.substr(0, u.text.size() - 1) + "," + v.text + "]";
    return "[" + u.text + "," + v.text + "]";
}

}  // namespace

std::vector<std::vector<std::string>> hall_basis(int rank, int max_weight) {
    if (rank < 1 || rank > 26 || max_weight < 1) throw Error(ErrorKind::Usage, "hall_basis needs 1 <= rank <= 26");
    // Nodes are stored in increasing basic order: by weight, then creation.
    std::vector<BasicNode> nodes;
    static const std::string letters = "xyzwuvstpqrmnklijghefabcdo";
    for (int g = 0; g < rank; ++g) nodes.push_back({1, -1, -1, std::string(1, letters[g])});
    std::vector<std::vector<std::string>> out(max_weight);
    for (int g = 0; g < rank; ++g) out[0].push_back(nodes[g].text);
    for (int w = 2; w <= max_weight; ++w) {
        std::vector<BasicNode> fresh;
        const int count = static_cast<int>(nodes.size());
        for (int u = 0; u < count; ++u)
            for (int v = 0; v < u; ++v) {
                if (nodes[u].weight + nodes[v].weight != w) continue;
                if (nodes[u].weight > 1 && nodes[u].right > v) continue;
                fresh.push_back({w, u, v, commutator_text(nodes[u], nodes[v])});
            }
        for (auto& f : fresh) {
            out[w - 1].push_back(f.text);
            nodes.push_back(std::move(f));
        }
    }
    return out;
}

std::vector<std::vector<std::string>> reference_basic_table() {
    return {{"x", "y"},
            {"[y,x]"},
            {"[y,x,x]", "[y,x,y]"},
            {"[y,x,x,x]", "[y,x,y,x]", "[y,x,y,y]"},
            {"[y,x,x,x,x]", "[y,x,x,x,y]", "[y,x,y,x,x]", "[y,x,x,y,y]", "[y,x,y,y,x]", "[y,x,y,y,y]"}};
}

std::vector<WittRow> witt_table() {
    auto basis = hall_basis(2, 5);
    auto table = reference_basic_table();
    std::vector<WittRow> rows;
    for (int w = 1; w <= 5; ++w) rows.push_back({w, witt_rank(2, w), basis[w - 1].size(), table[w - 1].size()});
    return rows;
}

}  // namespace wamsley
