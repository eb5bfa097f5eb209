#pragma once

#include <string>
#include <vector>

#include "wamsley/macdonald.hpp"
#include "wamsley/pc.hpp"

namespace wamsley {

// Nonzero structure constant: a_j^{a_i} = a_j ... a_k^{value} ... for i < j < k (1-based).
struct CubicEntry {
    int i, j, k;
    Exp value;
};
using CubicArray = std::vector<CubicEntry>;

struct HallCover {
    PcPresentation pres;  // seven infinite generators a1..a7
    CubicArray t;
};

CubicArray cover_array();
HallCover build_cover();
int hirsch_length(const PcPresentation& P);

// Coefficient of a_k in [a_1^i, a_2^j] (k = 1..7). F_7 is evaluated from both printed
// forms, which must agree.
Int hall_F(int k, const Int& i, const Int& j);
Int hall_F7_rational(const Int& i, const Int& j);
Int hall_F7_binomial(const Int& i, const Int& j);

struct HallCheck {
    Exp i, j;
    Elem lhs;  // collected [a_1^i, a_2^j]
    Elem rhs;  // a_3^{F_3} ... a_7^{F_7}
    bool pass = false;
};
HallCheck check_hall_identity(const HallCover& cover, Exp i, Exp j);
std::vector<HallCheck> check_hall_range(const HallCover& cover, Exp lo, Exp hi);

// Commutator [a^i, b^j] in a Case 1 group J, assembled from the chi form.
Int chi_value(const Params& params, const Int& i, const Int& j);
LetterWord chi_form_word(const Params& params, const Int& i, const Int& j);
struct ChiCheck {
    Elem chi_form, formula, direct;
    bool pass() const { return chi_form == formula && chi_form == direct; }
};
ChiCheck final_commutator_chi(const JGroup& J, const Int& i, const Int& j);

// Basic commutators on generators x < y by weight, built by the standard recursive rule.
std::vector<std::vector<std::string>> hall_basis(int rank, int max_weight);
// The fixed table of basic commutators of weight 1..5 in x, y used for the lower central analysis.
std::vector<std::vector<std::string>> reference_basic_table();

struct WittRow {
    int weight;
    Int witt;
    std::size_t basis_count;
    std::size_t table_count;
    bool pass() const { return witt == Int(basis_count) && witt == Int(table_count); }
};
std::vector<WittRow> witt_table();

}  // namespace wamsley
