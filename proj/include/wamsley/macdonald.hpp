#pragma once

#include <string>
#include <map>
#include <vector>

#include "wamsley/arith.hpp"
#include "wamsley/pc.hpp"

namespace wamsley {

// Product of powers of the letters a, b, c.
using LetterWord = std::vector<std::pair<char, Int>>;

LetterWord word_inverse(const LetterWord& w);
LetterWord word_concat(const LetterWord& x, const LetterWord& y);
std::string word_string(const LetterWord& w);

// Element a^x b^y c^z of J with x < o(a), y < nb, z < nc.
struct Triple {
    Exp x = 0, y = 0, z = 0;
    bool operator==(const Triple& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const Triple& o) const { return !(*this == o); }
};

// How the multiplier moves letters past each other: through the defining
// relators only, or through the closed commutator formulas.
enum class Route { Relator, Formula };

class TripleGroup {
public:
    TripleGroup(const Params& params, Route route);

    const Params& params() const { return params_; }
    Route route() const { return route_; }
    Exp oa() const { return oa_; }
    Exp nb() const { return nb_; }  // b^nb = a^bover
    Exp nc() const { return nc_; }  // c^nc = a^cover
    Exp bover() const { return bover_; }
    Exp cover() const { return cover_; }
    Int order() const { return Int(oa_) * nb_ * nc_; }

    Triple normalize(const Int& x, const Int& y, const Int& z) const;
    Triple letter(char l, const Int& e) const;
    Triple mul(const Triple& u, const Triple& v);
    Triple inv(const Triple& u);
    Triple pow(const Triple& u, const Int& e);
    Triple comm(const Triple& u, const Triple& v);
    Triple conj(const Triple& u, const Triple& v);  // v^-1 u v
    Triple eval(const LetterWord& w);

private:
    Triple ba(Exp y, Exp k, int depth);  // b^y a^k
    Exp ca_shift(Exp z, Exp k, int depth);  // c^z a^k = a^X c^z
    Exp cb_shift(Exp z, Exp k, int depth);  // c^z b^k = b^Y c^z
    Triple mul_d(const Triple& u, const Triple& v, int depth);
    Triple pow_d(const Triple& u, Int e, int depth);
    Triple eval_d(const LetterWord& w, int depth);

    Params params_;
    Route route_;
    Exp oa_, nb_, nc_, bover_, cover_, zc_;
    Exp alpha0_, mu0_;
    std::vector<Exp> gk_;  // b^{a^k} = b a^{gk} c^{-k}
    std::map<std::pair<Exp, Exp>, Triple> memo_;
};

// Closed commutator formulas.
enum class CommKind { CA, CB, AB };  // [c^i,a^j], [c^i,b^j], [a^i,b^j]
LetterWord comm_formula_word(const Params& params, const Int& i, const Int& j, CommKind kind);
Int xi_exponent(const Params& params, const Int& i, const Int& j);

enum class Case3Sel {
    ABj,
    BAj,
    AB3,
    A3B3,
    A3iB3j,
    ABConjBA,
    AB3iConjA,
    AinvB3i,
    AinvB3iConjA,
    A3iBConjB,
    A3iBinvConjB,
    AinvBinv,
    AinvBinvConjBA,
    ABinvConjBA,
    AinvBConjBA,
    ShiftPlus,
    ShiftMinus,
    General,
};
const char* case3_sel_name(Case3Sel s);
std::vector<Case3Sel> all_case3_selectors();
int case3_arity(Case3Sel s);  // number of integer arguments
// Printed keeps the exponents exactly as typeset; Corrected repairs the 27-level
// terms that disagree with collection.
enum class Case3Reading { Corrected, Printed };
LetterWord case3_rhs(const Params& params, Case3Sel sel, const std::vector<Int>& args,
                     Case3Reading reading = Case3Reading::Corrected);
bool case3_corrected(Case3Sel sel);  // true when the two readings differ
// Left side of the identity as a word evaluated through commutators.
struct JGroup;
Elem case3_lhs(const JGroup& J, Case3Sel sel, const std::vector<Int>& args);
Elem case3_word_formula(const JGroup& J, Case3Sel sel, const std::vector<Int>& args,
                        Case3Reading reading = Case3Reading::Corrected);

struct JGroup {
    Params params;
    PcPresentation pres;
    Elem a, b, c;
    std::vector<PcSubgroup> refined_chain;
    std::vector<std::string> certificate;
    bool central_chain = false;
    bool formula_route_agrees = false;
    std::string formula_route_note;
};

// Generator layout of the refined chain: letter and p-adic digit.
struct ChainSlot {
    char letter;
    int digit;
};
std::vector<ChainSlot> chain_layout(const Params& params);

JGroup build_J(const Params& params, bool compare_formula_route = true);
PcPresentation pc_from_triples(const Params& params, TripleGroup& T);

Elem eval_word(const JGroup& J, const LetterWord& w);
Elem comm_formula(const JGroup& J, const Int& i, const Int& j, CommKind kind);
Elem comm_direct(const JGroup& J, const Int& i, const Int& j, CommKind kind);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckLine> structural_constants(const JGroup& J);

Int conj_exponent_function(const Params& params, const Int& i, bool plus);
Int conj_exponent_series(const Params& params, const Int& i, bool plus);

struct BasicCommutator {
    std::string name;
    Elem closed;
    Elem collected;
};
std::vector<BasicCommutator> basic_commutators(const JGroup& J);

std::vector<std::pair<Int, int>> order_of_G(const Int& alpha, const Int& gamma);
Int q_for(const Params& params);

// The relators of J in the fp text format.
std::string j_fp_text(const Params& params);

}  // namespace wamsley
