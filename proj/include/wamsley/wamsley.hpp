#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wamsley/arith.hpp"
#include "wamsley/fporacle.hpp"
#include "wamsley/macdonald.hpp"
#include "wamsley/pc.hpp"

namespace wamsley {

// V_i = [a^{alpha^i}, b^{mu^i}][a,b]^-1 and F_i = a^{-p^e(alpha^i-1)} b^{p^e(mu^i-1)}.
Elem v_element(const JGroup& J, const Int& i);
Elem f_element(const JGroup& J, const Int& i);
// Least r > 0 with alpha^r = mu^r = 1 modulo the orders of a and b, so V_{i+r} = V_i.
Int v_period(const JGroup& J);
// 3 in Cases 1 and 2, 5 in Case 3: every V_i lies in Z_level(J).
int centre_level(const Params& params);
PcSubgroup upper_central_term(const JGroup& J, int level);

struct NpComputation {
    PcSubgroup np;
    Int period;
    Int generated;         // number of V_i fed to the closure
    bool reduced = false;  // only one period of V_i was used
    Int sampled;           // V_i beyond the period checked against the reduction
    std::optional<bool> short_closure_agrees;  // closure of V_1..V_{p^n-1}, when p | alpha-1
    int level = 3;
};
// Normal closure of V_1..V_{gamma-1}. Throws a Formula error when some V_i leaves Z_level(J).
NpComputation compute_Np(const JGroup& J, std::uint64_t seed = 1);

// Readings of the h = 1 generating set: a^{2^{2m+1-n}} or the exponent 2m+1-n as typeset.
enum class GeneratorReading { PowerOfTwo, Typeset };

struct ClosedNp {
    std::string form;  // which closed form applies
    std::vector<LetterWord> gens, alt_gens;
    PcSubgroup np, alt;
    bool has_alt = false;
    std::optional<std::vector<Int>> invariants;  // expected abelian invariants
    Int order;                                   // expected |N_p|
    Int quotient_order;                          // expected |G_p/N_p|
    std::vector<CheckLine> aux;                  // centre terms, M_n, L_2n, memberships
    bool forms_agree() const { return !has_alt || np == alt; }
};
// aux needs the computed N_p for its membership lines and stays empty without it.
ClosedNp closed_form_Np(const JGroup& J, GeneratorReading reading = GeneratorReading::PowerOfTwo,
                        const PcSubgroup* computed = nullptr);

struct TypoCandidate {
    std::string reading;
    std::vector<bool> holds;  // one entry per instance
    bool holds_everywhere() const;
};
struct TypoResolution {
    std::string relation;
    std::vector<std::string> instances;
    std::vector<TypoCandidate> candidates;
    std::string resolved;  // the unique reading holding at every instance, empty otherwise
    bool unique() const { return !resolved.empty(); }
};
// Case 2 power relation among a, b and c; needs Case 2 groups.
TypoResolution resolve_power_relation(const std::vector<const JGroup*>& groups);
// h = 1 generating set compared with the computed N_2; needs Case2_hEq1 with n > 0.
TypoResolution resolve_generator_reading(const std::vector<const JGroup*>& groups);
// Signs in the h = 1 quotient relations a^{2^m(1+2^{m-n})} b^{+-2^m} = 1 = b^{2^m(1+2^{m-n})} a^{+-2^m}.
TypoResolution resolve_relation_signs(const std::vector<const JGroup*>& groups);
// Isomorphism type of N_2 for n > 0, h = 1 or h >= 2; all groups share one branch.
TypoResolution resolve_np_type(const std::vector<const JGroup*>& groups);

struct WpGroup {
    Params params;
    PcPresentation pres;  // W_p; equals the quotient when n = 0
    Elem a0, b0, c0, d0;  // d0 is empty when n = 0
    PcSubgroup np;
    Quotient quotient;               // G_p/N_p
    std::vector<ChainSlot> slots;    // letter and digit of each quotient generator
    int d_count = 0;                 // generators spent on d0
    Int qk_alpha, qk_mu, q_residue;  // alpha^{qk} mod o(a0), mu^{qk} mod o(b0), q mod o(c0)
    bool extended() const { return d_count > 0; }
};
WpGroup build_Wp(const JGroup& J, const PcSubgroup& np);
// Letters a, b, c, d stand for a0, b0, c0, d0.
Elem wp_element(const WpGroup& W, const LetterWord& w);
Elem quotient_element(const WpGroup& W, const LetterWord& w);

// Exponent of p in |W| and the factored order of W.
int v_exponent(const Int& p, const Int& alpha, const Int& gamma);
std::vector<std::pair<Int, int>> order_of_W(const Int& alpha, const Int& gamma);

struct NilpotencyForm {
    std::string branch;
    int cls = 0;
    std::vector<std::vector<LetterWord>> levels;  // gamma_2 .. gamma_c when stated
    std::string note;                             // set when a level departs from the typeset form
};
NilpotencyForm nilpotency_class_Wp(const Params& params);

// Derived length of W from the stated rule, and per prime the length of [W,W]_p from the case analysis.
int derived_length_W(const Int& alpha, const Int& gamma);
std::vector<std::pair<Int, int>> commutator_subgroup_parts(const Int& alpha, const Int& gamma);
// Derived length of <a0^{p^h}, b0^{p^h}, c0> in the built group.
int computed_commutator_part_length(const WpGroup& W);

struct NormalFormCount {
    std::vector<Int> ranges;  // e_1, e_2, e_3 (and e_4 for W_p)
    Int product;
    Int distinct;
    Int order;
    bool enumerated = false;
    bool pass() const { return enumerated && product == order && distinct == order; }
};
// Ranges of the unique normal form a0^e1 b0^e2 c0^e3 [d0^e4], when one is stated.
std::optional<std::vector<Int>> normal_form_ranges(const Params& params, bool with_d);
std::optional<NormalFormCount> count_normal_forms(const WpGroup& W, bool with_d,
                                                  std::uint64_t max_enumerate = 2000000);

// Presentations in the fp text format. Exponents are reduced modulo the orders the
// relations themselves impose, so q and alpha^gamma never appear at full size.
// For h = 1 the b-power in the sign-sensitive relations is negated unless typeset_signs is set.
std::string quotient_fp_text(const WpGroup& W, bool typeset_signs = false);
std::string wp_fp_text(const WpGroup& W, bool typeset_signs = false);
// a, b, d presentation of W(alpha, beta, gamma) with mu-powers written as conjugates by d.
std::string general_fp_text(const Int& alpha, const Int& beta, const Int& gamma);
// Images of the fp generators a, b, c, d in the quotient or in W_p.
GenMap fp_assignment(const WpGroup& W, const FpPresentation& fp, bool on_quotient);

struct AutomorphismCheck {
    std::vector<std::string> violations;
    bool surjective = false;
    bool pass() const { return violations.empty() && surjective; }
};
// a0 <-> b0, c0 -> c0^-1, d0 -> d0^-1 on W_p (and on the quotient alone).
AutomorphismCheck swap_automorphism(const WpGroup& W, bool on_quotient = false);

// Closed commutator formulas against collection for |i|, |j| <= bound.
std::vector<CheckLine> formula_suite(const JGroup& J, int bound);

struct ReportOptions {
    bool formulas = false;
    bool np = true;
    bool series = true;
    bool oracle = true;
    std::size_t max_cosets = 2000000;
    std::uint64_t max_enumerate = 2000000;
    std::uint64_t seed = 1;
};

struct SeriesLevel {
    int index;  // gamma_index
    std::vector<std::string> computed, closed;
    bool equal = false;
};

struct StructureReport {
    Params params;
    bool cyclic = false;  // p divides gamma only: W_p is cyclic of order p^n
    std::string np_form;
    Int order_J, order_J_closed;
    Int order_Np, order_Np_closed;
    Int order_quotient, order_quotient_closed;
    Int order_Wp, order_Wp_closed;
    std::vector<Int> np_invariants;
    std::optional<std::vector<Int>> np_invariants_closed;
    std::string series_kind = "lower central";
    std::vector<SeriesLevel> series;
    int class_computed = 0, class_formula = 0;
    int derived_computed = 0, derived_formula = 0;  // length of [W,W]_p
    bool oracle_ran = false;
    Int tc_order_quotient, tc_order_Wp;
    bool relations_pass = false;
    std::vector<TypoResolution> readings;
    std::vector<CheckLine> checks;
    std::vector<std::string> skipped;  // checks left out by the coset, enumeration or step budgets
    bool green() const;
    std::vector<std::string> mismatches() const;
};

StructureReport verify_instance(const Int& alpha, const Int& gamma, const Int& p,
                                const ReportOptions& opt = {});
std::string report_to_json(const StructureReport& r, int indent = 2);
std::string report_to_text(const StructureReport& r);

struct OrderSummary {
    Int formula;   // product of p^v
    Int pipeline;  // product of the computed |W_p|
    bool agree() const { return formula == pipeline; }
};
OrderSummary order_summary(const Int& alpha, const Int& gamma, const std::vector<StructureReport>& reports);

}  // namespace wamsley
