#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wamsley/arith.hpp"
#include "wamsley/pc.hpp"

namespace wamsley {

// Letters are +k for generator k-1 and -k for its inverse.
using FpWord = std::vector<int>;

struct FpPresentation {
    std::vector<std::string> generators;
    std::vector<FpWord> relators;  // freely reduced
    bool operator==(const FpPresentation& o) const {
        return generators == o.generators && relators == o.relators;
    }
};

FpWord free_reduce(const FpWord& w);
FpWord fp_inverse(const FpWord& w);

// Text format: a "generators: a, b" line, then one relation per line.
// Juxtaposition multiplies, x^n is a power, x^y = y^-1 x y, [x,y] = x^-1 y^-1 x y
// (left-normed for more entries), u = v becomes u v^-1, '#' starts a comment.
FpPresentation parse_fp(const std::string& text);
FpWord parse_fp_word(const FpPresentation& P, const std::string& text);
std::string fp_word_string(const FpPresentation& P, const FpWord& w);
std::string fp_to_text(const FpPresentation& P);

class CosetTable {
public:
    CosetTable() = default;
    CosetTable(int ngens, std::vector<std::int32_t> rows, bool complete, std::size_t peak)
        : ngens_(ngens), rows_(std::move(rows)), complete_(complete), peak_(peak) {}

    int ngens() const { return ngens_; }
    std::size_t size() const { return ngens_ == 0 ? (complete_ ? 1 : 0) : rows_.size() / (2 * ngens_); }
    bool complete() const { return complete_; }
    std::size_t peak() const { return peak_; }  // most cosets alive at once
    // Image of coset c under generator g (inverse when inv), -1 if undefined.
    std::int32_t act(std::size_t c, int g, bool inv = false) const {
        return rows_[c * 2 * ngens_ + 2 * g + (inv ? 1 : 0)];
    }

private:
    int ngens_ = 0;
    std::vector<std::int32_t> rows_;
    bool complete_ = false;
    std::size_t peak_ = 0;
};

// HLT scans relators coset by coset with lookahead when the table fills;
// Felsch defines cosets in order and closes every deduction before moving on.
enum class TcStrategy { HLT, Felsch };

CosetTable todd_coxeter(const FpPresentation& P, const std::vector<FpWord>& sub = {},
                        std::size_t max_cosets = 2000000, TcStrategy strategy = TcStrategy::HLT);
// Every relator maps every coset to itself.
bool relators_fix_all(const FpPresentation& P, const CosetTable& T);

// Permutations act on the right: point * (g h) = (point * g) * h.
using Perm = std::vector<std::uint32_t>;
std::vector<Perm> perm_image(const CosetTable& T);
Perm perm_identity(std::size_t degree);
Perm perm_mul(const Perm& x, const Perm& y);
Perm perm_inverse(const Perm& x);
bool perm_is_identity(const Perm& x);
Int perm_order(const Perm& x);
Perm perm_of_word(const std::vector<Perm>& gens, const FpWord& w);
// All elements of the generated group, breadth first; throws past the limit.
std::vector<Perm> perm_group_elements(const std::vector<Perm>& gens, std::size_t limit = 200000);

Elem fp_eval(const PcPresentation& pc, const GenMap& assignment, const FpWord& w);
std::vector<std::string> verify_fp_map(const FpPresentation& fp, const PcPresentation& pc,
                                       const GenMap& assignment);

struct CrossCheckOptions {
    std::size_t max_cosets = 2000000;
    TcStrategy strategy = TcStrategy::HLT;
    // Enumerate cosets of <w> instead; some relator must be a power w^n, bounding |<w>| by n.
    std::optional<FpWord> cyclic_subgroup;
};

struct CrossCheck {
    std::vector<std::string> violations;
    bool relators_hold = false;
    bool surjective = false;
    bool enumerated = false;
    Int index = 0;            // cosets enumerated
    Int subgroup_bound = 1;   // upper bound on the subgroup order
    Int tc_order = 0;
    Int pc_order = 0;
    bool orders_agree = false;
    bool pass() const { return relators_hold && surjective && enumerated && orders_agree; }
};

// Least n > 0 with w^n equal to a cyclic conjugate of a relator or its inverse.
std::optional<Int> relator_power_bound(const FpPresentation& fp, const FpWord& w);

// tc_order is index * subgroup_bound, an upper bound on the fp group order. The pc group
// is a quotient when relators hold and the images generate, so equal orders certify isomorphism.
CrossCheck cross_check(const PcPresentation& pc, const FpPresentation& fp, const GenMap& assignment,
                       const CrossCheckOptions& opt = {});

}  // namespace wamsley
