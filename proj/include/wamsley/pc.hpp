#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wamsley/arith.hpp"

namespace wamsley {

using Exp = std::int64_t;
using Syllable = std::pair<int, Exp>;  // 0-based generator index, exponent
using Word = std::vector<Syllable>;
using Elem = std::vector<Exp>;

struct ConjPowerCache;

class PcPresentation {
public:
    PcPresentation() = default;
    explicit PcPresentation(int n);

    int size() const { return n_; }
    bool finite(int i) const { return rel_orders[i] != 0; }
    Int order() const;  // product of relative orders; throws for infinite presentations

    // g_j^{g_i} and g_j^{g_i^{-1}} for i < j.
    Word& conj(int j, int i) {
        cache_.reset();
        return conj_[index(j, i)];
    }
    const Word& conj(int j, int i) const { return conj_[index(j, i)]; }
    Word& conj_inv(int j, int i) {
        cache_.reset();
        return conj_inv_[index(j, i)];
    }
    const Word& conj_inv(int j, int i) const { return conj_inv_[index(j, i)]; }
    // Powers of conjugates, filled during collection; present only after finalize.
    ConjPowerCache* conj_cache() const { return cache_.get(); }

    // Derives inverse conjugates (unless supplied) and the commuting table.
    void finalize(bool derive_inverse_conjugates = true);
    bool finalized() const { return finalized_; }
    bool commutes(int j, int i) const { return commute_[index(j, i)] != 0; }

    std::vector<std::string> names;
    std::vector<Exp> rel_orders;  // 0 marks an infinite generator
    std::vector<Word> powers;     // g_i^{r_i} in g_{i+1}..g_n
    std::map<std::string, Elem> labels;
    std::uint64_t step_budget = 100000000ULL;

    bool operator==(const PcPresentation& o) const;

private:
    std::size_t index(int j, int i) const { return static_cast<std::size_t>(j) * n_ + i; }
    int n_ = 0;
    std::vector<Word> conj_;
    std::vector<Word> conj_inv_;
    std::vector<char> commute_;
    bool finalized_ = false;
    std::shared_ptr<ConjPowerCache> cache_;
};

Elem identity(const PcPresentation& P);
Elem unit(const PcPresentation& P, int i, Exp e = 1);
bool is_identity(const Elem& x);
int depth(const Elem& x);  // first nonzero position, or size for the identity
Word to_word(const Elem& x);
Word invert_word(const Word& w);

void collect_into(const PcPresentation& P, Elem& e, const Word& w);
Elem collect(const PcPresentation& P, const Word& w);
Elem multiply(const PcPresentation& P, const Elem& x, const Elem& y);
Elem inverse(const PcPresentation& P, const Elem& x);
Elem power(const PcPresentation& P, const Elem& x, const Int& e);
Elem commutator(const PcPresentation& P, const Elem& x, const Elem& y);  // x^-1 y^-1 x y
Elem conjugate(const PcPresentation& P, const Elem& x, const Elem& y);   // y^-1 x y
Elem left_normed(const PcPresentation& P, const std::vector<Elem>& xs);
Int element_order(const PcPresentation& P, const Elem& x);

std::vector<std::string> consistency_check(const PcPresentation& P);
bool is_central_chain(const PcPresentation& P);

struct PcSubgroup {
    std::vector<Elem> igs;  // canonical, leading exponent 1, sorted by depth
    bool operator==(const PcSubgroup& o) const { return igs == o.igs; }
    bool operator!=(const PcSubgroup& o) const { return !(*this == o); }
    std::vector<int> depths() const;
};

PcSubgroup trivial_subgroup();
PcSubgroup whole_group(const PcPresentation& P);
PcSubgroup subgroup(const PcPresentation& P, const std::vector<Elem>& gens);
PcSubgroup normal_closure(const PcPresentation& P, const std::vector<Elem>& gens);
PcSubgroup closure(const PcPresentation& P, const std::vector<Elem>& gens,
                   const std::vector<Elem>& conjugators);
PcSubgroup join(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B);
Elem sift(const PcPresentation& P, const PcSubgroup& S, const Elem& x);
bool contains(const PcPresentation& P, const PcSubgroup& S, const Elem& x);
bool is_subset(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B);
Int subgroup_order(const PcPresentation& P, const PcSubgroup& S);
bool is_normal(const PcPresentation& P, const PcSubgroup& S);
bool is_abelian(const PcPresentation& P, const PcSubgroup& S);
PcSubgroup commutator_subgroup(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B);
PcSubgroup intersection(const PcPresentation& P, const PcSubgroup& A, const PcSubgroup& B,
                        std::uint64_t max_enumerate = 2000000);
std::vector<Int> abelian_invariants(const PcPresentation& P, const PcSubgroup& S);
PcSubgroup omega_subgroup(const PcPresentation& P, const PcSubgroup& S, int k);
PcSubgroup power_preimage_subgroup(const PcPresentation& P, const PcSubgroup& S, int k,
                                   const PcSubgroup& Z, std::uint64_t max_enumerate = 2000000);
std::vector<Elem> enumerate_subgroup(const PcPresentation& P, const PcSubgroup& S,
                                     std::uint64_t max_enumerate = 2000000);
std::vector<Elem> enumerate(const PcPresentation& P, std::uint64_t max_enumerate = 2000000);

enum class SeriesKind { LowerCentral, UpperCentral, Derived };
std::vector<PcSubgroup> series(const PcPresentation& P, SeriesKind kind);
std::vector<PcSubgroup> derived_series_of(const PcPresentation& P, const PcSubgroup& H);
PcSubgroup centre(const PcPresentation& P);

struct GenMap {
    std::vector<Elem> images;
};

Elem apply_map(const PcPresentation& target, const GenMap& map, const Elem& x);
std::vector<std::string> verify_map(const PcPresentation& src, const PcPresentation& target,
                                    const GenMap& map);

struct Quotient {
    PcPresentation pres;
    std::vector<int> kept;  // source positions surviving in the quotient
    GenMap projection;
    Elem project(const PcPresentation& src, const PcSubgroup& N, const Elem& x) const;
    Elem lift(const PcPresentation& src, const Elem& y) const;
};

Elem reduce_mod(const PcPresentation& P, const PcSubgroup& N, const Elem& x);
Quotient quotient(const PcPresentation& P, const PcSubgroup& N);
PcSubgroup preimage(const PcPresentation& P, const PcSubgroup& N, const Quotient& Q,
                    const PcSubgroup& H);

PcPresentation cyclic_extension(const PcPresentation& P, const GenMap& lambda, const Elem& t,
                                const Int& ord);

}  // namespace wamsley
