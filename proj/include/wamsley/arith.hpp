#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wamsley/error.hpp"

namespace wamsley {

using Int = boost::multiprecision::cpp_int;

enum class CaseTag {
    Case1_hPos,
    Case1_NotPm1,
    Case1_MinusOne,
    Case2_hGe2,
    Case2_hEq1,
    Case2_AlphaMinus1,
    Case3_AlphaPlus,
    Case3_AlphaMinus,
    GammaOnly,
};

const char* case_name(CaseTag t);
int case_family(CaseTag t);  // 1, 2, 3, or 0 for GammaOnly

struct Params {
    Int alpha;
    Int gamma;
    Int p;
    Int alpha0;
    int m = 0;
    int h = 0;
    int n = 0;
    Int k;
    Int ell;
    Int t;
    Int mu;      // inverse of alpha modulo the order of b
    Int mu0;     // inverse of alpha0 modulo the order of b
    Int order_b; // order of a and b in J (0 for GammaOnly)
    Int q;       // |G| / |G_p|
    std::optional<int> h0;
    std::optional<Int> u;
    std::optional<Int> v;
    std::optional<Int> g;
    int em = 0;
    CaseTag tag = CaseTag::GammaOnly;

    int pi() const { return static_cast<int>(p); }
};

// Exact helpers.
Int ipow(const Int& base, unsigned e);
Int powm(const Int& base, const Int& e, const Int& mod);  // result in [0, mod)
Int mod(const Int& a, const Int& n);                      // result in [0, n)
Int floor_div(const Int& a, const Int& b);
int vp(const Int& p, const Int& x);
Int mod_inverse(const Int& a, const Int& n);
Int phi(const Int& i);
Int varphi(const Int& i);
std::pair<Int, Int> case3_helpers(const Int& i);
Int binom(const Int& z, int k);  // polynomial extension to all integers z
struct UVW {
    Int u, v, w;
};
UVW uvw_sequences(const Params& params, const Int& i);
Int witt_rank(int r, int w);
Int witt_rank_multi(const std::vector<int>& ws);
int mobius(int n);
bool is_prime(const Int& x);
std::vector<std::pair<Int, int>> factorize(const Int& x);  // x > 0
Int sylow_order_J(const Int& alpha0, const Int& p, int m);
Params classify(const Int& alpha, const Int& gamma, const Int& p);
std::vector<Int> relevant_primes(const Int& alpha, const Int& gamma);
std::string to_string(const Int& x);

}  // namespace wamsley
