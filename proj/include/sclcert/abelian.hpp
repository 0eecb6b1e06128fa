#pragma once

// Abelianization bookkeeping for two group families:
//
//   FullMcg       : the mapping class group M_g. Its abelianization is Z_10
//                   for g = 2 and trivial for g >= 3, so N = 10 resp. 1 and
//                   these moduli are exact.
//   Hyperelliptic : the hyperelliptic mapping class group H_g, generated by
//                   the twists about symmetric curves. Here N = 4(2g + 1) is
//                   only divides-certified: the true abelianization order is
//                   a (known-to-divide) multiple relationship in the other
//                   direction, so residues mod N are well defined but N need
//                   not be the exact order. exact() reports which case holds.
//
// Every twist maps to weight * sign mod N, where a nonseparating twist has
// weight 1 and a separating twist about a genus-h curve has weight
// 4h(2h + 1) (the exponent count of its even-chain expansion: a separating
// twist is the (4h + 2)-nd power of a 2h-chain word, 2h * (4h + 2) letters).

#include "sclcert/words.hpp"

#include <string>

namespace sclcert {

struct AbelianError : std::runtime_error {
    explicit AbelianError(const std::string& what) : std::runtime_error(what) {}
};

enum class GroupFamily { FullMcg, Hyperelliptic };

std::string family_str(GroupFamily f);

struct GroupSpec {
    GroupFamily family = GroupFamily::FullMcg;
    int genus = 2;

    // Modulus N of the twist-generated abelianization quotient used here.
    Int modulus() const;
    // True when N is the exact abelianization order (FullMcg), false when it
    // is only divides-certified (Hyperelliptic).
    bool exact() const;
};

// 4h(2h+1); requires 1 <= h <= floor(g/2).
Int separating_weight(int h, int genus);

// Weight of the twist about the given curve: 1 or separating_weight.
Int twist_weight(const Curve& c, int genus);

// Residue of the word's image in Z_N, returned in [0, N).
Int ab_image(const TwistWord& w, const GroupSpec& spec);

// Least m >= 1 with m * weight(cls) == 0 mod N, i.e. the smallest power of
// the twist that lies in the kernel of the abelianization map -- a necessary
// condition for t^m to be a product of commutators, and the reason scl of a
// single twist is detected through powers.
Int min_power_in_commutator(const TwistClass& cls, const GroupSpec& spec);

}  // namespace sclcert
