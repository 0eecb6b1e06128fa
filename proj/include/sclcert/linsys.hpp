#pragma once

// Exact linear feasibility over the rationals by Fourier-Motzkin elimination,
// with replayable evidence in both directions:
//   - feasible systems come with a witness assignment, re-checked by
//     substitution into every constraint;
//   - infeasible systems come with a Farkas-style refutation: a nonnegative
//     combination of input constraints whose variable coefficients vanish and
//     whose right side is contradictory (0 <= c with c < 0, or 0 < c with
//     c <= 0).
//
// Strict inequalities are tracked exactly: a derived constraint is strict iff
// any constraint contributing to it is strict.

#include "sclcert/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sclcert {

enum class Rel { Le, Lt, Eq };

std::string rel_str(Rel r);

struct LinearConstraint {
    std::vector<Rat> coeffs;  // one per variable:  coeffs . x  REL  rhs
    Rel rel = Rel::Le;
    Rat rhs;
    std::string label;
};

struct LinearSystem {
    std::vector<std::string> vars;
    std::vector<LinearConstraint> constraints;
};

// multiplier * constraints[index]; `negated` means the >= orientation of an
// Eq constraint was used (i.e. the constraint multiplied by -1).
struct RefutationTerm {
    std::size_t index = 0;
    Rat multiplier;  // > 0
    bool negated = false;
};

struct Feasibility {
    bool feasible = true;
    std::map<std::string, Rat> witness;      // populated when feasible
    std::vector<RefutationTerm> refutation;  // populated when infeasible
    Rel refutation_rel = Rel::Le;            // the contradiction: 0 REL refutation_rhs
    Rat refutation_rhs;
};

// Eliminates vars[0], vars[1], ... in order. Throws std::invalid_argument on
// malformed input (coefficient count mismatch). The returned witness always
// satisfies every constraint and the returned refutation always replays; both
// are re-checked internally before returning.
Feasibility solve(const LinearSystem& sys);

// Recombines the original constraints along f.refutation and checks that the
// result is the contradictory row 0 REL rhs recorded in f.
bool replay_refutation(const LinearSystem& sys, const Feasibility& f);

// Substitutes the assignment into every constraint.
bool check_witness(const LinearSystem& sys, const std::map<std::string, Rat>& witness);

// Tightest upper bound on vars[var] implied by the system (eliminating every
// other variable); nullopt when unbounded above. The bool is true when the
// bound is strict. Precondition: the system is feasible.
std::optional<std::pair<Rat, bool>> implied_upper_bound(const LinearSystem& sys, std::size_t var);

}  // namespace sclcert
