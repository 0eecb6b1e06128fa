#pragma once

// Exact rational lower bounds for scl of Dehn twists in the hyperelliptic
// mapping class group H_g, via signatures of hyperelliptic Lefschetz
// fibrations.
//
// A relation t^n = [u_1, v_1] ... [u_q, v_q] in H_g produces a genus-g
// hyperelliptic Lefschetz fibration M over a genus-q surface with n vanishing
// cycles in the class of t. Two exact facts about sigma(M):
//
//   signature formula:  sigma(M) = -((g+1)/(2g+1)) n
//                                  + sum_h (4h(g-h)/(2g+1) - 1) b_h
//     where n counts nonseparating vanishing cycles and b_h those separating
//     off genus h;
//
//   upper bound:        sigma(M) <= 4 g q - n_total + 4.
//
// Writing rate(t) for the per-cycle signature of t's class, the two combine
// into  rate * n <= 4 g q - n + 4, so  q/n >= (1 + rate)/(4g) - 1/(g n).
// Since scl(t) = lim_n cl(t^n)/n <= lim inf q/n over all such relations, the
// n -> infinity threshold is a bound:  scl_H(t) >= (1 + rate)/(4g).
//
// Closed forms:  nonseparating  1 / (4(2g+1)),
//                separating(h)  h(g-h) / (g(2g+1)).
// Both exceed the Endo-Kotschick bound 1/(18g-6) strictly for every g >= 2.

#include "sclcert/surface.hpp"

#include <map>
#include <vector>

namespace sclcert {

// Vanishing cycle counts of a fibration, by twist class.
struct CycleCounts {
    Int nonsep = 0;
    std::map<int, Int> sep;  // h -> count

    Int total() const;
};

// Per-cycle signature contribution of one twist class.
Rat signature_rate(int genus, const TwistClass& cls);

// sigma(M) for a genus-g hyperelliptic fibration with the given cycle counts.
Rat hyperelliptic_signature(int genus, const CycleCounts& counts);

// The bound sigma(M) <= 4 g q - n + 4 over a genus-q base with n cycles.
Rat korkmaz_upper(int genus, const Int& base_genus, const Int& cycles);

struct LowerBound {
    TwistClass target;
    int genus = 2;
    Rat value;           // (1 + rate)/(4g), exact
    Rat endo_kotschick;  // 1/(18g-6)
    bool improves = false;  // value > endo_kotschick (strict)
    std::vector<std::string> provenance;
};

// scl lower bound in H_g for the given twist class; requires g >= 2 and, for
// separating classes, 1 <= h <= floor(g/2).
LowerBound scl_lower_bound(int genus, const TwistClass& cls);

}  // namespace sclcert
