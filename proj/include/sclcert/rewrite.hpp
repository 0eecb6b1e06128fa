#pragma once

// Word-level rewriting engine. A derivation transforms a start word into an
// end word through primitive steps, each of which is a relation that holds in
// the mapping class group:
//
//   swap @i           exchange letters i, i+1; requires geo = 0 (or the same
//                     curve), since disjoint twists commute
//   braid @i          t_c t_d t_c -> t_d t_c t_d at i..i+2, all three letters
//                     the same sign; requires geo(c, d) = 1
//   cancel @i         delete t_c^e t_c^{-e} at i, i+1
//   insert <l> @i     insert t_c^e t_c^{-e} before position i
//   subst <name> <fwd|bwd> @i
//                     replace one side of a named relation instance, matched
//                     verbatim at position i, by the other side
//
// Named relation instances (each tied to its builtin configuration):
//   lantern  : t_s t_a t_b t_c = t_x t_y t_z            (lantern, g >= 3)
//   lantern2 : t_{a1}^2 t_{a5}^2 = t_{a3} t_s t_x       (lantern2, g = 2)
//   chain    : (t_{a3} t_{a2} t_{a1})^4 = t_{a4} t_{a5} (chain5, g >= 3)
//   chain2   : (t_{a3} t_{a2} t_{a1})^4 = t_{a5}^2      (chain5, g = 2)
//   twochain : t_s = (t_{a2} t_{a1})^6                  (twochain, g = 2)
//
// Matching is verbatim: commutations must be made explicit as swap steps
// before a subst can fire. Positions are 0-based. check_derivation replays
// every step, compares the final word to the declared end letter-for-letter,
// and then cross-checks the endpoints through two independent quotients (the
// symplectic homology action and the abelianization of M_g).

#include "sclcert/abelian.hpp"
#include "sclcert/sp_oracle.hpp"
#include "sclcert/words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sclcert {

enum class RelationName { BraidComm, Braid, Lantern, Lantern2, Chain, Chain2, TwoChain };

std::string relation_str(RelationName name);
// Accepts the five substitutable names: lantern, lantern2, chain, chain2, twochain.
RelationName parse_relation(std::string_view text);

struct RelationInstance {
    RelationName name{};
    TwistWord lhs, rhs;
};

// t_c t_d = t_d t_c for disjoint curves (geo must be 0).
RelationInstance make_braid_comm(const ConfigPtr& config, std::string_view c, std::string_view d);
// t_c t_d t_c = t_d t_c t_d for curves meeting once (geo must be 1); sign -1
// builds the inverse variant t_c' t_d' t_c' = t_d' t_c' t_d'.
RelationInstance make_braid(const ConfigPtr& config, std::string_view c, std::string_view d,
                            int sign = 1);
// One of the five named instances over a matching config.
RelationInstance builtin_relation(RelationName name, const ConfigPtr& config);
// All five named instances over their default configs (g = 3 where free).
std::vector<RelationInstance> builtin_relations();

struct RewriteStep {
    enum class Kind { Swap, Braid, Cancel, Insert, Subst };

    Kind kind = Kind::Swap;
    int pos = 0;
    // Insert only:
    std::string insert_id;
    int insert_sign = 1;
    // Subst only:
    RelationName subst_name = RelationName::Lantern;
    bool subst_forward = true;

    static RewriteStep swap(int pos);
    static RewriteStep braid(int pos);
    static RewriteStep cancel(int pos);
    static RewriteStep insert(std::string id, int sign, int pos);
    static RewriteStep subst(RelationName name, bool forward, int pos);

    std::string str() const;  // e.g. "swap @1", "subst chain bwd @2", "insert a1' @2"

    friend bool operator==(const RewriteStep& a, const RewriteStep& b);
};

struct RuleNotApplicable : std::runtime_error {
    RuleNotApplicable(const RewriteStep& step, const std::string& why);
    std::string rule;
    int position;
    std::string reason;
};

// Applies one step; throws RuleNotApplicable (with position and reason) when
// the side conditions fail or the pattern does not match verbatim.
TwistWord apply_rule(const TwistWord& word, const RewriteStep& step);

struct Derivation {
    std::string name;  // display label; not part of derivation identity
    ConfigPtr config;
    TwistWord start, end;
    std::vector<RewriteStep> steps;
};

// Structural equality ignoring the display name.
bool same_derivation(const Derivation& a, const Derivation& b);

struct DerivationError : std::runtime_error {
    DerivationError(int step_index, const std::string& why);
    int step_index;  // 0-based failing step; -1 for an endpoint mismatch
};

// A machine-checked identity lhs == rhs in the mapping class group, with the
// oracle evidence that was gathered while checking it.
struct VerifiedIdentity {
    TwistWord lhs, rhs;
    OracleVerdict oracle = OracleVerdict::Vacuous;
    Int ab_modulus;  // abelianization modulus of M_g at this genus
    Int ab_residue;  // common residue of both sides
    std::vector<std::string> provenance;
};

// Replays all steps (DerivationError on any failure, carrying the 0-based
// step index), requires the final word to equal `end` letter-for-letter, then
// cross-checks the endpoints in Sp(2g, Z) and in the abelianization of M_g.
// An oracle Fail or residue mismatch after a successful replay means the
// relation instances themselves are inconsistent and throws std::logic_error.
VerifiedIdentity check_derivation(const Derivation& d);

// Multiplies both sides by `left` on the left and `right` on the right and
// freely reduces; re-runs the oracle cross-checks. This is how a relation
// t_s t_a t_b t_c = t_x t_y t_z becomes t_s t_a t_b t_c t_z^{-1} = t_x t_y.
VerifiedIdentity normalize_goal(const VerifiedIdentity& v, const TwistWord& left,
                                const TwistWord& right);

// The library's stock derivations:
//   D1      (chain5, g >= 3): t_{a4} t_{a5} t_{a3}^{-2} t_{a1}^{-2} = X^2,
//            X = t_{a2} t_{a3} t_{a1} t_{a2}
//   D1Prime (chain5, g = 2): same with t_{a5}^2 in place of t_{a4} t_{a5}
//   D2      (lantern, g >= 3): t_s t_a t_b t_c t_z^{-1} = t_x t_y
//   D3      (lantern2, g = 2): t_{a1}^2 t_{a5}^2 t_{a3}^{-1} = t_s t_x
//   D4      (twochain, g = 2): t_s t_{a1}^{-4} = (t_{a2} t_{a1}^2 t_{a2})^2
enum class DerivationName { D1, D1Prime, D2, D3, D4 };

Derivation builtin_derivation(DerivationName name, int genus, int sep_genus = 1);
// D1 at g = 3, D1Prime, D2 at g = 3, D3, D4 -- the full stock suite.
std::vector<Derivation> builtin_derivations();

// Script format (one declaration per line, '#' starts a comment):
//   config: <builtin-name> g=<genus> [h=<sep-genus>]
//   start: <word literal>
//   end: <word literal>
//   step: swap @<i> | braid @<i> | cancel @<i> | insert <letter> @<i>
//       | subst <relation> fwd|bwd @<i>
Derivation parse_derivation_script(std::string_view text);
std::string format_derivation_script(const Derivation& d);

}  // namespace sclcert
