#pragma once

// Quasimorphism inequality calculus. Let phi range over homogeneous
// quasimorphisms on the mapping class group with defect
// D(phi) = sup |phi(ab) - phi(a) - phi(b)|. Facts used (all classical):
//
//   - phi is a conjugacy invariant, so its value on a Dehn twist depends only
//     on the twist class (nu, sigma_1, ...);
//   - phi restricted to a set of pairwise-commuting twists is additive;
//   - phi(w^n) = n phi(w);
//   - |phi(xy) - phi(x) - phi(y)| <= D(phi);
//   - Bavard duality: scl(w) = sup_phi |phi(w)| / (2 D(phi)).
//
// The calculus tracks values phi(word) as formal rational combinations of
// unknowns phi(nu), phi(sigma_h), ... and turns a verified word identity into
// an inequality |form| <= k * D valid for EVERY phi simultaneously; Bavard
// duality then converts it into an exact rational scl upper bound.
//
// Every PhiValue carries the word it evaluates, so that each step can check
// its word-level side condition (literal factorizations, conjugation, powers)
// instead of trusting the caller.

#include "sclcert/rewrite.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace sclcert {

struct PipelineError : std::runtime_error {
    explicit PipelineError(const std::string& what) : std::runtime_error(what) {}
};

struct NonCommutingLetters : PipelineError {
    NonCommutingLetters(const std::string& c, const std::string& d)
        : PipelineError("letters '" + c + "' and '" + d +
                        "' are not certified disjoint; phi is only additive on "
                        "commuting twists"),
          first(c),
          second(d) {}
    std::string first, second;
};

// Formal combination  sum_cls  coeff * phi(cls); zero coefficients dropped.
class PhiForm {
public:
    PhiForm() = default;
    static PhiForm single(const TwistClass& cls, const Rat& coeff = Rat(1));

    const std::map<TwistClass, Rat>& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }
    Rat coeff(const TwistClass& cls) const;
    std::optional<TwistClass> single_class() const;

    PhiForm operator+(const PhiForm& rhs) const;
    PhiForm operator-(const PhiForm& rhs) const;
    PhiForm scale(const Rat& k) const;

    friend bool operator==(const PhiForm&, const PhiForm&) = default;

    std::string str() const;  // "(-2)*nu", "(1/2)*sigma_1 + (-6)*nu", "0"

private:
    std::map<TwistClass, Rat> c_;
};

// A certified judgement  phi(word) = form  (for every homogeneous phi).
struct PhiValue {
    PhiForm form;
    TwistWord word;
};

// phi on a product of pairwise-commuting twists is the weighted sum of the
// letter classes. Requires every pair of distinct curves in the word to have
// known geo = 0; throws NonCommutingLetters otherwise.
PhiValue phi_commuting_word(const TwistWord& w);

// Transfers a value across a verified identity: v.word must equal id.lhs or
// id.rhs letter-for-letter; the result evaluates the other side.
PhiValue phi_transfer(const VerifiedIdentity& id, const PhiValue& v);

// From phi(u^n) = form deduces phi(u) = form / n. v.word must literally be
// the n-th power of its length/n prefix.
PhiValue phi_of_power_root(const PhiValue& v, int n);
// Form-level variant (n >= 1): divides by n.
PhiForm phi_of_power_root(const PhiForm& form, int n);

// Conjugation invariance: phi(u w u^{-1}) = phi(w). The resulting word is
// freely reduced.
PhiValue phi_conjugate(const TwistWord& u, const PhiValue& v);

// |form(phi)| <= slack * D(phi) for every homogeneous quasimorphism phi.
// Canonical shape: the first nonzero coefficient (classes ordered nu,
// sigma_1, sigma_2, ...) is positive.
struct DefectInequality {
    PhiForm form;
    Rat slack;  // >= 0
    std::vector<std::string> provenance;
};

DefectInequality make_defect_inequality(PhiForm form, Rat slack,
                                        std::vector<std::string> provenance = {});

// The defect axiom applied to a literal factorization: whole.word must be
// exactly x.word followed by y.word; yields |whole - x - y| <= 1 * D.
DefectInequality defect_split(const PhiValue& whole, const PhiValue& x, const PhiValue& y);

struct SclBound {
    enum class Dir { Upper, Lower };
    TwistClass target;
    Dir dir = Dir::Upper;
    Rat value;
    std::vector<std::string> provenance;
};

// From |a * phi(cls)| <= k * D (single-class inequality, a > 0 after
// canonicalization) and Bavard duality: scl(cls) <= k / (2a).
SclBound bavard_single(const DefectInequality& ineq);

// a * scl(pivot) <= sum_j b_j * scl(cls_j) + constant   (a > 0, b_j > 0).
struct RelativeBound {
    Rat pivot_coeff;
    TwistClass pivot;
    std::vector<std::pair<Rat, TwistClass>> terms;
    Rat constant;
    std::vector<std::string> provenance;

    std::string str() const;
};

// From |form| <= k * D with a nonzero pivot coefficient: move the other
// classes across, bound |phi(cls)| / (2D) by scl(cls) termwise (Bavard), and
// divide by 2D:  a * scl(pivot) <= sum |b_j| scl(cls_j) + k/2.
RelativeBound bavard_relative(const DefectInequality& ineq, const TwistClass& pivot);

// Substitutes known upper bounds into the right side of a relative bound.
// Every term class must come with an Upper bound; throws PipelineError
// otherwise.
SclBound compose_bounds(const RelativeBound& rel, const std::vector<SclBound>& known);

// ---------------------------------------------------------------------------
// Stock pipelines, each from a machine-checked derivation to an exact bound.
//
//   thm1-nonsep (g >= 2): scl(nu) <= 1/10          [D1 / D1']
//   thm1-sep    (g >= 3): scl(sigma_h) <= 1/2      [D2 over lantern(g, h)]
//   thm1-sep-g2 (g = 2) : scl(sigma_1) <= 7/10     [D3 + thm1-nonsep]
//   lemma3      (g = 2) : 6 scl(nu) <= scl(sigma_1)/2 + 1/2   [D4]
// ---------------------------------------------------------------------------

enum class PipelineName { Thm1Nonsep, Thm1Sep, Thm1SepG2, Lemma3 };

std::string pipeline_str(PipelineName name);
PipelineName parse_pipeline(std::string_view text);

// One structured entry of a pipeline's replayable provenance chain.
struct TraceStep {
    std::string op;
    std::vector<std::pair<std::string, std::string>> data;  // insertion order kept
};

struct PipelineResult {
    PipelineName name{};
    int genus = 0;
    TwistClass target;
    VerifiedIdentity identity;
    DefectInequality inequality;
    std::optional<RelativeBound> relation;  // lemma3 output; thm1-sep-g2 intermediate
    std::optional<SclBound> bound;          // absent for lemma3
    std::vector<TraceStep> trace;
};

// sep_genus selects h for thm1-sep (1 <= h <= floor(g/2)); other pipelines
// ignore it.
PipelineResult run_pipeline(PipelineName name, int genus, int sep_genus = 1);

}  // namespace sclcert
