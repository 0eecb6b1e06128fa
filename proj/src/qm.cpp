#include "sclcert/qm.hpp"

#include <algorithm>
#include <sstream>

namespace sclcert {

PhiForm PhiForm::single(const TwistClass& cls, const Rat& coeff) {
    PhiForm f;
    if (coeff != 0) f.c_[cls] = coeff;
    return f;
}

Rat PhiForm::coeff(const TwistClass& cls) const {
    const auto it = c_.find(cls);
    return it == c_.end() ? Rat(0) : it->second;
}

std::optional<TwistClass> PhiForm::single_class() const {
    if (c_.size() != 1) return std::nullopt;
    return c_.begin()->first;
}

PhiForm PhiForm::operator+(const PhiForm& rhs) const {
    PhiForm out = *this;
    for (const auto& [cls, k] : rhs.c_) {
        const Rat v = out.coeff(cls) + k;
        if (v == 0)
            out.c_.erase(cls);
        else
            out.c_[cls] = v;
    }
    return out;
}

PhiForm PhiForm::operator-(const PhiForm& rhs) const { return *this + rhs.scale(-1); }

PhiForm PhiForm::scale(const Rat& k) const {
    PhiForm out;
    if (k == 0) return out;
    for (const auto& [cls, v] : c_) out.c_[cls] = v * k;
    return out;
}

std::string PhiForm::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [cls, k] : c_) {
        if (!first) out << " + ";
        out << "(" << rat_str(k) << ")*" << cls.label();
        first = false;
    }
    return out.str();
}

PhiValue phi_commuting_word(const TwistWord& w) {
    const ConfigPtr& cfg = w.config();
    std::vector<int> seen;
    for (const TwistGen& l : w.letters()) {
        for (int other : seen) {
            if (other == l.curve) continue;
            if (cfg->geo(other, l.curve) != 0)
                throw NonCommutingLetters(cfg->curve(other).id, cfg->curve(l.curve).id);
        }
        if (std::find(seen.begin(), seen.end(), l.curve) == seen.end()) seen.push_back(l.curve);
    }
    PhiForm form;
    for (const auto& [idx, count] : exponent_sums_by_index(w))
        form = form + PhiForm::single(cfg->curve(idx).twist_class(cfg->genus()), Rat(count));
    return {form, w};
}

PhiValue phi_transfer(const VerifiedIdentity& id, const PhiValue& v) {
    if (v.word == id.lhs) return {v.form, id.rhs};
    if (v.word == id.rhs) return {v.form, id.lhs};
    throw PipelineError("phi_transfer: value evaluates '" + format_word(v.word) +
                        "', which is neither side of the identity '" + format_word(id.lhs) +
                        " == " + format_word(id.rhs) + "'");
}

PhiValue phi_of_power_root(const PhiValue& v, int n) {
    if (n < 1) throw PipelineError("phi_of_power_root: n must be >= 1");
    if (v.word.size() % n != 0)
        throw PipelineError("phi_of_power_root: word length " + std::to_string(v.word.size()) +
                            " is not divisible by " + std::to_string(n));
    const int m = v.word.size() / n;
    TwistWord root(v.word.config(),
                   {v.word.letters().begin(), v.word.letters().begin() + m});
    if (!(power(root, n) == v.word))
        throw PipelineError("phi_of_power_root: word is not literally the " + std::to_string(n) +
                            "-th power of its prefix '" + format_word(root) + "'");
    return {phi_of_power_root(v.form, n), root};
}

PhiForm phi_of_power_root(const PhiForm& form, int n) {
    if (n < 1) throw PipelineError("phi_of_power_root: n must be >= 1");
    return form.scale(Rat(1, n));
}

PhiValue phi_conjugate(const TwistWord& u, const PhiValue& v) {
    return {v.form, conjugate(u, v.word)};
}

namespace {

PhiForm canonicalize(PhiForm form) {
    if (form.zero()) return form;
    if (form.coeffs().begin()->second < 0) return form.scale(-1);
    return form;
}

}  // namespace

DefectInequality make_defect_inequality(PhiForm form, Rat slack,
                                        std::vector<std::string> provenance) {
    if (slack < 0) throw PipelineError("defect inequality slack must be >= 0");
    return {canonicalize(std::move(form)), std::move(slack), std::move(provenance)};
}

DefectInequality defect_split(const PhiValue& whole, const PhiValue& x, const PhiValue& y) {
    const TwistWord cat = multiply(x.word, y.word);
    if (!(whole.word == cat))
        throw PipelineError("defect_split: '" + format_word(whole.word) +
                            "' is not literally '" + format_word(x.word) + "' . '" +
                            format_word(y.word) + "'");
    std::vector<std::string> prov = {
        "defect axiom on the factorization '" + format_word(whole.word) + "' = '" +
        format_word(x.word) + "' . '" + format_word(y.word) + "': |phi(whole) - phi(x) - phi(y)| <= D",
        "phi(whole) = " + whole.form.str() + ", phi(x) = " + x.form.str() +
            ", phi(y) = " + y.form.str()};
    DefectInequality out =
        make_defect_inequality(whole.form - x.form - y.form, Rat(1), std::move(prov));
    out.provenance.push_back("inequality: |" + out.form.str() + "| <= " + rat_str(out.slack) +
                             " * D  for every homogeneous quasimorphism");
    return out;
}

SclBound bavard_single(const DefectInequality& ineq) {
    const auto cls = ineq.form.single_class();
    if (!cls)
        throw PipelineError("bavard_single needs a single-class inequality, got |" +
                            ineq.form.str() + "| <= " + rat_str(ineq.slack) + " * D");
    const Rat a = ineq.form.coeff(*cls);
    if (a <= 0) throw PipelineError("bavard_single: canonical coefficient must be positive");
    SclBound out;
    out.target = *cls;
    out.dir = SclBound::Dir::Upper;
    out.value = ineq.slack / (2 * a);
    out.provenance = ineq.provenance;
    out.provenance.push_back("Bavard duality: scl(" + cls->label() + ") = sup |phi|/(2D) <= " +
                             rat_str(ineq.slack) + "/(2*" + rat_str(a) + ") = " +
                             rat_str(out.value));
    return out;
}

std::string RelativeBound::str() const {
    std::ostringstream out;
    out << rat_str(pivot_coeff) << "*scl(" << pivot.label() << ") <= ";
    for (const auto& [k, cls] : terms) out << rat_str(k) << "*scl(" << cls.label() << ") + ";
    out << rat_str(constant);
    return out.str();
}

RelativeBound bavard_relative(const DefectInequality& ineq, const TwistClass& pivot) {
    Rat a = ineq.form.coeff(pivot);
    if (a == 0)
        throw PipelineError("bavard_relative: pivot " + pivot.label() +
                            " does not occur in |" + ineq.form.str() + "|");
    PhiForm form = a < 0 ? ineq.form.scale(-1) : ineq.form;
    a = form.coeff(pivot);
    RelativeBound out;
    out.pivot_coeff = a;
    out.pivot = pivot;
    out.constant = ineq.slack / 2;
    for (const auto& [cls, k] : form.coeffs())
        if (!(cls == pivot)) out.terms.emplace_back(abs(k), cls);
    out.provenance = ineq.provenance;
    out.provenance.push_back(
        "move non-pivot classes across, bound each |phi(cls)| <= 2 D scl(cls) (Bavard), divide "
        "by 2D: " +
        out.str());
    return out;
}

SclBound compose_bounds(const RelativeBound& rel, const std::vector<SclBound>& known) {
    Rat total = rel.constant;
    std::vector<std::string> prov = rel.provenance;
    for (const auto& [k, cls] : rel.terms) {
        const SclBound* found = nullptr;
        for (const SclBound& b : known)
            if (b.target == cls && b.dir == SclBound::Dir::Upper) {
                found = &b;
                break;
            }
        if (!found)
            throw PipelineError("compose_bounds: no upper bound available for scl(" +
                                cls.label() + ")");
        total += k * found->value;
        prov.insert(prov.end(), found->provenance.begin(), found->provenance.end());
        prov.push_back("substitute scl(" + cls.label() + ") <= " + rat_str(found->value));
    }
    SclBound out;
    out.target = rel.pivot;
    out.dir = SclBound::Dir::Upper;
    out.value = total / rel.pivot_coeff;
    out.provenance = std::move(prov);
    out.provenance.push_back("scl(" + rel.pivot.label() + ") <= (" + rat_str(total) + ")/" +
                             rat_str(rel.pivot_coeff) + " = " + rat_str(out.value));
    return out;
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

std::string pipeline_str(PipelineName name) {
    switch (name) {
        case PipelineName::Thm1Nonsep: return "thm1-nonsep";
        case PipelineName::Thm1Sep: return "thm1-sep";
        case PipelineName::Thm1SepG2: return "thm1-sep-g2";
        case PipelineName::Lemma3: return "lemma3";
    }
    return "?";
}

PipelineName parse_pipeline(std::string_view text) {
    if (text == "thm1-nonsep") return PipelineName::Thm1Nonsep;
    if (text == "thm1-sep") return PipelineName::Thm1Sep;
    if (text == "thm1-sep-g2") return PipelineName::Thm1SepG2;
    if (text == "lemma3") return PipelineName::Lemma3;
    throw PipelineError("unknown pipeline '" + std::string(text) +
                        "' (expected thm1-nonsep, thm1-sep, thm1-sep-g2 or lemma3)");
}

namespace {

TraceStep trace_identity(const VerifiedIdentity& id) {
    TraceStep t{"check-derivation", {}};
    t.data.emplace_back("lhs", format_word(id.lhs));
    t.data.emplace_back("rhs", format_word(id.rhs));
    t.data.emplace_back("oracle", verdict_str(id.oracle));
    t.data.emplace_back("ab-modulus", id.ab_modulus.str());
    t.data.emplace_back("ab-residue", id.ab_residue.str());
    return t;
}

TraceStep trace_value(const char* op, const PhiValue& v) {
    TraceStep t{op, {}};
    t.data.emplace_back("word", format_word(v.word));
    t.data.emplace_back("phi", v.form.str());
    return t;
}

// thm1-nonsep: D1/D1' give  t_{a4} t_{a5} t_{a3}^{-2} t_{a1}^{-2} = X^2 with
// X = t_{a2} t_{a3} t_{a1} t_{a2}. The left side is a commuting product with
// phi = -2 nu, so phi(X) = -nu; conjugating by t_{a2} rewrites X as the
// literal product (t_{a2}^2)(t_{a3} t_{a1}), whose halves have phi = 2 nu
// each. The defect axiom gives |5 nu| <= D, hence scl(nu) <= 1/10.
PipelineResult thm1_nonsep(int genus) {
    PipelineResult r;
    r.name = PipelineName::Thm1Nonsep;
    r.genus = genus;
    r.target = TwistClass::nonseparating();

    const Derivation d = builtin_derivation(
        genus >= 3 ? DerivationName::D1 : DerivationName::D1Prime, genus);
    r.identity = check_derivation(d);
    r.trace.push_back(trace_identity(r.identity));

    const ConfigPtr& cfg = d.config;
    const PhiValue lhs = phi_commuting_word(r.identity.lhs);
    r.trace.push_back(trace_value("phi-commuting-word", lhs));

    const PhiValue square = phi_transfer(r.identity, lhs);
    r.trace.push_back(trace_value("phi-transfer", square));

    const PhiValue x = phi_of_power_root(square, 2);
    r.trace.push_back(trace_value("phi-power-root", x));

    const PhiValue conj = phi_conjugate(parse_word(cfg, "a2"), x);
    r.trace.push_back(trace_value("phi-conjugate", conj));

    const PhiValue left = phi_commuting_word(parse_word(cfg, "a2 a2"));
    const PhiValue right = phi_commuting_word(parse_word(cfg, "a3 a1"));
    r.inequality = defect_split(conj, left, right);
    TraceStep t{"defect-split", {}};
    t.data.emplace_back("whole", format_word(conj.word));
    t.data.emplace_back("inequality",
                        "|" + r.inequality.form.str() + "| <= " + rat_str(r.inequality.slack) + "*D");
    r.trace.push_back(t);

    r.bound = bavard_single(r.inequality);
    r.trace.push_back({"bavard-single",
                       {{"bound", "scl(nu) <= " + rat_str(r.bound->value)}}});
    return r;
}

// thm1-sep: the lantern gives t_s t_a t_b t_c t_z^{-1} = t_x t_y; the left
// side is a commuting product with phi = sigma_h + 2 nu. Splitting the right
// side as (t_x)(t_y) cancels the nu's: |sigma_h| <= D, so scl(sigma_h) <= 1/2.
PipelineResult thm1_sep(int genus, int sep_genus) {
    PipelineResult r;
    r.name = PipelineName::Thm1Sep;
    r.genus = genus;
    r.target = TwistClass::separating(sep_genus, genus);

    const Derivation d = builtin_derivation(DerivationName::D2, genus, sep_genus);
    r.identity = check_derivation(d);
    r.trace.push_back(trace_identity(r.identity));

    const ConfigPtr& cfg = d.config;
    const PhiValue lhs = phi_commuting_word(r.identity.lhs);
    r.trace.push_back(trace_value("phi-commuting-word", lhs));

    const PhiValue rhs = phi_transfer(r.identity, lhs);
    r.trace.push_back(trace_value("phi-transfer", rhs));

    const PhiValue x = phi_commuting_word(parse_word(cfg, "x"));
    const PhiValue y = phi_commuting_word(parse_word(cfg, "y"));
    r.inequality = defect_split(rhs, x, y);
    r.trace.push_back({"defect-split",
                       {{"whole", format_word(rhs.word)},
                        {"inequality", "|" + r.inequality.form.str() + "| <= " +
                                           rat_str(r.inequality.slack) + "*D"}}});

    r.bound = bavard_single(r.inequality);
    r.trace.push_back({"bavard-single",
                       {{"bound", "scl(" + r.target.label() + ") <= " + rat_str(r.bound->value)}}});
    return r;
}

// thm1-sep-g2: the genus-2 lantern gives t_{a1}^2 t_{a5}^2 t_{a3}^{-1} =
// t_s t_x with phi(lhs) = 3 nu; splitting the right side as (t_s)(t_x) gives
// |2 nu - sigma_1| <= D, i.e. scl(sigma_1) <= 2 scl(nu) + 1/2, and composing
// with scl(nu) <= 1/10 yields 7/10.
PipelineResult thm1_sep_g2() {
    PipelineResult r;
    r.name = PipelineName::Thm1SepG2;
    r.genus = 2;
    r.target = TwistClass::separating(1, 2);

    const Derivation d = builtin_derivation(DerivationName::D3, 2);
    r.identity = check_derivation(d);
    r.trace.push_back(trace_identity(r.identity));

    const ConfigPtr& cfg = d.config;
    const PhiValue lhs = phi_commuting_word(r.identity.lhs);
    r.trace.push_back(trace_value("phi-commuting-word", lhs));

    const PhiValue rhs = phi_transfer(r.identity, lhs);
    r.trace.push_back(trace_value("phi-transfer", rhs));

    const PhiValue s = phi_commuting_word(parse_word(cfg, "s"));
    const PhiValue x = phi_commuting_word(parse_word(cfg, "x"));
    r.inequality = defect_split(rhs, s, x);
    r.trace.push_back({"defect-split",
                       {{"whole", format_word(rhs.word)},
                        {"inequality", "|" + r.inequality.form.str() + "| <= " +
                                           rat_str(r.inequality.slack) + "*D"}}});

    r.relation = bavard_relative(r.inequality, r.target);
    r.trace.push_back({"bavard-relative", {{"relation", r.relation->str()}}});

    const PipelineResult nonsep = thm1_nonsep(2);
    r.trace.insert(r.trace.end(), nonsep.trace.begin(), nonsep.trace.end());

    r.bound = compose_bounds(*r.relation, {*nonsep.bound});
    r.trace.push_back({"compose-bounds",
                       {{"substituted", "scl(nu) <= " + rat_str(nonsep.bound->value)},
                        {"bound", "scl(sigma_1) <= " + rat_str(r.bound->value)}}});
    return r;
}

// lemma3: D4 gives t_s t_{a1}^{-4} = Y^2 with Y = t_{a2} t_{a1}^2 t_{a2};
// phi(lhs) = sigma_1 - 4 nu so phi(Y) = sigma_1/2 - 2 nu. Conjugating by
// t_{a2} factors Y as (t_{a2}^2)(t_{a1}^2): |sigma_1/2 - 6 nu| <= D, i.e.
// 6 scl(nu) <= scl(sigma_1)/2 + 1/2.
PipelineResult lemma3() {
    PipelineResult r;
    r.name = PipelineName::Lemma3;
    r.genus = 2;
    r.target = TwistClass::nonseparating();

    const Derivation d = builtin_derivation(DerivationName::D4, 2);
    r.identity = check_derivation(d);
    r.trace.push_back(trace_identity(r.identity));

    const ConfigPtr& cfg = d.config;
    const PhiValue lhs = phi_commuting_word(r.identity.lhs);
    r.trace.push_back(trace_value("phi-commuting-word", lhs));

    const PhiValue square = phi_transfer(r.identity, lhs);
    r.trace.push_back(trace_value("phi-transfer", square));

    const PhiValue y = phi_of_power_root(square, 2);
    r.trace.push_back(trace_value("phi-power-root", y));

    const PhiValue conj = phi_conjugate(parse_word(cfg, "a2"), y);
    r.trace.push_back(trace_value("phi-conjugate", conj));

    const PhiValue left = phi_commuting_word(parse_word(cfg, "a2 a2"));
    const PhiValue right = phi_commuting_word(parse_word(cfg, "a1 a1"));
    r.inequality = defect_split(conj, left, right);
    r.trace.push_back({"defect-split",
                       {{"whole", format_word(conj.word)},
                        {"inequality", "|" + r.inequality.form.str() + "| <= " +
                                           rat_str(r.inequality.slack) + "*D"}}});

    r.relation = bavard_relative(r.inequality, TwistClass::nonseparating());
    r.trace.push_back({"bavard-relative", {{"relation", r.relation->str()}}});
    return r;
}

}  // namespace

PipelineResult run_pipeline(PipelineName name, int genus, int sep_genus) {
    switch (name) {
        case PipelineName::Thm1Nonsep:
            if (genus < 2) throw PipelineError("thm1-nonsep requires genus >= 2");
            return thm1_nonsep(genus);
        case PipelineName::Thm1Sep:
            if (genus < 3)
                throw PipelineError("thm1-sep requires genus >= 3 (use thm1-sep-g2 at g = 2)");
            return thm1_sep(genus, sep_genus);
        case PipelineName::Thm1SepG2:
            if (genus != 2) throw PipelineError("thm1-sep-g2 lives at g = 2");
            return thm1_sep_g2();
        case PipelineName::Lemma3:
            if (genus != 2) throw PipelineError("lemma3 lives at g = 2");
            return lemma3();
    }
    throw PipelineError("unknown pipeline");
}

}  // namespace sclcert
