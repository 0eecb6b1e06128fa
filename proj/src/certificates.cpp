#include "sclcert/certificates.hpp"

#include <fstream>
#include <sstream>

namespace sclcert {

BoundsReport bounds(int genus, GroupFamily family) {
    if (genus < 2) throw PipelineError("bounds: genus must be >= 2");
    const bool transfer = genus == 2;  // H_2 = M_2: bounds flow both ways
    const bool want_upper = family == GroupFamily::FullMcg || transfer;
    const bool want_lower = family == GroupFamily::Hyperelliptic || transfer;

    BoundsReport report;
    std::vector<TwistClass> classes = {TwistClass::nonseparating()};
    for (int h = 1; 2 * h <= genus; ++h) classes.push_back(TwistClass::separating(h, genus));

    for (const TwistClass& cls : classes) {
        BoundRow row;
        row.family = family;
        row.genus = genus;
        row.target = cls;
        if (want_upper) {
            PipelineResult p;
            if (cls.kind == CurveKind::Nonseparating)
                p = run_pipeline(PipelineName::Thm1Nonsep, genus);
            else if (genus == 2)
                p = run_pipeline(PipelineName::Thm1SepG2, genus);
            else
                p = run_pipeline(PipelineName::Thm1Sep, genus, cls.h);
            row.upper = BoundEntry{p.bound->value, pipeline_str(p.name)};
        }
        if (want_lower) {
            const LowerBound lb = scl_lower_bound(genus, cls);
            row.lower = BoundEntry{lb.value, "fibered signature bound"};
        }
        if (row.lower && row.upper && row.lower->value > row.upper->value)
            throw std::logic_error("internal inconsistency: lower bound " +
                                   rat_str(row.lower->value) + " exceeds upper bound " +
                                   rat_str(row.upper->value) + " for " + cls.twist_label() +
                                   " at g = " + std::to_string(genus));
        report.rows.push_back(std::move(row));
    }

    if (transfer)
        report.notes.push_back(
            "g = 2: every mapping class is hyperelliptic (H_2 = M_2), so upper and lower "
            "bounds apply to both families");
    if (family == GroupFamily::FullMcg && genus >= 3)
        report.notes.push_back(
            "g >= 3: the fibered lower bounds hold in H_g only (scl_M <= scl_H), so no lower "
            "entries for M_g");
    if (family == GroupFamily::Hyperelliptic && genus >= 3)
        report.notes.push_back(
            "g >= 3: the quasimorphism upper bounds hold in M_g only, so no upper entries "
            "for H_g");

    // Coincidences between adjacent entries of the bound chain.
    for (const BoundRow& a : report.rows)
        for (const BoundRow& b : report.rows) {
            if (a.target == b.target || !a.upper || !b.lower) continue;
            if (a.upper->value == b.lower->value)
                report.notes.push_back("chain meets exactly at " + rat_str(a.upper->value) +
                                       ": upper(" + a.target.twist_label() + ") == lower(" +
                                       b.target.twist_label() + ")");
        }
    return report;
}

StrictnessResult strictness_check(const std::optional<RelativeBound>& lemma3_relation,
                                  const std::optional<LowerBound>& sep_lower) {
    if (!lemma3_relation)
        throw std::invalid_argument("strictness_check: missing prerequisite: lemma3 relation");
    if (!sep_lower)
        throw std::invalid_argument(
            "strictness_check: missing prerequisite: fibered lower bound for sigma_1");

    const TwistClass nu = TwistClass::nonseparating();
    const TwistClass sigma1 = TwistClass::separating(1, 2);
    const RelativeBound& rel = *lemma3_relation;
    if (!(rel.pivot == nu) || rel.terms.size() != 1 || !(rel.terms[0].second == sigma1))
        throw std::invalid_argument(
            "strictness_check: relation must bound scl(nu) against scl(sigma_1), got " +
            rel.str());
    if (!(sep_lower->target == sigma1))
        throw std::invalid_argument("strictness_check: lower bound must target sigma_1");

    StrictnessResult out;
    out.system.vars = {"scl(nu)", "scl(sigma_1)"};
    // a x - b y <= c  from  a scl(nu) <= b scl(sigma_1) + c.
    out.system.constraints.push_back(
        {{rel.pivot_coeff, -rel.terms[0].first}, Rel::Le, rel.constant, "lemma3: " + rel.str()});
    out.system.constraints.push_back({{Rat(0), Rat(-1)},
                                      Rel::Le,
                                      -sep_lower->value,
                                      "fibered: scl(sigma_1) >= " + rat_str(sep_lower->value)});
    out.system.constraints.push_back(
        {{Rat(-1), Rat(1)}, Rel::Le, Rat(0), "hypothesis: scl(nu) >= scl(sigma_1)"});

    // The bound on scl(sigma_1) implied by relation + hypothesis alone.
    LinearSystem partial;
    partial.vars = out.system.vars;
    partial.constraints = {out.system.constraints[0], out.system.constraints[2]};
    const auto implied = implied_upper_bound(partial, 1);
    if (!implied)
        throw std::logic_error("internal error: relation + hypothesis imply no bound");
    out.intermediate_upper = implied->first;

    out.outcome = solve(out.system);
    out.strict = !out.outcome.feasible;

    out.provenance.push_back("inputs: " + rel.str() + "  and  scl(sigma_1) >= " +
                             rat_str(sep_lower->value) + " (both certified)");
    out.provenance.push_back("hypothesis to refute: scl(nu) >= scl(sigma_1)");
    out.provenance.push_back("relation + hypothesis imply scl(sigma_1) <= " +
                             rat_str(out.intermediate_upper));
    if (out.strict) {
        out.provenance.push_back(
            "Fourier-Motzkin refutation: a nonnegative combination of the constraints gives 0 " +
            rel_str(out.outcome.refutation_rel) + " " + rat_str(out.outcome.refutation_rhs) +
            "; hypothesis impossible, so scl(t_c) < scl(t_s) in M_2");
    } else {
        std::string w;
        for (const auto& [var, val] : out.outcome.witness)
            w += (w.empty() ? "" : ", ") + var + " = " + rat_str(val);
        out.provenance.push_back("system is feasible (witness: " + w +
                                 "); strictness NOT established with these inputs");
    }
    return out;
}

StrictnessResult strictness_check(int genus) {
    if (genus != 2)
        throw std::invalid_argument("strictness_check: the argument lives at g = 2");
    const PipelineResult lemma = run_pipeline(PipelineName::Lemma3, 2);
    const LowerBound lb = scl_lower_bound(2, TwistClass::separating(1, 2));
    return strictness_check(lemma.relation, lb);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using nlohmann::json;

json to_json(const TwistClass& cls) {
    json j;
    j["kind"] = cls.kind == CurveKind::Nonseparating ? "nonseparating" : "separating";
    if (cls.kind == CurveKind::Separating) j["h"] = cls.h;
    j["label"] = cls.label();
    j["twist"] = cls.twist_label();
    return j;
}

namespace {

json trace_json(const std::vector<TraceStep>& trace) {
    json arr = json::array();
    for (const TraceStep& t : trace) {
        json e;
        e["op"] = t.op;
        for (const auto& [k, v] : t.data) e[k] = v;
        arr.push_back(std::move(e));
    }
    return arr;
}

json relation_json(const RelativeBound& rel) {
    json r;
    r["pivot"] = to_json(rel.pivot);
    r["pivot_coeff"] = rat_str(rel.pivot_coeff);
    json terms = json::array();
    for (const auto& [k, cls] : rel.terms)
        terms.push_back(json{{"coeff", rat_str(k)}, {"class", to_json(cls)}});
    r["terms"] = std::move(terms);
    r["constant"] = rat_str(rel.constant);
    r["display"] = rel.str();
    return r;
}

}  // namespace

json to_json(const VerifiedIdentity& id) {
    json j;
    j["kind"] = "verified-identity";
    j["genus"] = id.lhs.config()->genus();
    j["config"] = id.lhs.config()->name();
    j["lhs"] = format_word(id.lhs);
    j["rhs"] = format_word(id.rhs);
    j["oracle"] = {{"verdict", verdict_str(id.oracle)}, {"convention", kOracleConvention}};
    j["abelianization"] = {{"N", id.ab_modulus.str()},
                           {"residues", {{"lhs", id.ab_residue.str()}, {"rhs", id.ab_residue.str()}}}};
    j["provenance"] = id.provenance;
    return j;
}

json to_json(const PipelineResult& r) {
    json j;
    j["kind"] = r.bound ? "scl-upper-bound" : "scl-relation";
    j["group"] = "M";
    j["genus"] = r.genus;
    j["pipeline"] = pipeline_str(r.name);
    j["target"] = to_json(r.target);
    if (r.bound) j["bound"] = {{"dir", "upper"}, {"value", rat_str(r.bound->value)}};
    if (r.relation) j["relation"] = relation_json(*r.relation);
    j["provenance"] = trace_json(r.trace);
    j["oracle"] = {{"verdict", verdict_str(r.identity.oracle)}, {"convention", kOracleConvention}};
    j["abelianization"] = {{"N", r.identity.ab_modulus.str()},
                           {"residues",
                            {{"lhs", r.identity.ab_residue.str()},
                             {"rhs", r.identity.ab_residue.str()}}}};
    return j;
}

json to_json(const LowerBound& lb) {
    json j;
    j["kind"] = "scl-lower-bound";
    j["group"] = "H";
    j["genus"] = lb.genus;
    j["target"] = to_json(lb.target);
    j["bound"] = {{"dir", "lower"}, {"value", rat_str(lb.value)}};
    j["endo_kotschick"] = {{"value", rat_str(lb.endo_kotschick)}, {"improves", lb.improves}};
    j["provenance"] = lb.provenance;
    return j;
}

json to_json(const StrictnessResult& s) {
    json j;
    j["kind"] = "strictness";
    j["group"] = "M";
    j["genus"] = 2;
    j["claim"] = "scl(t_c) < scl(t_s)";
    json cons = json::array();
    for (const LinearConstraint& c : s.system.constraints) {
        json e;
        e["label"] = c.label;
        json coeffs = json::array();
        for (const Rat& k : c.coeffs) coeffs.push_back(rat_str(k));
        e["coeffs"] = std::move(coeffs);
        e["rel"] = rel_str(c.rel);
        e["rhs"] = rat_str(c.rhs);
        cons.push_back(std::move(e));
    }
    j["system"] = {{"vars", s.system.vars}, {"constraints", std::move(cons)}};
    j["intermediate"] = {{"bound", "scl(sigma_1) <= " + rat_str(s.intermediate_upper)},
                         {"value", rat_str(s.intermediate_upper)}};
    j["result"] = s.strict ? "infeasible" : "feasible";
    if (s.strict) {
        json ref = json::array();
        for (const RefutationTerm& t : s.outcome.refutation)
            ref.push_back(json{{"constraint", t.index},
                               {"multiplier", rat_str(t.multiplier)},
                               {"negated", t.negated}});
        j["refutation"] = {{"terms", std::move(ref)},
                           {"contradiction", "0 " + rel_str(s.outcome.refutation_rel) + " " +
                                                 rat_str(s.outcome.refutation_rhs)}};
    } else {
        json w;
        for (const auto& [var, val] : s.outcome.witness) w[var] = rat_str(val);
        j["witness"] = std::move(w);
    }
    j["provenance"] = s.provenance;
    return j;
}

json to_json(const BoundsReport& report) {
    json rows = json::array();
    for (const BoundRow& r : report.rows) {
        json e;
        e["group"] = family_str(r.family);
        e["genus"] = r.genus;
        e["target"] = to_json(r.target);
        if (r.lower)
            e["lower"] = {{"value", rat_str(r.lower->value)}, {"provenance", r.lower->provenance}};
        if (r.upper)
            e["upper"] = {{"value", rat_str(r.upper->value)}, {"provenance", r.upper->provenance}};
        rows.push_back(std::move(e));
    }
    json j;
    j["kind"] = "bound-table";
    j["rows"] = std::move(rows);
    j["notes"] = report.notes;
    return j;
}

std::string render_certificate(const json& j) { return j.dump(2) + "\n"; }

void emit_certificate(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << render_certificate(j);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

TableFormat parse_table_format(std::string_view text) {
    if (text == "csv") return TableFormat::Csv;
    if (text == "md") return TableFormat::Md;
    if (text == "json") return TableFormat::Json;
    throw std::invalid_argument("table format must be csv, md or json");
}

std::string render_table(int g_from, int g_to, TableFormat format) {
    if (g_from < 2 || g_to < g_from)
        throw std::invalid_argument("table range must satisfy 2 <= from <= to");

    struct TRow {
        int g;
        std::string cls, lower, ek, upper;
    };
    std::vector<TRow> rows;
    for (int g = g_from; g <= g_to; ++g) {
        const BoundsReport lower = bounds(g, GroupFamily::Hyperelliptic);
        const BoundsReport upper = bounds(g, GroupFamily::FullMcg);
        for (size_t i = 0; i < lower.rows.size(); ++i) {
            const BoundRow& lo = lower.rows[i];
            const BoundRow& up = upper.rows[i];
            rows.push_back({g, lo.target.twist_label(), rat_str(lo.lower->value),
                            rat_str(scl_lower_bound(g, lo.target).endo_kotschick),
                            rat_str(up.upper->value)});
        }
    }

    std::ostringstream out;
    switch (format) {
        case TableFormat::Csv:
            out << "g,class,lower,endo_kotschick,upper\n";
            for (const TRow& r : rows)
                out << r.g << ',' << r.cls << ',' << r.lower << ',' << r.ek << ',' << r.upper
                    << '\n';
            break;
        case TableFormat::Md:
            out << "| g | class | lower (H_g) | Endo-Kotschick | upper (M_g) |\n";
            out << "|---|-------|-------------|----------------|-------------|\n";
            for (const TRow& r : rows)
                out << "| " << r.g << " | " << r.cls << " | " << r.lower << " | " << r.ek
                    << " | " << r.upper << " |\n";
            break;
        case TableFormat::Json: {
            json arr = json::array();
            for (const TRow& r : rows)
                arr.push_back(json{{"g", r.g},
                                   {"class", r.cls},
                                   {"lower", r.lower},
                                   {"endo_kotschick", r.ek},
                                   {"upper", r.upper}});
            out << arr.dump(2) << "\n";
            break;
        }
    }
    return out.str();
}

}  // namespace sclcert
