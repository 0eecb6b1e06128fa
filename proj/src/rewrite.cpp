#include "sclcert/rewrite.hpp"

#include <sstream>

namespace sclcert {

std::string relation_str(RelationName name) {
    switch (name) {
        case RelationName::BraidComm: return "braid-comm";
        case RelationName::Braid: return "braid";
        case RelationName::Lantern: return "lantern";
        case RelationName::Lantern2: return "lantern2";
        case RelationName::Chain: return "chain";
        case RelationName::Chain2: return "chain2";
        case RelationName::TwoChain: return "twochain";
    }
    return "?";
}

RelationName parse_relation(std::string_view text) {
    if (text == "lantern") return RelationName::Lantern;
    if (text == "lantern2") return RelationName::Lantern2;
    if (text == "chain") return RelationName::Chain;
    if (text == "chain2") return RelationName::Chain2;
    if (text == "twochain") return RelationName::TwoChain;
    throw WordError("unknown relation name '" + std::string(text) + "'");
}

RelationInstance make_braid_comm(const ConfigPtr& config, std::string_view c, std::string_view d) {
    const int ci = config->index_of(c), di = config->index_of(d);
    if (ci == di) throw ConfigError("braid-comm requires two distinct curves");
    if (config->geo(ci, di) != 0)
        throw ConfigError("braid-comm requires geo = 0, got " +
                          (config->geo(ci, di) == kGeoUnknown
                               ? std::string("UNKNOWN")
                               : std::to_string(config->geo(ci, di))));
    return {RelationName::BraidComm, TwistWord(config, {{ci, 1}, {di, 1}}),
            TwistWord(config, {{di, 1}, {ci, 1}})};
}

RelationInstance make_braid(const ConfigPtr& config, std::string_view c, std::string_view d,
                            int sign) {
    const int ci = config->index_of(c), di = config->index_of(d);
    if (ci == di) throw ConfigError("braid requires two distinct curves");
    if (config->geo(ci, di) != 1)
        throw ConfigError("braid requires geo = 1, got " +
                          (config->geo(ci, di) == kGeoUnknown
                               ? std::string("UNKNOWN")
                               : std::to_string(config->geo(ci, di))));
    if (sign != 1 && sign != -1) throw ConfigError("braid sign must be +1 or -1");
    return {RelationName::Braid,
            TwistWord(config, {{ci, sign}, {di, sign}, {ci, sign}}),
            TwistWord(config, {{di, sign}, {ci, sign}, {di, sign}})};
}

RelationInstance builtin_relation(RelationName name, const ConfigPtr& config) {
    auto need = [&](const char* cfg_name, int min_genus, int max_genus) {
        if (config->name() != cfg_name || config->genus() < min_genus ||
            (max_genus > 0 && config->genus() > max_genus))
            throw ConfigError("relation '" + relation_str(name) + "' is defined over config '" +
                              cfg_name + "'" +
                              (min_genus == max_genus
                                   ? " at g = " + std::to_string(min_genus)
                                   : " with g >= " + std::to_string(min_genus)) +
                              ", not '" + config->name() + "' at g = " +
                              std::to_string(config->genus()));
    };
    auto w = [&](std::string_view lit) { return parse_word(config, lit); };
    switch (name) {
        case RelationName::Lantern:
            need("lantern", 3, 0);
            return {name, w("s a b c"), w("x y z")};
        case RelationName::Lantern2:
            need("lantern2", 2, 2);
            return {name, w("a1 a1 a5 a5"), w("a3 s x")};
        case RelationName::Chain:
            need("chain5", 3, 0);
            return {name, w("a3 a2 a1 a3 a2 a1 a3 a2 a1 a3 a2 a1"), w("a4 a5")};
        case RelationName::Chain2:
            need("chain5", 2, 2);
            return {name, w("a3 a2 a1 a3 a2 a1 a3 a2 a1 a3 a2 a1"), w("a5 a5")};
        case RelationName::TwoChain:
            need("twochain", 2, 2);
            return {name, w("s"), w("a2 a1 a2 a1 a2 a1 a2 a1 a2 a1 a2 a1")};
        case RelationName::BraidComm:
        case RelationName::Braid:
            throw ConfigError("relation '" + relation_str(name) +
                              "' needs explicit curves; use the swap/braid rewrite rules");
    }
    throw ConfigError("unknown relation");
}

std::vector<RelationInstance> builtin_relations() {
    return {
        builtin_relation(RelationName::Lantern, builtin_config("lantern", 3)),
        builtin_relation(RelationName::Lantern2, builtin_config("lantern2", 2)),
        builtin_relation(RelationName::Chain, builtin_config("chain5", 3)),
        builtin_relation(RelationName::Chain2, builtin_config("chain5", 2)),
        builtin_relation(RelationName::TwoChain, builtin_config("twochain", 2)),
    };
}

RewriteStep RewriteStep::swap(int pos) { return {Kind::Swap, pos, "", 1, RelationName::Lantern, true}; }
RewriteStep RewriteStep::braid(int pos) { return {Kind::Braid, pos, "", 1, RelationName::Lantern, true}; }
RewriteStep RewriteStep::cancel(int pos) { return {Kind::Cancel, pos, "", 1, RelationName::Lantern, true}; }
RewriteStep RewriteStep::insert(std::string id, int sign, int pos) {
    return {Kind::Insert, pos, std::move(id), sign, RelationName::Lantern, true};
}
RewriteStep RewriteStep::subst(RelationName name, bool forward, int pos) {
    return {Kind::Subst, pos, "", 1, name, forward};
}

std::string RewriteStep::str() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Swap: out << "swap"; break;
        case Kind::Braid: out << "braid"; break;
        case Kind::Cancel: out << "cancel"; break;
        case Kind::Insert: out << "insert " << insert_id << (insert_sign < 0 ? "'" : ""); break;
        case Kind::Subst:
            out << "subst " << relation_str(subst_name) << (subst_forward ? " fwd" : " bwd");
            break;
    }
    out << " @" << pos;
    return out.str();
}

bool operator==(const RewriteStep& a, const RewriteStep& b) {
    if (a.kind != b.kind || a.pos != b.pos) return false;
    switch (a.kind) {
        case RewriteStep::Kind::Insert:
            return a.insert_id == b.insert_id && a.insert_sign == b.insert_sign;
        case RewriteStep::Kind::Subst:
            return a.subst_name == b.subst_name && a.subst_forward == b.subst_forward;
        default:
            return true;
    }
}

RuleNotApplicable::RuleNotApplicable(const RewriteStep& step, const std::string& why)
    : std::runtime_error("rule '" + step.str() + "' not applicable: " + why),
      rule(step.str()),
      position(step.pos),
      reason(why) {}

namespace {

std::string letter_str(const TwistWord& w, int i) {
    return w.config()->curve(w.at(i).curve).id + (w.at(i).sign < 0 ? "'" : "");
}

}  // namespace

TwistWord apply_rule(const TwistWord& word, const RewriteStep& step) {
    const ConfigPtr& cfg = word.config();
    const int n = word.size();
    const int i = step.pos;
    auto need_range = [&](int count) {
        if (i < 0 || i + count > n)
            throw RuleNotApplicable(step, "needs positions " + std::to_string(i) + ".." +
                                              std::to_string(i + count - 1) + " but word has " +
                                              std::to_string(n) + " letters");
    };
    std::vector<TwistGen> out = word.letters();
    switch (step.kind) {
        case RewriteStep::Kind::Swap: {
            need_range(2);
            const TwistGen &l = word.at(i), &r = word.at(i + 1);
            if (l.curve != r.curve) {
                const int g = cfg->geo(l.curve, r.curve);
                if (g == kGeoUnknown)
                    throw RuleNotApplicable(step, "intersection of '" + cfg->curve(l.curve).id +
                                                      "' and '" + cfg->curve(r.curve).id +
                                                      "' is UNKNOWN, commutation not certified");
                if (g != 0)
                    throw RuleNotApplicable(step, "curves '" + cfg->curve(l.curve).id + "' and '" +
                                                      cfg->curve(r.curve).id + "' have geo = " +
                                                      std::to_string(g) + ", twists need not commute");
            }
            std::swap(out[static_cast<size_t>(i)], out[static_cast<size_t>(i) + 1]);
            break;
        }
        case RewriteStep::Kind::Braid: {
            need_range(3);
            const TwistGen &l0 = word.at(i), &l1 = word.at(i + 1), &l2 = word.at(i + 2);
            if (l0.curve != l2.curve || l0.sign != l2.sign || l0.curve == l1.curve)
                throw RuleNotApplicable(step, "pattern t_c t_d t_c with c != d not found at " +
                                                  std::to_string(i) + " (saw " + letter_str(word, i) +
                                                  " " + letter_str(word, i + 1) + " " +
                                                  letter_str(word, i + 2) + ")");
            if (l0.sign != l1.sign)
                throw RuleNotApplicable(step, "braid needs all three letters with the same sign");
            const int g = cfg->geo(l0.curve, l1.curve);
            if (g != 1)
                throw RuleNotApplicable(step, "curves '" + cfg->curve(l0.curve).id + "' and '" +
                                                  cfg->curve(l1.curve).id + "' have geo " +
                                                  (g == kGeoUnknown ? std::string("UNKNOWN")
                                                                    : std::to_string(g)) +
                                                  ", braid requires geo = 1");
            out[static_cast<size_t>(i)] = l1;
            out[static_cast<size_t>(i) + 1] = l0;
            out[static_cast<size_t>(i) + 2] = l1;
            break;
        }
        case RewriteStep::Kind::Cancel: {
            need_range(2);
            const TwistGen &l = word.at(i), &r = word.at(i + 1);
            if (l.curve != r.curve || l.sign != -r.sign)
                throw RuleNotApplicable(step, "letters " + letter_str(word, i) + " " +
                                                  letter_str(word, i + 1) +
                                                  " are not an inverse pair");
            out.erase(out.begin() + i, out.begin() + i + 2);
            break;
        }
        case RewriteStep::Kind::Insert: {
            if (i < 0 || i > n)
                throw RuleNotApplicable(step, "insertion point outside 0.." + std::to_string(n));
            int curve;
            try {
                curve = cfg->index_of(step.insert_id);
            } catch (const ConfigError& e) {
                throw RuleNotApplicable(step, e.what());
            }
            if (step.insert_sign != 1 && step.insert_sign != -1)
                throw RuleNotApplicable(step, "insert sign must be +1 or -1");
            out.insert(out.begin() + i,
                       {{curve, step.insert_sign}, {curve, -step.insert_sign}});
            break;
        }
        case RewriteStep::Kind::Subst: {
            RelationInstance rel{};
            try {
                rel = builtin_relation(step.subst_name, cfg);
            } catch (const ConfigError& e) {
                throw RuleNotApplicable(step, e.what());
            }
            const TwistWord& from = step.subst_forward ? rel.lhs : rel.rhs;
            const TwistWord& to = step.subst_forward ? rel.rhs : rel.lhs;
            need_range(from.size());
            for (int k = 0; k < from.size(); ++k)
                if (!(word.at(i + k) == from.at(k)))
                    throw RuleNotApplicable(
                        step, "word does not match '" + format_word(from) + "' verbatim at " +
                                  std::to_string(i) + " (first mismatch: position " +
                                  std::to_string(i + k) + " has " + letter_str(word, i + k) +
                                  ", pattern wants " + letter_str(from, k) + ")");
            out.erase(out.begin() + i, out.begin() + i + from.size());
            out.insert(out.begin() + i, to.letters().begin(), to.letters().end());
            break;
        }
    }
    return TwistWord(cfg, std::move(out));
}

bool same_derivation(const Derivation& a, const Derivation& b) {
    return same_config(a.config, b.config) && a.start == b.start && a.end == b.end &&
           a.steps == b.steps;
}

DerivationError::DerivationError(int step_index, const std::string& why)
    : std::runtime_error(step_index < 0 ? "derivation endpoint check failed: " + why
                                        : "derivation step " + std::to_string(step_index) +
                                              " failed: " + why),
      step_index(step_index) {}

VerifiedIdentity check_derivation(const Derivation& d) {
    TwistWord word = d.start;
    for (size_t k = 0; k < d.steps.size(); ++k) {
        try {
            word = apply_rule(word, d.steps[k]);
        } catch (const RuleNotApplicable& e) {
            throw DerivationError(static_cast<int>(k), e.what());
        }
    }
    if (!(word == d.end))
        throw DerivationError(-1, "steps end at '" + format_word(word) + "' but script declares '" +
                                      format_word(d.end) + "'");

    const OracleVerdict verdict = check_identity(d.start, d.end);
    if (verdict == OracleVerdict::Fail)
        throw std::logic_error(
            "internal inconsistency: derivation '" + d.name +
            "' replays but its endpoints differ in Sp(2g, Z); a relation instance is wrong");

    const GroupSpec mcg{GroupFamily::FullMcg, d.config->genus()};
    const Int lhs_res = ab_image(d.start, mcg), rhs_res = ab_image(d.end, mcg);
    if (lhs_res != rhs_res)
        throw std::logic_error(
            "internal inconsistency: derivation '" + d.name +
            "' replays but its endpoints differ in the abelianization of M_g");

    VerifiedIdentity v;
    v.lhs = d.start;
    v.rhs = d.end;
    v.oracle = verdict;
    v.ab_modulus = mcg.modulus();
    v.ab_residue = lhs_res;
    v.provenance.push_back("derivation '" + (d.name.empty() ? std::string("<anonymous>") : d.name) +
                           "' over " + d.config->name() + " (g=" +
                           std::to_string(d.config->genus()) + "): " +
                           std::to_string(d.steps.size()) + " rewrite steps replayed");
    v.provenance.push_back("identity: " + format_word(d.start) + "  ==  " + format_word(d.end));
    v.provenance.push_back("homology oracle: " + verdict_str(verdict));
    v.provenance.push_back("abelianization of M_" + std::to_string(d.config->genus()) + " (N=" +
                           v.ab_modulus.str() + "): both sides have residue " + v.ab_residue.str());
    return v;
}

VerifiedIdentity normalize_goal(const VerifiedIdentity& v, const TwistWord& left,
                                const TwistWord& right) {
    VerifiedIdentity out;
    out.lhs = free_reduce(multiply(multiply(left, v.lhs), right));
    out.rhs = free_reduce(multiply(multiply(left, v.rhs), right));
    out.oracle = check_identity(out.lhs, out.rhs);
    if (out.oracle == OracleVerdict::Fail)
        throw std::logic_error("internal inconsistency: normalize_goal broke the oracle check");
    const GroupSpec mcg{GroupFamily::FullMcg, out.lhs.config()->genus()};
    out.ab_modulus = mcg.modulus();
    out.ab_residue = ab_image(out.lhs, mcg);
    if (out.ab_residue != ab_image(out.rhs, mcg))
        throw std::logic_error("internal inconsistency: normalize_goal broke the abelianization check");
    out.provenance = v.provenance;
    out.provenance.push_back("normalized goal: multiplied both sides by '" + format_word(left) +
                             "' on the left, '" + format_word(right) +
                             "' on the right, then freely reduced: " + format_word(out.lhs) +
                             "  ==  " + format_word(out.rhs));
    return out;
}

namespace {

std::vector<RewriteStep> parse_steps(const std::vector<std::string>& lines);

Derivation make_derivation(std::string name, ConfigPtr config, std::string_view start,
                           std::string_view end, const std::vector<std::string>& steps) {
    Derivation d;
    d.name = std::move(name);
    d.config = std::move(config);
    d.start = parse_word(d.config, start);
    d.end = parse_word(d.config, end);
    d.steps = parse_steps(steps);
    return d;
}

}  // namespace

Derivation builtin_derivation(DerivationName name, int genus, int sep_genus) {
    switch (name) {
        case DerivationName::D1: {
            if (genus < 3) throw ConfigError("D1 requires genus >= 3 (use D1Prime at g = 2)");
            // Move a3^{-2} to the left, open the chain relation backwards,
            // braid a3^2 out to the left end and a1^2 out to the right end,
            // cancel; what remains is the square of X = t_{a2} t_{a3} t_{a1} t_{a2}.
            return make_derivation(
                "D1", builtin_config("chain5", genus), "a4 a5 a3' a3' a1' a1'",
                "a2 a3 a1 a2 a2 a3 a1 a2",
                {"swap @1", "swap @0", "swap @2", "swap @1", "subst chain bwd @2", "swap @4",
                 "swap @10", "braid @5", "braid @8", "braid @3", "braid @10", "cancel @1",
                 "cancel @0", "cancel @9", "cancel @8"});
        }
        case DerivationName::D1Prime: {
            if (genus != 2) throw ConfigError("D1Prime is the g = 2 variant");
            return make_derivation(
                "D1'", builtin_config("chain5", 2), "a5 a5 a3' a3' a1' a1'",
                "a2 a3 a1 a2 a2 a3 a1 a2",
                {"swap @1", "swap @0", "swap @2", "swap @1", "subst chain2 bwd @2", "swap @4",
                 "swap @10", "braid @5", "braid @8", "braid @3", "braid @10", "cancel @1",
                 "cancel @0", "cancel @9", "cancel @8"});
        }
        case DerivationName::D2: {
            if (genus < 3) throw ConfigError("D2 requires genus >= 3");
            return make_derivation("D2", builtin_config("lantern", genus, sep_genus),
                                   "s a b c z'", "x y",
                                   {"subst lantern fwd @0", "cancel @2"});
        }
        case DerivationName::D3: {
            if (genus != 2) throw ConfigError("D3 lives at g = 2");
            // Walk a3^{-1} to the front (everything it passes is disjoint
            // from a3), fire the genus-2 lantern, cancel.
            return make_derivation("D3", builtin_config("lantern2", 2), "a1 a1 a5 a5 a3'",
                                   "s x",
                                   {"swap @3", "swap @2", "swap @1", "swap @0",
                                    "subst lantern2 fwd @1", "cancel @0"});
        }
        case DerivationName::D4: {
            if (genus != 2) throw ConfigError("D4 lives at g = 2");
            // Slide s past a1^{-2}, expand it to (t_{a2} t_{a1})^6, braid the
            // block into a palindrome and cancel a1^{-2} ... a1^{-2} off both
            // ends, leaving (t_{a2} t_{a1}^2 t_{a2})^2.
            return make_derivation(
                "D4", builtin_config("twochain", 2), "s a1' a1' a1' a1'",
                "a2 a1 a1 a2 a2 a1 a1 a2",
                {"swap @0", "swap @1", "subst twochain fwd @2", "braid @2", "braid @5",
                 "braid @10", "braid @3", "cancel @1", "cancel @0", "cancel @9", "cancel @8"});
        }
    }
    throw ConfigError("unknown derivation");
}

std::vector<Derivation> builtin_derivations() {
    return {builtin_derivation(DerivationName::D1, 3),
            builtin_derivation(DerivationName::D1Prime, 2),
            builtin_derivation(DerivationName::D2, 3),
            builtin_derivation(DerivationName::D3, 2),
            builtin_derivation(DerivationName::D4, 2)};
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

int parse_pos(const std::string& tok) {
    if (tok.size() < 2 || tok[0] != '@')
        throw WordError("step position must look like '@3', got '" + tok + "'");
    return std::stoi(tok.substr(1));
}

RewriteStep parse_step_tokens(const std::vector<std::string>& toks) {
    if (toks.empty()) throw WordError("empty step");
    const std::string& rule = toks[0];
    if (rule == "swap" || rule == "braid" || rule == "cancel") {
        if (toks.size() != 2) throw WordError("step '" + rule + "' takes exactly one '@<i>'");
        const int pos = parse_pos(toks[1]);
        return rule == "swap"    ? RewriteStep::swap(pos)
               : rule == "braid" ? RewriteStep::braid(pos)
                                 : RewriteStep::cancel(pos);
    }
    if (rule == "insert") {
        if (toks.size() != 3) throw WordError("step 'insert' needs a letter and '@<i>'");
        std::string id = toks[1];
        int sign = 1;
        if (id.size() > 1 && id.back() == '\'') {
            sign = -1;
            id.pop_back();
        }
        return RewriteStep::insert(std::move(id), sign, parse_pos(toks[2]));
    }
    if (rule == "subst") {
        if (toks.size() != 4) throw WordError("step 'subst' needs '<relation> fwd|bwd @<i>'");
        const RelationName rel = parse_relation(toks[1]);
        if (toks[2] != "fwd" && toks[2] != "bwd")
            throw WordError("subst direction must be 'fwd' or 'bwd', got '" + toks[2] + "'");
        return RewriteStep::subst(rel, toks[2] == "fwd", parse_pos(toks[3]));
    }
    throw WordError("unknown rewrite rule '" + rule + "'");
}

std::vector<RewriteStep> parse_steps(const std::vector<std::string>& lines) {
    std::vector<RewriteStep> steps;
    steps.reserve(lines.size());
    for (const std::string& l : lines) steps.push_back(parse_step_tokens(split_tokens(l)));
    return steps;
}

}  // namespace

Derivation parse_derivation_script(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    std::optional<ConfigPtr> config;
    std::optional<std::string> start_lit, end_lit;
    std::vector<RewriteStep> steps;
    auto fail = [&](const std::string& msg) {
        throw WordError("script line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::string key = toks[0];
        toks.erase(toks.begin());
        if (key == "config:") {
            if (toks.size() < 2 || toks[1].rfind("g=", 0) != 0)
                fail("expected 'config: <name> g=<genus> [h=<k>]'");
            int genus = std::stoi(toks[1].substr(2));
            int h = 1;
            if (toks.size() > 2) {
                if (toks[2].rfind("h=", 0) != 0) fail("expected 'h=<k>'");
                h = std::stoi(toks[2].substr(2));
            }
            try {
                config = builtin_config(toks[0], genus, h);
            } catch (const ConfigError& e) {
                fail(e.what());
            }
        } else if (key == "start:" || key == "end:") {
            std::string lit;
            for (const auto& t : toks) lit += (lit.empty() ? "" : " ") + t;
            (key == "start:" ? start_lit : end_lit) = lit;
        } else if (key == "step:") {
            if (!config) fail("'config:' must come before steps");
            try {
                steps.push_back(parse_step_tokens(toks));
            } catch (const WordError& e) {
                fail(e.what());
            }
        } else {
            fail("unrecognized declaration '" + key + "'");
        }
    }
    if (!config) throw WordError("script missing 'config:' line");
    if (!start_lit || !end_lit) throw WordError("script missing 'start:' or 'end:' line");
    Derivation d;
    d.name = (*config)->name() + " script";
    d.config = *config;
    d.start = parse_word(d.config, *start_lit);
    d.end = parse_word(d.config, *end_lit);
    d.steps = std::move(steps);
    return d;
}

std::string format_derivation_script(const Derivation& d) {
    std::ostringstream out;
    if (!d.name.empty()) out << "# " << d.name << "\n";
    out << "config: " << d.config->name() << " g=" << d.config->genus();
    // The lantern config is additionally parameterized by the genus its
    // separating boundary curve splits off.
    for (const Curve& c : d.config->curves())
        if (c.kind == CurveKind::Separating && d.config->name() == "lantern") {
            out << " h=" << c.sep_genus;
            break;
        }
    out << "\n";
    out << "start: " << format_word(d.start) << "\n";
    out << "end: " << format_word(d.end) << "\n";
    for (const RewriteStep& s : d.steps) out << "step: " << s.str() << "\n";
    return out.str();
}

}  // namespace sclcert
