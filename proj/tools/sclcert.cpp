// sclcert -- certified stable-commutator-length bounds for Dehn twists.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / malformed input.

#include "sclcert/certificates.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace sclcert;

GroupFamily parse_family(const std::string& s) {
    if (s == "m" || s == "M") return GroupFamily::FullMcg;
    if (s == "h" || s == "H") return GroupFamily::Hyperelliptic;
    throw std::invalid_argument("group must be 'm' (mapping class group) or 'h' (hyperelliptic)");
}

std::pair<int, int> parse_genus_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const int g = std::stoi(s);
        return {g, g};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_bounds(int genus, const std::string& group) {
    const BoundsReport report = bounds(genus, parse_family(group));
    for (const BoundRow& r : report.rows) {
        std::cout << family_str(r.family) << "_" << r.genus << "  " << r.target.twist_label()
                  << "  scl in [";
        std::cout << (r.lower ? rat_str(r.lower->value) : std::string("?")) << ", ";
        std::cout << (r.upper ? rat_str(r.upper->value) : std::string("?")) << "]";
        if (r.lower) std::cout << "  lower: " << r.lower->provenance;
        if (r.upper) std::cout << "  upper: " << r.upper->provenance;
        std::cout << "\n";
    }
    for (const std::string& n : report.notes) std::cout << "note: " << n << "\n";
    return 0;
}

int cmd_derive(const std::string& pipeline, int genus, int sep_genus, const std::string& emit) {
    const PipelineResult r = run_pipeline(parse_pipeline(pipeline), genus, sep_genus);
    const nlohmann::json cert = to_json(r);
    if (emit.empty()) {
        std::cout << render_certificate(cert);
    } else {
        emit_certificate(cert, emit);
        std::cout << "certificate written to " << emit << "\n";
    }
    if (r.bound)
        std::cout << "scl(" << r.bound->target.label() << ") <= " << rat_str(r.bound->value)
                  << "\n";
    if (r.relation) std::cout << r.relation->str() << "\n";
    return 0;
}

int cmd_verify(const std::string& path) {
    const Derivation d = parse_derivation_script(read_file(path));
    const VerifiedIdentity v = check_derivation(d);
    for (const std::string& line : v.provenance) std::cout << line << "\n";
    std::cout << "OK: " << d.steps.size() << " steps verified\n";
    return 0;
}

int cmd_oracle(const std::string& config, int genus, int sep_genus, const std::string& lhs,
               const std::string& rhs, bool show) {
    const ConfigPtr cfg = builtin_config(config, genus, sep_genus);
    const TwistWord l = parse_word(cfg, lhs), r = parse_word(cfg, rhs);
    if (show) {
        std::cout << "lhs image:\n" << word_image(l).str();
        std::cout << "rhs image:\n" << word_image(r).str();
    }
    const OracleVerdict verdict = check_identity(l, r);
    std::cout << "verdict: " << verdict_str(verdict) << "\n";
    std::cout << "convention: " << kOracleConvention << "\n";
    return verdict == OracleVerdict::Fail ? 1 : 0;
}

int cmd_abelian(const std::string& group, int genus, const std::string& word,
                const std::string& config) {
    const GroupSpec spec{parse_family(group), genus};
    ConfigPtr cfg;
    if (!config.empty()) {
        cfg = builtin_config(config, genus);
    } else {
        // Pick the first builtin config at this genus containing every curve
        // mentioned in the word.
        std::istringstream in(word);
        std::vector<std::string> ids;
        std::string tok;
        while (in >> tok) {
            if (tok.size() > 1 && tok.back() == '\'') tok.pop_back();
            ids.push_back(tok);
        }
        for (const char* name : {"chain5", "lantern", "lantern2", "twochain"}) {
            ConfigPtr candidate;
            try {
                candidate = builtin_config(name, genus);
            } catch (const ConfigError&) {
                continue;
            }
            const bool all = std::all_of(ids.begin(), ids.end(), [&](const std::string& id) {
                return candidate->has_curve(id);
            });
            if (all) {
                cfg = candidate;
                break;
            }
        }
        if (!cfg)
            throw std::invalid_argument(
                "no builtin config at this genus contains every curve in the word; pass "
                "--config explicitly");
    }
    const TwistWord w = parse_word(cfg, word);
    const Int res = ab_image(w, spec);
    std::cout << "config: " << cfg->name() << " (g=" << genus << ")\n";
    std::cout << "residue: " << res.str() << " (mod " << spec.modulus().str() << ")\n";
    std::cout << "modulus is " << (spec.exact() ? "exact" : "divides-certified only") << " for "
              << family_str(spec.family) << "_" << genus << "\n";
    return 0;
}

int cmd_table(const std::string& range, const std::string& format) {
    const auto [from, to] = parse_genus_range(range);
    std::cout << render_table(from, to, parse_table_format(format));
    return 0;
}

int cmd_strictness(int genus) {
    const StrictnessResult s = strictness_check(genus);
    for (const std::string& line : s.provenance) std::cout << line << "\n";
    std::cout << (s.strict ? "strictness proved" : "strictness NOT proved") << "\n";
    return s.strict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified scl bounds for Dehn twists in mapping class groups"};
    app.require_subcommand(1);

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "certified bound table for one genus");
    int genus = 2, sep_genus = 1;
    std::string group = "m";
    bounds_cmd->add_option("--genus", genus, "surface genus (>= 2)")->required();
    bounds_cmd->add_option("--group", group, "m (mapping class group) or h (hyperelliptic)");

    // derive
    auto* derive_cmd = app.add_subcommand("derive", "run a bound pipeline, emit a certificate");
    std::string pipeline, emit_path;
    derive_cmd->add_option("pipeline", pipeline, "thm1-nonsep | thm1-sep | thm1-sep-g2 | lemma3")
        ->required();
    derive_cmd->add_option("--genus", genus, "surface genus")->required();
    derive_cmd->add_option("--sep-genus", sep_genus, "h for thm1-sep (default 1)");
    derive_cmd->add_option("--emit", emit_path, "write the JSON certificate to this file");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "replay a derivation script");
    std::string script_path;
    verify_cmd->add_option("script", script_path, "derivation script (.drv)")->required();

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "compare two words in Sp(2g, Z)");
    std::string config_name, lhs_word, rhs_word;
    bool show_matrices = false;
    oracle_cmd->add_option("--config", config_name, "builtin config name")->required();
    oracle_cmd->add_option("--genus", genus, "surface genus")->required();
    oracle_cmd->add_option("--sep-genus", sep_genus, "h for the lantern config");
    oracle_cmd->add_option("--lhs", lhs_word, "left word literal")->required();
    oracle_cmd->add_option("--rhs", rhs_word, "right word literal")->required();
    oracle_cmd->add_flag("--show-matrices", show_matrices, "print both images");

    // abelian
    auto* abelian_cmd = app.add_subcommand("abelian", "abelianization residue of a word");
    std::string ab_word;
    abelian_cmd->add_option("--group", group, "m or h")->required();
    abelian_cmd->add_option("--genus", genus, "surface genus")->required();
    abelian_cmd->add_option("--word", ab_word, "word literal")->required();
    abelian_cmd->add_option("--config", config_name, "builtin config (default: auto-detect)");

    // table
    auto* table_cmd = app.add_subcommand("table", "bound table over a genus range");
    std::string genus_range, table_format = "csv";
    table_cmd->add_option("--genus", genus_range, "range, e.g. 2..10")->required();
    table_cmd->add_option("--format", table_format, "csv | md | json");

    // strictness
    auto* strict_cmd = app.add_subcommand("strictness", "prove scl(t_c) < scl(t_s) at g = 2");
    int strict_genus = 2;
    strict_cmd->add_option("--genus", strict_genus, "must be 2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*bounds_cmd) return cmd_bounds(genus, group);
        if (*derive_cmd) return cmd_derive(pipeline, genus, sep_genus, emit_path);
        if (*verify_cmd) return cmd_verify(script_path);
        if (*oracle_cmd)
            return cmd_oracle(config_name, genus, sep_genus, lhs_word, rhs_word, show_matrices);
        if (*abelian_cmd) return cmd_abelian(group, genus, ab_word, config_name);
        if (*table_cmd) return cmd_table(genus_range, table_format);
        if (*strict_cmd) return cmd_strictness(strict_genus);
    } catch (const sclcert::DerivationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
