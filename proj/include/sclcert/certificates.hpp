#pragma once

// Assembly layer: combines the quasimorphism pipelines (upper bounds, valid
// in M_g), the fibered signature bounds (lower bounds, valid in H_g) and the
// exact linear solver into bound tables, the strictness certificate, and
// canonical replayable JSON certificates.
//
// Transfer rules between the families (scl is monotone under passing to a
// subgroup, H_g <= M_g, so scl_M <= scl_H):
//   - upper bounds live in M_g; they transfer to H_g only at g = 2, where
//     H_2 = M_2;
//   - lower bounds live in H_g; they transfer to M_2 the same way.
// Consequently bounds(g, M) has no lower entries for g >= 3 and bounds(g, H)
// has no upper entries for g >= 3.

#include "sclcert/lefschetz.hpp"
#include "sclcert/linsys.hpp"
#include "sclcert/qm.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sclcert {

struct BoundEntry {
    Rat value;
    std::string provenance;  // one-line summary; full chains live in certificates
};

struct BoundRow {
    GroupFamily family = GroupFamily::FullMcg;
    int genus = 2;
    TwistClass target;
    std::optional<BoundEntry> lower, upper;
};

struct BoundsReport {
    std::vector<BoundRow> rows;
    std::vector<std::string> notes;  // coincidences, transfer remarks
};

// One row per twist class (nu, sigma_1, ..., sigma_{floor(g/2)}), all bounds
// recomputed through their full certified pipelines. Throws std::logic_error
// if any row ends up with lower > upper.
BoundsReport bounds(int genus, GroupFamily family);

// ---------------------------------------------------------------------------
// Strictness of scl(t_c) < scl(t_s) in M_2.
//
// Inputs: the lemma3 relation 6 scl(nu) <= scl(sigma_1)/2 + 1/2 and the
// fibered lower bound scl(sigma_1) >= 1/10. Adding the hypothesis
// scl(nu) >= scl(sigma_1) lets Fourier-Motzkin derive scl(sigma_1) <= 1/11,
// which contradicts the lower bound; the hypothesis is therefore impossible
// and the inequality is strict.
// ---------------------------------------------------------------------------

struct StrictnessResult {
    LinearSystem system;
    Feasibility outcome;      // infeasible == strictness proved
    Rat intermediate_upper;   // bound on scl(sigma_1) implied by relation + hypothesis
    bool strict = false;
    std::vector<std::string> provenance;
};

// Throws std::invalid_argument when either prerequisite certificate is
// missing, or when the relation does not have the expected shape
// (pivot nu, single sigma_1 term).
StrictnessResult strictness_check(const std::optional<RelativeBound>& lemma3_relation,
                                  const std::optional<LowerBound>& sep_lower);
// Convenience: runs the lemma3 pipeline and the fibered bound at g = 2.
StrictnessResult strictness_check(int genus = 2);

// ---------------------------------------------------------------------------
// Certificates. All values are serialized as exact "p/q" strings; keys are
// emitted in sorted order and no volatile data (timestamps, paths, floats)
// appears, so re-emission is byte-identical.
// ---------------------------------------------------------------------------

nlohmann::json to_json(const TwistClass& cls);
nlohmann::json to_json(const VerifiedIdentity& id);
nlohmann::json to_json(const PipelineResult& r);
nlohmann::json to_json(const LowerBound& lb);
nlohmann::json to_json(const StrictnessResult& s);
nlohmann::json to_json(const BoundsReport& b);

// Canonical rendering: sorted keys, 2-space indent, trailing newline.
std::string render_certificate(const nlohmann::json& j);
void emit_certificate(const nlohmann::json& j, const std::string& path);

enum class TableFormat { Csv, Md, Json };
TableFormat parse_table_format(std::string_view text);

// Bound table for g in [g_from, g_to]: columns g, class, lower (H_g),
// endo_kotschick, upper (M_g).
std::string render_table(int g_from, int g_to, TableFormat format);

}  // namespace sclcert
