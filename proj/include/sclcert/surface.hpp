#pragma once

// Model of a closed orientable genus-g surface together with a finite set of
// labelled simple closed curves. Each curve carries:
//   - a kind: nonseparating, or separating off a genus-h piece (h normalized
//     to min(h, g-h), so 1 <= h <= floor(g/2)),
//   - an integral homology class in Z^{2g} over the symplectic basis
//     (alpha_1, beta_1, ..., alpha_g, beta_g)  (zero vector iff separating),
//   - pairwise geometric intersection numbers, possibly UNKNOWN.
//
// The algebraic intersection pairing <u, v> = u^T J v with
// J = diag(((0,1),(-1,0)), ...) is derived from the homology data and must be
// compatible with geo: |<v_i, v_j>| <= geo(i, j) whenever geo is known.

#include "sclcert/rational.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sclcert {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class CurveKind { Nonseparating, Separating };

// Conjugacy class of a Dehn twist: nu (nonseparating) or sigma_h (separating
// off genus h). Shared by the quasimorphism calculus, the abelianization
// bookkeeping and the fibered lower bounds.
struct TwistClass {
    CurveKind kind = CurveKind::Nonseparating;
    int h = 0;  // meaningful only when separating; normalized to min(h, g-h)

    static TwistClass nonseparating() { return {CurveKind::Nonseparating, 0}; }
    static TwistClass separating(int h, int genus) {
        if (h < 1 || h > genus - 1)
            throw ConfigError("separating genus " + std::to_string(h) +
                              " out of range 1.." + std::to_string(genus - 1));
        return {CurveKind::Separating, std::min(h, genus - h)};
    }

    friend auto operator<=>(const TwistClass&, const TwistClass&) = default;

    // "nu" / "sigma_1", ... -- stable identifiers used in certificates.
    std::string label() const {
        return kind == CurveKind::Nonseparating ? "nu" : "sigma_" + std::to_string(h);
    }
    // "t_c" / "t_{s_1}", ... -- display names used in tables.
    std::string twist_label() const {
        return kind == CurveKind::Nonseparating ? "t_c" : "t_{s_" + std::to_string(h) + "}";
    }
};

struct Curve {
    std::string id;
    CurveKind kind = CurveKind::Nonseparating;
    int sep_genus = 0;          // separating curves only, normalized
    std::vector<Int> homology;  // length 2g

    TwistClass twist_class(int genus) const {
        return kind == CurveKind::Separating ? TwistClass::separating(sep_genus, genus)
                                             : TwistClass::nonseparating();
    }
};

constexpr int kGeoUnknown = -1;

// <u, v> = u^T J v. Both vectors must have the same even length.
Int symplectic_pairing(const std::vector<Int>& u, const std::vector<Int>& v);

class CurveConfig {
public:
    // geo is given on unordered pairs of curve ids; missing pairs are UNKNOWN.
    // aliases map extra ids onto curves (used by the 5-chain at g = 2, where
    // the boundary curves a4 and a5 of the chain neighborhood coincide).
    CurveConfig(std::string name, int genus, std::vector<Curve> curves,
                const std::map<std::pair<std::string, std::string>, int>& geo,
                const std::map<std::string, std::string>& aliases = {});

    const std::string& name() const { return name_; }
    int genus() const { return genus_; }
    int size() const { return static_cast<int>(curves_.size()); }
    const Curve& curve(int idx) const { return curves_.at(static_cast<size_t>(idx)); }
    const std::vector<Curve>& curves() const { return curves_; }
    const std::map<std::string, std::string>& aliases() const { return aliases_; }

    // Resolves an id (following aliases) to a curve index; throws ConfigError
    // on unknown ids.
    int index_of(std::string_view id) const;
    bool has_curve(std::string_view id) const;

    // Geometric intersection number, or kGeoUnknown.
    int geo(int i, int j) const;
    // Algebraic intersection pairing of the homology classes.
    Int pairing(int i, int j) const;

    // Returns a description of every violated invariant (empty == valid):
    //   geo(i,i) == 0, geo(i,j) == 0 implies pairing == 0,
    //   |pairing| <= geo when known, separating iff homology == 0,
    //   homology length 2g.
    std::vector<std::string> validate() const;

    friend bool operator==(const CurveConfig&, const CurveConfig&);

private:
    std::string name_;
    int genus_;
    std::vector<Curve> curves_;
    std::vector<std::vector<int>> geo_;  // symmetric, kGeoUnknown where unset
    std::map<std::string, std::string> aliases_;
    std::map<std::string, int, std::less<>> index_;
};

using ConfigPtr = std::shared_ptr<const CurveConfig>;

// Built-in configurations:
//   "chain5"   (g >= 2): 5-chain a1..a5; a1, a2, a3 form the chain core with
//              geo(a1,a2) = geo(a2,a3) = 1; a4, a5 are the boundary curves of
//              a neighborhood of the core, disjoint from everything.
//              At g = 2 the two boundary curves coincide (a4 aliases a5).
//   "lantern"  (g >= 3): lantern configuration s, a, b, c (boundaries, with s
//              separating off genus h) and x, y, z (interior); sep_genus
//              selects h with 1 <= h <= floor(g/2).
//   "lantern2" (g = 2): genus-2 lantern a1, a3, a5, s, x with s separating.
//   "twochain" (g = 2): 2-chain a1, a2 plus the separating boundary s of its
//              neighborhood.
ConfigPtr builtin_config(std::string_view name, int genus, int sep_genus = 1);

// Text format, one declaration per line:
//   config <name> g=<genus>
//   curve <id> nonsep hom: <2g integers>
//   curve <id> sep:<h>
//   alias <id> <id>
//   geo <id> <id> <n|?>
// '#' starts a comment. Missing geo pairs parse as UNKNOWN.
ConfigPtr parse_config(std::string_view text);
std::string format_config(const CurveConfig& config);

// True when the two handles denote the same configuration (pointer equality
// or structural equality).
bool same_config(const ConfigPtr& a, const ConfigPtr& b);

}  // namespace sclcert
