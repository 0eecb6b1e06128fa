#include "sclcert/surface.hpp"

#include <algorithm>
#include <sstream>

namespace sclcert {

Int symplectic_pairing(const std::vector<Int>& u, const std::vector<Int>& v) {
    if (u.size() != v.size() || u.size() % 2 != 0)
        throw ConfigError("pairing requires two vectors of equal even length");
    Int acc = 0;
    // J acts blockwise on (alpha_i, beta_i): <alpha_i, beta_i> = +1.
    for (size_t k = 0; k + 1 < u.size(); k += 2)
        acc += u[k] * v[k + 1] - u[k + 1] * v[k];
    return acc;
}

CurveConfig::CurveConfig(std::string name, int genus, std::vector<Curve> curves,
                         const std::map<std::pair<std::string, std::string>, int>& geo,
                         const std::map<std::string, std::string>& aliases)
    : name_(std::move(name)), genus_(genus), curves_(std::move(curves)), aliases_(aliases) {
    if (genus_ < 2) throw ConfigError("genus must be >= 2");
    for (int i = 0; i < size(); ++i) {
        Curve& c = curves_[static_cast<size_t>(i)];
        if (c.kind == CurveKind::Separating) {
            if (c.sep_genus < 1 || c.sep_genus > genus_ - 1)
                throw ConfigError("curve '" + c.id + "': separating genus out of range");
            c.sep_genus = std::min(c.sep_genus, genus_ - c.sep_genus);
        }
        if (!index_.emplace(c.id, i).second)
            throw ConfigError("duplicate curve id '" + c.id + "'");
    }
    for (const auto& [from, to] : aliases_) {
        if (index_.count(from)) throw ConfigError("alias '" + from + "' shadows a curve");
        if (!index_.count(to)) throw ConfigError("alias target '" + to + "' unknown");
    }
    geo_.assign(static_cast<size_t>(size()),
                std::vector<int>(static_cast<size_t>(size()), kGeoUnknown));
    for (int i = 0; i < size(); ++i) geo_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;
    for (const auto& [pair, n] : geo) {
        if (n < 0) throw ConfigError("negative intersection number");
        const int i = index_of(pair.first), j = index_of(pair.second);
        geo_[static_cast<size_t>(i)][static_cast<size_t>(j)] = n;
        geo_[static_cast<size_t>(j)][static_cast<size_t>(i)] = n;
    }
}

int CurveConfig::index_of(std::string_view id) const {
    if (auto alias = aliases_.find(std::string(id)); alias != aliases_.end())
        return index_of(alias->second);
    if (auto it = index_.find(id); it != index_.end()) return it->second;
    throw ConfigError("unknown curve '" + std::string(id) + "' in config '" + name_ + "'");
}

bool CurveConfig::has_curve(std::string_view id) const {
    if (aliases_.count(std::string(id))) return true;
    return index_.find(id) != index_.end();
}

int CurveConfig::geo(int i, int j) const {
    return geo_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
}

Int CurveConfig::pairing(int i, int j) const {
    return symplectic_pairing(curve(i).homology, curve(j).homology);
}

std::vector<std::string> CurveConfig::validate() const {
    std::vector<std::string> bad;
    const size_t dim = 2 * static_cast<size_t>(genus_);
    for (int i = 0; i < size(); ++i) {
        const Curve& c = curve(i);
        if (c.homology.size() != dim) {
            bad.push_back("curve '" + c.id + "': homology vector has length " +
                          std::to_string(c.homology.size()) + ", expected " + std::to_string(dim));
            continue;
        }
        const bool zero = std::all_of(c.homology.begin(), c.homology.end(),
                                      [](const Int& x) { return x == 0; });
        if (c.kind == CurveKind::Separating && !zero)
            bad.push_back("curve '" + c.id + "': separating but homology class is nonzero");
        if (c.kind == CurveKind::Nonseparating && zero)
            bad.push_back("curve '" + c.id + "': nonseparating but homology class is zero");
    }
    for (int i = 0; i < size(); ++i) {
        if (geo(i, i) != 0)
            bad.push_back("curve '" + curve(i).id + "': geo(c, c) != 0");
        for (int j = i + 1; j < size(); ++j) {
            if (curve(i).homology.size() != dim || curve(j).homology.size() != dim) continue;
            const Int p = pairing(i, j);
            const int g = geo(i, j);
            if (g == kGeoUnknown) continue;
            if (g == 0 && p != 0)
                bad.push_back("curves '" + curve(i).id + "','" + curve(j).id +
                              "': disjoint but algebraic pairing is " + p.str());
            else if (abs(p) > g)
                bad.push_back("curves '" + curve(i).id + "','" + curve(j).id +
                              "': |pairing| = " + Int(abs(p)).str() + " exceeds geo = " +
                              std::to_string(g));
        }
    }
    return bad;
}

bool operator==(const CurveConfig& a, const CurveConfig& b) {
    if (a.genus_ != b.genus_ || a.curves_.size() != b.curves_.size() || a.aliases_ != b.aliases_)
        return false;
    for (size_t i = 0; i < a.curves_.size(); ++i) {
        const Curve &x = a.curves_[i], &y = b.curves_[i];
        if (x.id != y.id || x.kind != y.kind || x.homology != y.homology) return false;
        if (x.kind == CurveKind::Separating && x.sep_genus != y.sep_genus) return false;
    }
    return a.geo_ == b.geo_;
}

bool same_config(const ConfigPtr& a, const ConfigPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {

std::vector<Int> unit(int genus, int slot) {  // slot in basis order a1,b1,a2,b2,...
    std::vector<Int> v(2 * static_cast<size_t>(genus), Int(0));
    v[static_cast<size_t>(slot)] = 1;
    return v;
}

std::vector<Int> zero_vec(int genus) { return std::vector<Int>(2 * static_cast<size_t>(genus), Int(0)); }

std::vector<Int> add(std::vector<Int> u, const std::vector<Int>& v) {
    for (size_t i = 0; i < u.size(); ++i) u[i] += v[i];
    return u;
}

std::vector<Int> neg(std::vector<Int> u) {
    for (auto& x : u) x = -x;
    return u;
}

using GeoMap = std::map<std::pair<std::string, std::string>, int>;

ConfigPtr make_chain5(int genus) {
    // Core 3-chain a1, a2, a3 with consecutive intersections 1; a4 and a5 are
    // the boundary curves of a regular neighborhood of the core, so they are
    // disjoint from the chain and from each other, and their classes sum to
    // zero. At genus 2 the neighborhood has a single boundary curve: a4 == a5.
    const auto alpha1 = unit(genus, 0), beta1 = unit(genus, 1), beta2 = unit(genus, 3);
    std::vector<Curve> curves = {
        {"a1", CurveKind::Nonseparating, 0, beta1},
        {"a2", CurveKind::Nonseparating, 0, alpha1},
        {"a3", CurveKind::Nonseparating, 0, add(beta1, beta2)},
    };
    std::map<std::string, std::string> aliases;
    if (genus == 2) {
        curves.push_back({"a5", CurveKind::Nonseparating, 0, beta2});
        aliases["a4"] = "a5";
    } else {
        curves.push_back({"a4", CurveKind::Nonseparating, 0, beta2});
        curves.push_back({"a5", CurveKind::Nonseparating, 0, neg(beta2)});
    }
    GeoMap geo;
    for (size_t i = 0; i < curves.size(); ++i)
        for (size_t j = i + 1; j < curves.size(); ++j)
            geo[{curves[i].id, curves[j].id}] = 0;
    geo[{"a1", "a2"}] = 1;
    geo[{"a2", "a3"}] = 1;
    return std::make_shared<CurveConfig>("chain5", genus, std::move(curves), geo, aliases);
}

ConfigPtr make_lantern(int genus, int sep_genus) {
    if (genus < 3) throw ConfigError("lantern config requires genus >= 3");
    if (sep_genus < 1 || sep_genus > genus / 2)
        throw ConfigError("lantern separating genus must satisfy 1 <= h <= g/2");
    // Boundary curves s, a, b, c of a 4-holed sphere; interior curves x, y, z.
    // Homology: v_x = v_a + v_b, v_y = v_b + v_c, v_z = v_a + v_c, and
    // v_s + v_a + v_b + v_c = 0 with v_s = 0 (s separating).
    const auto alpha1 = unit(genus, 0), alpha2 = unit(genus, 2);
    std::vector<Curve> curves = {
        {"s", CurveKind::Separating, sep_genus, zero_vec(genus)},
        {"a", CurveKind::Nonseparating, 0, alpha1},
        {"b", CurveKind::Nonseparating, 0, alpha2},
        {"c", CurveKind::Nonseparating, 0, neg(add(alpha1, alpha2))},
        {"x", CurveKind::Nonseparating, 0, add(alpha1, alpha2)},
        {"y", CurveKind::Nonseparating, 0, neg(alpha1)},
        {"z", CurveKind::Nonseparating, 0, neg(alpha2)},
    };
    GeoMap geo;
    const std::vector<std::string> boundary = {"s", "a", "b", "c"};
    const std::vector<std::string> interior = {"x", "y", "z"};
    for (size_t i = 0; i < boundary.size(); ++i)
        for (size_t j = i + 1; j < boundary.size(); ++j) geo[{boundary[i], boundary[j]}] = 0;
    for (size_t i = 0; i < interior.size(); ++i)
        for (size_t j = i + 1; j < interior.size(); ++j) geo[{interior[i], interior[j]}] = 2;
    // Every interior curve misses every boundary curve.
    for (const auto& b : boundary)
        for (const auto& in : interior) geo[{b, in}] = 0;
    return std::make_shared<CurveConfig>("lantern", genus, std::move(curves), geo);
}

ConfigPtr make_lantern2(int genus) {
    if (genus != 2) throw ConfigError("lantern2 config requires genus = 2");
    // Genus-2 lantern: a1, a5 sit in the two handles, a3 crosses both, s is
    // the separating curve, x the remaining interior curve.
    const auto beta1 = unit(2, 1), beta2 = unit(2, 3);
    std::vector<Curve> curves = {
        {"a1", CurveKind::Nonseparating, 0, beta1},
        {"a3", CurveKind::Nonseparating, 0, add(beta1, beta2)},
        {"a5", CurveKind::Nonseparating, 0, beta2},
        {"s", CurveKind::Separating, 1, zero_vec(2)},
        {"x", CurveKind::Nonseparating, 0, add(beta1, neg(beta2))},
    };
    GeoMap geo = {
        {{"a1", "a3"}, 0}, {{"a1", "a5"}, 0}, {{"a3", "a5"}, 0},
        {{"a1", "s"}, 0},  {{"a5", "s"}, 0},  {{"a1", "x"}, 0},
        {{"a5", "x"}, 0},  {{"a3", "x"}, 2},  {{"a3", "s"}, 2},
        {{"s", "x"}, 2},
    };
    return std::make_shared<CurveConfig>("lantern2", genus, std::move(curves), geo);
}

ConfigPtr make_twochain(int genus) {
    if (genus != 2) throw ConfigError("twochain config requires genus = 2");
    // 2-chain a1, a2 plus the separating boundary s of its neighborhood.
    std::vector<Curve> curves = {
        {"a1", CurveKind::Nonseparating, 0, unit(2, 1)},
        {"a2", CurveKind::Nonseparating, 0, unit(2, 0)},
        {"s", CurveKind::Separating, 1, zero_vec(2)},
    };
    GeoMap geo = {{{"a1", "a2"}, 1}, {{"a1", "s"}, 0}, {{"a2", "s"}, 0}};
    return std::make_shared<CurveConfig>("twochain", genus, std::move(curves), geo);
}

}  // namespace

ConfigPtr builtin_config(std::string_view name, int genus, int sep_genus) {
    if (genus < 2) throw ConfigError("genus must be >= 2");
    if (name == "chain5") return make_chain5(genus);
    if (name == "lantern") return make_lantern(genus, sep_genus);
    if (name == "lantern2") return make_lantern2(genus);
    if (name == "twochain") return make_twochain(genus);
    throw ConfigError("unknown builtin config '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

}  // namespace

ConfigPtr parse_config(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line, name = "custom";
    int genus = -1;
    std::vector<Curve> curves;
    GeoMap geo;
    std::map<std::string, std::string> aliases;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError("config line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "config") {
            if (toks.size() < 3 || toks[2].rfind("g=", 0) != 0) fail("expected 'config <name> g=<genus>'");
            name = toks[1];
            genus = std::stoi(toks[2].substr(2));
        } else if (toks[0] == "curve") {
            if (genus < 2) fail("'config' line with genus must come first");
            if (toks.size() < 3) fail("expected 'curve <id> nonsep|sep:<h> ...'");
            Curve c;
            c.id = toks[1];
            if (toks[2] == "nonsep") {
                c.kind = CurveKind::Nonseparating;
                if (toks.size() < static_cast<size_t>(4 + 2 * genus) || toks[3] != "hom:")
                    fail("nonseparating curve needs 'hom:' followed by " +
                         std::to_string(2 * genus) + " integers");
                for (int k = 0; k < 2 * genus; ++k)
                    c.homology.emplace_back(toks[static_cast<size_t>(4 + k)]);
            } else if (toks[2].rfind("sep:", 0) == 0) {
                c.kind = CurveKind::Separating;
                c.sep_genus = std::stoi(toks[2].substr(4));
                c.homology.assign(2 * static_cast<size_t>(genus), Int(0));
            } else {
                fail("curve kind must be 'nonsep' or 'sep:<h>'");
            }
            curves.push_back(std::move(c));
        } else if (toks[0] == "alias") {
            if (toks.size() != 3) fail("expected 'alias <id> <id>'");
            aliases[toks[1]] = toks[2];
        } else if (toks[0] == "geo") {
            if (toks.size() != 4) fail("expected 'geo <id> <id> <n|?>'");
            if (toks[3] != "?") geo[{toks[1], toks[2]}] = std::stoi(toks[3]);
        } else {
            fail("unrecognized declaration '" + toks[0] + "'");
        }
    }
    if (genus < 2) throw ConfigError("config text missing 'config <name> g=<genus>' line");
    return std::make_shared<CurveConfig>(name, genus, std::move(curves), geo, aliases);
}

std::string format_config(const CurveConfig& config) {
    std::ostringstream out;
    out << "config " << config.name() << " g=" << config.genus() << "\n";
    for (const Curve& c : config.curves()) {
        out << "curve " << c.id;
        if (c.kind == CurveKind::Separating) {
            out << " sep:" << c.sep_genus;
        } else {
            out << " nonsep hom:";
            for (const Int& x : c.homology) out << " " << x.str();
        }
        out << "\n";
    }
    for (const auto& [from, to] : config.aliases()) out << "alias " << from << " " << to << "\n";
    for (int i = 0; i < config.size(); ++i)
        for (int j = i + 1; j < config.size(); ++j) {
            const int g = config.geo(i, j);
            out << "geo " << config.curve(i).id << " " << config.curve(j).id << " ";
            if (g == kGeoUnknown)
                out << "?";
            else
                out << g;
            out << "\n";
        }
    return out.str();
}

}  // namespace sclcert
