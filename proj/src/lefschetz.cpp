#include "sclcert/lefschetz.hpp"

namespace sclcert {

Int CycleCounts::total() const {
    Int t = nonsep;
    for (const auto& [h, b] : sep) t += b;
    return t;
}

Rat signature_rate(int genus, const TwistClass& cls) {
    if (genus < 2) throw ConfigError("signature rate requires genus >= 2");
    if (cls.kind == CurveKind::Nonseparating)
        return Rat(-(genus + 1), 2 * genus + 1);
    if (cls.h < 1 || 2 * cls.h > genus)
        throw ConfigError("separating class h = " + std::to_string(cls.h) +
                          " outside 1..floor(g/2) at g = " + std::to_string(genus));
    return Rat(4 * cls.h * (genus - cls.h), 2 * genus + 1) - 1;
}

Rat hyperelliptic_signature(int genus, const CycleCounts& counts) {
    Rat sigma = Rat(counts.nonsep) * signature_rate(genus, TwistClass::nonseparating());
    for (const auto& [h, b] : counts.sep)
        sigma += Rat(b) * signature_rate(genus, TwistClass::separating(h, genus));
    return sigma;
}

Rat korkmaz_upper(int genus, const Int& base_genus, const Int& cycles) {
    if (genus < 2) throw ConfigError("korkmaz bound requires genus >= 2");
    return Rat(Int(4) * genus * base_genus - cycles + 4);
}

LowerBound scl_lower_bound(int genus, const TwistClass& cls) {
    const Rat rate = signature_rate(genus, cls);  // validates genus and h
    LowerBound out;
    out.target = cls;
    out.genus = genus;
    out.value = (1 + rate) / Rat(4 * genus);
    out.endo_kotschick = Rat(1, 18 * genus - 6);
    out.improves = out.value > out.endo_kotschick;

    out.provenance.push_back(
        "any t^n = product of q commutators in H_" + std::to_string(genus) +
        " gives a hyperelliptic Lefschetz fibration over a genus-q base with n cycles of class " +
        cls.label());
    out.provenance.push_back("signature formula: sigma = rate * n with rate = " + rat_str(rate));
    out.provenance.push_back("signature bound: sigma <= 4*g*q - n + 4, so q/n >= (1 + rate)/(4g) - 1/(g*n)");
    out.provenance.push_back("threshold as n -> infinity: scl_H(" + cls.label() + ") >= (1 + (" +
                             rat_str(rate) + "))/(4*" + std::to_string(genus) + ") = " +
                             rat_str(out.value));
    out.provenance.push_back("Endo-Kotschick bound 1/(18g-6) = " + rat_str(out.endo_kotschick) +
                             ": " + (out.improves ? "strictly improved" : "not improved"));
    return out;
}

}  // namespace sclcert
