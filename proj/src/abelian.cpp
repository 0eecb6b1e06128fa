#include "sclcert/abelian.hpp"

namespace sclcert {

std::string family_str(GroupFamily f) {
    return f == GroupFamily::FullMcg ? "M" : "H";
}

Int GroupSpec::modulus() const {
    if (genus < 2) throw AbelianError("genus must be >= 2");
    if (family == GroupFamily::FullMcg) return genus == 2 ? Int(10) : Int(1);
    return Int(4) * (2 * genus + 1);
}

bool GroupSpec::exact() const { return family == GroupFamily::FullMcg; }

Int separating_weight(int h, int genus) {
    if (h < 1 || 2 * h > genus)
        throw AbelianError("separating weight: h = " + std::to_string(h) +
                           " outside 1..floor(g/2) for g = " + std::to_string(genus));
    return Int(4) * h * (2 * h + 1);
}

Int twist_weight(const Curve& c, int genus) {
    if (c.kind == CurveKind::Nonseparating) return 1;
    return separating_weight(c.sep_genus, genus);
}

Int ab_image(const TwistWord& w, const GroupSpec& spec) {
    const Int n = spec.modulus();
    if (spec.genus != w.config()->genus())
        throw AbelianError("ab_image: word genus does not match group spec");
    Int acc = 0;
    for (const auto& [idx, count] : exponent_sums_by_index(w))
        acc += count * twist_weight(w.config()->curve(idx), spec.genus);
    acc %= n;
    if (acc < 0) acc += n;
    return acc;
}

Int min_power_in_commutator(const TwistClass& cls, const GroupSpec& spec) {
    const Int n = spec.modulus();
    const Int w = cls.kind == CurveKind::Nonseparating
                      ? Int(1)
                      : separating_weight(cls.h, spec.genus);
    return n / boost::multiprecision::gcd(n, w);
}

}  // namespace sclcert
