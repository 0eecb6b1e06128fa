#pragma once

// Exact integer and rational arithmetic. Everything downstream (pairings,
// transvection matrices, defect inequalities, Fourier-Motzkin elimination,
// signature formulas) is computed over these types; no floating point
// appears anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sclcert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Canonical display form: "p/q" in lowest terms, "p" when q == 1.
inline std::string rat_str(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string int_str(const Int& n) { return n.str(); }

// Parses "p", "-p", or "p/q". Used by the config/certificate readers.
inline Rat parse_rat(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        const Int num(s.substr(0, slash));
        const Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
}

}  // namespace sclcert
