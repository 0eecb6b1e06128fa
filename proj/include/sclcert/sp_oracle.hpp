#pragma once

// Homology-level oracle: the action of a twist word on H_1(S_g; Z) = Z^{2g}.
// A right-handed twist about a curve with class v acts by the transvection
//   x  |->  x + <x, v> v ,
// which lies in Sp(2g, Z). This is a necessary-condition checker only -- its
// kernel is the Torelli group -- so a mismatch refutes a claimed identity,
// while agreement on nontrivial images is strong corroborating evidence and
// agreement on trivial images is vacuous.
//
// Conventions (fixed project-wide, recorded in every certificate):
//   - basis order (alpha_1, beta_1, ..., alpha_g, beta_g), <alpha_i, beta_i> = +1;
//   - words act on column vectors and compose right-to-left, i.e. the
//     rightmost letter of a word acts first.

#include "sclcert/words.hpp"

#include <string>
#include <vector>

namespace sclcert {

class SpMatrix {
public:
    // Identity in Sp(2g, Z).
    explicit SpMatrix(int genus);

    int genus() const { return dim_ / 2; }
    int dim() const { return dim_; }

    const Int& at(int r, int c) const { return e_[static_cast<size_t>(r * dim_ + c)]; }

    SpMatrix operator*(const SpMatrix& rhs) const;
    friend bool operator==(const SpMatrix&, const SpMatrix&) = default;

    bool is_identity() const;
    // M^T J M == J; checked on every construction path, public for tests.
    bool is_symplectic() const;

    std::vector<Int> apply(const std::vector<Int>& v) const;

    std::string str() const;  // row-per-line display for --show-matrices

    // Raw constructor for tests; throws std::logic_error unless symplectic.
    SpMatrix(int genus, std::vector<Int> entries);

private:
    Int& cell(int r, int c) { return e_[static_cast<size_t>(r * dim_ + c)]; }
    void check() const;

    int dim_;
    std::vector<Int> e_;
};

// x |-> x + sign * <x, v> * v,  sign = +1 for a right-handed twist.
SpMatrix transvection(const std::vector<Int>& v, int sign);

// Product of the letters' transvections, rightmost letter acting first.
SpMatrix word_image(const TwistWord& w);

enum class OracleVerdict { Pass, Fail, Vacuous };

std::string verdict_str(OracleVerdict v);

// Pass    : images agree and are nontrivial,
// Vacuous : both images are the identity (no homological information),
// Fail    : images differ (refutes lhs == rhs in the mapping class group).
OracleVerdict check_identity(const TwistWord& lhs, const TwistWord& rhs);

// The convention string embedded in certificates so that an independent
// implementation can reproduce the matrices.
extern const char* const kOracleConvention;

}  // namespace sclcert
