#include "sclcert/sp_oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace sclcert {

const char* const kOracleConvention =
    "H_1 basis (alpha_1, beta_1, ..., alpha_g, beta_g); <alpha_i, beta_i> = +1; "
    "right-handed twist about v acts by x -> x + <x, v> v; words act on column "
    "vectors with the rightmost letter applied first";

SpMatrix::SpMatrix(int genus) : dim_(2 * genus), e_(static_cast<size_t>(dim_ * dim_), Int(0)) {
    if (genus < 1) throw std::logic_error("SpMatrix requires genus >= 1");
    for (int i = 0; i < dim_; ++i) cell(i, i) = 1;
}

SpMatrix::SpMatrix(int genus, std::vector<Int> entries)
    : dim_(2 * genus), e_(std::move(entries)) {
    if (genus < 1 || e_.size() != static_cast<size_t>(dim_) * static_cast<size_t>(dim_))
        throw std::logic_error("SpMatrix: bad dimensions");
    check();
}

void SpMatrix::check() const {
    if (!is_symplectic())
        throw std::logic_error("internal error: matrix is not symplectic");
}

bool SpMatrix::is_symplectic() const {
    // (M^T J M)[i][j] = sum_k M[k][i] * (J M)[k][j]; J flips each
    // (alpha, beta) block: (J M)[2t][j] = M[2t+1][j], (J M)[2t+1][j] = -M[2t][j].
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Int acc = 0;
            for (int t = 0; t < dim_ / 2; ++t)
                acc += at(2 * t, i) * at(2 * t + 1, j) - at(2 * t + 1, i) * at(2 * t, j);
            const Int want = (i / 2 == j / 2) ? Int(i % 2 == 0 && j % 2 == 1 ? 1
                                                   : i % 2 == 1 && j % 2 == 0 ? -1
                                                                              : 0)
                                              : Int(0);
            if (acc != want) return false;
        }
    return true;
}

SpMatrix SpMatrix::operator*(const SpMatrix& rhs) const {
    if (dim_ != rhs.dim_) throw std::logic_error("SpMatrix: dimension mismatch");
    SpMatrix out(dim_ / 2);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Int acc = 0;
            for (int k = 0; k < dim_; ++k) acc += at(i, k) * rhs.at(k, j);
            out.cell(i, j) = acc;
        }
    out.check();
    return out;
}

bool SpMatrix::is_identity() const { return *this == SpMatrix(dim_ / 2); }

std::vector<Int> SpMatrix::apply(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != dim_) throw std::logic_error("SpMatrix: vector size mismatch");
    std::vector<Int> out(static_cast<size_t>(dim_), Int(0));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
    return out;
}

std::string SpMatrix::str() const {
    std::ostringstream out;
    for (int i = 0; i < dim_; ++i) {
        out << "[";
        for (int j = 0; j < dim_; ++j) {
            if (j) out << ' ';
            out << at(i, j).str();
        }
        out << "]\n";
    }
    return out.str();
}

SpMatrix transvection(const std::vector<Int>& v, int sign) {
    if (v.empty() || v.size() % 2 != 0) throw std::logic_error("transvection: vector length must be even");
    if (sign != 1 && sign != -1) throw std::logic_error("transvection: sign must be +1 or -1");
    const int genus = static_cast<int>(v.size()) / 2;
    // Column j of the map x -> x + sign <x, v> v  is  e_j + sign <e_j, v> v.
    std::vector<Int> entries(v.size() * v.size(), Int(0));
    for (size_t j = 0; j < v.size(); ++j) {
        std::vector<Int> ej(v.size(), Int(0));
        ej[j] = 1;
        const Int coeff = symplectic_pairing(ej, v);
        for (size_t i = 0; i < v.size(); ++i)
            entries[i * v.size() + j] = (i == j ? Int(1) : Int(0)) + sign * coeff * v[i];
    }
    return SpMatrix(genus, std::move(entries));
}

SpMatrix word_image(const TwistWord& w) {
    const int genus = w.config()->genus();
    SpMatrix acc(genus);
    // Left-to-right letters multiply left-to-right, so the rightmost factor
    // sits next to the argument vector and acts first.
    for (const TwistGen& l : w.letters())
        acc = acc * transvection(w.config()->curve(l.curve).homology, l.sign);
    return acc;
}

std::string verdict_str(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::Pass: return "pass";
        case OracleVerdict::Fail: return "fail";
        case OracleVerdict::Vacuous: return "vacuous";
    }
    return "?";
}

OracleVerdict check_identity(const TwistWord& lhs, const TwistWord& rhs) {
    if (!same_config(lhs.config(), rhs.config()))
        throw WordError("check_identity: words over different configs");
    const SpMatrix ml = word_image(lhs), mr = word_image(rhs);
    if (!(ml == mr)) return OracleVerdict::Fail;
    return ml.is_identity() ? OracleVerdict::Vacuous : OracleVerdict::Pass;
}

}  // namespace sclcert
