#include "sclcert/words.hpp"

#include <sstream>

namespace sclcert {

TwistWord::TwistWord(ConfigPtr config, std::vector<TwistGen> letters)
    : config_(std::move(config)), letters_(std::move(letters)) {
    if (!config_) throw WordError("word requires an ambient config");
    for (const TwistGen& l : letters_) {
        if (l.sign != 1 && l.sign != -1) throw WordError("letter sign must be +1 or -1");
        if (l.curve < 0 || l.curve >= config_->size()) throw WordError("letter curve index out of range");
    }
}

TwistWord multiply(const TwistWord& u, const TwistWord& v) {
    if (!same_config(u.config(), v.config()))
        throw WordError("cannot multiply words over different configs");
    std::vector<TwistGen> letters = u.letters();
    letters.insert(letters.end(), v.letters().begin(), v.letters().end());
    return TwistWord(u.config(), std::move(letters));
}

TwistWord invert(const TwistWord& w) {
    std::vector<TwistGen> letters(w.letters().rbegin(), w.letters().rend());
    for (TwistGen& l : letters) l.sign = -l.sign;
    return TwistWord(w.config(), std::move(letters));
}

TwistWord free_reduce(const TwistWord& w) {
    std::vector<TwistGen> out;
    out.reserve(w.letters().size());
    for (const TwistGen& l : w.letters()) {
        if (!out.empty() && out.back().curve == l.curve && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(l);
    }
    return TwistWord(w.config(), std::move(out));
}

TwistWord conjugate(const TwistWord& u, const TwistWord& w) {
    return free_reduce(multiply(multiply(u, w), invert(u)));
}

std::map<int, Int> exponent_sums_by_index(const TwistWord& w) {
    std::map<int, Int> sums;
    for (const TwistGen& l : w.letters()) sums[l.curve] += l.sign;
    std::erase_if(sums, [](const auto& kv) { return kv.second == 0; });
    return sums;
}

std::map<std::string, Int> exponent_sums(const TwistWord& w) {
    std::map<std::string, Int> out;
    for (const auto& [idx, n] : exponent_sums_by_index(w)) out[w.config()->curve(idx).id] = n;
    return out;
}

TwistWord parse_word(const ConfigPtr& config, std::string_view text) {
    if (!config) throw WordError("word requires an ambient config");
    std::istringstream in{std::string(text)};
    std::vector<TwistGen> letters;
    std::string tok;
    while (in >> tok) {
        int sign = 1;
        if (tok.size() > 1 && tok.back() == '\'') {
            sign = -1;
            tok.pop_back();
        }
        try {
            letters.push_back({config->index_of(tok), sign});
        } catch (const ConfigError& e) {
            throw WordError(std::string("word literal: ") + e.what());
        }
    }
    return TwistWord(config, std::move(letters));
}

std::string format_word(const TwistWord& w) {
    std::ostringstream out;
    for (int i = 0; i < w.size(); ++i) {
        if (i) out << ' ';
        out << w.config()->curve(w.at(i).curve).id;
        if (w.at(i).sign < 0) out << '\'';
    }
    return out.str();
}

TwistWord power(const TwistWord& w, int n) {
    if (n < 0) throw WordError("power expects n >= 0 (invert first for negative powers)");
    TwistWord acc(w.config());
    for (int k = 0; k < n; ++k) acc = multiply(acc, w);
    return acc;
}

}  // namespace sclcert
