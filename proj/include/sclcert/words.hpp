#pragma once

// Words in Dehn twist generators over a fixed curve configuration. A word is
// a finite sequence of letters t_c^{+1} / t_c^{-1}; no implicit reduction is
// performed anywhere (derivations manipulate words letter by letter, so the
// representation must stay verbatim).
//
// Literal syntax: whitespace-separated curve ids, a trailing apostrophe marks
// the inverse, e.g.  "a4 a5 a3' a3' a1' a1'"  is  t_{a4} t_{a5} t_{a3}^{-2} t_{a1}^{-2}.

#include "sclcert/surface.hpp"

#include <map>
#include <string>
#include <vector>

namespace sclcert {

struct WordError : std::runtime_error {
    explicit WordError(const std::string& what) : std::runtime_error(what) {}
};

struct TwistGen {
    int curve = 0;  // index into the ambient config
    int sign = 1;   // +1 or -1

    friend bool operator==(const TwistGen&, const TwistGen&) = default;
};

class TwistWord {
public:
    TwistWord() = default;
    explicit TwistWord(ConfigPtr config, std::vector<TwistGen> letters = {});

    const ConfigPtr& config() const { return config_; }
    const std::vector<TwistGen>& letters() const { return letters_; }
    int size() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    const TwistGen& at(int i) const { return letters_.at(static_cast<size_t>(i)); }

    friend bool operator==(const TwistWord& a, const TwistWord& b) {
        return same_config(a.config_, b.config_) && a.letters_ == b.letters_;
    }

private:
    ConfigPtr config_;
    std::vector<TwistGen> letters_;
};

// Concatenation without reduction: |uv| = |u| + |v|. Throws WordError when
// the ambient configs differ.
TwistWord multiply(const TwistWord& u, const TwistWord& v);

// Reverses the letter order and flips every sign.
TwistWord invert(const TwistWord& w);

// Cancels adjacent t_c^e t_c^{-e} pairs until none remain. Idempotent.
TwistWord free_reduce(const TwistWord& w);

// u w u^{-1}, freely reduced.
TwistWord conjugate(const TwistWord& u, const TwistWord& w);

// Signed exponent count per curve id; zero entries are dropped, so the result
// is invariant under free reduction.
std::map<std::string, Int> exponent_sums(const TwistWord& w);
std::map<int, Int> exponent_sums_by_index(const TwistWord& w);

TwistWord parse_word(const ConfigPtr& config, std::string_view text);
std::string format_word(const TwistWord& w);

// w^n for n >= 0 (concatenation, no reduction).
TwistWord power(const TwistWord& w, int n);

}  // namespace sclcert
