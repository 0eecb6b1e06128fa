#pragma once

// Shared helpers for the unit and acceptance suites: random words over a
// config and generation of words guaranteed to admit a rewrite step of a
// requested kind (used for rule-soundness property tests).

#include "sclcert/rewrite.hpp"

#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace testutil {

using namespace sclcert;

inline TwistWord random_word(const ConfigPtr& cfg, int len, std::mt19937& rng) {
    std::uniform_int_distribution<int> curve(0, cfg->size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<TwistGen> letters;
    for (int i = 0; i < len; ++i) letters.push_back({curve(rng), coin(rng) ? 1 : -1});
    return TwistWord(cfg, std::move(letters));
}

// All unordered curve pairs of the config with the given geometric
// intersection number.
inline std::vector<std::pair<int, int>> pairs_with_geo(const ConfigPtr& cfg, int geo) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < cfg->size(); ++i)
        for (int j = i + 1; j < cfg->size(); ++j)
            if (cfg->geo(i, j) == geo) out.emplace_back(i, j);
    return out;
}

// The substitutable relation defined over this config, if any.
inline std::optional<RelationName> config_relation(const ConfigPtr& cfg) {
    if (cfg->name() == "lantern") return RelationName::Lantern;
    if (cfg->name() == "lantern2") return RelationName::Lantern2;
    if (cfg->name() == "chain5")
        return cfg->genus() == 2 ? RelationName::Chain2 : RelationName::Chain;
    if (cfg->name() == "twochain") return RelationName::TwoChain;
    return std::nullopt;
}

// Builds a word that admits a step of the requested kind at a known position
// by splicing a guaranteed-applicable pattern into a random word.
inline std::pair<TwistWord, RewriteStep> seeded_step(const ConfigPtr& cfg,
                                                     RewriteStep::Kind kind, std::mt19937& rng) {
    const TwistWord base = random_word(cfg, 6, rng);
    std::uniform_int_distribution<int> pos_dist(0, base.size());
    std::uniform_int_distribution<int> coin(0, 1);
    const int pos = pos_dist(rng);
    std::vector<TwistGen> letters = base.letters();
    auto splice = [&](const std::vector<TwistGen>& pattern) {
        letters.insert(letters.begin() + pos, pattern.begin(), pattern.end());
    };
    auto pick = [&](const std::vector<std::pair<int, int>>& pairs) {
        std::uniform_int_distribution<size_t> d(0, pairs.size() - 1);
        return pairs[d(rng)];
    };

    switch (kind) {
        case RewriteStep::Kind::Swap: {
            const auto disjoint = pairs_with_geo(cfg, 0);
            const auto [c, d] = pick(disjoint);
            splice({{c, coin(rng) ? 1 : -1}, {d, coin(rng) ? 1 : -1}});
            return {TwistWord(cfg, std::move(letters)), RewriteStep::swap(pos)};
        }
        case RewriteStep::Kind::Braid: {
            const auto once = pairs_with_geo(cfg, 1);
            const auto [c, d] = pick(once);
            const int sign = coin(rng) ? 1 : -1;
            splice({{c, sign}, {d, sign}, {c, sign}});
            return {TwistWord(cfg, std::move(letters)), RewriteStep::braid(pos)};
        }
        case RewriteStep::Kind::Cancel: {
            std::uniform_int_distribution<int> curve(0, cfg->size() - 1);
            const int c = curve(rng);
            const int sign = coin(rng) ? 1 : -1;
            splice({{c, sign}, {c, -sign}});
            return {TwistWord(cfg, std::move(letters)), RewriteStep::cancel(pos)};
        }
        case RewriteStep::Kind::Insert: {
            std::uniform_int_distribution<int> curve(0, cfg->size() - 1);
            const int c = curve(rng);
            return {base, RewriteStep::insert(cfg->curve(c).id, coin(rng) ? 1 : -1, pos)};
        }
        case RewriteStep::Kind::Subst: {
            const auto rel_name = config_relation(cfg);
            const RelationInstance rel = builtin_relation(*rel_name, cfg);
            const bool forward = coin(rng) == 1;
            const TwistWord& side = forward ? rel.lhs : rel.rhs;
            splice(side.letters());
            return {TwistWord(cfg, std::move(letters)),
                    RewriteStep::subst(*rel_name, forward, pos)};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace testutil
