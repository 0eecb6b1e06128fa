#include "sclcert/sp_oracle.hpp"

#include <doctest.h>

#include <random>

using namespace sclcert;

namespace {

// Fraction-free (Bareiss) determinant; small matrices only, exact.
Int determinant(const SpMatrix& m) {
    const int n = m.dim();
    std::vector<std::vector<Int>> a(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j);
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int p = k + 1;
            while (p < n && a[static_cast<size_t>(p)][static_cast<size_t>(k)] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[static_cast<size_t>(p)], a[static_cast<size_t>(k)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (a[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                         a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                     a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                         a[static_cast<size_t>(k)][static_cast<size_t>(j)]) /
                    prev;
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign * a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

std::vector<Int> random_vector(int genus, std::mt19937& rng) {
    std::uniform_int_distribution<int> entry(-3, 3);
    std::vector<Int> v(2 * static_cast<size_t>(genus));
    for (auto& x : v) x = entry(rng);
    return v;
}

}  // namespace

TEST_SUITE("sp_oracle") {

TEST_CASE("transvection basics") {
    // Zero vector: identity map.
    CHECK(transvection(std::vector<Int>{0, 0, 0, 0}, 1).is_identity());
    // Genus-1 sanity: T_alpha(beta) = beta - alpha under the sign convention.
    const SpMatrix t = transvection(std::vector<Int>{1, 0}, 1);
    CHECK(t.apply({0, 1}) == std::vector<Int>{-1, 1});
    // A transvection fixes its own vector.
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto v = random_vector(3, rng);
        CHECK(transvection(v, 1).apply(v) == v);
        // Inverse twist undoes it.
        CHECK((transvection(v, 1) * transvection(v, -1)).is_identity());
    }
}

TEST_CASE("random transvection products stay symplectic with det 1") {
    std::mt19937 rng(5);
    for (int genus : {2, 3}) {
        SpMatrix acc(genus);
        std::uniform_int_distribution<int> coin(0, 1);
        for (int k = 0; k < 60; ++k) {
            acc = acc * transvection(random_vector(genus, rng), coin(rng) ? 1 : -1);
            CHECK(acc.is_symplectic());  // also asserted internally on construction
        }
        CHECK(determinant(acc) == 1);
    }
}

TEST_CASE("word_image composes right-to-left") {
    const ConfigPtr cfg = builtin_config("chain5", 2);
    const TwistWord uv = parse_word(cfg, "a1 a2");
    const SpMatrix m_u = word_image(parse_word(cfg, "a1"));
    const SpMatrix m_v = word_image(parse_word(cfg, "a2"));
    CHECK(word_image(uv) == m_u * m_v);  // rightmost letter acts first
    CHECK(word_image(parse_word(cfg, "")).is_identity());
}

TEST_CASE("separating twists act trivially on homology") {
    const ConfigPtr cfg = builtin_config("twochain", 2);
    CHECK(word_image(parse_word(cfg, "s")).is_identity());
}

TEST_CASE("disjoint twists commute in Sp") {
    const ConfigPtr cfg = builtin_config("lantern", 3);
    for (const char* u : {"s", "a", "b", "c"})
        for (const char* v : {"s", "a", "b", "c", "x", "y"}) {
            const TwistWord uv = parse_word(cfg, std::string(u) + " " + v);
            const TwistWord vu = parse_word(cfg, std::string(v) + " " + u);
            if (cfg->geo(cfg->index_of(u), cfg->index_of(v)) == 0)
                CHECK(word_image(uv) == word_image(vu));
        }
}

TEST_CASE("braid relation holds in Sp for curves meeting once") {
    const ConfigPtr cfg = builtin_config("chain5", 3);
    CHECK(word_image(parse_word(cfg, "a1 a2 a1")) == word_image(parse_word(cfg, "a2 a1 a2")));
    CHECK(word_image(parse_word(cfg, "a2 a3 a2")) == word_image(parse_word(cfg, "a3 a2 a3")));
    CHECK(word_image(parse_word(cfg, "a1' a2' a1'")) == word_image(parse_word(cfg, "a2' a1' a2'")));
}

TEST_CASE("check_identity verdicts") {
    // Lantern: nontrivial agreement.
    const ConfigPtr lan = builtin_config("lantern", 3);
    CHECK(check_identity(parse_word(lan, "s a b c"), parse_word(lan, "x y z")) ==
          OracleVerdict::Pass);
    // Chain at g = 3: nontrivial agreement.
    const ConfigPtr ch = builtin_config("chain5", 3);
    CHECK(check_identity(parse_word(ch, "a3 a2 a1 a3 a2 a1 a3 a2 a1 a3 a2 a1"),
                         parse_word(ch, "a4 a5")) == OracleVerdict::Pass);
    // Twochain: both sides act trivially -- vacuous, not a pass.
    const ConfigPtr tc = builtin_config("twochain", 2);
    CHECK(check_identity(parse_word(tc, "s"),
                         parse_word(tc, "a2 a1 a2 a1 a2 a1 a2 a1 a2 a1 a2 a1")) ==
          OracleVerdict::Vacuous);
    // Genuine mismatch.
    CHECK(check_identity(parse_word(ch, "a1"), parse_word(ch, "a2")) == OracleVerdict::Fail);
    CHECK(check_identity(parse_word(ch, "a1"), parse_word(ch, "a1'")) == OracleVerdict::Fail);
}

TEST_CASE("genus-2 lantern relation is Sp-nontrivial") {
    const ConfigPtr l2 = builtin_config("lantern2", 2);
    CHECK(check_identity(parse_word(l2, "a1 a1 a5 a5"), parse_word(l2, "a3 s x")) ==
          OracleVerdict::Pass);
}

TEST_CASE("raw constructor rejects non-symplectic matrices") {
    std::vector<Int> not_sp(16, Int(0));
    for (int i = 0; i < 4; ++i) not_sp[static_cast<size_t>(i * 4 + i)] = 2;  // 2 * identity
    CHECK_THROWS_AS(SpMatrix(2, std::move(not_sp)), std::logic_error);
}

}  // TEST_SUITE
