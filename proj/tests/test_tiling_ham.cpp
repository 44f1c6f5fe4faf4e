#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "ugap/errors.hpp"
#include "ugap/tiling_ham.hpp"

using namespace ugap;
using namespace ugap::tiles;
using namespace ugap::tiling_ham;

namespace {

TileSet two_colors() {
    Tile a{0, {{"r", "r", "r", "r"}}, {}, "a", {}};
    Tile b{1, {{"g", "g", "g", "g"}}, {}, "b", {}};
    return TileSet({"l"}, {a, b});
}

// Random single-layer set with explicit mismatch weights and site bonuses.
TileSet random_tileset(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> color(0, 2);
    std::vector<Tile> tiles;
    for (int i = 0; i < n; ++i) {
        Edges e;
        for (auto& c : e) c = std::to_string(color(rng));
        tiles.push_back({i, {e}, {}, "t" + std::to_string(i), {}});
    }
    TileSet ts({"l"}, tiles);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int i = 0; i < n; ++i)
        if (coin(rng) == 0) ts.add_site_bonus(i, Context::Unconditional, coin(rng) - 1);
    return ts;
}

// Brute-force recount of the full-basis diagonal from the tile index digits.
std::int64_t recount(const TileSet& ts, int L, std::int64_t index) {
    Tiling t(L, L);
    for (int c = L * L - 1; c >= 0; --c) {
        t.cells[static_cast<std::size_t>(c)] = static_cast<int>(index % ts.size());
        index /= ts.size();
    }
    return score_tiling(ts, t);
}

}  // namespace

TEST(TilingHamiltonian, TwoColorMismatchCounts) {
    const auto h = tiling_to_hamiltonian(two_colors(), 2);
    ASSERT_EQ(h.op.dim(), 16);
    std::map<std::int64_t, int> hist;
    for (auto s : h.scores) ++hist[s];
    // Four bonds on a 2x2 grid; only the two uniform fillings avoid every mismatch.
    EXPECT_EQ(hist[0], 2);
    for (auto [score, count] : hist) {
        EXPECT_GE(score, 0);
        EXPECT_LE(score, 4);
    }
    for (std::int64_t i = 0; i < 16; ++i) {
        EXPECT_EQ(h.scores[static_cast<std::size_t>(i)], recount(two_colors(), 2, i));
        EXPECT_EQ(h.op.at(i, i).real(), static_cast<double>(h.scores[static_cast<std::size_t>(i)]));
    }
    EXPECT_TRUE(h.op.is_diagonal());
}

TEST(TilingHamiltonian, SingleTileSet) {
    Tile t{0, {{"a", "a", "a", "a"}}, {}, "only", {}};
    const auto h = tiling_to_hamiltonian(TileSet({"l"}, {t}), 2);
    EXPECT_EQ(h.op.dim(), 1);
    EXPECT_EQ(h.scores.at(0), 0);
    EXPECT_EQ(h.label(0), Tiling(2, 2, 0));
}

TEST(TilingHamiltonian, DiagonalEqualsScoreOnRandomSets) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ts = random_tileset(rng, 2 + trial % 3);
        for (int L = 1; L <= 2; ++L) {
            const auto h = tiling_to_hamiltonian(ts, L);
            for (std::int64_t i = 0; i < h.op.dim(); ++i) EXPECT_EQ(h.scores[static_cast<std::size_t>(i)], recount(ts, L, i));
        }
    }
}

TEST(TilingHamiltonian, SerialAndParallelAgree) {
    const auto ts = checkerboard_tileset(true);
    const auto a = tiling_to_hamiltonian(ts, 2, kDefaultMaxBasis, false);
    const auto b = tiling_to_hamiltonian(ts, 2, kDefaultMaxBasis, true);
    EXPECT_EQ(a.scores, b.scores);
}

TEST(TilingHamiltonian, SingleSiteIsMinimumSiteCost) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ts = random_tileset(rng, 3);
        const auto h = tiling_to_hamiltonian(ts, 1);
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int i = 0; i < ts.size(); ++i) best = std::min(best, score_tiling(ts, Tiling(1, 1, i)));
        EXPECT_EQ(*std::min_element(h.scores.begin(), h.scores.end()), best);
    }
}

TEST(TilingHamiltonian, ReflectionSymmetryOfIsotropicSet) {
    // Every tile carries one color on all sides, so mirroring a tiling keeps its score.
    const auto ts = two_colors();
    const int L = 3;
    const auto h = tiling_to_hamiltonian(ts, L);
    for (std::int64_t i = 0; i < h.op.dim(); ++i) {
        const auto t = h.label(i);
        Tiling mx(L, L), my(L, L);
        for (int y = 0; y < L; ++y)
            for (int x = 0; x < L; ++x) {
                mx.at(L - 1 - x, y) = t.at(x, y);
                my.at(x, L - 1 - y) = t.at(x, y);
            }
        EXPECT_EQ(score_tiling(ts, mx), h.scores[static_cast<std::size_t>(i)]);
        EXPECT_EQ(score_tiling(ts, my), h.scores[static_cast<std::size_t>(i)]);
    }
}

TEST(TilingHamiltonian, RestrictedBasisMatchesScores) {
    const auto ts = checkerboard_tileset(true);
    const auto h = restricted_tiling_hamiltonian(ts, 3, 1);
    ASSERT_TRUE(h.restricted);
    ASSERT_EQ(static_cast<std::int64_t>(h.basis.size()), h.op.dim());
    const auto lo = *std::min_element(h.scores.begin(), h.scores.end());
    for (std::size_t i = 0; i < h.basis.size(); ++i) {
        EXPECT_EQ(h.scores[i], score_tiling(ts, h.basis[i]));
        EXPECT_LE(h.scores[i], lo + 1);
    }
    EXPECT_THROW(restricted_tiling_hamiltonian(ts, 3, -1), ValidationError);
}

TEST(TilingHamiltonian, GroundSpaceMatchesEnumeration) {
    const auto ts = checkerboard_tileset(true);
    for (int L = 2; L <= 4; ++L) {
        const auto g = ground_space(ts, L);
        const auto e = enumerate_min_tilings(ts, L);
        EXPECT_EQ(g.min_energy, e.min_score);
        EXPECT_EQ(g.degeneracy, static_cast<std::int64_t>(e.tilings.size()));
        auto states = g.states;
        std::sort(states.begin(), states.end());
        EXPECT_EQ(states, e.tilings) << L;
    }
    EXPECT_FALSE(ground_space(ts, 2).enumerated);
    EXPECT_TRUE(ground_space(ts, 4).enumerated);
}

TEST(TilingHamiltonian, UnmatchableSetHasPositiveGroundEnergy) {
    auto ts = two_colors();
    for (int a = 0; a < 2; ++a) {
        ts.set_pair_weight(a, a, Orientation::Horizontal, 1);
        ts.set_pair_weight(a, a, Orientation::Vertical, 1);
    }
    EXPECT_GE(ground_space(ts, 2).min_energy, 1);
    EXPECT_GE(eigen_spectrum(tiling_to_hamiltonian(ts, 2).op).min(), 1.0);
}

TEST(TilingHamiltonian, BasisCap) {
    EXPECT_EQ(full_basis_size(11, 4, kDefaultMaxBasis), 14641);
    EXPECT_THROW(tiling_to_hamiltonian(checkerboard_tileset(true), 4, 1000), ResourceError);
    EXPECT_THROW(tiling_to_hamiltonian(two_colors(), 0), ValidationError);
}
