#include <algorithm>

#include "ugap/errors.hpp"
#include "ugap/kernels.hpp"
#include "ugap/tiling_ham.hpp"

namespace ugap::tiling_ham {

using tiles::Tiling;
using tiles::TileSet;

std::int64_t full_basis_size(int tiles, int cells, std::int64_t cap) {
    std::int64_t n = 1;
    for (int i = 0; i < cells; ++i) {
        if (n > cap / tiles) return -1;
        n *= tiles;
    }
    return n <= cap ? n : -1;
}

Tiling TilingHamiltonian::label(std::int64_t index) const {
    if (index < 0 || index >= op.dim()) throw ValidationError("basis index out of range");
    if (restricted) return basis[static_cast<std::size_t>(index)];
    Tiling t(width, height);
    for (int c = width * height - 1; c >= 0; --c) {
        t.cells[static_cast<std::size_t>(c)] = static_cast<int>(index % tiles);
        index /= tiles;
    }
    return t;
}

namespace {

HermitianOperator diagonal_of(const std::vector<std::int64_t>& scores, const std::string& label) {
    std::vector<double> d(scores.begin(), scores.end());
    return HermitianOperator::diagonal(d, label);
}

}  // namespace

TilingHamiltonian tiling_to_hamiltonian(const TileSet& ts, int L, std::int64_t max_basis, bool parallel) {
    if (L < 1) throw ValidationError("lattice side must be positive");
    const std::int64_t dim = full_basis_size(ts.size(), L * L, max_basis);
    if (dim < 0)
        throw ResourceError("full tiling basis " + std::to_string(ts.size()) + "^" + std::to_string(L * L) +
                            " exceeds the budget; use the restricted basis");
    std::vector<std::int64_t> scores(static_cast<std::size_t>(dim));
    if (ts.globals().empty()) {
        auto tables = tiles::kernel_tables(ts, L, L);
        auto view = tables.view(ts, L, L);
        (parallel ? kernels::tiling_diagonal_omp : kernels::tiling_diagonal_serial)(view, scores);
    } else {
        TilingHamiltonian probe{HermitianOperator::zero(dim), {}, L, L, ts.size(), false, {}};
        for (std::int64_t i = 0; i < dim; ++i) scores[static_cast<std::size_t>(i)] = tiles::score_tiling(ts, probe.label(i));
    }
    TilingHamiltonian h{diagonal_of(scores, "tiling"), std::move(scores), L, L, ts.size(), false, {}};
    return h;
}

TilingHamiltonian restricted_tiling_hamiltonian(const TileSet& ts, int L, std::int64_t slack, std::int64_t node_budget) {
    if (slack < 0) throw ValidationError("slack must be nonnegative");
    auto ground = tiles::enumerate_min_tilings(ts, L, node_budget);
    tiles::EnumerationOptions opts;
    opts.node_budget = node_budget;
    opts.score_cap = ground.min_score + slack;
    auto all = tiles::enumerate_tilings(ts, tiles::TilingProblem::square(L), opts);
    std::vector<std::int64_t> scores;
    scores.reserve(all.tilings.size());
    for (const auto& t : all.tilings) scores.push_back(tiles::score_tiling(ts, t));
    TilingHamiltonian h{diagonal_of(scores, "tiling-restricted"), std::move(scores), L, L, ts.size(), true,
                        std::move(all.tilings)};
    return h;
}

GroundSpace ground_space(const TileSet& ts, int L, std::int64_t max_basis, std::int64_t node_budget) {
    GroundSpace g;
    if (L >= 1 && full_basis_size(ts.size(), L * L, max_basis) > 0) {
        auto h = tiling_to_hamiltonian(ts, L, max_basis);
        g.min_energy = *std::min_element(h.scores.begin(), h.scores.end());
        for (std::size_t i = 0; i < h.scores.size(); ++i)
            if (h.scores[i] == g.min_energy) g.states.push_back(h.label(static_cast<std::int64_t>(i)));
    } else {
        auto r = tiles::enumerate_min_tilings(ts, L, node_budget);
        g.min_energy = r.min_score;
        g.states = std::move(r.tilings);
        g.enumerated = true;
    }
    std::sort(g.states.begin(), g.states.end());
    g.degeneracy = static_cast<std::int64_t>(g.states.size());
    return g;
}

}  // namespace ugap::tiling_ham
