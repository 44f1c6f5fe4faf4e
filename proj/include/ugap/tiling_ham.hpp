#pragma once

#include <cstdint>
#include <vector>

#include "ugap/spectra.hpp"
#include "ugap/tiles.hpp"

namespace ugap::tiling_ham {

// Diagonal operator whose entries are tiling scores. In the full basis the
// index encodes the tiling with cell 0 as the most significant base-|tiles|
// digit; a restricted basis lists its tilings explicitly.
struct TilingHamiltonian {
    HermitianOperator op;
    std::vector<std::int64_t> scores;
    int width = 0;
    int height = 0;
    int tiles = 0;
    bool restricted = false;
    std::vector<tiles::Tiling> basis;

    tiles::Tiling label(std::int64_t index) const;
};

inline constexpr std::int64_t kDefaultMaxBasis = std::int64_t{1} << 22;

std::int64_t full_basis_size(int tiles, int cells, std::int64_t cap);

TilingHamiltonian tiling_to_hamiltonian(const tiles::TileSet& ts, int L, std::int64_t max_basis = kDefaultMaxBasis,
                                        bool parallel = true);

// Every tiling scoring at most min + slack.
TilingHamiltonian restricted_tiling_hamiltonian(const tiles::TileSet& ts, int L, std::int64_t slack = 2,
                                                std::int64_t node_budget = 50'000'000);

struct GroundSpace {
    std::int64_t min_energy = 0;
    std::int64_t degeneracy = 0;
    std::vector<tiles::Tiling> states;
    bool enumerated = false;  // true when the full basis was too large
};

GroundSpace ground_space(const tiles::TileSet& ts, int L, std::int64_t max_basis = kDefaultMaxBasis,
                         std::int64_t node_budget = 50'000'000);

}  // namespace ugap::tiling_ham
