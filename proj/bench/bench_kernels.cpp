#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ugap/kernels.hpp"

using namespace ugap::kernels;

namespace {

std::vector<cplx> random_vector(std::size_t n) {
    std::mt19937 rng(1);
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto& z : v) z = {g(rng), g(rng)};
    return v;
}

// Banded sparse matrix with `band` nonzeros per row.
struct Banded {
    std::vector<std::int64_t> row_ptr, cols;
    std::vector<cplx> vals;
    std::int64_t rows;

    Banded(std::int64_t n, int band) : rows(n) {
        row_ptr.push_back(0);
        for (std::int64_t i = 0; i < n; ++i) {
            for (int k = 0; k < band; ++k) {
                cols.push_back((i + k * 37) % n);
                vals.emplace_back(1.0 / (k + 1), 0.1 * k);
            }
            row_ptr.push_back(static_cast<std::int64_t>(cols.size()));
        }
    }
    CsrView view() const { return {rows, row_ptr, cols, vals}; }
};

template <void (*Kernel)(const CsrView&, std::span<const cplx>, std::span<cplx>)>
void BM_Matvec(benchmark::State& state) {
    const Banded a(state.range(0), 8);
    const auto x = random_vector(static_cast<std::size_t>(a.rows));
    std::vector<cplx> y(x.size());
    for (auto _ : state) {
        Kernel(a.view(), x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.cols.size()));
}

template <void (*Kernel)(std::span<cplx>, int, int, const Gate2&, std::uint64_t)>
void BM_Gate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto psi = random_vector(std::size_t{1} << n);
    const double r = 1 / std::sqrt(2.0);
    const Gate2 h{r, r, r, -r};
    for (auto _ : state) {
        for (int q = 0; q < n; ++q) Kernel(psi, n, q, h, 0);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(state.iterations() * n * static_cast<std::int64_t>(psi.size()));
}

template <void (*Kernel)(const TilingTables&, std::span<std::int64_t>)>
void BM_TilingDiagonal(benchmark::State& state) {
    const int tiles = static_cast<int>(state.range(0));
    const int w = 3, h = 2;
    std::vector<std::int64_t> site(static_cast<std::size_t>(w * h * tiles)), horiz(static_cast<std::size_t>(tiles * tiles)),
        vert(horiz.size());
    for (std::size_t i = 0; i < site.size(); ++i) site[i] = static_cast<std::int64_t>(i % 3) - 1;
    for (std::size_t i = 0; i < horiz.size(); ++i) {
        horiz[i] = (i * 7) % 5 == 0;
        vert[i] = (i * 11) % 3 == 0;
    }
    const TilingTables t{w, h, tiles, site, horiz, vert};
    std::int64_t dim = 1;
    for (int c = 0; c < w * h; ++c) dim *= tiles;
    std::vector<std::int64_t> out(static_cast<std::size_t>(dim));
    for (auto _ : state) {
        Kernel(t, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * dim);
}

}  // namespace

BENCHMARK(BM_Matvec<csr_matvec_serial>)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_Matvec<csr_matvec_omp>)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_Gate<apply_gate_serial>)->Arg(12)->Arg(18);
BENCHMARK(BM_Gate<apply_gate_omp>)->Arg(12)->Arg(18);
BENCHMARK(BM_TilingDiagonal<tiling_diagonal_serial>)->Arg(6)->Arg(11);
BENCHMARK(BM_TilingDiagonal<tiling_diagonal_omp>)->Arg(6)->Arg(11);
BENCHMARK_MAIN();
