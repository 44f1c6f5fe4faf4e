#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>

// Hot loops, each with a serial reference and an OpenMP variant. Every output
// element is computed by the same operation sequence in both, so results are
// bit-identical.
namespace ugap::kernels {

using cplx = std::complex<double>;

struct CsrView {
    std::int64_t rows = 0;
    std::span<const std::int64_t> row_ptr;
    std::span<const std::int64_t> cols;
    std::span<const cplx> vals;
};

void csr_matvec_serial(const CsrView& a, std::span<const cplx> x, std::span<cplx> y);
void csr_matvec_omp(const CsrView& a, std::span<const cplx> x, std::span<cplx> y);

using Gate2 = std::array<cplx, 4>;  // row-major 2x2

// Qubit 0 is the most significant bit of the basis index.
// `control_mask` selects basis states on which the gate acts (all bits set).
void apply_gate_serial(std::span<cplx> psi, int n_qubits, int target, const Gate2& u,
                       std::uint64_t control_mask = 0);
void apply_gate_omp(std::span<cplx> psi, int n_qubits, int target, const Gate2& u,
                    std::uint64_t control_mask = 0);

// Integer cost tables for a rectangular Wang-tile lattice. Cell (x, y) has
// linear index y*width + x and is digit `cell` of the basis index with cell 0
// most significant.
struct TilingTables {
    int width = 0;
    int height = 0;
    int tiles = 0;
    std::span<const std::int64_t> site;   // [cell * tiles + tile]
    std::span<const std::int64_t> horiz;  // [left * tiles + right]
    std::span<const std::int64_t> vert;   // [lower * tiles + upper]
};

void tiling_diagonal_serial(const TilingTables& t, std::span<std::int64_t> out);
void tiling_diagonal_omp(const TilingTables& t, std::span<std::int64_t> out);

}  // namespace ugap::kernels
