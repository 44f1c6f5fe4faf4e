#include "ugap/kernels.hpp"

#include <vector>

namespace ugap::kernels {

namespace {

inline cplx row_dot(const CsrView& a, std::span<const cplx> x, std::int64_t r) {
    cplx acc{};
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.vals[k] * x[a.cols[k]];
    return acc;
}

inline void apply_pair(std::span<cplx> psi, std::uint64_t i0, std::uint64_t bit, const Gate2& u) {
    const cplx a0 = psi[i0], a1 = psi[i0 | bit];
    psi[i0] = u[0] * a0 + u[1] * a1;
    psi[i0 | bit] = u[2] * a0 + u[3] * a1;
}

// Decodes `index` into per-cell tile digits (cell 0 most significant).
inline std::int64_t score_index(const TilingTables& t, std::uint64_t index, std::vector<int>& digits) {
    const int cells = t.width * t.height;
    for (int c = cells - 1; c >= 0; --c) {
        digits[c] = static_cast<int>(index % t.tiles);
        index /= t.tiles;
    }
    std::int64_t s = 0;
    for (int c = 0; c < cells; ++c) s += t.site[static_cast<std::size_t>(c) * t.tiles + digits[c]];
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x + 1 < t.width; ++x)
            s += t.horiz[digits[y * t.width + x] * t.tiles + digits[y * t.width + x + 1]];
    for (int y = 0; y + 1 < t.height; ++y)
        for (int x = 0; x < t.width; ++x)
            s += t.vert[digits[y * t.width + x] * t.tiles + digits[(y + 1) * t.width + x]];
    return s;
}

}  // namespace

void csr_matvec_serial(const CsrView& a, std::span<const cplx> x, std::span<cplx> y) {
    for (std::int64_t r = 0; r < a.rows; ++r) y[r] = row_dot(a, x, r);
}

void csr_matvec_omp(const CsrView& a, std::span<const cplx> x, std::span<cplx> y) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < a.rows; ++r) y[r] = row_dot(a, x, r);
}

void apply_gate_serial(std::span<cplx> psi, int n_qubits, int target, const Gate2& u,
                       std::uint64_t control_mask) {
    const std::uint64_t bit = std::uint64_t{1} << (n_qubits - 1 - target);
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) || (i & control_mask) != control_mask) continue;
        apply_pair(psi, i, bit, u);
    }
}

void apply_gate_omp(std::span<cplx> psi, int n_qubits, int target, const Gate2& u,
                    std::uint64_t control_mask) {
    const std::uint64_t bit = std::uint64_t{1} << (n_qubits - 1 - target);
    const std::int64_t dim = std::int64_t{1} << n_qubits;
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < dim; ++s) {
        const auto i = static_cast<std::uint64_t>(s);
        if ((i & bit) || (i & control_mask) != control_mask) continue;
        apply_pair(psi, i, bit, u);
    }
}

void tiling_diagonal_serial(const TilingTables& t, std::span<std::int64_t> out) {
    std::vector<int> digits(static_cast<std::size_t>(t.width * t.height));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = score_index(t, i, digits);
}

void tiling_diagonal_omp(const TilingTables& t, std::span<std::int64_t> out) {
    const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel
    {
        std::vector<int> digits(static_cast<std::size_t>(t.width * t.height));
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) out[i] = score_index(t, static_cast<std::uint64_t>(i), digits);
    }
}

}  // namespace ugap::kernels
