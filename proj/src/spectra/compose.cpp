#include <algorithm>
#include <cmath>
#include <bit>

#include "ugap/errors.hpp"
#include "ugap/spectra.hpp"

namespace ugap {

namespace {

constexpr double kDedupTol = 1e-12;

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

int site_root(std::int64_t total, int sites, const char* what) {
    for (int d = 1; ipow(d, sites) <= total; ++d)
        if (ipow(d, sites) == total) return d;
    throw ValidationError(std::string(what) + " size is not a perfect power of the site count");
}

std::vector<double> dedup(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > kDedupTol) out.push_back(x);
    return out;
}

void check_layout(const UndecLayout& layout, double triv_gap) {
    if (layout.sites < 1 || layout.triv_dim < 1) throw ValidationError("invalid block layout");
    if (triv_gap < 1.0) throw ValidationError("trivial gap must be at least 1");
}

}  // namespace

Spectrum compose_undec_spectrum(const Spectrum& spec_h, const Spectrum& spec_dense, double triv_gap,
                                const UndecLayout& layout) {
    check_layout(layout, triv_gap);
    for (double x : spec_dense.eigenvalues())
        if (x < 0) throw ValidationError("dense stand-in spectrum must be nonnegative");
    const int n = layout.sites;
    const int d1 = site_root(static_cast<std::int64_t>(spec_h.size()), n, "specH");
    const int d2 = site_root(static_cast<std::int64_t>(spec_dense.size()), n, "specDense");

    std::vector<double> values{0.0};
    for (double a : spec_h.eigenvalues())
        for (double b : spec_dense.eigenvalues()) values.push_back(a + b);

    // Sectors with at least one trivial site: each mixed bond costs triv_gap
    // and each trivial site off its reference state costs triv_gap.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int mixed = 0;
        for (int i = 0; i + 1 < n; ++i) mixed += ((mask >> i) & 1u) != ((mask >> (i + 1)) & 1u);
        const int trivial_sites = std::popcount(mask);
        const int max_excited = layout.triv_dim > 1 ? trivial_sites : 0;
        for (int excited = 0; excited <= max_excited; ++excited) {
            const int units = mixed + excited;
            if (units > 0) values.push_back(triv_gap * units);
        }
    }
    const std::int64_t dim = ipow(static_cast<std::int64_t>(d1) * d2 + layout.triv_dim, n);
    return Spectrum(dedup(std::move(values)), dim);
}

HermitianOperator assemble_undec_operator(const Matrix& h, const Matrix& dense, double triv_gap,
                                          const UndecLayout& layout) {
    check_layout(layout, triv_gap);
    const int n = layout.sites;
    const int d1 = site_root(h.rows(), n, "H stand-in");
    const int d2 = site_root(dense.rows(), n, "dense stand-in");
    const int d12 = d1 * d2;
    const int site_dim = d12 + layout.triv_dim;
    const std::int64_t dim = ipow(site_dim, n);

    std::vector<Entry> entries;
    std::vector<int> digit(static_cast<std::size_t>(n));
    for (std::int64_t col = 0; col < dim; ++col) {
        std::int64_t rem = col;
        for (int i = n - 1; i >= 0; --i) {
            digit[static_cast<std::size_t>(i)] = static_cast<int>(rem % site_dim);
            rem /= site_dim;
        }
        const bool all12 = std::all_of(digit.begin(), digit.end(), [&](int x) { return x < d12; });
        if (all12) {
            std::int64_t a = 0, b = 0;
            for (int x : digit) {
                a = a * d1 + x / d2;
                b = b * d2 + x % d2;
            }
            auto encode = [&](std::int64_t aa, std::int64_t bb) {
                std::int64_t idx = 0, weight = 1;
                for (int i = n - 1; i >= 0; --i) {
                    idx += ((aa % d1) * d2 + bb % d2) * weight;
                    aa /= d1;
                    bb /= d2;
                    weight *= site_dim;
                }
                return idx;
            };
            for (std::int64_t a2 = 0; a2 < h.rows(); ++a2)
                if (h(a2, a) != cplx{}) entries.push_back({encode(a2, b), col, h(a2, a)});
            for (std::int64_t b2 = 0; b2 < dense.rows(); ++b2)
                if (dense(b2, b) != cplx{}) entries.push_back({encode(a, b2), col, dense(b2, b)});
            continue;
        }
        double diag = 0;
        for (int x : digit)
            if (x > d12) diag += triv_gap;
        for (int i = 0; i + 1 < n; ++i)
            diag += ((digit[static_cast<std::size_t>(i)] >= d12) != (digit[static_cast<std::size_t>(i) + 1] >= d12)) ? triv_gap : 0.0;
        if (diag != 0) entries.push_back({col, col, diag});
    }
    return HermitianOperator(dim, std::move(entries), "undecidable block assembly");
}

}  // namespace ugap
