#include <cmath>
#include <complex>
#include <numbers>

#include "ugap/errors.hpp"
#include "ugap/spectra.hpp"

namespace ugap {

namespace {

constexpr double kIntTol = 1e-12;

bool is_integer(double x) { return std::abs(x - std::round(x)) <= kIntTol; }

void require_square(const Matrix& m, Eigen::Index n, const char* name) {
    if (m.rows() != n || m.cols() != n)
        throw ValidationError(std::string("local term '") + name + "' has the wrong shape");
}

bool hermitian(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTol; }

double spectral_norm(const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

int local_dim(const Matrix& bond) {
    const auto d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(bond.rows()))));
    if (d * d != bond.rows()) throw ValidationError("bond term dimension is not a perfect square");
    return d;
}

}  // namespace

BondTerms local_terms(const LocalTerms& lt) {
    const auto n = lt.a.rows();
    if (n == 0) throw ValidationError("local terms are empty");
    require_square(lt.a, n, "a");
    require_square(lt.a_prime, n, "a_prime");
    require_square(lt.b, n, "b");
    require_square(lt.c, n, "c");
    require_square(lt.c_prime, n, "c_prime");
    if (lt.beta < 0 || lt.beta > 1) throw ValidationError("beta must lie in [0, 1]");
    if (lt.phi_prime < 0 || lt.phi_prime > 1) throw ValidationError("phi_prime must lie in [0, 1]");

    for (const auto* m : {&lt.a, &lt.c})
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const cplx v = (*m)(i, j);
                if (i != j && v != cplx{}) throw ValidationError("a and c must be diagonal");
                if (!is_integer(v.real()) || std::abs(v.imag()) > kIntTol)
                    throw ValidationError("a and c must have integer entries");
            }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!is_integer(lt.b(i, j).real()) || !is_integer(lt.b(i, j).imag()))
                throw ValidationError("b must be integer-valued");
    if (!hermitian(lt.a_prime)) throw ValidationError("a_prime is not Hermitian");
    if (!hermitian(lt.c_prime)) throw ValidationError("c_prime is not Hermitian");

    const cplx phase = std::polar(1.0, std::numbers::pi * lt.phi_prime);
    BondTerms out;
    out.h_row = lt.a + lt.beta * (lt.a_prime + phase * lt.b + std::conj(phase) * lt.b.adjoint());
    out.h_col = lt.c + lt.beta * lt.c_prime;
    if (spectral_norm(out.h_row) > 2.0 + kHermitianTol) throw ValidationError("norm of h_row exceeds 2");
    if (spectral_norm(out.h_col) > 1.0 + kHermitianTol) throw ValidationError("norm of h_col exceeds 1");
    return out;
}

HermitianOperator assemble_lattice_hamiltonian(const Matrix& h_row, const Matrix& h_col, int L,
                                               std::int64_t max_dim) {
    if (L < 2) throw ValidationError("lattice side must be at least 2");
    if (h_row.rows() != h_row.cols() || h_col.rows() != h_col.cols() || h_row.rows() != h_col.rows())
        throw ValidationError("bond terms must be square with matching dimension");
    if (!hermitian(h_row) || !hermitian(h_col)) throw ValidationError("bond terms must be Hermitian");
    const int d = local_dim(h_row);
    const int sites = L * L;

    std::int64_t dim = 1;
    for (int s = 0; s < sites; ++s) {
        if (dim > max_dim / d) throw ResourceError("lattice dimension exceeds budget " + std::to_string(max_dim));
        dim *= d;
    }
    std::vector<std::int64_t> stride(static_cast<std::size_t>(sites));
    for (int s = 0; s < sites; ++s) {
        std::int64_t w = 1;
        for (int k = s + 1; k < sites; ++k) w *= d;
        stride[static_cast<std::size_t>(s)] = w;
    }

    std::vector<Entry> entries;
    auto place = [&](const Matrix& h, int s1, int s2) {
        const auto w1 = stride[static_cast<std::size_t>(s1)], w2 = stride[static_cast<std::size_t>(s2)];
        for (std::int64_t col = 0; col < dim; ++col) {
            const int p = static_cast<int>(col / w1 % d), q = static_cast<int>(col / w2 % d);
            const std::int64_t base = col - p * w1 - q * w2;
            for (int p2 = 0; p2 < d; ++p2)
                for (int q2 = 0; q2 < d; ++q2) {
                    const cplx v = h(p2 * d + q2, p * d + q);
                    if (v != cplx{}) entries.push_back({base + p2 * w1 + q2 * w2, col, v});
                }
        }
    };
    for (int y = 0; y < L; ++y)
        for (int x = 0; x + 1 < L; ++x) place(h_row, y * L + x, y * L + x + 1);
    for (int y = 0; y + 1 < L; ++y)
        for (int x = 0; x < L; ++x) place(h_col, y * L + x, (y + 1) * L + x);
    return HermitianOperator(dim, std::move(entries), "lattice L=" + std::to_string(L));
}

}  // namespace ugap
