#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ugap/kernels.hpp"

namespace ugap {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;

struct Entry {
    std::int64_t row = 0;
    std::int64_t col = 0;
    cplx value{};
};

struct Csr {
    std::int64_t rows = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int64_t> cols;
    std::vector<cplx> vals;

    kernels::CsrView view() const { return {rows, row_ptr, cols, vals}; }
};

// Sparse Hermitian matrix. Entries are kept sorted by (row, col) with
// duplicates summed; construction rejects anything not conjugate-symmetric.
class HermitianOperator {
public:
    HermitianOperator(std::int64_t dim, std::vector<Entry> entries, std::string label);

    static HermitianOperator zero(std::int64_t dim, std::string label = "zero");
    static HermitianOperator identity(std::int64_t dim, std::string label = "identity");
    static HermitianOperator diagonal(std::span<const double> diag, std::string label);
    static HermitianOperator from_dense(const Matrix& m, std::string label);

    std::int64_t dim() const noexcept { return dim_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    const std::string& label() const noexcept { return label_; }

    bool is_diagonal() const;
    cplx at(std::int64_t row, std::int64_t col) const;
    Matrix to_dense() const;
    const Csr& csr() const noexcept { return csr_; }
    void apply(std::span<const cplx> x, std::span<cplx> y) const;

    HermitianOperator scaled(double factor) const;
    HermitianOperator plus(const HermitianOperator& other, std::string label = {}) const;

private:
    void build_csr();

    std::int64_t dim_;
    std::vector<Entry> entries_;
    std::string label_;
    Csr csr_;
};

struct LocalTerms {
    Matrix a, a_prime, b, c, c_prime;
    double beta = 0.0;
    double phi_prime = 0.0;
};

struct BondTerms {
    Matrix h_row;
    Matrix h_col;
};

class Spectrum {
public:
    Spectrum() = default;
    Spectrum(std::vector<double> eigenvalues, std::int64_t dim);

    const std::vector<double>& eigenvalues() const noexcept { return values_; }
    std::int64_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return values_.size(); }
    double min() const;

private:
    std::vector<double> values_;
    std::int64_t dim_ = 0;
};

struct EigenOptions {
    std::int64_t dense_threshold = 4096;
    double tolerance = 1e-10;
    int krylov_dim = 80;
    int max_restarts = 400;
};

struct EigenPairs {
    std::vector<double> values;
    Matrix vectors;  // one column per value
};

// Validates the structural constraints on the local terms and returns the
// horizontal and vertical interaction.
BondTerms local_terms(const LocalTerms& lt);

// Open L x L lattice; site (x, y) is digit y*L + x of the basis index with
// site 0 most significant. Horizontal bonds act on (left, right), vertical
// bonds on (lower, upper).
HermitianOperator assemble_lattice_hamiltonian(const Matrix& h_row, const Matrix& h_col, int L,
                                               std::int64_t max_dim = std::int64_t{1} << 22);

// Lowest `k` eigenpairs (all of them when k is empty and the dense path applies).
EigenPairs lowest_eigenpairs(const HermitianOperator& h, std::optional<int> k = std::nullopt,
                             const EigenOptions& opts = {});
Spectrum eigen_spectrum(const HermitianOperator& h, std::optional<int> k = std::nullopt,
                        const EigenOptions& opts = {});

double spectral_gap(const Spectrum& s);
HermitianOperator shift_energy(const HermitianOperator& h, double amount);

// Block layout of the composed toy model: `sites` sites on an open chain,
// each carrying (h1 (x) h2) (+) h3 with dim h3 = triv_dim.
struct UndecLayout {
    int sites = 1;
    int triv_dim = 2;
};

// {0} u (specH + specDense) u G with the guard / trivial part G computed in
// closed form. Values are deduplicated within 1e-12.
Spectrum compose_undec_spectrum(const Spectrum& spec_h, const Spectrum& spec_dense, double triv_gap,
                                const UndecLayout& layout = {});

// Explicit operator for direct diagonalization. `h` acts on h1^{(x)n} and
// `dense` on h2^{(x)n}; d1 and d2 are recovered from their sizes.
HermitianOperator assemble_undec_operator(const Matrix& h, const Matrix& dense, double triv_gap,
                                          const UndecLayout& layout = {});

void to_json(nlohmann::json& j, const HermitianOperator& h);
HermitianOperator operator_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const Spectrum& s);

}  // namespace ugap
