#include <algorithm>
#include <cmath>

#include "ugap/errors.hpp"
#include "ugap/spectra.hpp"

namespace ugap {

namespace {

bool entry_less(const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

HermitianOperator::HermitianOperator(std::int64_t dim, std::vector<Entry> entries, std::string label)
    : dim_(dim), label_(std::move(label)) {
    if (dim <= 0) throw ValidationError("operator dimension must be positive");
    for (const auto& e : entries)
        if (e.row < 0 || e.col < 0 || e.row >= dim || e.col >= dim)
            throw ValidationError("operator entry index out of range");
    std::sort(entries.begin(), entries.end(), entry_less);
    entries_.reserve(entries.size());
    for (const auto& e : entries) {
        if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col)
            entries_.back().value += e.value;
        else
            entries_.push_back(e);
    }
    std::erase_if(entries_, [](const Entry& e) { return e.value == cplx{}; });
    for (const auto& e : entries_) {
        const cplx mirror = at(e.col, e.row);
        if (std::abs(e.value - std::conj(mirror)) > kHermitianTol * std::max(1.0, std::abs(e.value)))
            throw ValidationError("operator '" + label_ + "' is not Hermitian at (" + std::to_string(e.row) +
                                  ", " + std::to_string(e.col) + ")");
    }
    build_csr();
}

HermitianOperator HermitianOperator::zero(std::int64_t dim, std::string label) {
    return HermitianOperator(dim, {}, std::move(label));
}

HermitianOperator HermitianOperator::identity(std::int64_t dim, std::string label) {
    std::vector<Entry> e;
    e.reserve(static_cast<std::size_t>(dim));
    for (std::int64_t i = 0; i < dim; ++i) e.push_back({i, i, 1.0});
    return HermitianOperator(dim, std::move(e), std::move(label));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> diag, std::string label) {
    std::vector<Entry> e;
    e.reserve(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        e.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(i), diag[i]});
    return HermitianOperator(static_cast<std::int64_t>(diag.size()), std::move(e), std::move(label));
}

HermitianOperator HermitianOperator::from_dense(const Matrix& m, std::string label) {
    if (m.rows() != m.cols()) throw ValidationError("dense operator must be square");
    std::vector<Entry> e;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != cplx{}) e.push_back({i, j, m(i, j)});
    return HermitianOperator(m.rows(), std::move(e), std::move(label));
}

bool HermitianOperator::is_diagonal() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.row == e.col; });
}

cplx HermitianOperator::at(std::int64_t row, std::int64_t col) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{row, col, {}}, entry_less);
    return (it != entries_.end() && it->row == row && it->col == col) ? it->value : cplx{};
}

Matrix HermitianOperator::to_dense() const {
    Matrix m = Matrix::Zero(dim_, dim_);
    for (const auto& e : entries_) m(e.row, e.col) = e.value;
    return m;
}

void HermitianOperator::build_csr() {
    Csr& c = csr_;
    c.rows = dim_;
    c.row_ptr.assign(static_cast<std::size_t>(dim_) + 1, 0);
    c.cols.reserve(entries_.size());
    c.vals.reserve(entries_.size());
    for (const auto& e : entries_) {
        ++c.row_ptr[static_cast<std::size_t>(e.row) + 1];
        c.cols.push_back(e.col);
        c.vals.push_back(e.value);
    }
    for (std::size_t r = 0; r < static_cast<std::size_t>(dim_); ++r) c.row_ptr[r + 1] += c.row_ptr[r];
}

void HermitianOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
    kernels::csr_matvec_omp(csr_.view(), x, y);
}

HermitianOperator HermitianOperator::scaled(double factor) const {
    auto e = entries_;
    for (auto& x : e) x.value *= factor;
    return HermitianOperator(dim_, std::move(e), label_);
}

HermitianOperator HermitianOperator::plus(const HermitianOperator& other, std::string label) const {
    if (other.dim_ != dim_) throw ValidationError("operator dimension mismatch in sum");
    auto e = entries_;
    e.insert(e.end(), other.entries_.begin(), other.entries_.end());
    return HermitianOperator(dim_, std::move(e), label.empty() ? label_ + "+" + other.label_ : std::move(label));
}

HermitianOperator shift_energy(const HermitianOperator& h, double amount) {
    return h.plus(HermitianOperator::identity(h.dim()).scaled(amount), h.label() + "+shift");
}

void to_json(nlohmann::json& j, const HermitianOperator& h) {
    auto entries = nlohmann::json::array();
    for (const auto& e : h.entries()) entries.push_back({e.row, e.col, e.value.real(), e.value.imag()});
    j = {{"dim", h.dim()}, {"label", h.label()}, {"entries", std::move(entries)}};
}

HermitianOperator operator_from_json(const nlohmann::json& j) {
    try {
        std::vector<Entry> e;
        for (const auto& row : j.at("entries"))
            e.push_back({row.at(0).get<std::int64_t>(), row.at(1).get<std::int64_t>(),
                         cplx(row.at(2).get<double>(), row.at(3).get<double>())});
        return HermitianOperator(j.at("dim").get<std::int64_t>(), std::move(e), j.value("label", std::string("json")));
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("malformed operator json: ") + ex.what());
    }
}

}  // namespace ugap
