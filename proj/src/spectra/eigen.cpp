#include <algorithm>
#include <cmath>
#include <random>

#include "ugap/errors.hpp"
#include "ugap/spectra.hpp"

namespace ugap {

namespace {

using Vec = Eigen::VectorXcd;

Vec start_vector(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ seed);
    std::normal_distribution<double> g;
    Vec v(n);
    for (std::int64_t i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
    return v.normalized();
}

void orthogonalize(Vec& v, const std::vector<Vec>& basis) {
    // Two passes keep the basis orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) v -= q * q.dot(v);
}

Vec multiply(const HermitianOperator& h, const Vec& x) {
    Vec y(x.size());
    h.apply({x.data(), static_cast<std::size_t>(x.size())}, {y.data(), static_cast<std::size_t>(y.size())});
    return y;
}

struct Ritz {
    double value;
    Vec vector;
    double residual;
};

// One restarted Lanczos cycle in the complement of `locked`.
Ritz lanczos_cycle(const HermitianOperator& h, const Vec& start, const std::vector<Vec>& locked, int m) {
    std::vector<Vec> basis;
    std::vector<double> alpha, beta;
    Vec v = start;
    for (int j = 0; j < m; ++j) {
        basis.push_back(v);
        Vec w = multiply(h, v);
        alpha.push_back(v.dot(w).real());
        orthogonalize(w, locked);
        orthogonalize(w, basis);
        const double b = w.norm();
        if (b < 1e-14 || j + 1 == m) break;
        beta.push_back(b);
        v = w / b;
    }
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Vec x = Vec::Zero(start.size());
    for (Eigen::Index i = 0; i < k; ++i) x += basis[static_cast<std::size_t>(i)] * es.eigenvectors()(i, 0);
    orthogonalize(x, locked);
    x.normalize();
    const double theta = x.dot(multiply(h, x)).real();
    const double res = (multiply(h, x) - theta * x).norm();
    return {theta, x, res};
}

}  // namespace

Spectrum::Spectrum(std::vector<double> eigenvalues, std::int64_t dim) : values_(std::move(eigenvalues)), dim_(dim) {
    std::sort(values_.begin(), values_.end());
    if (static_cast<std::int64_t>(values_.size()) > dim_)
        throw ValidationError("spectrum has more eigenvalues than its dimension");
}

double Spectrum::min() const {
    if (values_.empty()) throw ValidationError("empty spectrum");
    return values_.front();
}

EigenPairs lowest_eigenpairs(const HermitianOperator& h, std::optional<int> k, const EigenOptions& opts) {
    const auto n = h.dim();
    if (k && (*k < 1 || *k > n)) throw ValidationError("requested eigenpair count out of range");
    EigenPairs out;
    if (n <= opts.dense_threshold) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h.to_dense());
        if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", NAN);
        const auto take = k ? *k : n;
        out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + take);
        out.vectors = es.eigenvectors().leftCols(take);
        return out;
    }
    if (!k) throw ResourceError("dimension " + std::to_string(n) + " exceeds the dense threshold; request k smallest");

    const int m = static_cast<int>(std::min<std::int64_t>(opts.krylov_dim, n));
    std::vector<Vec> locked;
    for (int target = 0; target < *k; ++target) {
        Vec v = start_vector(n, static_cast<std::uint64_t>(target));
        orthogonalize(v, locked);
        v.normalize();
        Ritz best{0, v, INFINITY};
        bool converged = false;
        for (int restart = 0; restart < opts.max_restarts; ++restart) {
            best = lanczos_cycle(h, v, locked, m);
            if (best.residual <= opts.tolerance * std::max(1.0, std::abs(best.value))) {
                converged = true;
                break;
            }
            v = best.vector;
        }
        if (!converged)
            throw ConvergenceError("lanczos did not converge for eigenpair " + std::to_string(target), best.residual);
        locked.push_back(best.vector);
        out.values.push_back(best.value);
    }
    std::vector<std::size_t> order(out.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return out.values[a] < out.values[b]; });
    out.vectors.resize(n, static_cast<Eigen::Index>(order.size()));
    std::vector<double> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.push_back(out.values[order[i]]);
        out.vectors.col(static_cast<Eigen::Index>(i)) = locked[order[i]];
    }
    out.values = std::move(sorted);
    return out;
}

Spectrum eigen_spectrum(const HermitianOperator& h, std::optional<int> k, const EigenOptions& opts) {
    if (h.is_diagonal()) {
        std::vector<double> d(static_cast<std::size_t>(h.dim()), 0.0);
        for (const auto& e : h.entries()) d[static_cast<std::size_t>(e.row)] = e.value.real();
        std::sort(d.begin(), d.end());
        if (k) d.resize(static_cast<std::size_t>(std::min<std::int64_t>(*k, h.dim())));
        return Spectrum(std::move(d), h.dim());
    }
    return Spectrum(lowest_eigenpairs(h, k, opts).values, h.dim());
}

double spectral_gap(const Spectrum& s) {
    if (s.size() < 2) throw ValidationError("spectral gap needs at least two eigenvalues");
    return s.eigenvalues()[1] - s.eigenvalues()[0];
}

void to_json(nlohmann::json& j, const Spectrum& s) { j = s.eigenvalues(); }

}  // namespace ugap
