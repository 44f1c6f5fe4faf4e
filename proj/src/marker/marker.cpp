#include "ugap/marker.hpp"

#include <cmath>
#include <string>

#include "ugap/errors.hpp"

namespace ugap::marker {

namespace {

constexpr double kBranchGuard = 1e-6;

}  // namespace

std::int64_t FalloffSpec::f() const { return C * (L + r); }

void FalloffSpec::validate() const {
    if (C < 1) throw ValidationError("falloff constant C must be positive");
    if (L < 1) throw ValidationError("edge length must be positive");
    if (r < 1 || r > L) throw ValidationError("marker offset must satisfy 1 <= r <= L");
}

MarkerMatrix delta_prime(int w) {
    if (w < 1) throw ValidationError("marker width must be at least 1");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(w, w);
    if (w == 1) {
        m(0, 0) = -1;
        return {w, m};
    }
    for (int i = 0; i < w; ++i) {
        m(i, i) = 2;
        if (i + 1 < w) m(i, i + 1) = m(i + 1, i) = -1;
    }
    m(0, 0) = 1;
    m(w - 1, w - 1) = 0;
    return {w, m};
}

double char_poly_recurrence(int w, double lambda) {
    if (w < 1) throw ValidationError("marker width must be at least 1");
    if (w == 1) return lambda + 1;
    const auto m = delta_prime(w).matrix;
    // Continuant of the leading principal minors of lambda I - M.
    double prev = 1, cur = lambda - m(0, 0);
    for (int i = 1; i < w; ++i) {
        const double next = (lambda - m(i, i)) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::complex<double> char_poly_value(int w, std::complex<double> lambda) {
    if (w < 1) throw ValidationError("marker width must be at least 1");
    if (std::abs(lambda) < kBranchGuard || std::abs(lambda - 4.0) < kBranchGuard) {
        if (std::abs(lambda.imag()) > 0) throw ValidationError("branch-point limit only defined on the real axis");
        return char_poly_recurrence(w, lambda.real());
    }
    using C = std::complex<double>;
    const C root4 = std::sqrt(lambda - 4.0), root = std::sqrt(lambda);
    const C x = std::pow(lambda - root4 * root - 2.0, w);
    const C y = std::pow(lambda + root4 * root - 2.0, w);
    // The y coefficient root4 - 3 root vanishes at -1/2; its rationalized form
    // keeps that cancellation exact instead of amplifying rounding by 4^w.
    const C coeff_x = root4 + 3.0 * root;
    const C coeff_y = -4.0 * (2.0 * lambda + 1.0) / coeff_x;
    return -std::exp2(-w - 1) / root4 * (coeff_x * x + coeff_y * y);
}

Interval lambda_min_bounds(int w) {
    if (w < 1) throw ValidationError("marker width must be at least 1");
    const double q = std::exp2(-2.0 * w);
    return {-0.5 - 3 * q, -0.5 - q};
}

double lambda_min(int w) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(delta_prime(w).matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

EdgeEnergy edge_energy_bounds(const FalloffSpec& spec) {
    spec.validate();
    const double f = static_cast<double>(spec.f());
    return {Log2::from_log(std::log2(3.0) - 2 * f), Log2::from_log(-2 * f)};
}

HermitianOperator marker_segment_hamiltonian(const FalloffSpec& spec, int padding) {
    spec.validate();
    if (padding < 0) throw ValidationError("padding must be nonnegative");
    const auto f = spec.f();
    if (f > kMaxSegmentF)
        throw ResourceError("segment length f=" + std::to_string(f) + " exceeds the resolvable limit " +
                            std::to_string(kMaxSegmentF));
    const auto m = delta_prime(static_cast<int>(f)).matrix;
    std::vector<Entry> entries;
    for (int i = 0; i < f; ++i)
        for (int j = std::max(0, i - 1); j <= std::min<int>(static_cast<int>(f) - 1, i + 1); ++j)
            if (m(i, j) != 0) entries.push_back({i, j, m(i, j)});
    return HermitianOperator(f + padding, std::move(entries), "marker segment f=" + std::to_string(f));
}

double segment_energy(const FalloffSpec& spec) {
    return eigen_spectrum(marker_segment_hamiltonian(spec)).min() + 0.5;
}

}  // namespace ugap::marker
