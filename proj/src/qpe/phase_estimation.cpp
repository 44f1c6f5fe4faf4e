#include <cmath>
#include <numbers>

#include "ugap/errors.hpp"
#include "ugap/qpe.hpp"

namespace ugap::qpe {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kExactTol = 1e-13;

const Gate2 kHadamard{(1 / std::numbers::sqrt2), (1 / std::numbers::sqrt2), (1 / std::numbers::sqrt2),
                      -(1 / std::numbers::sqrt2)};

void check_register(int t) {
    if (t < 1) throw ValidationError("register size must be at least 1");
    if (t + 1 > kMaxSimQubits) throw ResourceError("register size exceeds the simulation budget");
}

std::uint64_t bit_of(int n_qubits, int q) { return std::uint64_t{1} << (n_qubits - 1 - q); }

void reverse_qubits(std::vector<cplx>& psi, int n_qubits, int count) {
    std::vector<cplx> out(psi.size());
    for (std::uint64_t i = 0; i < psi.size(); ++i) {
        std::uint64_t j = i;
        for (int q = 0; q < count; ++q) {
            const bool b = i & bit_of(n_qubits, q);
            const auto dst = bit_of(n_qubits, count - 1 - q);
            j = b ? (j | dst) : (j & ~dst);
        }
        out[j] = psi[i];
    }
    psi.swap(out);
}

// Inverse QFT on qubits 0..t-1 of an n-qubit state, rotations from `rotation(k)`
// which must approximate diag(1, e^{-2 pi i / 2^k}).
template <class Rotation>
void inverse_qft(std::vector<cplx>& psi, int n_qubits, int t, Rotation&& rotation) {
    reverse_qubits(psi, n_qubits, t);
    for (int j = t - 1; j >= 0; --j) {
        for (int k = t - 1; k > j; --k)
            kernels::apply_gate_serial(psi, n_qubits, j, rotation(k - j + 1), bit_of(n_qubits, k));
        kernels::apply_gate_serial(psi, n_qubits, j, kHadamard);
    }
}

StateVector register_state(const std::vector<cplx>& full, int t) {
    // Ancilla sits in |1>, so register amplitudes are the odd entries.
    StateVector out{t, std::vector<cplx>(std::size_t{1} << t)};
    for (std::size_t y = 0; y < out.amplitudes.size(); ++y) out.amplitudes[y] = full[2 * y + 1];
    return out;
}

std::vector<cplx> prepared_state(double phi, int t) {
    const int n = t + 1;
    std::vector<cplx> psi(std::size_t{1} << n);
    psi[1] = 1.0;
    for (int q = 0; q < t; ++q) kernels::apply_gate_serial(psi, n, q, kHadamard);
    // Register qubit q controls U^{2^{t-1-q}} with U = diag(1, e^{i pi phi})^2.
    for (int q = 0; q < t; ++q) {
        const double angle = kTwoPi * phi * std::ldexp(1.0, t - 1 - q);
        kernels::apply_gate_serial(psi, n, t, phase_gate(angle), bit_of(n, q));
    }
    return psi;
}

}  // namespace

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    StateVector s{n_qubits, std::vector<cplx>(std::size_t{1} << n_qubits)};
    s.amplitudes.at(index) = 1.0;
    return s;
}

double StateVector::norm() const {
    double acc = 0;
    for (const auto& a : amplitudes) acc += std::norm(a);
    return std::sqrt(acc);
}

void StateVector::validate() const {
    if (amplitudes.size() != (std::size_t{1} << n_qubits)) throw ValidationError("state vector length mismatch");
    if (std::abs(norm() - 1.0) > kNormTol) throw ValidationError("state vector is not normalized");
}

PhaseEncoding PhaseEncoding::exact(int eta, int ell) { return {eta, ell, encode_unary(eta)}; }

bool PhaseEncoding::is_exact() const { return phi_prime == encode_unary(eta); }

void PhaseEncoding::validate() const {
    if (eta < 1) throw ValidationError("eta must be at least 1");
    if (ell < 1) throw ValidationError("ell must be at least 1");
    const double lo = encode_unary(eta), hi = lo + std::ldexp(1.0, -eta - ell);
    if (!(phi_prime >= lo && phi_prime < hi)) throw ValidationError("phi_prime outside its encoding interval");
}

double encode_unary(int eta) {
    if (eta < 1) throw ValidationError("eta must be at least 1");
    return std::ldexp(1.0, -eta);
}

Gate2 phase_gate(double theta) { return {1.0, 0.0, 0.0, std::polar(1.0, theta)}; }

std::vector<cplx> qpe_weights(double phi, int t) {
    if (t < 1) throw ValidationError("register size must be at least 1");
    if (!(phi >= 0 && phi < 1)) throw ValidationError("phase must lie in [0, 1)");
    const std::size_t size = std::size_t{1} << t;
    std::vector<cplx> beta(size);
    const double scaled = std::ldexp(phi, t);
    if (std::abs(scaled - std::round(scaled)) < kExactTol) {
        beta[static_cast<std::size_t>(std::llround(scaled)) % size] = 1.0;
        return beta;
    }
    const double inv = std::ldexp(1.0, -t);
    for (std::size_t y = 0; y < size; ++y) {
        const double frac = phi - static_cast<double>(y) * inv;
        const cplx num = 1.0 - std::polar(1.0, kTwoPi * (scaled - static_cast<double>(y)));
        const cplx den = 1.0 - std::polar(1.0, kTwoPi * frac);
        beta[y] = inv * num / den;
    }
    return beta;
}

StateVector qpe_exact_sim(double phi, int t) {
    check_register(t);
    if (!(phi >= 0 && phi < 1)) throw ValidationError("phase must lie in [0, 1)");
    auto psi = prepared_state(phi, t);
    inverse_qft(psi, t + 1, t, [](int k) { return phase_gate(-kTwoPi * std::ldexp(1.0, -k)); });
    return register_state(psi, t);
}

Eigen::MatrixXcd inverse_qft_unitary(int t, double epsilon) {
    check_register(t);
    std::vector<Gate2> rotations(static_cast<std::size_t>(t) + 2);
    for (int k = 2; k <= t; ++k) {
        const double theta = -kTwoPi * std::ldexp(1.0, -k);
        rotations[static_cast<std::size_t>(k)] =
            epsilon > 0 ? sk_synthesize(theta, epsilon).corrected_product() : phase_gate(theta);
    }
    const std::size_t dim = std::size_t{1} << t;
    Eigen::MatrixXcd u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<cplx> psi(dim);
        psi[col] = 1.0;
        inverse_qft(psi, t, t, [&](int k) { return rotations[static_cast<std::size_t>(k)]; });
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = psi[row];
    }
    return u;
}

ApproxResult qpe_approx_sim(double phi, int t, double epsilon) {
    check_register(t);
    if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
    if (!(phi >= 0 && phi < 1)) throw ValidationError("phase must lie in [0, 1)");
    std::vector<Gate2> rotations(static_cast<std::size_t>(t) + 2);
    for (int k = 2; k <= t; ++k)
        rotations[static_cast<std::size_t>(k)] =
            sk_synthesize(-kTwoPi * std::ldexp(1.0, -k), epsilon).corrected_product();
    auto psi = prepared_state(phi, t);
    inverse_qft(psi, t + 1, t, [&](int k) { return rotations[static_cast<std::size_t>(k)]; });

    ApproxResult out;
    out.state = register_state(psi, t);
    const auto exact = qpe_exact_sim(phi, t);
    double acc = 0;
    for (std::size_t y = 0; y < exact.amplitudes.size(); ++y)
        acc += std::norm(out.state.amplitudes[y] - exact.amplitudes[y]);
    out.state_deviation = std::sqrt(acc);
    out.error_bound = 0.5 * t * t * epsilon;
    const Eigen::MatrixXcd diff = inverse_qft_unitary(t, epsilon) - inverse_qft_unitary(t);
    out.operator_deviation = Eigen::JacobiSVD<Eigen::MatrixXcd>(diff).singularValues()(0);
    return out;
}

Log2 delta_bound(std::int64_t L, std::int64_t m, double c1, double c2) {
    if (L < 1 || m < 1) throw ValidationError("L and m must be positive");
    if (m > L) throw ValidationError("m must not exceed L");
    if (!(c1 > 0 && c2 > 0)) throw ValidationError("constants must be positive");
    const double md = static_cast<double>(m);
    return Log2::from_log(std::log2(md * md / 2) - c2 * std::pow(static_cast<double>(L), 1.0 / c1));
}

std::int64_t delta_threshold_length(std::int64_t m, Log2 delta0, double c1, double c2) {
    if (delta0.is_zero()) throw ValidationError("delta0 must be positive");
    const double md = static_cast<double>(m);
    const double need = (std::log2(md * md / 2) - delta0.log()) / c2;
    std::int64_t L = m;
    if (need > 0) L = std::max<std::int64_t>(m, static_cast<std::int64_t>(std::floor(std::pow(need, c1))));
    while (delta_bound(L, m, c1, c2) >= delta0) ++L;
    while (L > m && delta_bound(L - 1, m, c1, c2) < delta0) --L;
    return L;
}

Overlap predicted_overlap(const PhaseEncoding& enc, int t, double delta) {
    enc.validate();
    if (t < 1) throw ValidationError("register size must be at least 1");
    if (delta < 0) throw ValidationError("delta must be nonnegative");
    if (t >= enc.eta) {
        const double bound = enc.is_exact() ? 1.0 : 1.0 - std::ldexp(1.0, -enc.ell);
        return {std::uint64_t{1} << (t - enc.eta), bound - delta};
    }
    return {0, (enc.is_exact() ? 0.5 : 0.25) - delta};
}

}  // namespace ugap::qpe
