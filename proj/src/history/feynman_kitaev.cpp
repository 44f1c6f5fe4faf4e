#include <cmath>
#include <numbers>

#include "ugap/errors.hpp"
#include "ugap/history.hpp"

namespace ugap::history {

namespace {

void check_projector(const Matrix& p, std::int64_t dim, const char* what) {
    if (p.rows() != dim || p.cols() != dim) throw ValidationError(std::string(what) + " projector has the wrong size");
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10 || (p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError(std::string(what) + " is not an orthogonal projector");
}

void add_block(std::vector<Entry>& e, std::int64_t row_block, std::int64_t col_block, std::int64_t dim, const Matrix& m,
               cplx scale) {
    for (std::int64_t i = 0; i < dim; ++i)
        for (std::int64_t j = 0; j < dim; ++j)
            if (m(i, j) != cplx{}) e.push_back({row_block * dim + i, col_block * dim + j, scale * m(i, j)});
}

}  // namespace

int default_t_init(int T) {
    if (T < 1) throw ValidationError("T must be at least 1");
    return std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(T)))));
}

HistoryState history_state(const CircuitSpec& c, const qpe::StateVector& psi0) {
    c.validate();
    if (psi0.n_qubits != c.n_qubits) throw ValidationError("initial state does not match the register");
    psi0.validate();
    const int T = c.steps();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.n_qubits);
    HistoryState h{T + 1, c.n_qubits, Eigen::VectorXcd::Zero((T + 1) * dim)};
    Eigen::VectorXcd psi = Eigen::Map<const Eigen::VectorXcd>(psi0.amplitudes.data(), dim);
    const double norm = 1 / std::sqrt(static_cast<double>(T + 1));
    h.amplitudes.segment(0, dim) = norm * psi;
    for (int t = 1; t <= T; ++t) {
        psi = c.step_unitary(t - 1) * psi;
        h.amplitudes.segment(t * dim, dim) = norm * psi;
    }
    return h;
}

HermitianOperator feynman_kitaev(const CircuitSpec& c, const PenaltySpec& p, std::int64_t max_dim) {
    c.validate();
    const int T = c.steps();
    const std::int64_t dim = std::int64_t{1} << c.n_qubits;
    if ((T + 1) * dim > max_dim) throw ResourceError("clock (x) register dimension exceeds budget");
    const int t_init = p.t_init.value_or(default_t_init(T));
    if (p.input_weight != 0) {
        if (t_init < 1 || t_init >= T + 1) throw ValidationError("t_init must lie in [1, T]");
        check_projector(p.input_projector, dim, "input");
    }
    if (p.output_weight != 0) check_projector(p.output_projector, dim, "output");
    if (p.input_weight < 0 || p.output_weight < 0) throw ValidationError("penalty weights must be nonnegative");

    const Matrix id = Matrix::Identity(dim, dim);
    std::vector<Entry> e;
    for (int t = 0; t < T; ++t) {
        const Matrix u = c.step_unitary(t);
        add_block(e, t, t, dim, id, 0.5);
        add_block(e, t + 1, t + 1, dim, id, 0.5);
        add_block(e, t + 1, t, dim, u, -0.5);
        add_block(e, t, t + 1, dim, u.adjoint(), -0.5);
    }
    if (p.input_weight != 0)
        for (int t = 0; t < t_init; ++t) add_block(e, t, t, dim, p.input_projector, p.input_weight);
    if (p.output_weight != 0) add_block(e, T, T, dim, p.output_projector, p.output_weight);
    return HermitianOperator((T + 1) * dim, std::move(e), "feynman-kitaev T=" + std::to_string(T));
}

double gs_upper_bound(double eps, int T, int T_init) {
    if (T_init >= T) throw ValidationError("T_init must be smaller than T");
    if (eps < 0) throw ValidationError("eps must be nonnegative");
    return eps * (1 - std::cos(std::numbers::pi / (2.0 * (T - T_init) + 1)));
}

LowerBoundFit fit_lower_bound_constant(const std::vector<int>& steps) {
    if (steps.size() < 2) throw ValidationError("need at least two step counts");
    LowerBoundFit fit;
    fit.constant = INFINITY;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int T : steps) {
        CircuitSpec c{1, std::vector<Gate>(static_cast<std::size_t>(T), Gate{"I", {0}, {}, {}})};
        PenaltySpec p;
        p.input_projector = Matrix::Zero(2, 2);
        p.input_projector(1, 1) = 1;
        p.input_weight = 1;
        p.output_projector = Matrix::Identity(2, 2);
        p.output_weight = 1;
        const double lmin = eigen_spectrum(feynman_kitaev(c, p)).min();
        fit.samples.emplace_back(T, lmin);
        fit.constant = std::min(fit.constant, lmin * T * T);
        const double x = std::log(static_cast<double>(T)), y = std::log(lmin);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(steps.size());
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

double ancilla_guard_overlap(double alpha, double eps) {
    if (!(alpha >= 0 && alpha <= 1 && eps >= 0 && eps <= 1)) throw ValidationError("alpha and eps must lie in [0, 1]");
    // Qubits: 0 guard ancilla, 1 initialization flag, 2 halting flag.
    constexpr int n = 3;
    auto rot = [](double th) {
        return kernels::Gate2{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    };
    std::vector<cplx> psi(8);
    psi[0b010] = alpha;
    psi[0b000] = std::sqrt(1 - alpha * alpha);
    kernels::apply_gate_serial(psi, n, 0, rot(2 * std::numbers::pi / 3));
    kernels::apply_gate_serial(psi, n, 0, rot(-std::numbers::pi / 3), 0b010);
    kernels::apply_gate_serial(psi, n, 2, rot(std::asin(eps)));
    kernels::apply_gate_serial(psi, n, 0, rot(-std::numbers::pi / 3), 0b001);
    double p1 = 0;
    for (std::size_t i = 0b100; i < 8; ++i) p1 += std::norm(psi[i]);
    return p1;
}

EnergyBound hqtm_spectrum_case(const qpe::PhaseEncoding& enc, std::int64_t m, std::int64_t L, bool halting,
                               const balance::BalanceParams& params) {
    enc.validate();
    params.validate();
    if (m < 1 || m > L) throw ValidationError("m must satisfy 1 <= m <= L");
    const auto clock = balance::clock_runtime_bounds(L, params.xi);
    if (m < enc.eta || !halting)
        return {EnergyBound::Kind::Lower, Log2::from_linear(params.K1) / clock.upper.pow(2)};
    const Log2 rounding = enc.is_exact() ? Log2::zero() : Log2::from_log(-static_cast<double>(enc.ell));
    const Log2 amp = rounding + qpe::delta_bound(L, m, params.c1, params.c2);
    return {EnergyBound::Kind::Upper,
            Log2::from_linear(params.K2) * Log2::from_linear(0.75) * amp.pow(2) / clock.lower.pow(2)};
}

}  // namespace ugap::history
