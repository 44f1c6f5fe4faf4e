#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ugap/kernels.hpp"
#include "ugap/log2.hpp"

namespace ugap::qpe {

using cplx = std::complex<double>;
using Gate2 = kernels::Gate2;

inline constexpr int kMaxSimQubits = 12;
inline constexpr double kNormTol = 1e-12;

// Qubit 0 is the most significant bit of the basis index.
struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    static StateVector basis(int n_qubits, std::uint64_t index);
    double norm() const;
    void validate() const;
};

struct PhaseEncoding {
    int eta = 1;
    int ell = 1;
    double phi_prime = 0.5;

    static PhaseEncoding exact(int eta, int ell = 1);
    bool is_exact() const;
    void validate() const;
};

double encode_unary(int eta);

// Register amplitudes after ideal phase estimation of phase phi with t bits,
// indexed by register value. Exactly representable phases give a delta.
std::vector<cplx> qpe_weights(double phi, int t);

// Register qubits 0..t-1, eigenstate ancilla last. Returns the register state.
StateVector qpe_exact_sim(double phi, int t);

// Word over {H, T, t = T^dagger, S, s = S^dagger, X}. `global_phase` is the
// phase g minimizing |e^{ig} * product - target|; `achieved_error` is that norm.
struct GateSequence {
    std::string word;
    Gate2 target{};
    double global_phase = 0;
    double achieved_error = 0;

    GateSequence() = default;
    GateSequence(std::string word, const Gate2& target);
    Gate2 product() const;
    Gate2 corrected_product() const;
};

Gate2 word_product(const std::string& word);
std::string inverse_word(const std::string& word);
std::string simplify_word(std::string word);
Gate2 phase_gate(double theta);
double phase_invariant_distance(const Gate2& a, const Gate2& b);

// Solovay-Kitaev synthesis of diag(1, e^{i theta}). Throws
// BudgetExhausted<GateSequence> with the best sequence if the depth budget is
// too small for epsilon.
GateSequence sk_synthesize(double theta, double epsilon, int depth_budget = 6);

// Least-squares slope of log(word length) against log(log(1/eps)).
double sk_length_exponent(double theta, const std::vector<double>& epsilons, int depth_budget = 6);

// 2^t x 2^t unitary of the inverse QFT; with `epsilon > 0` every controlled
// rotation is replaced by its synthesized word.
Eigen::MatrixXcd inverse_qft_unitary(int t, double epsilon = 0);

struct ApproxResult {
    StateVector state;
    double error_bound = 0;     // (t^2 / 2) * epsilon
    double state_deviation = 0; // |approx - exact| for this input
    double operator_deviation = 0;
};

ApproxResult qpe_approx_sim(double phi, int t, double epsilon);

// log2 of m^2/2 * 2^{-c2 L^{1/c1}}.
Log2 delta_bound(std::int64_t L, std::int64_t m, double c1 = 3.99, double c2 = 1.0);

// Smallest L >= m with delta_bound(L', m) < delta0 for every L' >= L.
std::int64_t delta_threshold_length(std::int64_t m, Log2 delta0, double c1 = 3.99, double c2 = 1.0);

struct Overlap {
    std::uint64_t target = 0;
    double lower_bound = 0;
};

Overlap predicted_overlap(const PhaseEncoding& enc, int t, double delta);

}  // namespace ugap::qpe
