#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ugap/balance.hpp"
#include "ugap/log2.hpp"
#include "ugap/qpe.hpp"
#include "ugap/spectra.hpp"

namespace ugap::history {

// Gate names: I, X, Y, Z, H, S, T, RY(theta), RZ(theta), PHASE(theta), with
// optional controls. Qubit 0 is the most significant bit.
struct Gate {
    std::string name;
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<double> params;

    Matrix local_matrix() const;
};

struct CircuitSpec {
    int n_qubits = 1;
    std::vector<Gate> gates;

    int steps() const { return static_cast<int>(gates.size()); }
    void validate() const;
    Matrix step_unitary(int step) const;  // full 2^n matrix of gate `step` (0-based)
};

CircuitSpec circuit_from_json(const nlohmann::json& j);

// Input penalty acts on clock states [0, t_init), output penalty on clock T.
// A zero weight switches a term off.
struct PenaltySpec {
    Matrix input_projector;
    Matrix output_projector;
    double input_weight = 0;
    double output_weight = 0;
    std::optional<int> t_init;
};

int default_t_init(int T);

// Clock states 0..T for T gates; basis index = t * 2^n + s.
struct HistoryState {
    int clock_states = 0;
    int n_qubits = 0;
    Eigen::VectorXcd amplitudes;
};

HistoryState history_state(const CircuitSpec& c, const qpe::StateVector& psi0);

HermitianOperator feynman_kitaev(const CircuitSpec& c, const PenaltySpec& p,
                                 std::int64_t max_dim = std::int64_t{1} << 16);

double gs_upper_bound(double eps, int T, int T_init);

struct LowerBoundFit {
    double constant = 0;  // min over samples of lambda_min * T^2
    double exponent = 0;  // least-squares slope of log lambda_min against log T
    std::vector<std::pair<int, double>> samples;
};

// Identity circuit on one qubit with the output penalty applied to every state.
LowerBoundFit fit_lower_bound_constant(const std::vector<int>& steps);

double ancilla_guard_overlap(double alpha, double eps);

struct EnergyBound {
    enum class Kind { Lower, Upper } kind = Kind::Lower;
    Log2 value;
};

EnergyBound hqtm_spectrum_case(const qpe::PhaseEncoding& enc, std::int64_t m, std::int64_t L, bool halting,
                               const balance::BalanceParams& params);

struct ClockLabel {
    std::string name;
    bool left_bracket = false;
    bool right_bracket = false;
};

struct TransitionRule {
    int from = 0;
    int to = 0;
    Matrix unitary;
};

struct TransitionSystem {
    std::vector<ClockLabel> clock;
    int n_qubits = 0;
    std::vector<TransitionRule> rules;
    std::set<int> illegal;
    std::vector<std::pair<int, Matrix>> penalties;  // positive semidefinite terms |t><t| (x) P

    void validate() const;  // throws StructuralError
};

TransitionSystem transition_system_from_json(const nlohmann::json& j);

HermitianOperator assemble_transition_system(const TransitionSystem& ts);

struct PartitionReport {
    std::vector<std::vector<int>> blocks;
    double max_offblock = 0;
    bool block_diagonal = false;
};

PartitionReport standard_form_partition(const TransitionSystem& ts);

struct ClairvoyanceResult {
    int category = 3;
    double lambda_min = 0;
    double certified_bound = 0;
    bool certified = false;
};

ClairvoyanceResult clairvoyance_classify(const TransitionSystem& ts, const std::vector<int>& subset);

}  // namespace ugap::history
