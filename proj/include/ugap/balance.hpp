#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ugap/log2.hpp"
#include "ugap/qpe.hpp"

namespace ugap::balance {

// Decidable stand-in for the halting question: returns the tape length on
// which the machine halts for input eta, or nothing if it never halts.
struct HaltingOracle {
    std::string name = "never";
    std::function<std::optional<std::int64_t>(int eta)> halting_length;

    static HaltingOracle never();
    static HaltingOracle always(std::int64_t length_factor = 2);
    static HaltingOracle halts_iff_even(std::int64_t length_factor = 2);
    static HaltingOracle by_name(const std::string& name, std::int64_t length_factor = 2);
};

struct BalanceParams {
    double xi = 5;
    double K1 = 1;
    double K2 = 1;
    std::int64_t C = 1;
    double c1 = 3.99;
    double c2 = 1;
    HaltingOracle oracle = HaltingOracle::never();

    void validate() const;
};

BalanceParams params_from_json(const nlohmann::json& j);

struct RuntimeBounds {
    Log2 lower;
    Log2 upper;
};

RuntimeBounds clock_runtime_bounds(std::int64_t L, double xi);

std::int64_t ell_threshold(std::int64_t L);

struct PenaltyBounds {
    Log2 nonhalt_lower;
    Log2 halt_upper;
    bool halt_valid = true;  // false when ell is below ell_threshold(L)
};

PenaltyBounds penalty_bounds(std::int64_t L, std::int64_t ell, const BalanceParams& params);

// Smallest L in [2, L_max] from which nonhalt_lower > halt_upper holds up to L_max.
std::optional<std::int64_t> penalty_crossover(const BalanceParams& params, std::int64_t L_max);

// Edge bonus magnitude 4^{-C(L + ceil(L^{1/8}))}.
Log2 edge_bonus(std::int64_t L, std::int64_t C);

struct WindowRow {
    std::int64_t L = 0;
    double bonus_log2 = 0;
    double nonhalt_log2 = 0;
    double halt_log2 = 0;
    bool below_nonhalt = false;  // bonus < nonhalt_lower
    bool above_halt = false;     // bonus > halt_upper
};

struct WindowReport {
    std::vector<WindowRow> rows;
    std::optional<std::pair<std::int64_t, std::int64_t>> satisfied;  // longest satisfied run
    std::int64_t upper_violations = 0;  // bonus too large
    std::int64_t lower_violations = 0;  // bonus too small
    // Excess exponent e(L) = f(L) - L log2(xi): ratios e/log2(L) and e/L^{1/4}
    // at the first and last sampled L.
    double excess_over_log_first = 0, excess_over_log_last = 0;
    double excess_over_quarter_first = 0, excess_over_quarter_last = 0;
};

// Scans every integer up to 10^5 and a geometric grid (ratio 1.001) beyond.
WindowReport falloff_window_check(std::int64_t C, std::int64_t L_lo, std::int64_t L_hi, const BalanceParams& params);

enum class Sign { Nonnegative, Negative };

struct SquareEnergy {
    Sign sign = Sign::Nonnegative;
    bool certified = false;  // log-domain bounds agree with the sign
    double edge_log2 = 0;    // log2 of the bonus magnitude
    double pen_log2 = 0;     // log2 of the penalty bound used for this case
};

SquareEnergy square_energy(std::int64_t s, const qpe::PhaseEncoding& enc, const BalanceParams& params);
Sign square_energy_sign(std::int64_t s, const qpe::PhaseEncoding& enc, const BalanceParams& params);

double lattice_energy(std::int64_t L, std::int64_t H, std::int64_t w, double per_square);

enum class Phase { Gapped, Gapless, OutsideCertifiedInterval };
std::string to_string(Phase p);

struct PhaseVerdict {
    Phase classification = Phase::OutsideCertifiedInterval;
    int eta = 0;
    double interval_lo = 0;
    double interval_hi = 0;
    std::optional<std::int64_t> witness_w;
    double edge_log2 = 0;
    double pen_log2 = 0;
};

// Certified width exponent ell*(eta): ell_threshold of the halting length,
// or 1 when the oracle never halts.
std::int64_t certified_ell(int eta, const BalanceParams& params);

PhaseVerdict classify_phase(double phi_prime, const BalanceParams& params, std::int64_t s_max);

}  // namespace ugap::balance
