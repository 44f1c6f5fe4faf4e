#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ugap/balance.hpp"
#include "ugap/errors.hpp"
#include "ugap/spectra.hpp"

using namespace ugap;
using namespace ugap::balance;

namespace {

BalanceParams with_oracle(HaltingOracle o) {
    BalanceParams p;
    p.oracle = std::move(o);
    return p;
}

// Counts complete w x w squares of a corner-at-origin grid by walking cells.
std::int64_t count_squares(std::int64_t L, std::int64_t H, std::int64_t w) {
    std::int64_t n = 0;
    for (std::int64_t x = 0; x + w <= L; x += w)
        for (std::int64_t y = 0; y + w <= H; y += w) ++n;
    return n;
}

}  // namespace

TEST(Balance, ClockRuntime) {
    const auto b = clock_runtime_bounds(10, 2);
    EXPECT_NEAR(b.lower.log(), std::log2(10.0) + 10, 1e-12);
    EXPECT_NEAR((b.upper / b.lower).linear(), std::log2(10.0), 1e-12);
    for (std::int64_t L = 2; L < 100; ++L) EXPECT_LT(clock_runtime_bounds(L, 5).lower, clock_runtime_bounds(L + 1, 5).lower);
    EXPECT_THROW(clock_runtime_bounds(1, 5), ValidationError);
}

TEST(Balance, EllThreshold) {
    EXPECT_EQ(ell_threshold(16), 1);
    EXPECT_EQ(ell_threshold(std::int64_t{1} << 28), 72);
    std::int64_t prev = ell_threshold(256);
    for (std::int64_t L = 257; L < 200000; L += 97) {
        const auto cur = ell_threshold(L);
        EXPECT_GE(cur, prev) << L;
        prev = cur;
    }
}

TEST(Balance, PenaltyBounds) {
    const BalanceParams p;
    const auto a = penalty_bounds(64, 1, p);
    EXPECT_TRUE(a.halt_valid);
    const auto big = std::int64_t{1} << 28;
    EXPECT_FALSE(penalty_bounds(big, 10, p).halt_valid);
    EXPECT_TRUE(penalty_bounds(big, 72, p).halt_valid);

    BalanceParams q = p;
    q.xi = 9;
    for (std::int64_t L : {4, 50, 1000}) {
        const auto x = penalty_bounds(L, 1, p), y = penalty_bounds(L, 1, q);
        EXPECT_NEAR(x.nonhalt_lower.log() - x.halt_upper.log(), y.nonhalt_lower.log() - y.halt_upper.log(), 1e-9);
    }
    const std::int64_t top = std::int64_t{1} << 24;
    const auto cross = penalty_crossover(p, top);
    ASSERT_TRUE(cross.has_value());
    EXPECT_GT(*cross, std::int64_t{1} << 22);
    for (std::int64_t L = *cross; L <= top; L += 4099) {
        const auto pb = penalty_bounds(L, 1, p);
        EXPECT_GT(pb.nonhalt_lower, pb.halt_upper) << L;
    }
    const auto before = penalty_bounds(*cross - 1, 1, p);
    EXPECT_LE(before.nonhalt_lower, before.halt_upper);
}

TEST(Balance, EdgeBonusDecreases) {
    for (std::int64_t s = 1; s < 5000; ++s) EXPECT_LT(edge_bonus(s + 1, 1), edge_bonus(s, 1));
    EXPECT_DOUBLE_EQ(edge_bonus(2, 1).log(), -8.0);
    EXPECT_DOUBLE_EQ(edge_bonus(256, 1).log(), -516.0);
}

TEST(Balance, WindowEmptyForDefaultClockBase) {
    const auto rep = falloff_window_check(1, 2, 100000, BalanceParams{});
    EXPECT_FALSE(rep.satisfied.has_value());
    EXPECT_GT(rep.upper_violations, 0);
}

TEST(Balance, WindowOpensWhenClockBaseMatchesFalloff) {
    BalanceParams p;
    p.xi = 2;
    // Log2 magnitudes near 2^53 lose unit resolution, so the scan stops at 2^50.
    const auto rep = falloff_window_check(1, std::int64_t{1} << 20, std::int64_t{1} << 50, p);
    ASSERT_TRUE(rep.satisfied.has_value());
    EXPECT_GT(rep.satisfied->first, std::int64_t{1} << 44);
    EXPECT_LT(rep.satisfied->first, std::int64_t{1} << 47);
    EXPECT_EQ(rep.satisfied->second, std::int64_t{1} << 50);
    EXPECT_GT(rep.excess_over_log_last, rep.excess_over_log_first);
    EXPECT_LT(rep.excess_over_quarter_last, rep.excess_over_quarter_first);
}

TEST(Balance, LargeFalloffConstantViolatesLowerSide) {
    const auto rep = falloff_window_check(3, 2, 5000, BalanceParams{});
    EXPECT_GT(rep.lower_violations, 0);
}

TEST(Balance, SquareEnergySigns) {
    const auto p = with_oracle(HaltingOracle::always(2));
    const auto enc = qpe::PhaseEncoding::exact(4);
    EXPECT_EQ(square_energy_sign(3, enc, p), Sign::Nonnegative);  // s < eta
    EXPECT_EQ(square_energy_sign(7, enc, p), Sign::Nonnegative);  // halts only on 8 cells
    EXPECT_EQ(square_energy_sign(8, enc, p), Sign::Negative);
    EXPECT_EQ(square_energy_sign(20, enc, with_oracle(HaltingOracle::never())), Sign::Nonnegative);

    // The minimizing square is the halting size: later squares have weaker bonuses.
    std::optional<std::int64_t> first;
    for (std::int64_t s = 2; s <= 40; ++s)
        if (square_energy_sign(s, enc, p) == Sign::Negative && !first) first = s;
    EXPECT_EQ(first, 8);
    EXPECT_GT(edge_bonus(8, 1), edge_bonus(9, 1));
}

TEST(Balance, LatticeEnergy) {
    EXPECT_DOUBLE_EQ(lattice_energy(10, 10, 3, -0.5), 9 * -0.5);
    EXPECT_DOUBLE_EQ(lattice_energy(5, 5, 6, -1), 0.0);
    EXPECT_DOUBLE_EQ(lattice_energy(5, 5, 2, 0), 0.0);
    std::mt19937 rng(12);
    std::uniform_int_distribution<std::int64_t> side(1, 60), w(1, 20);
    for (int i = 0; i < 50; ++i) {
        const auto L = side(rng), H = side(rng), ww = w(rng);
        EXPECT_DOUBLE_EQ(lattice_energy(L, H, ww, -1.25), -1.25 * static_cast<double>(count_squares(L, H, ww)));
    }
}

TEST(Balance, ClassifierExamples) {
    auto v = classify_phase(0.125, with_oracle(HaltingOracle::never()), 64);
    EXPECT_EQ(v.classification, Phase::Gapped);
    EXPECT_EQ(v.eta, 3);
    v = classify_phase(0.125, with_oracle(HaltingOracle::always(2)), 64);
    EXPECT_EQ(v.classification, Phase::Gapless);
    EXPECT_EQ(v.witness_w, 6);
    v = classify_phase(0.125 - 1e-6, with_oracle(HaltingOracle::never()), 64);
    EXPECT_EQ(v.classification, Phase::OutsideCertifiedInterval);
    EXPECT_THROW(classify_phase(1.5, BalanceParams{}, 64), ValidationError);
}

TEST(Balance, ClassifierConstantOnCertifiedIntervals) {
    const auto p = with_oracle(HaltingOracle::halts_iff_even(2));
    for (int eta = 1; eta <= 8; ++eta) {
        const auto base = classify_phase(std::ldexp(1.0, -eta), p, 64);
        ASSERT_NE(base.classification, Phase::OutsideCertifiedInterval);
        for (int k = 1; k <= 10; ++k) {
            const double phi = base.interval_lo + (base.interval_hi - base.interval_lo) * k / 11.0;
            EXPECT_EQ(classify_phase(phi, p, 64).classification, base.classification) << eta << " " << k;
        }
        EXPECT_EQ(base.classification, eta % 2 == 0 ? Phase::Gapless : Phase::Gapped);
    }
}

// Each square contributes its energy sign; the composed spectrum's minimum
// sits below zero exactly when some square size is negative.
TEST(Balance, SquareSignsAgreeWithComposedSpectrum) {
    for (const auto& oracle : {HaltingOracle::never(), HaltingOracle::always(2), HaltingOracle::halts_iff_even(2)})
        for (int eta = 1; eta <= 5; ++eta) {
            const auto p = with_oracle(oracle);
            const auto enc = qpe::PhaseEncoding::exact(eta);
            std::vector<double> lattice;
            bool any_negative = false;
            for (std::int64_t w = 2; w <= 12; ++w) {
                const double per = square_energy_sign(w, enc, p) == Sign::Negative ? -1.0 : 1.0;
                any_negative |= per < 0;
                lattice.push_back(lattice_energy(24, 24, w, per));
            }
            const auto composed = compose_undec_spectrum(Spectrum({*std::min_element(lattice.begin(), lattice.end())}, 1),
                                                         Spectrum({0}, 1), 1.0);
            EXPECT_EQ(composed.min() < 0, any_negative) << oracle.name << " " << eta;
        }
}

TEST(Balance, ParamsJson) {
    const auto p = params_from_json(nlohmann::json::parse(R"({"xi": 3, "C": 2, "oracle": {"name": "always", "length_factor": 3}})"));
    EXPECT_EQ(p.xi, 3);
    EXPECT_EQ(p.C, 2);
    EXPECT_EQ(p.oracle.halting_length(2), 6);
    EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"zeta": 1})")), ValidationError);
    EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"xi": 1})")), ValidationError);
    EXPECT_THROW(params_from_json(nlohmann::json::parse(R"({"oracle": {"name": "sometimes"}})")), ValidationError);
}

TEST(Balance, LogDomainRoundTrip) {
    for (double x : {1e-300, 1e-20, 0.5, 1.0, 3.0, 1e200}) EXPECT_NEAR(Log2::from_linear(x).linear() / x, 1.0, 1e-12);
    const Log2 tiny = Log2::from_log(-5000);
    EXPECT_FALSE(tiny.is_zero());
    EXPECT_NEAR((tiny * tiny).log(), -10000, 1e-9);
    EXPECT_NEAR((Log2::from_linear(3) - Log2::from_linear(1)).linear(), 2.0, 1e-12);
    EXPECT_NEAR((Log2::from_linear(3) + Log2::from_linear(1)).linear(), 4.0, 1e-12);
}
