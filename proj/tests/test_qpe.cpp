#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ugap/errors.hpp"
#include "ugap/qpe.hpp"

using namespace ugap;
using namespace ugap::qpe;

namespace {

using M2 = Eigen::Matrix2cd;

// Independent gate-letter table for recomputing word products.
M2 letter(char c) {
    const double r = 1 / std::sqrt(2.0);
    const cplx w = std::polar(1.0, std::numbers::pi / 4);
    M2 m;
    switch (c) {
        case 'H': m << r, r, r, -r; break;
        case 'T': m << 1, 0, 0, w; break;
        case 't': m << 1, 0, 0, std::conj(w); break;
        case 'S': m << 1, 0, 0, cplx(0, 1); break;
        case 's': m << 1, 0, 0, cplx(0, -1); break;
        case 'X': m << 0, 1, 1, 0; break;
        default: ADD_FAILURE() << "letter " << c;
    }
    return m;
}

// Words apply left to right in time, so the matrix product is reversed.
M2 oracle_product(const std::string& word) {
    M2 p = M2::Identity();
    for (char c : word) p = letter(c) * p;
    return p;
}

double op_norm(const M2& m) { return Eigen::JacobiSVD<M2>(m).singularValues()(0); }

// Closed-form amplitude of outcome y for an unrepresentable phase.
cplx closed_form(double phi, int t, int y) {
    const double n = std::ldexp(1.0, t);
    const double d = phi - y / n;
    const cplx num = 1.0 - std::polar(1.0, 2 * std::numbers::pi * n * d);
    const cplx den = 1.0 - std::polar(1.0, 2 * std::numbers::pi * d);
    return num / (n * den);
}

}  // namespace

TEST(Qpe, UnaryEncoding) {
    EXPECT_DOUBLE_EQ(encode_unary(1), 0.5);
    EXPECT_DOUBLE_EQ(encode_unary(3), 0.125);
    for (int eta = 1; eta <= 20; ++eta) {
        double x = encode_unary(eta);
        for (int k = 1; k < eta; ++k) {
            x *= 2;
            EXPECT_LT(x, 1.0) << "digit " << k << " of eta " << eta;
        }
        EXPECT_DOUBLE_EQ(x * 2, 1.0);
    }
    EXPECT_THROW(encode_unary(0), ValidationError);
}

TEST(Qpe, WeightExamples) {
    auto b = qpe_weights(0.25, 2);
    EXPECT_EQ(b[1], cplx(1));
    EXPECT_EQ(b[0], cplx(0));
    b = qpe_weights(0.125, 2);
    const double expect0 = 0.25 * std::sin(std::numbers::pi / 2) / std::sin(std::numbers::pi / 8);
    EXPECT_NEAR(std::abs(b[0]), expect0, 1e-12);
    EXPECT_NEAR(std::abs(b[0]), 0.653281482438, 1e-11);
    EXPECT_GE(std::abs(b[0]), 0.5);
    b = qpe_weights(0.25 + 1.0 / 32, 2);
    const double expect1 = 0.25 * std::sin(std::numbers::pi / 8) / std::sin(std::numbers::pi / 32);
    EXPECT_NEAR(std::abs(b[1]), expect1, 1e-12);
    EXPECT_GE(std::abs(b[1]), 1 - 0.125);
}

TEST(Qpe, WeightsAreNormalizedAndMatchClosedForm) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 200; ++i) {
        const double phi = u(rng);
        const int t = 1 + i % 10;
        const auto b = qpe_weights(phi, t);
        double total = 0;
        for (std::size_t y = 0; y < b.size(); ++y) {
            total += std::norm(b[y]);
            EXPECT_LT(std::abs(b[y] - closed_form(phi, t, static_cast<int>(y))), 1e-10);
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(Qpe, ExactSimulationExamples) {
    auto s = qpe_exact_sim(0.25, 3);
    EXPECT_NEAR(std::abs(s.amplitudes[2]), 1.0, 1e-12);
    s = qpe_exact_sim(0.0, 4);
    EXPECT_NEAR(std::abs(s.amplitudes[0]), 1.0, 1e-12);
    EXPECT_THROW(qpe_exact_sim(0.1, 12), ResourceError);
}

TEST(Qpe, SimulationMatchesAnalyticWeights) {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 1; t <= 10; ++t)
        for (int rep = 0; rep < 4; ++rep) {
            const double phi = rep == 0 ? 0.125 : u(rng);
            const auto sim = qpe_exact_sim(phi, t);
            EXPECT_NEAR(sim.norm(), 1.0, 1e-12);
            const auto b = qpe_weights(phi, t);
            double worst = 0;
            for (std::size_t y = 0; y < b.size(); ++y) worst = std::max(worst, std::abs(sim.amplitudes[y] - b[y]));
            EXPECT_LT(worst, 1e-10) << t << " " << phi;
        }
}

TEST(Qpe, ShortRegisterKeepsHalfOnZero) {
    for (int eta = 2; eta <= 12; ++eta)
        for (int t = 1; t < eta && t <= 10; ++t)
            EXPECT_GE(std::abs(qpe_weights(encode_unary(eta), t)[0]), 0.5) << eta << " " << t;
}

TEST(Qpe, PredictedOverlapCases) {
    auto o = predicted_overlap(PhaseEncoding::exact(3), 5, 0);
    EXPECT_EQ(o.target, 0b00100u);
    EXPECT_DOUBLE_EQ(o.lower_bound, 1.0);
    PhaseEncoding pert{5, 2, encode_unary(5) + std::ldexp(1.0, -8)};
    o = predicted_overlap(pert, 3, 0);
    EXPECT_EQ(o.target, 0u);
    EXPECT_DOUBLE_EQ(o.lower_bound, 0.25);
    o = predicted_overlap(pert, 5, 0.01);
    EXPECT_DOUBLE_EQ(o.lower_bound, 0.75 - 0.01);
    EXPECT_THROW((PhaseEncoding{3, 1, 0.2}.validate()), ValidationError);
}

// The perturbed-phase lower bounds hold for registers of at most eta bits.
// Longer registers resolve the perturbation itself and the bound breaks.
TEST(Qpe, SimulatedOverlapMeetsPredictionUpToEtaBits) {
    for (int eta = 1; eta <= 10; ++eta)
        for (int ell = 1; ell <= 6; ++ell)
            for (double frac : {0.0, 0.3, 0.999}) {
                const double phi = encode_unary(eta) + frac * std::ldexp(1.0, -eta - ell);
                const PhaseEncoding enc{eta, ell, phi};
                for (int t = 1; t <= 10; ++t) {
                    if (t > eta) continue;
                    const auto o = predicted_overlap(enc, t, 0);
                    const double got = std::abs(qpe_exact_sim(phi, t).amplitudes[o.target]);
                    EXPECT_GE(got, o.lower_bound - 1e-12) << eta << " " << ell << " " << t << " " << frac;
                }
            }
}

TEST(Qpe, SynthesisExactCases) {
    auto g = sk_synthesize(std::numbers::pi / 4, 1e-3);
    EXPECT_EQ(g.word, "T");
    EXPECT_NEAR(g.achieved_error, 0.0, 1e-12);
    g = sk_synthesize(0.0, 1e-3);
    EXPECT_EQ(g.word, "");
    EXPECT_NEAR(g.achieved_error, 0.0, 1e-12);
}

TEST(Qpe, SynthesisMeetsRequestedError) {
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        for (int k = 2; k <= 6; ++k) {
            const double theta = 2 * std::numbers::pi / std::ldexp(1.0, k) + (k == 5 ? 0.0 : 0.01);
            const auto g = sk_synthesize(theta, eps);
            M2 target;
            target << 1, 0, 0, std::polar(1.0, theta);
            const double recomputed = op_norm(std::polar(1.0, g.global_phase) * oracle_product(g.word) - target);
            EXPECT_NEAR(recomputed, g.achieved_error, 1e-10);
            EXPECT_LE(recomputed, eps) << theta << " " << eps;
        }
    }
}

TEST(Qpe, SynthesisDepthBudgetExhaustion) {
    try {
        sk_synthesize(0.3, 1e-4, 0);
        FAIL() << "expected budget exhaustion";
    } catch (const BudgetExhausted<GateSequence>& e) {
        EXPECT_GT(e.partial().achieved_error, 1e-4);
        M2 target;
        target << 1, 0, 0, std::polar(1.0, 0.3);
        const auto& best = e.partial();
        EXPECT_NEAR(op_norm(std::polar(1.0, best.global_phase) * oracle_product(best.word) - target), best.achieved_error, 1e-10);
    }
}

TEST(Qpe, WordAlgebra) {
    EXPECT_EQ(simplify_word("TT"), "S");
    EXPECT_EQ(simplify_word("HTtH"), "");
    const std::string w = "HTHSHtX";
    const M2 p = oracle_product(w) * oracle_product(inverse_word(w));
    EXPECT_LT((p - M2::Identity()).norm(), 1e-12);
    EXPECT_LT(phase_invariant_distance(word_product(w), word_product(simplify_word(w))), 1e-12);
}

TEST(Qpe, ApproximateQpeWithinTriangleBudget) {
    auto r = qpe_approx_sim(0.3, 3, 1e-3);  // rotations are multiples of pi/4
    EXPECT_NEAR(r.operator_deviation, 0.0, 1e-12);
    r = qpe_approx_sim(0.0625 + 0.01, 4, 1e-3);
    EXPECT_NEAR(r.error_bound, 8e-3, 1e-15);
    EXPECT_LE(r.state_deviation, r.error_bound);
    EXPECT_LE(r.operator_deviation, r.error_bound);
    EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
}

TEST(Qpe, ApproximateShortRegisterOverlap) {
    const auto r = qpe_approx_sim(encode_unary(6), 4, 1e-2);
    EXPECT_GE(std::abs(r.state.amplitudes[0]), 0.5 - r.error_bound);
}

TEST(Qpe, DeltaBound) {
    auto d = delta_bound(std::int64_t{1} << 20, 100, 4, 1);
    EXPECT_NEAR(d.log(), std::log2(5000.0) - 32, 1e-12);
    EXPECT_NEAR(d.linear(), 5000 * std::ldexp(1.0, -32), 1e-15);
    d = delta_bound(16, 13, 4, 1);
    EXPECT_NEAR(d.linear(), 84.5 / 4, 1e-12);
    EXPECT_GT(d.linear(), 1.0);
    EXPECT_THROW(delta_bound(4, 5), ValidationError);
    for (std::int64_t L = 10; L < 1000; ++L) EXPECT_LT(delta_bound(L + 1, 10), delta_bound(L, 10));
}

TEST(Qpe, DeltaThresholdLength) {
    const Log2 target = Log2::from_linear(1e-3);
    const auto L0 = delta_threshold_length(13, target);
    EXPECT_LT(delta_bound(L0, 13), target);
    if (L0 > 13) {
        EXPECT_GE(delta_bound(L0 - 1, 13), target);
    }
    for (std::int64_t L = L0; L < L0 + 1000; L += 37) EXPECT_LT(delta_bound(L, 13), target);
}
