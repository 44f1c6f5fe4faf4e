#include "ugap/balance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ugap/errors.hpp"

namespace ugap::balance {

namespace {

// floor(x^{1/k}) for x >= 1, exact on perfect powers.
std::int64_t integer_root(std::int64_t x, int k) {
    auto r = static_cast<std::int64_t>(std::floor(std::pow(static_cast<long double>(x), 1.0L / k)));
    auto pow_le = [&](std::int64_t b) {
        long double acc = 1;
        for (int i = 0; i < k; ++i) acc *= static_cast<long double>(b);
        return acc <= static_cast<long double>(x);
    };
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

std::int64_t ceil_root(std::int64_t x, int k) {
    const auto r = integer_root(x, k);
    long double acc = 1;
    for (int i = 0; i < k; ++i) acc *= static_cast<long double>(r);
    return acc == static_cast<long double>(x) ? r : r + 1;
}

// x^{1/4} as a double, exact for perfect fourth powers.
double quarter_power(std::int64_t x) {
    const auto r = integer_root(x, 4);
    if (static_cast<long double>(r) * r * r * r == static_cast<long double>(x)) return static_cast<double>(r);
    return std::pow(static_cast<double>(x), 0.25);
}

void require_length(std::int64_t L) {
    if (L < 2) throw ValidationError("lattice length must be at least 2");
}

}  // namespace

HaltingOracle HaltingOracle::never() { return {"never", [](int) { return std::optional<std::int64_t>{}; }}; }

HaltingOracle HaltingOracle::always(std::int64_t length_factor) {
    return {"always", [length_factor](int eta) { return std::optional<std::int64_t>(length_factor * eta); }};
}

HaltingOracle HaltingOracle::halts_iff_even(std::int64_t length_factor) {
    return {"halts_iff_even", [length_factor](int eta) {
                return eta % 2 == 0 ? std::optional<std::int64_t>(length_factor * eta) : std::nullopt;
            }};
}

HaltingOracle HaltingOracle::by_name(const std::string& name, std::int64_t length_factor) {
    if (length_factor < 1) throw ValidationError("oracle length factor must be positive");
    if (name == "never") return never();
    if (name == "always") return always(length_factor);
    if (name == "halts_iff_even") return halts_iff_even(length_factor);
    throw ValidationError("unknown halting oracle '" + name + "'");
}

void BalanceParams::validate() const {
    if (!(xi >= 2)) throw ValidationError("xi must be at least 2");
    if (!(K1 > 0 && K2 > 0)) throw ValidationError("K1 and K2 must be positive");
    if (C < 1) throw ValidationError("C must be a positive integer");
    if (!(c1 > 0 && c2 > 0)) throw ValidationError("c1 and c2 must be positive");
    if (!oracle.halting_length) throw ValidationError("halting oracle is not set");
}

BalanceParams params_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known{"schema", "xi", "K1", "K2", "C", "c1", "c2", "oracle"};
    if (!j.is_object()) throw ValidationError("balance parameters must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ValidationError("unknown balance parameter '" + key + "'");
    if (j.contains("schema") && j.at("schema") != "ugap.balance/1")
        throw ValidationError("unsupported balance schema");
    BalanceParams p;
    try {
        p.xi = j.value("xi", p.xi);
        p.K1 = j.value("K1", p.K1);
        p.K2 = j.value("K2", p.K2);
        p.C = j.value("C", p.C);
        p.c1 = j.value("c1", p.c1);
        p.c2 = j.value("c2", p.c2);
        if (j.contains("oracle")) {
            const auto& o = j.at("oracle");
            for (const auto& [key, _] : o.items())
                if (key != "name" && key != "length_factor") throw ValidationError("unknown oracle field '" + key + "'");
            p.oracle = HaltingOracle::by_name(o.at("name").get<std::string>(), o.value("length_factor", std::int64_t{2}));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("malformed balance parameters: ") + ex.what());
    }
    p.validate();
    return p;
}

RuntimeBounds clock_runtime_bounds(std::int64_t L, double xi) {
    require_length(L);
    if (!(xi >= 2)) throw ValidationError("xi must be at least 2");
    const double lg = std::log2(static_cast<double>(L));
    const Log2 lower = Log2::from_log(lg + static_cast<double>(L) * std::log2(xi));
    return {lower, lower * Log2::from_log(std::log2(lg))};
}

std::int64_t ell_threshold(std::int64_t L) {
    require_length(L);
    const double raw = quarter_power(L) - 2 * std::log2(static_cast<double>(L));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
}

PenaltyBounds penalty_bounds(std::int64_t L, std::int64_t ell, const BalanceParams& params) {
    require_length(L);
    params.validate();
    const double Ld = static_cast<double>(L), lg = std::log2(Ld), lxi = std::log2(params.xi);
    PenaltyBounds out;
    out.nonhalt_lower = Log2::from_log(std::log2(params.K1) - 2 * lg - 2 * Ld * lxi - 2 * std::log2(lg));
    out.halt_upper = Log2::from_log(std::log2(params.K2) - quarter_power(L) - 2 * Ld * lxi);
    out.halt_valid = ell >= ell_threshold(L);
    return out;
}

std::optional<std::int64_t> penalty_crossover(const BalanceParams& params, std::int64_t L_max) {
    require_length(L_max);
    std::optional<std::int64_t> start;
    for (std::int64_t L = L_max; L >= 2; --L) {
        const auto pb = penalty_bounds(L, 1, params);
        if (!(pb.nonhalt_lower > pb.halt_upper)) break;
        start = L;
    }
    return start;
}

Log2 edge_bonus(std::int64_t L, std::int64_t C) {
    if (L < 1 || C < 1) throw ValidationError("edge bonus needs positive L and C");
    return Log2::from_log(-2.0 * static_cast<double>(C) * static_cast<double>(L + ceil_root(L, 8)));
}

WindowReport falloff_window_check(std::int64_t C, std::int64_t L_lo, std::int64_t L_hi, const BalanceParams& params) {
    require_length(L_lo);
    if (L_hi < L_lo) throw ValidationError("empty L range");
    params.validate();
    std::vector<std::int64_t> grid;
    for (std::int64_t L = L_lo; L <= std::min<std::int64_t>(L_hi, 100000); ++L) grid.push_back(L);
    for (double x = std::max<double>(100001, static_cast<double>(L_lo)); x <= static_cast<double>(L_hi); x *= 1.001)
        grid.push_back(static_cast<std::int64_t>(x));
    if (grid.back() != L_hi) grid.push_back(L_hi);

    WindowReport rep;
    std::int64_t run_start = -1;
    std::size_t run_len = 0, best_len = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto L = grid[i];
        const auto pb = penalty_bounds(L, 1, params);
        WindowRow row;
        row.L = L;
        row.bonus_log2 = edge_bonus(L, C).log();
        row.nonhalt_log2 = pb.nonhalt_lower.log();
        row.halt_log2 = pb.halt_upper.log();
        row.below_nonhalt = row.bonus_log2 < row.nonhalt_log2;
        row.above_halt = row.bonus_log2 > row.halt_log2;
        rep.upper_violations += !row.below_nonhalt;
        rep.lower_violations += !row.above_halt;
        if (row.below_nonhalt && row.above_halt) {
            if (run_len == 0) run_start = static_cast<std::int64_t>(i);
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                rep.satisfied = std::make_pair(grid[static_cast<std::size_t>(run_start)], L);
            }
        } else {
            run_len = 0;
        }
        rep.rows.push_back(row);
    }
    auto excess = [&](std::int64_t L) {
        return static_cast<double>(C) * static_cast<double>(L + ceil_root(L, 8)) -
               static_cast<double>(L) * std::log2(params.xi);
    };
    const auto first = grid.front(), last = grid.back();
    rep.excess_over_log_first = excess(first) / std::log2(static_cast<double>(first));
    rep.excess_over_log_last = excess(last) / std::log2(static_cast<double>(last));
    rep.excess_over_quarter_first = excess(first) / quarter_power(first);
    rep.excess_over_quarter_last = excess(last) / quarter_power(last);
    return rep;
}

SquareEnergy square_energy(std::int64_t s, const qpe::PhaseEncoding& enc, const BalanceParams& params) {
    require_length(s);
    enc.validate();
    const std::int64_t ell = enc.is_exact() ? std::numeric_limits<std::int64_t>::max() : enc.ell;
    const auto pb = penalty_bounds(s, ell, params);
    SquareEnergy out;
    out.edge_log2 = edge_bonus(s, params.C).log();
    const double bonus_max_log2 = std::log2(3.0) + out.edge_log2;
    const auto halting = params.oracle.halting_length(enc.eta);
    if (s < enc.eta || !halting || *halting > s) {
        out.sign = Sign::Nonnegative;
        out.pen_log2 = pb.nonhalt_lower.log();
        out.certified = out.pen_log2 >= bonus_max_log2;
    } else if (pb.halt_valid) {
        out.sign = Sign::Negative;
        out.pen_log2 = pb.halt_upper.log();
        out.certified = out.pen_log2 < out.edge_log2;
    } else {
        out.sign = Sign::Nonnegative;
        out.pen_log2 = pb.halt_upper.log();
        out.certified = false;
    }
    return out;
}

Sign square_energy_sign(std::int64_t s, const qpe::PhaseEncoding& enc, const BalanceParams& params) {
    return square_energy(s, enc, params).sign;
}

double lattice_energy(std::int64_t L, std::int64_t H, std::int64_t w, double per_square) {
    if (w < 1) throw ValidationError("square size must be at least 1");
    if (L < 0 || H < 0) throw ValidationError("lattice extents must be nonnegative");
    return static_cast<double>((L / w) * (H / w)) * per_square;
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::Gapped: return "Gapped";
        case Phase::Gapless: return "Gapless";
        case Phase::OutsideCertifiedInterval: return "OutsideCertifiedInterval";
    }
    return "?";
}

std::int64_t certified_ell(int eta, const BalanceParams& params) {
    const auto halting = params.oracle.halting_length(eta);
    if (!halting) return 1;
    return ell_threshold(std::max<std::int64_t>(*halting, 2));
}

PhaseVerdict classify_phase(double phi_prime, const BalanceParams& params, std::int64_t s_max) {
    if (!(phi_prime >= 0 && phi_prime <= 1)) throw ValidationError("phi_prime must lie in [0, 1]");
    require_length(s_max);
    params.validate();
    PhaseVerdict v;
    if (phi_prime == 0) return v;
    int exponent = 0;
    std::frexp(phi_prime, &exponent);
    v.eta = 1 - exponent;
    if (v.eta < 1) return v;
    const auto ell_star = certified_ell(v.eta, params);
    v.interval_lo = std::ldexp(1.0, -v.eta);
    v.interval_hi = v.interval_lo + std::ldexp(1.0, -v.eta - static_cast<int>(std::min<std::int64_t>(ell_star, 1000)));
    if (!(phi_prime >= v.interval_lo && phi_prime < v.interval_hi)) return v;

    // Largest ell whose interval still contains phi_prime.
    qpe::PhaseEncoding enc{v.eta, 1, phi_prime};
    if (!enc.is_exact()) {
        const double offset = phi_prime - v.interval_lo;
        enc.ell = std::max(1, static_cast<int>(std::floor(-std::log2(offset))) - v.eta);
        while (phi_prime >= v.interval_lo + std::ldexp(1.0, -v.eta - enc.ell)) --enc.ell;
    }
    v.classification = Phase::Gapped;
    for (std::int64_t s = 2; s <= s_max; ++s) {
        const auto e = square_energy(s, enc, params);
        if (e.sign == Sign::Negative) {
            v.classification = Phase::Gapless;
            v.witness_w = s;
            v.edge_log2 = e.edge_log2;
            v.pen_log2 = e.pen_log2;
            return v;
        }
    }
    const auto probe = square_energy(std::clamp<std::int64_t>(v.eta, 2, s_max), enc, params);
    v.edge_log2 = probe.edge_log2;
    v.pen_log2 = probe.pen_log2;
    return v;
}

}  // namespace ugap::balance
