#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "ugap/balance.hpp"
#include "ugap/cli.hpp"
#include "ugap/errors.hpp"
#include "ugap/history.hpp"
#include "ugap/marker.hpp"
#include "ugap/qpe.hpp"
#include "ugap/spectra.hpp"
#include "ugap/tiles.hpp"

namespace ugap::cli {

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
    auto parse = [&](const std::string& part) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw ValidationError("malformed range '" + s + "'");
        return static_cast<std::int64_t>(v);
    };
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        auto v = parse(s);
        return {v, v};
    }
    auto lo = parse(s.substr(0, dots)), hi = parse(s.substr(dots + 2));
    if (hi < lo) throw ValidationError("empty range '" + s + "'");
    return {lo, hi};
}

namespace {

constexpr std::int64_t kDefaultBudget = 50'000'000;

std::int64_t effective_budget(std::int64_t flag) {
    if (const char* env = std::getenv("UGAP_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw ValidationError("UGAP_BUDGET is not an integer");
        }
    }
    return flag;
}

tiles::TileSet tileset_by_name(const std::string& name) {
    if (name == "checkerboard") return tiles::checkerboard_tileset(false);
    if (name == "checkerboard-constrained") return tiles::checkerboard_tileset(true);
    if (name == "augmented-semantic") return tiles::augmented_checkerboard_tileset(tiles::AugmentMode::Semantic);
    if (name == "augmented-full") return tiles::augmented_checkerboard_tileset(tiles::AugmentMode::Full);
    throw ValidationError("unknown tileset '" + name + "'");
}

std::string cells_text(const tiles::Tiling& t) {
    std::string s;
    for (std::size_t i = 0; i < t.cells.size(); ++i) s += (i ? " " : "") + std::to_string(t.cells[i]);
    return s;
}

int exit_code(const std::string& kind) {
    if (kind == "validation") return 2;
    if (kind == "resource") return 3;
    if (kind == "structural") return 4;
    if (kind == "budget") return 5;
    if (kind == "convergence") return 6;
    return 1;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    err << j.dump() << "\n";
}

struct Output {
    std::string out;
    std::string format = "csv";
};

void emit(const io::Table& t, const Output& o, std::ostream& out) {
    auto f = io::parse_format(o.format);
    if (o.out.empty())
        out << io::render(t, f);
    else
        io::write_report(t, f, o.out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-size checks for spectral-gap undecidability constructions", "ugap"};
    app.require_subcommand(1);
    Output o;
    std::int64_t budget = kDefaultBudget;
    bool verbose = false;
    app.add_option("--out", o.out, "Write the report to this path instead of stdout");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--budget", budget, "Node or dimension budget (UGAP_BUDGET overrides)");
    app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

    std::function<void()> action;

    // tiles
    auto* tiles_cmd = app.add_subcommand("tiles", "Wang tile enumeration and audits");
    tiles_cmd->require_subcommand(1);
    std::string tileset = "checkerboard-constrained";
    int L = 3;
    auto* enumerate = tiles_cmd->add_subcommand("enumerate", "All minimum-score tilings of an L x L square");
    enumerate->add_option("--tileset", tileset, "checkerboard, checkerboard-constrained, augmented-semantic, augmented-full");
    enumerate->add_option("--L", L, "Lattice side")->check(CLI::Range(1, 12));
    enumerate->callback([&] {
        action = [&] {
            auto ts = tileset_by_name(tileset);
            auto r = tiles::enumerate_min_tilings(ts, L, effective_budget(budget));
            spdlog::info("enumerated {} tilings in {} nodes", r.tilings.size(), r.nodes);
            io::Table t({"index", "score", "cells"});
            for (std::size_t i = 0; i < r.tilings.size(); ++i)
                t.add_row({static_cast<std::int64_t>(i), r.min_score, cells_text(r.tilings[i])});
            emit(t, o, out);
        };
    });
    std::string tiling_path;
    auto* audit = tiles_cmd->add_subcommand("audit", "Certify edge/corner pairs or locate their penalties");
    audit->add_option("--tileset", tileset, "Augmented tileset name")->default_val("augmented-semantic");
    audit->add_option("--tiling", tiling_path, "Tiling JSON {width, height, cells}");
    audit->add_option("--L", L, "Audit every ground tiling of this size instead")->check(CLI::Range(1, 8));
    audit->callback([&] {
        action = [&] {
            auto ts = tileset_by_name(tileset);
            std::vector<tiles::Tiling> list;
            if (!tiling_path.empty()) {
                std::ifstream is(tiling_path);
                if (!is) throw ValidationError("cannot read tiling '" + tiling_path + "'");
                list.push_back(tiles::tiling_from_json(nlohmann::json::parse(is)));
            } else {
                list = tiles::enumerate_min_tilings(ts, L, effective_budget(budget)).tilings;
            }
            io::Table t({"tiling", "pair_x", "pair_y", "certified", "side", "penalty_x", "penalty_y", "penalty"});
            for (std::size_t i = 0; i < list.size(); ++i)
                for (const auto& f : tiles::audit_markers(ts, list[i]))
                    t.add_row({static_cast<std::int64_t>(i), static_cast<std::int64_t>(f.pair_x),
                               static_cast<std::int64_t>(f.pair_y), f.certified, static_cast<std::int64_t>(f.side),
                               static_cast<std::int64_t>(f.penalty ? f.penalty->x : -1),
                               static_cast<std::int64_t>(f.penalty ? f.penalty->y : -1),
                               f.penalty ? f.penalty->weight : std::int64_t{0}});
            emit(t, o, out);
        };
    });

    // marker
    auto* marker_cmd = app.add_subcommand("marker", "Marker matrix bounds and segment energies");
    marker_cmd->require_subcommand(1);
    std::string w_range = "1..8";
    auto* bounds = marker_cmd->add_subcommand("bounds", "Eigenvalue bounds for the marker matrix");
    bounds->add_option("--w", w_range, "Width or range a..b");
    bounds->callback([&] {
        action = [&] {
            auto [lo, hi] = parse_range(w_range);
            if (lo < 1 || hi > 4096) throw ValidationError("w must lie in 1..4096");
            io::Table t({"w", "lower", "lambda_min", "upper", "contained"});
            for (auto w = lo; w <= hi; ++w) {
                auto b = marker::lambda_min_bounds(static_cast<int>(w));
                double lm = marker::lambda_min(static_cast<int>(w));
                t.add_row({w, b.lower, lm, b.upper, b.lower < lm && lm < b.upper});
            }
            emit(t, o, out);
        };
    });
    marker::FalloffSpec seg;
    int padding = 0;
    auto* segment = marker_cmd->add_subcommand("segment", "Segment energy for falloff f = C(L + r)");
    segment->add_option("--C", seg.C)->default_val(1);
    segment->add_option("--L", seg.L)->default_val(4);
    segment->add_option("--r", seg.r)->default_val(2);
    segment->add_option("--padding", padding)->default_val(0);
    segment->callback([&] {
        action = [&] {
            seg.validate();
            auto e = marker::edge_energy_bounds(seg);
            io::Table t({"C", "L", "r", "f", "segment_energy", "edge_lower_mag_log2", "edge_upper_mag_log2"});
            double energy = seg.f() <= marker::kMaxSegmentF ? marker::segment_energy(seg) : std::nan("");
            t.add_row({seg.C, seg.L, seg.r, seg.f(), energy, e.lower_mag.log(), e.upper_mag.log()});
            emit(t, o, out);
        };
    });

    // qpe
    auto* qpe_cmd = app.add_subcommand("qpe", "Phase estimation and gate synthesis");
    qpe_cmd->require_subcommand(1);
    int eta = 3, t_bits = 2, ell = 1;
    std::optional<double> phi;
    auto* simulate = qpe_cmd->add_subcommand("simulate", "Analytic and simulated phase estimation amplitudes");
    simulate->add_option("--eta", eta)->check(CLI::Range(1, 30));
    simulate->add_option("--t", t_bits)->check(CLI::Range(1, qpe::kMaxSimQubits - 1));
    simulate->add_option("--ell", ell)->check(CLI::Range(1, 30));
    simulate->add_option("--phi", phi, "Perturbed phase; defaults to 2^-eta");
    simulate->callback([&] {
        action = [&] {
            qpe::PhaseEncoding enc{eta, ell, phi.value_or(qpe::encode_unary(eta))};
            enc.validate();
            auto beta = qpe::qpe_weights(enc.phi_prime, t_bits);
            auto sim = qpe::qpe_exact_sim(enc.phi_prime, t_bits);
            auto pred = qpe::predicted_overlap(enc, t_bits, 0.0);
            io::Table t({"k", "beta_re", "beta_im", "beta_abs", "sim_abs", "target", "overlap_bound"});
            for (std::size_t k = 0; k < beta.size(); ++k)
                t.add_row({static_cast<std::int64_t>(k), beta[k].real(), beta[k].imag(), std::abs(beta[k]),
                           std::abs(sim.amplitudes[k]), k == pred.target, pred.lower_bound});
            emit(t, o, out);
        };
    });
    double theta = std::numbers::pi / 8, eps = 1e-2;
    int depth = 6;
    auto* sk = qpe_cmd->add_subcommand("sk", "Synthesize a phase rotation over {H, T}");
    sk->add_option("--theta", theta);
    sk->add_option("--eps", eps);
    sk->add_option("--depth", depth)->check(CLI::Range(0, 12));
    sk->callback([&] {
        action = [&] {
            auto g = qpe::sk_synthesize(theta, eps, depth);
            io::Table t({"theta", "eps", "achieved_error", "length", "word"});
            t.add_row({theta, eps, g.achieved_error, static_cast<std::int64_t>(g.word.size()), g.word});
            emit(t, o, out);
        };
    });

    // history
    auto* history_cmd = app.add_subcommand("history", "History-state Hamiltonians");
    history_cmd->require_subcommand(1);
    int T = 8, k_eigs = 4;
    double hist_eps = 0.5, in_w = 1, out_w = 1;
    std::string circuit_path;
    auto* diag = history_cmd->add_subcommand("diag", "Lowest eigenvalues of a clock Hamiltonian");
    diag->add_option("--T", T, "Steps of the built-in test circuit")->check(CLI::Range(2, 512));
    diag->add_option("--eps", hist_eps, "Output violation probability of the built-in circuit")->check(CLI::Range(0.0, 1.0));
    diag->add_option("--circuit", circuit_path, "Circuit JSON {n, gates}");
    diag->add_option("--input-weight", in_w);
    diag->add_option("--output-weight", out_w);
    diag->add_option("--k", k_eigs)->check(CLI::Range(1, 64));
    diag->callback([&] {
        action = [&] {
            history::PenaltySpec p;
            p.input_weight = in_w;
            p.output_weight = out_w;
            history::CircuitSpec c;
            if (circuit_path.empty()) {
                c.n_qubits = 1;
                for (int i = 0; i + 1 < T; ++i) c.gates.push_back({"I", {0}, {}, {}});
                c.gates.push_back({"ROT", {0}, {}, {std::asin(std::sqrt(hist_eps))}});
            } else {
                std::ifstream is(circuit_path);
                if (!is) throw ValidationError("cannot read circuit '" + circuit_path + "'");
                c = history::circuit_from_json(nlohmann::json::parse(is));
            }
            const std::int64_t d = std::int64_t{1} << c.n_qubits;
            Matrix one = Matrix::Zero(d, d);
            for (std::int64_t i = d / 2; i < d; ++i) one(i, i) = 1;  // qubit 0 set
            Matrix in = Matrix::Identity(d, d);
            in(0, 0) = 0;  // anything but the all-zero input
            p.input_projector = circuit_path.empty() ? one : in;
            p.output_projector = one;
            auto h = history::feynman_kitaev(c, p, effective_budget(budget));
            auto s = eigen_spectrum(h, std::min<std::int64_t>(k_eigs, h.dim()));
            const int t_init = p.t_init.value_or(history::default_t_init(c.steps()));
            io::Table t({"index", "eigenvalue", "T", "t_init", "upper_bound"});
            for (std::size_t i = 0; i < s.size(); ++i) {
                double bound = circuit_path.empty() && i == 0 ? history::gs_upper_bound(hist_eps, c.steps(), t_init)
                                                               : std::nan("");
                t.add_row({static_cast<std::int64_t>(i), s.eigenvalues()[i], static_cast<std::int64_t>(c.steps()),
                           static_cast<std::int64_t>(t_init), bound});
            }
            emit(t, o, out);
        };
    });
    double alpha = 0.5;
    int grid = 0;
    auto* guard = history_cmd->add_subcommand("guard", "Ancilla guard overlap (3/4)(1 - alpha^2 eps^2)");
    guard->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0));
    guard->add_option("--eps", hist_eps)->check(CLI::Range(0.0, 1.0));
    guard->add_option("--grid", grid, "Sample an n x n grid over [0,1]^2 instead")->check(CLI::Range(0, 100));
    guard->callback([&] {
        action = [&] {
            io::Table t({"alpha", "eps", "overlap", "closed_form"});
            auto add = [&](double a, double e) {
                t.add_row({a, e, history::ancilla_guard_overlap(a, e), 0.75 * (1 - a * a * e * e)});
            };
            if (grid > 0)
                for (int i = 0; i < grid; ++i)
                    for (int j = 0; j < grid; ++j)
                        add(grid == 1 ? 1.0 : double(i) / (grid - 1), grid == 1 ? 1.0 : double(j) / (grid - 1));
            else
                add(alpha, hist_eps);
            emit(t, o, out);
        };
    });

    // balance
    auto* balance_cmd = app.add_subcommand("balance", "Energy balance and phase classification");
    balance_cmd->require_subcommand(1);
    std::string params_path;
    std::int64_t C = 1, L_lo = 2, L_hi = 4096, s_max = 64;
    auto load_params = [&] {
        if (params_path.empty()) return balance::BalanceParams{};
        std::ifstream is(params_path);
        if (!is) throw ValidationError("cannot read parameters '" + params_path + "'");
        auto j = nlohmann::json::parse(is);
        if (j.contains("schema") && j["schema"] == "ugap.sweep/1")
            return sweep_config_from_json(j, std::filesystem::path(params_path).parent_path()).params;
        return balance::params_from_json(j);
    };
    auto* window = balance_cmd->add_subcommand("window", "Scan the falloff window over a range of L");
    window->add_option("--config", params_path, "Balance parameters JSON");
    window->add_option("--C", C)->check(CLI::PositiveNumber);
    window->add_option("--L-lo", L_lo)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    window->add_option("--L-hi", L_hi)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    window->callback([&] {
        action = [&] {
            auto params = load_params();
            auto r = balance::falloff_window_check(C, L_lo, L_hi, params);
            io::Table t({"L", "bonus_log2", "nonhalt_log2", "halt_log2", "below_nonhalt", "above_halt"});
            for (const auto& row : r.rows)
                t.add_row({row.L, row.bonus_log2, row.nonhalt_log2, row.halt_log2, row.below_nonhalt, row.above_halt});
            if (r.satisfied)
                spdlog::info("window satisfied on [{}, {}]", r.satisfied->first, r.satisfied->second);
            else
                spdlog::info("window empty: {} upper and {} lower violations", r.upper_violations, r.lower_violations);
            emit(t, o, out);
        };
    });
    double phi_prime = 0.125;
    auto* classify = balance_cmd->add_subcommand("classify", "Classify one phase parameter");
    classify->add_option("--config", params_path, "Balance parameters JSON");
    classify->add_option("--phi", phi_prime)->check(CLI::Range(0.0, 1.0));
    classify->add_option("--s-max", s_max)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20));
    classify->callback([&] {
        action = [&] {
            auto v = balance::classify_phase(phi_prime, load_params(), s_max);
            io::Table t({"phi_prime", "eta", "interval_lo", "interval_hi", "verdict", "witness_w", "edge_log2", "pen_log2"});
            t.add_row({phi_prime, static_cast<std::int64_t>(v.eta), v.interval_lo, v.interval_hi,
                       balance::to_string(v.classification), v.witness_w ? *v.witness_w : std::int64_t{0}, v.edge_log2,
                       v.pen_log2});
            emit(t, o, out);
        };
    });

    // phase-diagram
    auto* pd = app.add_subcommand("phase-diagram", "Phase diagram data");
    pd->require_subcommand(1);
    std::string sweep_path;
    auto* sweep = pd->add_subcommand("sweep", "Classify a grid of phase parameters");
    sweep->add_option("--config", sweep_path, "Sweep config JSON (schema ugap.sweep/1)")->required();
    sweep->callback([&] {
        action = [&] {
            auto cfg = load_sweep_config(sweep_path);
            Output so = o;
            if (so.out.empty() && cfg.out) so.out = cfg.out->string();
            if (!app.get_option("--format")->count()) so.format = cfg.format == io::Format::Csv ? "csv" : "json";
            emit(phase_diagram(cfg), so, out);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    spdlog::logger logger("ugap", sink);
    try {
        app.parse(reversed);
        logger.set_level(verbose ? spdlog::level::info : spdlog::level::warn);
        auto previous = spdlog::default_logger();
        spdlog::set_default_logger(std::make_shared<spdlog::logger>(logger));
        struct Restore {
            std::shared_ptr<spdlog::logger> p;
            ~Restore() { spdlog::set_default_logger(p); }
        } restore{previous};
        if (action) action();
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return 2;
    } catch (const Error& e) {
        report_error(err, e.kind(), e.what());
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        report_error(err, "validation", std::string("malformed JSON: ") + e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error(err, "internal", e.what());
        return 1;
    }
}

}  // namespace ugap::cli
