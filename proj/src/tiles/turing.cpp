#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "ugap/errors.hpp"
#include "ugap/tiles.hpp"

namespace ugap::tiles {

void TMSpec::validate() const {
    if (alphabet.empty()) throw ValidationError("machine alphabet is empty");
    std::set<std::string> syms(alphabet.begin(), alphabet.end());
    std::set<std::string> qs(states.begin(), states.end());
    if (syms.size() != alphabet.size()) throw ValidationError("machine alphabet has duplicates");
    if (qs.size() != states.size()) throw ValidationError("machine states have duplicates");
    if (!syms.count(blank)) throw ValidationError("blank symbol '" + blank + "' is not in the alphabet");
    if (!qs.count(q0)) throw ValidationError("initial state '" + q0 + "' is unknown");
    if (!qs.count(qa)) throw ValidationError("accepting state '" + qa + "' is unknown");
    for (const auto& [key, tr] : delta) {
        if (!qs.count(key.first) || !qs.count(tr.next)) throw ValidationError("transition uses an unknown state");
        if (!syms.count(key.second) || !syms.count(tr.write)) throw ValidationError("transition uses an unknown symbol");
        if (key.first == qa) throw ValidationError("accepting state has an outgoing transition");
    }
    for (const auto& q : states) {
        if (q == qa) continue;
        for (const auto& c : alphabet)
            if (!delta.count({q, c}))
                throw ValidationError("transition function is not total: missing (" + q + ", " + c + ")");
    }
}

void TMSpec::complete_with_sink(const std::string& sink) {
    if (std::find(states.begin(), states.end(), sink) == states.end()) states.push_back(sink);
    for (const auto& q : states) {
        if (q == qa) continue;
        for (const auto& c : alphabet) delta.try_emplace({q, c}, Transition{sink, c, Move::Right});
    }
}

TMSpec tm_from_json(const nlohmann::json& j) {
    TMSpec tm;
    try {
        tm.alphabet = j.at("alphabet").get<std::vector<std::string>>();
        tm.states = j.at("states").get<std::vector<std::string>>();
        tm.q0 = j.at("q0").get<std::string>();
        tm.qa = j.at("qa").get<std::string>();
        tm.blank = j.at("blank").get<std::string>();
        for (const auto& row : j.at("delta")) {
            if (!row.is_array() || row.size() != 5) throw ValidationError("delta rows are [q, c, q', c', L|R]");
            auto dir = row[4].get<std::string>();
            if (dir != "L" && dir != "R") throw ValidationError("move must be L or R");
            auto [it, fresh] = tm.delta.try_emplace({row[0].get<std::string>(), row[1].get<std::string>()},
                                                    Transition{row[2].get<std::string>(), row[3].get<std::string>(),
                                                               dir == "L" ? Move::Left : Move::Right});
            if (!fresh) throw ValidationError("duplicate transition");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed machine: ") + e.what());
    }
    tm.validate();
    return tm;
}

nlohmann::json tm_to_json(const TMSpec& tm) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& [k, t] : tm.delta) d.push_back({k.first, k.second, t.next, t.write, t.move == Move::Left ? "L" : "R"});
    return {{"alphabet", tm.alphabet}, {"states", tm.states}, {"q0", tm.q0},
            {"qa", tm.qa},             {"blank", tm.blank},   {"delta", d}};
}

namespace {

struct Compiled {
    std::vector<std::string> syms, states;
    std::map<std::string, int> sym_id, state_id;
    int qa = 0, q0 = 0;
    struct Step {
        int next = -1, write = 0, dir = 1;
    };
    std::vector<Step> table;  // [state * |syms| + sym]

    explicit Compiled(const TMSpec& tm) : syms(tm.alphabet), states(tm.states) {
        for (std::size_t i = 0; i < syms.size(); ++i) sym_id[syms[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < states.size(); ++i) state_id[states[i]] = static_cast<int>(i);
        qa = state_id.at(tm.qa);
        q0 = state_id.at(tm.q0);
        table.resize(states.size() * syms.size());
        for (const auto& [k, t] : tm.delta)
            table[static_cast<std::size_t>(state_id.at(k.first)) * syms.size() + static_cast<std::size_t>(sym_id.at(k.second))] =
                {state_id.at(t.next), sym_id.at(t.write), t.move == Move::Left ? -1 : 1};
    }

    std::vector<int> encode(const std::vector<std::string>& tape) const {
        std::vector<int> out;
        out.reserve(tape.size());
        for (const auto& c : tape) {
            auto it = sym_id.find(c);
            if (it == sym_id.end()) throw ValidationError("tape symbol '" + c + "' is not in the alphabet");
            out.push_back(it->second);
        }
        return out;
    }

    Configuration decode(const std::vector<int>& tape, int head, int state) const {
        Configuration c;
        for (int s : tape) c.tape.push_back(syms[static_cast<std::size_t>(s)]);
        c.head = head;
        c.state = states[static_cast<std::size_t>(state)];
        return c;
    }

    // Advances one step; returns false when the head leaves the tape.
    bool step(std::vector<int>& tape, int& head, int& state) const {
        const auto& s = table[static_cast<std::size_t>(state) * syms.size() + static_cast<std::size_t>(tape[static_cast<std::size_t>(head)])];
        if (s.next < 0) throw StructuralError("machine has no transition for the current configuration");
        tape[static_cast<std::size_t>(head)] = s.write;
        state = s.next;
        head += s.dir;
        return head >= 0 && head < static_cast<int>(tape.size());
    }
};

}  // namespace

Trace run_tm(const TMSpec& tm, const std::vector<std::string>& tape, std::int64_t max_configs) {
    tm.validate();
    if (tape.empty()) throw ValidationError("tape is empty");
    if (max_configs < 1) throw ValidationError("max_configs must be at least 1");
    Compiled m(tm);
    auto t = m.encode(tape);
    int head = 0, state = m.q0;
    Trace tr;
    tr.configs.push_back(m.decode(t, head, state));
    while (true) {
        if (state == m.qa) {
            tr.status = RunStatus::Halted;
            return tr;
        }
        if (static_cast<std::int64_t>(tr.configs.size()) >= max_configs) {
            tr.status = RunStatus::StepLimit;
            return tr;
        }
        if (!m.step(t, head, state)) {
            tr.status = RunStatus::OutOfTape;
            return tr;
        }
        tr.configs.push_back(m.decode(t, head, state));
    }
}

RunSummary run_tm_final(const TMSpec& tm, const std::vector<std::string>& tape, std::int64_t max_configs) {
    tm.validate();
    if (tape.empty()) throw ValidationError("tape is empty");
    if (max_configs < 1) throw ValidationError("max_configs must be at least 1");
    Compiled m(tm);
    auto t = m.encode(tape);
    int head = 0, state = m.q0;
    RunSummary r;
    std::int64_t configs = 1;
    while (true) {
        if (state == m.qa) {
            r.status = RunStatus::Halted;
            break;
        }
        if (configs >= max_configs) {
            r.status = RunStatus::StepLimit;
            break;
        }
        int h = head;
        if (!m.step(t, h, state)) {
            r.status = RunStatus::OutOfTape;
            break;
        }
        head = h;
        ++configs;
    }
    r.steps = configs - 1;
    r.final = m.decode(t, head, state);
    return r;
}

// ---- machines -----------------------------------------------------------

namespace {

class Builder {
public:
    Builder(std::vector<std::string> alphabet, std::string blank) {
        tm_.alphabet = std::move(alphabet);
        tm_.blank = std::move(blank);
    }
    void state(const std::string& q) {
        if (std::find(tm_.states.begin(), tm_.states.end(), q) == tm_.states.end()) tm_.states.push_back(q);
    }
    void on(const std::string& q, const std::string& c, const std::string& next, const std::string& write, Move m) {
        state(q);
        state(next);
        tm_.delta[{q, c}] = {next, write, m};
    }
    // Keeps moving over every symbol except `stop`.
    void scan(const std::string& q, const std::string& stop, Move m) {
        for (const auto& c : tm_.alphabet)
            if (c != stop) on(q, c, q, c, m);
    }
    TMSpec finish(const std::string& q0, const std::string& qa) {
        state(qa);
        tm_.q0 = q0;
        tm_.qa = qa;
        tm_.complete_with_sink();
        tm_.validate();
        return tm_;
    }

private:
    TMSpec tm_;
};

constexpr Move L = Move::Left;
constexpr Move R = Move::Right;

}  // namespace

TMSpec unary_to_binary_tm() {
    // 0^n 1 on the left; the count is written little-endian after the 1.
    Builder b({"0", "1", "x", "b0", "b1", "_"}, "_");
    b.on("find", "0", "right", "x", R);
    b.on("find", "x", "find", "x", R);
    b.on("find", "1", "qa", "1", R);
    b.on("right", "0", "right", "0", R);
    b.on("right", "x", "right", "x", R);
    b.on("right", "1", "inc", "1", R);
    b.on("inc", "b1", "inc", "b0", R);
    b.on("inc", "b0", "back", "b1", L);
    b.on("inc", "_", "back", "b1", L);
    for (const char* c : {"b0", "b1", "1", "0"}) b.on("back", c, "back", c, L);
    b.on("back", "x", "find", "x", R);
    return b.finish("find", "qa");
}

TMSpec incrementer_tm() {
    Builder b({"0", "1", "_"}, "_");
    b.on("inc", "1", "inc", "0", R);
    b.on("inc", "0", "qa", "1", R);
    b.on("inc", "_", "qa", "1", R);
    return b.finish("inc", "qa");
}

TMSpec bouncer_tm() {
    Builder b({"#", "_", "$"}, "_");
    b.on("r", "#", "r", "#", R);
    b.on("r", "_", "r", "_", R);
    b.on("r", "$", "l", "$", L);
    b.on("l", "_", "l", "_", L);
    b.on("l", "#", "r", "#", R);
    b.on("l", "$", "l", "$", L);
    return b.finish("r", "qa");
}

TMSpec root_tm() {
    // Binary input is expanded to unary, three ceiling square roots are taken
    // by subtracting successive odd numbers, and the result is written back in
    // binary after a '%' marker.
    Builder b({"#", "b0", "b1", "|", "$", "_", "u", ".", "r", "R", "x", "%"}, "_");

    b.on("A_home", "#", "A_dec", "#", R);
    b.scan("A_home", "#", L);
    b.on("A_dec", "b0", "A_dec", "b1", R);
    b.on("A_dec", "b1", "A_end", "b0", R);
    b.on("A_dec", "|", "B1_check", "|", R);
    b.scan("A_end", "$", R);
    b.on("A_end", "$", "A_put", "u", R);
    b.on("A_put", "_", "A_home", "$", L);

    for (int i = 1; i <= 3; ++i) {
        const std::string p = "B" + std::to_string(i) + "_";
        auto done = [&](const std::string& q) {
            if (i < 3)
                b.on(q, "$", "C" + std::to_string(i) + "_conv", ".", R);
            else
                b.on(q, "$", "D_mark", "$", R);
        };
        b.on(p + "check", ".", p + "check", ".", R);
        b.on(p + "check", "u", p + "append", ".", R);
        done(p + "check");
        b.scan(p + "append", "_", R);
        b.on(p + "append", "_", p + "seekL", "R", L);
        b.scan(p + "seekL", "$", L);
        b.on(p + "seekL", "$", p + "findr", "$", R);
        b.on(p + "findr", "R", p + "findr", "R", R);
        b.on(p + "findr", "r", p + "toBar", "R", L);
        b.on(p + "findr", "_", p + "unmark", "_", L);
        b.on(p + "unmark", "R", p + "unmark", "r", L);
        b.on(p + "unmark", "$", p + "toBar2", "$", L);
        b.scan(p + "toBar", "|", L);
        b.on(p + "toBar", "|", p + "erase1", "|", R);
        b.on(p + "erase1", ".", p + "erase1", ".", R);
        b.on(p + "erase1", "u", p + "erase2", ".", R);
        done(p + "erase1");
        b.on(p + "erase2", ".", p + "erase2", ".", R);
        b.on(p + "erase2", "u", p + "seekR", ".", R);
        done(p + "erase2");
        b.scan(p + "seekR", "$", R);
        b.on(p + "seekR", "$", p + "findr", "$", R);
        b.scan(p + "toBar2", "|", L);
        b.on(p + "toBar2", "|", p + "check", "|", R);
        if (i < 3) {
            const std::string c = "C" + std::to_string(i) + "_";
            b.on(c + "conv", "r", c + "conv", "u", R);
            b.on(c + "conv", "R", c + "conv", "u", R);
            b.on(c + "conv", "_", c + "home", "$", L);
            b.scan(c + "home", "|", L);
            b.on(c + "home", "|", "B" + std::to_string(i + 1) + "_check", "|", R);
        }
    }

    b.scan("D_mark", "_", R);
    b.on("D_mark", "_", "D_back", "%", L);
    b.scan("D_back", "$", L);
    b.on("D_back", "$", "D_find", "$", R);
    b.on("D_find", "x", "D_find", "x", R);
    b.on("D_find", "r", "D_toPct", "x", R);
    b.on("D_find", "R", "D_toPct", "x", R);
    b.on("D_find", "%", "qa", "%", R);
    b.scan("D_toPct", "%", R);
    b.on("D_toPct", "%", "D_inc", "%", R);
    b.on("D_inc", "b1", "D_inc", "b0", R);
    b.on("D_inc", "b0", "D_back", "b1", L);
    b.on("D_inc", "_", "D_back", "b1", L);
    return b.finish("A_home", "qa");
}

std::uint64_t integer_root_ceil(std::uint64_t x, int k) {
    if (k < 1) throw ValidationError("root order must be positive");
    if (x <= 1) return x;
    auto pow_le = [&](std::uint64_t r) {  // r^k <= x without overflow
        std::uint64_t acc = 1;
        for (int i = 0; i < k; ++i) {
            if (acc > x / r) return false;
            acc *= r;
        }
        return true;
    };
    std::uint64_t lo = 1, hi = 1;
    while (pow_le(hi)) hi *= 2;
    while (lo + 1 < hi) {  // largest r with r^k <= x lies in [lo, hi)
        std::uint64_t mid = lo + (hi - lo) / 2;
        (pow_le(mid) ? lo : hi) = mid;
    }
    std::uint64_t acc = 1;
    for (int i = 0; i < k; ++i) acc *= lo;
    return acc == x ? lo : lo + 1;
}

std::vector<std::string> root_tm_tape(std::uint64_t x) {
    if (x > (1u << 16)) throw ResourceError("root machine input above 2^16 needs an impractically long tape");
    std::vector<std::string> tape{"#"};
    std::uint64_t v = x;
    int bits = 0;
    do {
        tape.push_back(v & 1 ? "b1" : "b0");
        v >>= 1;
        ++bits;
    } while (v);
    tape.push_back("|");
    tape.push_back("$");
    std::size_t extra = static_cast<std::size_t>(x) + 2 * integer_root_ceil(x, 2) + 2 * static_cast<std::size_t>(bits) + 16;
    tape.resize(tape.size() + extra, "_");
    return tape;
}

std::uint64_t read_binary_output(const Configuration& c, const std::string& separator) {
    auto it = std::find(c.tape.begin(), c.tape.end(), separator);
    if (it == c.tape.end()) throw StructuralError("output separator '" + separator + "' not found on tape");
    std::uint64_t v = 0;
    int shift = 0;
    for (++it; it != c.tape.end() && (*it == "b0" || *it == "b1"); ++it, ++shift)
        if (*it == "b1") v |= std::uint64_t{1} << shift;
    return v;
}

namespace {
std::mutex root_mutex;
std::map<std::uint64_t, std::pair<std::uint64_t, std::int64_t>> root_cache;

std::pair<std::uint64_t, std::int64_t> run_root(std::uint64_t x) {
    std::lock_guard lock(root_mutex);
    if (auto it = root_cache.find(x); it != root_cache.end()) return it->second;
    static const TMSpec tm = root_tm();
    auto r = run_tm_final(tm, root_tm_tape(x), std::int64_t{1} << 40);
    if (r.status != RunStatus::Halted) throw StructuralError("root machine did not halt");
    auto out = std::make_pair(read_binary_output(r.final, "%"), r.steps);
    root_cache.emplace(x, out);
    return out;
}
}  // namespace

std::uint64_t root_via_tm(std::uint64_t x) { return run_root(x).first; }
std::int64_t root_tm_steps(std::uint64_t x) { return run_root(x).second; }

// ---- tiles --------------------------------------------------------------

std::string cell_color(const std::string& symbol, const std::string& state) {
    return state.empty() ? symbol : symbol + "@" + state;
}

std::vector<std::string> config_colors(const Configuration& c) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < c.tape.size(); ++i)
        out.push_back(static_cast<int>(i) == c.head ? cell_color(c.tape[i], c.state) : c.tape[i]);
    return out;
}

TileSet tm_tileset(const TMSpec& tm, bool reversed) {
    tm.validate();
    std::set<Edges> seen;
    std::vector<Tile> tiles;
    auto add = [&](std::string n, std::string e, std::string s, std::string w, const std::string& kind) {
        if (reversed) std::swap(n, s);
        Edges ed{n, e, s, w};
        if (!seen.insert(ed).second) return;
        Tile t;
        t.layers = {ed};
        t.role = "tm";
        t.attrs[kind] = 1;
        tiles.push_back(std::move(t));
    };
    for (const auto& c : tm.alphabet) add(c, "-", c, "-", "plain");
    std::set<std::string> from_left, from_right;
    for (const auto& [k, tr] : tm.delta) {
        const std::string below = cell_color(k.second, k.first);
        if (tr.move == Move::Right) {
            add(tr.write, ">" + tr.next, below, "-", "depart");
            from_left.insert(tr.next);
        } else {
            add(tr.write, "-", below, "<" + tr.next, "depart");
            from_right.insert(tr.next);
        }
    }
    for (const auto& q : from_left)
        for (const auto& c : tm.alphabet) add(cell_color(c, q), "-", c, ">" + q, "arrive");
    for (const auto& q : from_right)
        for (const auto& c : tm.alphabet) add(cell_color(c, q), "<" + q, c, "-", "arrive");
    TileSet ts({"tm"}, std::move(tiles));
    ts.add_border_rule({"tape-left", Side::West, [](const Tile& t) { return t.edge(0, Side::West) == "-"; }, 1});
    ts.add_border_rule({"tape-right", Side::East, [](const Tile& t) { return t.edge(0, Side::East) == "-"; }, 1});
    return ts;
}

TilingProblem tm_problem(const TileSet& ts, const TMSpec& tm, const std::vector<std::string>& tape, int rows,
                         bool reversed, std::size_t layer) {
    if (tape.empty() || rows < 1) throw ValidationError("machine problem needs a tape and at least one row");
    if (layer >= ts.layer_names().size()) throw ValidationError("layer index out of range");
    Configuration init{tape, 0, tm.q0};
    auto colors = config_colors(init);
    TilingProblem p{static_cast<int>(tape.size()), rows, {}};
    p.allowed.resize(tape.size() * static_cast<std::size_t>(rows));
    const int y = reversed ? rows - 1 : 0;
    const Side side = reversed ? Side::North : Side::South;
    for (std::size_t x = 0; x < tape.size(); ++x) {
        auto& cell = p.allowed[static_cast<std::size_t>(y) * tape.size() + x];
        for (const auto& t : ts.tiles())
            if (t.edge(layer, side) == colors[x]) cell.push_back(t.id);
        if (cell.empty()) throw StructuralError("no tile carries the initial color '" + colors[x] + "'");
    }
    return p;
}

}  // namespace ugap::tiles
