#include <algorithm>
#include <limits>

#include "ugap/errors.hpp"
#include "ugap/tiles.hpp"

namespace ugap::tiles {

int bullet_offset(int s) {
    if (s < 1) throw ValidationError("square side must be positive");
    return static_cast<int>(integer_root_ceil(static_cast<std::uint64_t>(s), 8));
}

namespace {

constexpr int kBulletOdd = cb::kBaseCount;       // edge tile next to a corner, with bullet
constexpr int kBulletEven = cb::kBaseCount + 1;

bool is_role(const TileSet& ts, const Tiling& t, int x, int y, const char* role) {
    return x >= 0 && y >= 0 && x < t.width && y < t.height && ts.tile(t.at(x, y)).role == role;
}

// Every maximal run of edge tiles in a row, with its bullet expectation.
struct EdgeRun {
    int y = 0, first = 0, last = 0;
    bool left_corner = false, right_corner = false;
    bool complete = false;  // corners at both ends and one side length below
    int side = 0;
    int expected = -1;
};

std::vector<EdgeRun> edge_runs(const TileSet& ts, const Tiling& t) {
    std::vector<EdgeRun> runs;
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width;) {
            if (!is_role(ts, t, x, y, "hedge")) {
                ++x;
                continue;
            }
            EdgeRun r;
            r.y = y;
            r.first = x;
            while (x < t.width && is_role(ts, t, x, y, "hedge")) ++x;
            r.last = x - 1;
            r.left_corner = is_role(ts, t, r.first - 1, y, "corner");
            r.right_corner = is_role(ts, t, r.last + 1, y, "corner");
            if (r.left_corner && r.right_corner) {
                r.side = r.last - r.first + 2;
                int below = y - r.side;
                r.complete = below >= 0 && is_role(ts, t, r.first - 1, below, "corner") &&
                             is_role(ts, t, r.last + 1, below, "corner");
                if (r.complete) r.expected = r.first - 1 + bullet_offset(r.side);
            }
            runs.push_back(r);
        }
    return runs;
}

TileSet semantic_tileset() {
    TileSet base = checkerboard_tileset(true);
    std::vector<Tile> tiles = base.tiles();
    for (int id : {cb::kHedgeOdd, cb::kHedgeEven}) {
        Tile t = base.tile(id);
        t.decorations.insert(kBullet);
        tiles.push_back(std::move(t));
    }
    TileSet ts(base.layer_names(), std::move(tiles));
    for (const auto& [key, v] : base.site_bonuses()) ts.add_site_bonus(key.first, key.second, v);
    ts.declare_decoration(kBullet);
    ts.add_global({"bullet-placement", [](const TileSet& set, const Tiling& t) {
                       std::vector<PenaltySite> out;
                       for (const auto& r : edge_runs(set, t))
                           for (int x = r.first; x <= r.last; ++x) {
                               bool has = set.tile(t.at(x, r.y)).has(kBullet);
                               if (has != (x == r.expected)) out.push_back({x, r.y, 1});
                           }
                       return out;
                   }});
    return ts;
}

// Counter layer: each square interior row is the row below plus one, least
// significant bit on the right; the carry enters from the right edge column.
TileSet counter_layer() {
    std::vector<Tile> tiles;
    auto add = [&](Edges e, const std::string& role, std::map<std::string, int> attrs = {}) {
        Tile t;
        t.layers = {std::move(e)};
        t.role = role;
        t.attrs = std::move(attrs);
        tiles.push_back(std::move(t));
    };
    add({"n", "n", "n", "n"}, "corner");
    add({"n", "k0", "n", "k1"}, "vedge");
    for (int b = 0; b < 2; ++b) add({"b0", "n", "b" + std::to_string(b), "n"}, "hedge", {{"bit", b}});
    for (int p = 0; p < 2; ++p)
        for (int c = 0; c < 2; ++c)
            add({"b" + std::to_string(p ^ c), "k" + std::to_string(c), "b" + std::to_string(p), "k" + std::to_string(p & c)},
                "interior");
    TileSet ts({"counter"}, std::move(tiles));
    // A set bit with nothing below would fake a count on the bottom row.
    int hi = *ts.find("hedge", {{"bit", 1}});
    ts.add_site_bonus(hi, Context::Unconditional, 1);
    ts.add_site_bonus(hi, Context::AboveAnother, -1);
    return ts;
}

// Marker layer on edge rows. Left-to-right: offset from the left corner
// (capped) and whether every bit so far is zero. Right-to-left: the counter
// value accumulated from the right corner, or unanchored, or saturated.
TileSet marker_layer(int max_side) {
    const int vcap = max_side;
    int jcap = 0;
    while ((1 << jcap) <= vcap) ++jcap;
    const int kcap = static_cast<int>(root_via_tm(static_cast<std::uint64_t>(max_side) + 1)) + 1;

    struct Rtl {
        enum Kind { End, Unanchored, Saturated, Value } kind;
        int v = 0, j = 0;
        std::string str() const {
            switch (kind) {
                case End: return "end";
                case Unanchored: return "U";
                case Saturated: return "S";
                default: return "v" + std::to_string(v) + "j" + std::to_string(j);
            }
        }
    };
    std::vector<Rtl> rtl_in{{Rtl::End}, {Rtl::Unanchored}, {Rtl::Saturated}};
    for (int j = 1; j <= jcap; ++j)
        for (int v = 0; v < (1 << j) && v <= vcap; ++v) rtl_in.push_back({Rtl::Value, v, j});

    std::vector<Tile> tiles;
    std::vector<int> anchored;
    auto add = [&](Edges e, const std::string& role, std::map<std::string, int> attrs = {}) {
        Tile t;
        t.layers = {std::move(e)};
        t.role = role;
        t.attrs = std::move(attrs);
        tiles.push_back(std::move(t));
        return static_cast<int>(tiles.size()) - 1;
    };
    add({"n", "start", "n", "end"}, "corner");
    add({"n", "n", "n", "n"}, "vedge");
    add({"n", "n", "n", "n"}, "interior");
    auto ltr = [](int k, int z) { return "L" + std::to_string(k) + "z" + std::to_string(z); };
    for (int b = 0; b < 2; ++b)
        for (int k_in = 0; k_in <= kcap; ++k_in)  // 0 is the left corner
            for (int z_in = 0; z_in < 2; ++z_in) {
                if (k_in == 0 && z_in == 0) continue;
                const int k = std::min(k_in + 1, kcap);
                const int z_out = z_in && b == 0;
                for (const Rtl& in : rtl_in) {
                    Rtl out{Rtl::Unanchored};
                    bool bullet = false;
                    if (in.kind == Rtl::Saturated) {
                        out = {Rtl::Saturated};
                    } else if (in.kind == Rtl::End || in.kind == Rtl::Value) {
                        const int j = in.kind == Rtl::End ? 0 : in.j;
                        const std::int64_t value = in.v + (b ? (std::int64_t{1} << j) : 0);
                        if (value > vcap) {
                            out = {Rtl::Saturated};
                        } else {
                            out = {Rtl::Value, static_cast<int>(value), std::min(j + 1, jcap)};
                            bullet = z_in && value >= 1 &&
                                     static_cast<std::uint64_t>(k) == root_via_tm(static_cast<std::uint64_t>(value) + 1);
                        }
                    }
                    Edges e;
                    e[static_cast<int>(Side::North)] = "n";
                    e[static_cast<int>(Side::South)] = "n";
                    e[static_cast<int>(Side::West)] = k_in == 0 ? "start" : ltr(k_in, z_in) + "|" + out.str();
                    e[static_cast<int>(Side::East)] = in.kind == Rtl::End ? "end" : ltr(k, z_out) + "|" + in.str();
                    int id = add(e, "hedge", {{"bit", b}});
                    if (bullet) tiles.back().decorations.insert(kBullet);
                    if (in.kind != Rtl::Unanchored) anchored.push_back(id);
                }
            }
    TileSet ts({"marker"}, std::move(tiles));
    ts.declare_decoration(kBullet);
    // An anchored signal needs a right neighbour to have come from.
    for (int id : anchored) {
        ts.add_site_bonus(id, Context::Unconditional, 1);
        ts.add_site_bonus(id, Context::LeftOfAnother, -1);
    }
    return ts;
}

}  // namespace

TileSet augmented_checkerboard_tileset(AugmentMode mode, const AugmentOptions& opts) {
    if (opts.max_side < 2) throw ValidationError("max_side must be at least 2");
    if (mode == AugmentMode::Semantic) return semantic_tileset();
    InterlayerRule bits{"counter-bit", {1, 2}, [](std::span<const Tile* const> t) {
                            return t[0]->role != "hedge" || t[0]->attr("bit") == t[1]->attr("bit");
                        }};
    return layer_and_dovetail({checkerboard_tileset(true), counter_layer(), marker_layer(opts.max_side)},
                              {same_role_rule(3), bits}, {});
}

Tiling project_to_semantic(const TileSet& ts, const Tiling& t) {
    Tiling out(t.width, t.height);
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        const Tile& tile = ts.tile(t.cells[i]);
        int base = tile.attr("cb");
        if (base < 0) throw ValidationError("tile has no checkerboard index");
        int id = base;
        if (tile.has(kBullet)) {
            if (base == cb::kHedgeOdd)
                id = kBulletOdd;
            else if (base == cb::kHedgeEven)
                id = kBulletEven;
            else
                throw StructuralError("bullet on a tile that is not an edge tile");
        }
        out.cells[i] = id;
    }
    return out;
}

std::vector<AuditFinding> audit_markers(const TileSet& ts, const Tiling& t) {
    std::vector<AuditFinding> out;
    const auto penalties = penalty_map(ts, t);
    auto penalty_at = [&](int x, int y) {
        return std::any_of(penalties.begin(), penalties.end(), [&](const PenaltySite& p) { return p.x == x && p.y == y; });
    };
    for (const auto& r : edge_runs(ts, t)) {
        if (!r.right_corner) continue;
        AuditFinding f;
        f.pair_x = r.last;
        f.pair_y = r.y;
        bool intact = r.left_corner;
        for (int x = r.first - 1; intact && x <= r.last; ++x)
            if (x >= 0 && ts.pair_weight(t.at(x, r.y), t.at(x + 1, r.y), Orientation::Horizontal) != 0) intact = false;
        bool bullets_ok = intact;
        for (int x = r.first; bullets_ok && x <= r.last; ++x)
            if (ts.tile(t.at(x, r.y)).has(kBullet) != (x == r.expected)) bullets_ok = false;
        bool below_ok = intact && (r.y - r.side < 0 || r.complete);
        if (below_ok && r.complete)
            for (int y = r.y - r.side; below_ok && y <= r.y; ++y)
                for (int x = r.first - 1; below_ok && x <= r.last + 1; ++x)
                    if (penalty_at(x, y)) below_ok = false;
        f.certified = intact && bullets_ok && below_ok;
        if (f.certified) {
            f.side = r.side;
        } else {
            const int cx = r.last + 1, cy = r.y;
            std::tuple<int, int, int> best{std::numeric_limits<int>::max(), 0, 0};
            for (const auto& p : penalties) {
                std::tuple<int, int, int> key{std::abs(p.x - cx) + std::abs(p.y - cy), p.y, p.x};
                if (key < best) {
                    best = key;
                    f.penalty = p;
                }
            }
        }
        out.push_back(f);
    }
    return out;
}

// ---- JSON ---------------------------------------------------------------

namespace {
const char* context_name(Context c) {
    switch (c) {
        case Context::Unconditional: return "unconditional";
        case Context::AboveAnother: return "above_another";
        case Context::RightOfAnother: return "right_of_another";
        case Context::BelowAnother: return "below_another";
        case Context::LeftOfAnother: return "left_of_another";
    }
    return "?";
}
}  // namespace

nlohmann::json tileset_to_json(const TileSet& ts) {
    nlohmann::json tiles = nlohmann::json::array();
    for (const auto& t : ts.tiles()) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& l : t.layers) edges.push_back(l);
        tiles.push_back({{"id", t.id}, {"role", t.role}, {"edges", edges}, {"decorations", t.decorations}, {"attrs", t.attrs}});
    }
    nlohmann::json bonuses = nlohmann::json::array();
    for (const auto& [k, v] : ts.site_bonuses()) bonuses.push_back({{"tile", k.first}, {"context", context_name(k.second)}, {"value", v}});
    nlohmann::json borders = nlohmann::json::array();
    for (const auto& r : ts.border_rules()) borders.push_back(r.name);
    nlohmann::json globals = nlohmann::json::array();
    for (const auto& g : ts.globals()) globals.push_back(g.name);
    return {{"layers", ts.layer_names()}, {"tiles", tiles},      {"site_bonuses", bonuses},
            {"border_rules", borders},    {"globals", globals}, {"decorations", ts.decoration_alphabet()}};
}

nlohmann::json tiling_to_json(const Tiling& t) {
    return {{"width", t.width}, {"height", t.height}, {"cells", t.cells}};
}

Tiling tiling_from_json(const nlohmann::json& j) {
    try {
        Tiling t(j.at("width").get<int>(), j.at("height").get<int>());
        t.cells = j.at("cells").get<std::vector<int>>();
        if (t.width <= 0 || t.height <= 0 || t.cells.size() != static_cast<std::size_t>(t.width * t.height))
            throw ValidationError("tiling dimensions do not match its cells");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed tiling: ") + e.what());
    }
}

}  // namespace ugap::tiles
