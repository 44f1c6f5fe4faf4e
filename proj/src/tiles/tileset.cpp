#include <algorithm>
#include <map>

#include "ugap/errors.hpp"
#include "ugap/tiles.hpp"

namespace ugap::tiles {

int Tile::attr(const std::string& key, int fallback) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? fallback : it->second;
}

TileSet::TileSet(std::vector<std::string> layer_names, std::vector<Tile> tiles)
    : layer_names_(std::move(layer_names)), tiles_(std::move(tiles)) {
    if (layer_names_.empty()) throw ValidationError("tileset needs at least one layer");
    if (tiles_.empty()) throw ValidationError("tileset has no tiles");
    for (std::size_t i = 0; i < tiles_.size(); ++i) {
        auto& t = tiles_[i];
        t.id = static_cast<int>(i);
        if (t.layers.size() != layer_names_.size())
            throw ValidationError("tile " + std::to_string(i) + " has the wrong number of layers");
        for (const auto& d : t.decorations) decorations_.insert(d);
    }
    rebuild_weights();
}

std::optional<int> TileSet::find(const std::string& role, const std::map<std::string, int>& attrs) const {
    for (const auto& t : tiles_) {
        if (t.role != role) continue;
        bool ok = std::all_of(attrs.begin(), attrs.end(), [&](const auto& kv) { return t.attr(kv.first) == kv.second; });
        if (ok) return t.id;
    }
    return std::nullopt;
}

void TileSet::rebuild_weights() {
    // Composite color per side: every layer must agree for a zero-weight bond.
    const std::size_t n = tiles_.size();
    std::map<std::vector<std::string>, int> ids;
    auto composite = [&](const Tile& t, Side s) {
        std::vector<std::string> key;
        key.reserve(t.layers.size());
        for (const auto& l : t.layers) key.push_back(l[static_cast<int>(s)]);
        return ids.emplace(std::move(key), static_cast<int>(ids.size())).first->second;
    };
    std::vector<int> north(n), east(n), south(n), west(n);
    for (std::size_t i = 0; i < n; ++i) {
        north[i] = composite(tiles_[i], Side::North);
        east[i] = composite(tiles_[i], Side::East);
        south[i] = composite(tiles_[i], Side::South);
        west[i] = composite(tiles_[i], Side::West);
    }
    horiz_.assign(n * n, 0);
    vert_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            horiz_[a * n + b] = east[a] != west[b] ? 1 : 0;
            vert_[a * n + b] = north[a] != south[b] ? 1 : 0;
        }
    for (const auto& [key, w] : overrides_) {
        auto [a, b, o] = key;
        auto& t = o == Orientation::Horizontal ? horiz_ : vert_;
        t[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = w;
    }
}

void TileSet::set_pair_weight(int a, int b, Orientation o, std::int64_t w) {
    if (a < 0 || b < 0 || a >= size() || b >= size()) throw ValidationError("pair weight refers to an unknown tile");
    if (w < 0) throw ValidationError("pair weights must be nonnegative");
    overrides_[{a, b, o}] = w;
    auto& t = o == Orientation::Horizontal ? horiz_ : vert_;
    t[static_cast<std::size_t>(a) * tiles_.size() + static_cast<std::size_t>(b)] = w;
}

void TileSet::add_site_bonus(int tile, Context ctx, std::int64_t value) {
    if (tile < 0 || tile >= size()) throw ValidationError("site bonus refers to an unknown tile");
    bonuses_[{tile, ctx}] += value;
}

std::int64_t TileSet::site_bonus(int tile, Context ctx) const {
    auto it = bonuses_.find({tile, ctx});
    return it == bonuses_.end() ? 0 : it->second;
}

void TileSet::add_border_rule(BorderRule rule) {
    if (!rule.allowed) throw ValidationError("border rule '" + rule.name + "' has no predicate");
    if (rule.penalty < 0) throw ValidationError("border penalties must be nonnegative");
    border_rules_.push_back(std::move(rule));
}

void TileSet::add_global(GlobalConstraint g) {
    if (!g.violations) throw ValidationError("global constraint '" + g.name + "' has no evaluator");
    globals_.push_back(std::move(g));
}

void TileSet::declare_decoration(const std::string& d) { decorations_.insert(d); }

std::int64_t TileSet::site_cost(int tile, int x, int y, int w, int h) const {
    std::int64_t c = site_bonus(tile, Context::Unconditional);
    if (y > 0) c += site_bonus(tile, Context::AboveAnother);
    if (x > 0) c += site_bonus(tile, Context::RightOfAnother);
    if (y < h - 1) c += site_bonus(tile, Context::BelowAnother);
    if (x < w - 1) c += site_bonus(tile, Context::LeftOfAnother);
    const Tile& t = tiles_[static_cast<std::size_t>(tile)];
    for (const auto& r : border_rules_) {
        bool on_side = (r.side == Side::North && y == h - 1) || (r.side == Side::South && y == 0) ||
                       (r.side == Side::West && x == 0) || (r.side == Side::East && x == w - 1);
        if (on_side && !r.allowed(t)) c += r.penalty;
    }
    return c;
}

namespace {

void check_tiling(const TileSet& ts, const Tiling& t) {
    if (t.width <= 0 || t.height <= 0 || t.cells.size() != static_cast<std::size_t>(t.width * t.height))
        throw ValidationError("tiling has inconsistent dimensions");
    for (int id : t.cells)
        if (id < 0 || id >= ts.size()) throw ValidationError("tiling uses unknown tile id " + std::to_string(id));
}

}  // namespace

std::int64_t score_tiling(const TileSet& ts, const Tiling& t) {
    check_tiling(ts, t);
    std::int64_t s = 0;
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) {
            int id = t.at(x, y);
            s += ts.site_cost(id, x, y, t.width, t.height);
            if (x + 1 < t.width) s += ts.pair_weight(id, t.at(x + 1, y), Orientation::Horizontal);
            if (y + 1 < t.height) s += ts.pair_weight(id, t.at(x, y + 1), Orientation::Vertical);
        }
    for (const auto& g : ts.globals())
        for (const auto& v : g.violations(ts, t)) s += v.weight;
    return s;
}

std::vector<PenaltySite> penalty_map(const TileSet& ts, const Tiling& t) {
    check_tiling(ts, t);
    std::map<std::pair<int, int>, std::int64_t> acc;
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) {
            int id = t.at(x, y);
            if (auto c = ts.site_cost(id, x, y, t.width, t.height); c > 0) acc[{y, x}] += c;
            if (x + 1 < t.width)
                if (auto w = ts.pair_weight(id, t.at(x + 1, y), Orientation::Horizontal); w > 0) {
                    acc[{y, x}] += w;
                    acc[{y, x + 1}] += w;
                }
            if (y + 1 < t.height)
                if (auto w = ts.pair_weight(id, t.at(x, y + 1), Orientation::Vertical); w > 0) {
                    acc[{y, x}] += w;
                    acc[{y + 1, x}] += w;
                }
        }
    for (const auto& g : ts.globals())
        for (const auto& v : g.violations(ts, t)) acc[{v.y, v.x}] += v.weight;
    std::vector<PenaltySite> out;
    for (const auto& [yx, w] : acc) out.push_back({yx.second, yx.first, w});
    return out;
}

// ---- checkerboard -------------------------------------------------------

TileSet checkerboard_tileset(bool constrained) {
    // N, E, S, W
    const std::vector<std::pair<Edges, std::string>> spec = {
        {{"R", "B", "*R", "*B"}, "corner"},  {{"*R", "0", "R", "1"}, "vedge"},   {{"R", "0", "*R", "1"}, "vedge"},
        {{"0", "*B", "1", "B"}, "hedge"},    {{"0", "B", "1", "*B"}, "hedge"},   {{"1", "1", "D", "0"}, "interior"},
        {{"1", "1", "0", "D"}, "interior"},  {{"1", "1", "D", "D"}, "interior"}, {{"D", "D", "0", "0"}, "interior"},
        {{"0", "0", "0", "0"}, "interior"},  {{"1", "1", "1", "1"}, "interior"},
    };
    std::vector<Tile> tiles;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        Tile t;
        t.layers = {spec[i].first};
        t.role = spec[i].second;
        t.attrs["cb"] = static_cast<int>(i);
        tiles.push_back(std::move(t));
    }
    TileSet ts({"cb"}, std::move(tiles));
    if (constrained)
        for (int id = cb::kInnerCornerTop; id < cb::kBaseCount; ++id) {
            ts.add_site_bonus(id, Context::Unconditional, 2);
            ts.add_site_bonus(id, Context::AboveAnother, -1);
            ts.add_site_bonus(id, Context::RightOfAnother, -1);
        }
    return ts;
}

Tiling checkerboard_pattern(int w, int h, int s) {
    if (w <= 0 || h <= 0 || s < 1) throw ValidationError("checkerboard pattern needs positive sizes");
    Tiling t(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int u = x % s, v = y % s;
            int id;
            if (u == 0 && v == 0)
                id = cb::kCorner;
            else if (u == 0)
                id = v % 2 == 1 ? cb::kVedgeOdd : cb::kVedgeEven;
            else if (v == 0)
                id = u % 2 == 1 ? cb::kHedgeOdd : cb::kHedgeEven;
            else {
                int r = s - v, c = u;
                if (r == 1 && c == 1)
                    id = cb::kInnerCornerTop;
                else if (r == s - 1 && c == s - 1)
                    id = cb::kInnerCornerBottom;
                else if (c > r)
                    id = cb::kUpper;
                else if (c == r)
                    id = cb::kDiagonal;
                else if (c == r - 1)
                    id = cb::kBelowDiagonal;
                else
                    id = cb::kLower;
            }
            t.at(x, y) = id;
        }
    return t;
}

Tiling skeleton(const TileSet& ts, const Tiling& t) {
    Tiling out = t;
    for (auto& id : out.cells)
        if (ts.tile(id).role == "interior") id = -1;
    return out;
}

std::vector<Tiling> checkerboard_family(const TileSet& ts, int w, int h) {
    std::vector<Tiling> out;
    for (int s = 2; s <= 2 * std::max(w, h) + 2; ++s) {
        Tiling t = checkerboard_pattern(w, h, s);
        if (score_tiling(ts, t) == 0 && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ugap::tiles
