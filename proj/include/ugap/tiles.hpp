#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ugap/kernels.hpp"

namespace ugap::tiles {

enum class Side { North = 0, East = 1, South = 2, West = 3 };
enum class Orientation { Horizontal, Vertical };

// Site contexts. AboveAnother: a tile exists directly below; RightOfAnother:
// a tile exists directly to the left; the last two are the mirrored forms.
enum class Context { Unconditional, AboveAnother, RightOfAnother, BelowAnother, LeftOfAnother };

using Edges = std::array<std::string, 4>;  // indexed by Side

inline constexpr const char* kBullet = "bullet";

struct Tile {
    int id = 0;
    std::vector<Edges> layers;
    std::set<std::string> decorations;
    std::string role;
    std::map<std::string, int> attrs;

    const std::string& edge(std::size_t layer, Side s) const { return layers.at(layer)[static_cast<int>(s)]; }
    bool has(const std::string& decoration) const { return decorations.count(decoration) > 0; }
    int attr(const std::string& key, int fallback = -1) const;
};

// Row-major grid, y grows upwards: cell (x, y) is cells[y * width + x].
struct Tiling {
    int width = 0;
    int height = 0;
    std::vector<int> cells;

    Tiling() = default;
    Tiling(int w, int h, int fill = 0) : width(w), height(h), cells(static_cast<std::size_t>(w * h), fill) {}
    int& at(int x, int y) { return cells.at(static_cast<std::size_t>(y * width + x)); }
    int at(int x, int y) const { return cells.at(static_cast<std::size_t>(y * width + x)); }
    friend bool operator==(const Tiling&, const Tiling&) = default;
    friend auto operator<=>(const Tiling& a, const Tiling& b) {
        return std::tie(a.width, a.height, a.cells) <=> std::tie(b.width, b.height, b.cells);
    }
};

struct PenaltySite {
    int x = 0;
    int y = 0;
    std::int64_t weight = 0;
};

class TileSet;

// Penalty that depends on the whole tiling; must be nonnegative.
struct GlobalConstraint {
    std::string name;
    std::function<std::vector<PenaltySite>(const TileSet&, const Tiling&)> violations;
};

// Tiles on the given lattice side that fail `allowed` pay `penalty`.
struct BorderRule {
    std::string name;
    Side side = Side::North;
    std::function<bool(const Tile&)> allowed;
    std::int64_t penalty = 1;
};

class TileSet {
public:
    TileSet() = default;
    TileSet(std::vector<std::string> layer_names, std::vector<Tile> tiles);

    const std::vector<std::string>& layer_names() const noexcept { return layer_names_; }
    const std::vector<Tile>& tiles() const noexcept { return tiles_; }
    const Tile& tile(int id) const { return tiles_.at(static_cast<std::size_t>(id)); }
    int size() const noexcept { return static_cast<int>(tiles_.size()); }
    std::optional<int> find(const std::string& role, const std::map<std::string, int>& attrs = {}) const;

    void set_pair_weight(int a, int b, Orientation o, std::int64_t w);
    bool has_pair_overrides() const noexcept { return !overrides_.empty(); }
    void add_site_bonus(int tile, Context ctx, std::int64_t value);
    std::int64_t site_bonus(int tile, Context ctx) const;
    void add_border_rule(BorderRule rule);
    void add_global(GlobalConstraint g);
    void declare_decoration(const std::string& d);

    const std::vector<BorderRule>& border_rules() const noexcept { return border_rules_; }
    const std::vector<GlobalConstraint>& globals() const noexcept { return globals_; }
    const std::set<std::string>& decoration_alphabet() const noexcept { return decorations_; }
    const std::map<std::pair<int, Context>, std::int64_t>& site_bonuses() const noexcept { return bonuses_; }

    // Horizontal: a left of b. Vertical: a below b.
    std::int64_t pair_weight(int a, int b, Orientation o) const {
        const auto& t = o == Orientation::Horizontal ? horiz_ : vert_;
        return t[static_cast<std::size_t>(a) * tiles_.size() + static_cast<std::size_t>(b)];
    }
    std::span<const std::int64_t> horizontal_table() const noexcept { return horiz_; }
    std::span<const std::int64_t> vertical_table() const noexcept { return vert_; }

    // Site cost of `tile` at (x, y) on a w x h lattice: contexts plus border rules.
    std::int64_t site_cost(int tile, int x, int y, int w, int h) const;

private:
    void rebuild_weights();

    std::vector<std::string> layer_names_;
    std::vector<Tile> tiles_;
    std::map<std::tuple<int, int, Orientation>, std::int64_t> overrides_;
    std::map<std::pair<int, Context>, std::int64_t> bonuses_;
    std::vector<BorderRule> border_rules_;
    std::vector<GlobalConstraint> globals_;
    std::set<std::string> decorations_;
    std::vector<std::int64_t> horiz_, vert_;
};

std::int64_t score_tiling(const TileSet& ts, const Tiling& t);

// Per-cell penalty contributions (mismatched bonds count on both cells,
// positive site nets, global violations).
std::vector<PenaltySite> penalty_map(const TileSet& ts, const Tiling& t);

// ---- enumeration --------------------------------------------------------

struct TilingProblem {
    int width = 0;
    int height = 0;
    std::vector<std::vector<int>> allowed;  // per cell; empty means every tile

    static TilingProblem square(int L) { return {L, L, {}}; }
};

struct EnumerationResult {
    std::int64_t min_score = 0;
    std::vector<Tiling> tilings;
    std::int64_t nodes = 0;
};

struct EnumerationOptions {
    std::int64_t node_budget = 50'000'000;
    std::optional<std::int64_t> score_cap;  // collect everything up to this score instead of the minimum
    std::int64_t max_deepening = 64;
};

EnumerationResult enumerate_tilings(const TileSet& ts, const TilingProblem& problem, const EnumerationOptions& opts = {});
EnumerationResult enumerate_min_tilings(const TileSet& ts, int L, std::int64_t node_budget = 50'000'000);

// Integer tables for the diagonal kernel; requires no global constraints.
struct KernelTables {
    std::vector<std::int64_t> site;
    kernels::TilingTables view(const TileSet& ts, int w, int h) const;
};
KernelTables kernel_tables(const TileSet& ts, int w, int h);

// ---- checkerboard -------------------------------------------------------

namespace cb {
inline constexpr int kCorner = 0, kVedgeOdd = 1, kVedgeEven = 2, kHedgeOdd = 3, kHedgeEven = 4;
inline constexpr int kInnerCornerTop = 5, kInnerCornerBottom = 6, kDiagonal = 7, kBelowDiagonal = 8, kLower = 9,
                     kUpper = 10;
inline constexpr int kBaseCount = 11;
}  // namespace cb

TileSet checkerboard_tileset(bool constrained);

// Corner-at-origin pattern of square side s, cut to w x h. May be invalid.
Tiling checkerboard_pattern(int w, int h, int s);

// Interior tiles replaced by -1; corner and edge tiles kept.
Tiling skeleton(const TileSet& ts, const Tiling& t);

// Distinct zero-score patterns over s = 2..2*max(w,h)+2 for the given tileset.
std::vector<Tiling> checkerboard_family(const TileSet& ts, int w, int h);

// ---- Turing machines ----------------------------------------------------

enum class Move { Left, Right };

struct Transition {
    std::string next;
    std::string write;
    Move move = Move::Right;
};

struct TMSpec {
    std::vector<std::string> alphabet;
    std::vector<std::string> states;
    std::map<std::pair<std::string, std::string>, Transition> delta;
    std::string q0;
    std::string qa;
    std::string blank;

    void validate() const;
    // Adds a right-moving sink state for every missing (state, symbol) pair.
    void complete_with_sink(const std::string& sink = "q_sink");
};

TMSpec tm_from_json(const nlohmann::json& j);
nlohmann::json tm_to_json(const TMSpec& tm);

struct Configuration {
    std::vector<std::string> tape;
    int head = 0;
    std::string state;
    friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class RunStatus { Halted, StepLimit, OutOfTape };

struct Trace {
    std::vector<Configuration> configs;
    RunStatus status = RunStatus::StepLimit;
};

// At most `max_configs` configurations, the initial one included.
Trace run_tm(const TMSpec& tm, const std::vector<std::string>& tape, std::int64_t max_configs);

struct RunSummary {
    Configuration final;
    std::int64_t steps = 0;
    RunStatus status = RunStatus::StepLimit;
};

// Same semantics as run_tm without recording the trace.
RunSummary run_tm_final(const TMSpec& tm, const std::vector<std::string>& tape, std::int64_t max_configs);

TMSpec unary_to_binary_tm();
TMSpec incrementer_tm();
TMSpec bouncer_tm();
TMSpec root_tm();

// Input tape for root_tm: "#", little-endian bits as b0/b1, "|", "$", blanks.
std::vector<std::string> root_tm_tape(std::uint64_t x);
std::uint64_t read_binary_output(const Configuration& c, const std::string& separator);
// ceil(x^{1/8}) computed by running root_tm; results cached per process.
std::uint64_t root_via_tm(std::uint64_t x);
std::int64_t root_tm_steps(std::uint64_t x);
std::uint64_t integer_root_ceil(std::uint64_t x, int k);

// Vertical colors "c" or "c@q"; horizontal colors "-", ">q", "<q".
std::string cell_color(const std::string& symbol, const std::string& state = {});
TileSet tm_tileset(const TMSpec& tm, bool reversed = false);
std::vector<std::string> config_colors(const Configuration& c);

// Forces the initial row (bottom, or top when reversed) to `tape` with the head
// at cell 0 in q0. Width is the tape length.
TilingProblem tm_problem(const TileSet& ts, const TMSpec& tm, const std::vector<std::string>& tape, int rows,
                         bool reversed = false, std::size_t layer = 0);

// ---- layering -----------------------------------------------------------

struct InterlayerRule {
    std::string name;
    std::vector<int> layers;  // indices into the layer list
    std::function<bool(std::span<const Tile* const>)> allowed;
};

struct LayerBorderRule {
    std::string name;
    Side side = Side::North;
    std::vector<int> layers;
    std::function<bool(std::span<const Tile* const>)> allowed;
    std::int64_t penalty = 1;
};

// Component tile ids of each product tile, as attrs "layer<i>.id".
int component_id(const Tile& t, int layer);

TileSet layer_and_dovetail(const std::vector<TileSet>& layers, const std::vector<InterlayerRule>& interlayer,
                           const std::vector<LayerBorderRule>& border);

InterlayerRule same_role_rule(int layer_count);

// ---- augmented checkerboard ---------------------------------------------

enum class AugmentMode { Semantic, Full };

struct AugmentOptions {
    int max_side = 8;
};

TileSet augmented_checkerboard_tileset(AugmentMode mode, const AugmentOptions& opts = {});

// Expected bullet offset ceil(s^{1/8}) from the left corner.
int bullet_offset(int s);

// Maps any augmented tiling to the semantic alphabet (base index plus bullet).
Tiling project_to_semantic(const TileSet& ts, const Tiling& t);

struct AuditFinding {
    int pair_x = 0;  // edge tile of the (edge, corner) pair
    int pair_y = 0;
    bool certified = false;
    int side = 0;  // square side when certified
    std::optional<PenaltySite> penalty;
};

std::vector<AuditFinding> audit_markers(const TileSet& ts, const Tiling& t);

// ---- JSON ---------------------------------------------------------------

nlohmann::json tileset_to_json(const TileSet& ts);
nlohmann::json tiling_to_json(const Tiling& t);
Tiling tiling_from_json(const nlohmann::json& j);

}  // namespace ugap::tiles
