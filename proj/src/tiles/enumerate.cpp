#include <algorithm>
#include <limits>
#include <numeric>

#include "ugap/errors.hpp"
#include "ugap/tiles.hpp"

namespace ugap::tiles {

namespace {

// Depth-first search with forward checking. At every node the unassigned cell
// with the fewest affordable candidates is expanded (ties go to the lowest
// row-major index); candidates are tried by incremental cost, then id.
class Search {
public:
    Search(const TileSet& ts, const TilingProblem& p, std::int64_t budget)
        : ts_(ts), w_(p.width), h_(p.height), cells_(w_ * h_), n_(ts.size()), budget_(budget) {
        domain_.resize(static_cast<std::size_t>(cells_));
        site_.assign(static_cast<std::size_t>(cells_) * static_cast<std::size_t>(n_), 0);
        min_site_.assign(static_cast<std::size_t>(cells_), 0);
        for (int c = 0; c < cells_; ++c) {
            int x = c % w_, y = c / w_;
            auto& d = domain_[static_cast<std::size_t>(c)];
            if (p.allowed.empty() || p.allowed[static_cast<std::size_t>(c)].empty()) {
                d.resize(static_cast<std::size_t>(n_));
                std::iota(d.begin(), d.end(), 0);
            } else {
                d = p.allowed[static_cast<std::size_t>(c)];
                std::sort(d.begin(), d.end());
                d.erase(std::unique(d.begin(), d.end()), d.end());
                for (int id : d)
                    if (id < 0 || id >= n_) throw ValidationError("problem restricts a cell to an unknown tile");
            }
            std::int64_t m = std::numeric_limits<std::int64_t>::max();
            for (int t = 0; t < n_; ++t) {
                auto v = ts.site_cost(t, x, y, w_, h_);
                site_[idx(c, t)] = v;
            }
            for (int t : d) m = std::min(m, site_[idx(c, t)]);
            min_site_[static_cast<std::size_t>(c)] = m;
        }
        assign_.assign(static_cast<std::size_t>(cells_), -1);
    }

    std::int64_t lower_bound() const {
        return std::accumulate(min_site_.begin(), min_site_.end(), std::int64_t{0});
    }

    // Collects every tiling with score <= bound.
    void run(std::int64_t bound) {
        bound_ = bound;
        found_.clear();
        dfs(0, lower_bound(), cells_);
    }

    std::vector<std::pair<std::int64_t, Tiling>>& found() { return found_; }
    std::int64_t nodes() const { return nodes_; }

private:
    std::size_t idx(int c, int t) const { return static_cast<std::size_t>(c) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(t); }

    std::int64_t incremental(int c, int t) const {
        std::int64_t v = site_[idx(c, t)];
        int x = c % w_, y = c / w_;
        if (x > 0)
            if (int l = assign_[static_cast<std::size_t>(c - 1)]; l >= 0) v += ts_.pair_weight(l, t, Orientation::Horizontal);
        if (x + 1 < w_)
            if (int r = assign_[static_cast<std::size_t>(c + 1)]; r >= 0) v += ts_.pair_weight(t, r, Orientation::Horizontal);
        if (y > 0)
            if (int d = assign_[static_cast<std::size_t>(c - w_)]; d >= 0) v += ts_.pair_weight(d, t, Orientation::Vertical);
        if (y + 1 < h_)
            if (int u = assign_[static_cast<std::size_t>(c + w_)]; u >= 0) v += ts_.pair_weight(t, u, Orientation::Vertical);
        return v;
    }

    void dfs(std::int64_t current, std::int64_t rest, int remaining) {
        if (++nodes_ > budget_) {
            EnumerationResult partial;
            partial.nodes = nodes_;
            for (auto& [s, t] : found_) partial.tilings.push_back(t);
            partial.min_score = bound_;
            throw BudgetExhausted<EnumerationResult>("tiling enumeration exceeded its node budget", std::move(partial));
        }
        if (remaining == 0) {
            Tiling t(w_, h_);
            t.cells = assign_;
            std::int64_t total = current;
            for (const auto& g : ts_.globals())
                for (const auto& v : g.violations(ts_, t)) total += v.weight;
            if (total <= bound_) found_.emplace_back(total, std::move(t));
            return;
        }
        int best_cell = -1;
        std::size_t best_count = std::numeric_limits<std::size_t>::max();
        for (int c = 0; c < cells_; ++c) {
            if (assign_[static_cast<std::size_t>(c)] >= 0) continue;
            std::int64_t slack = bound_ - current - (rest - min_site_[static_cast<std::size_t>(c)]);
            std::size_t count = 0;
            for (int t : domain_[static_cast<std::size_t>(c)])
                if (incremental(c, t) <= slack) ++count;
            if (count == 0) return;
            if (count < best_count) {
                best_count = count;
                best_cell = c;
            }
        }
        const int c = best_cell;
        const std::int64_t rest_after = rest - min_site_[static_cast<std::size_t>(c)];
        const std::int64_t slack = bound_ - current - rest_after;
        std::vector<std::pair<std::int64_t, int>> cand;
        cand.reserve(best_count);
        for (int t : domain_[static_cast<std::size_t>(c)])
            if (auto inc = incremental(c, t); inc <= slack) cand.emplace_back(inc, t);
        std::sort(cand.begin(), cand.end());
        for (auto [inc, t] : cand) {
            assign_[static_cast<std::size_t>(c)] = t;
            dfs(current + inc, rest_after, remaining - 1);
        }
        assign_[static_cast<std::size_t>(c)] = -1;
    }

    const TileSet& ts_;
    int w_, h_, cells_, n_;
    std::int64_t budget_;
    std::int64_t bound_ = 0;
    std::int64_t nodes_ = 0;
    std::vector<std::vector<int>> domain_;
    std::vector<std::int64_t> site_;
    std::vector<std::int64_t> min_site_;
    std::vector<int> assign_;
    std::vector<std::pair<std::int64_t, Tiling>> found_;
};

}  // namespace

EnumerationResult enumerate_tilings(const TileSet& ts, const TilingProblem& problem, const EnumerationOptions& opts) {
    if (problem.width <= 0 || problem.height <= 0) throw ValidationError("lattice dimensions must be positive");
    if (!problem.allowed.empty() && problem.allowed.size() != static_cast<std::size_t>(problem.width * problem.height))
        throw ValidationError("per-cell restrictions do not match the lattice");
    if (opts.node_budget <= 0) throw ValidationError("node budget must be positive");
    Search search(ts, problem, opts.node_budget);
    EnumerationResult res;
    auto finish = [&](std::int64_t min_score) {
        auto& f = search.found();
        std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
        res.min_score = min_score;
        for (auto& [s, t] : f) res.tilings.push_back(std::move(t));
        res.nodes = search.nodes();
        return res;
    };
    if (opts.score_cap) {
        search.run(*opts.score_cap);
        std::int64_t m = std::numeric_limits<std::int64_t>::max();
        for (const auto& [s, t] : search.found()) m = std::min(m, s);
        return finish(search.found().empty() ? *opts.score_cap + 1 : m);
    }
    const std::int64_t start = search.lower_bound();
    for (std::int64_t b = start; b <= start + opts.max_deepening; ++b) {
        search.run(b);
        if (!search.found().empty()) {
            std::int64_t m = std::numeric_limits<std::int64_t>::max();
            for (const auto& [s, t] : search.found()) m = std::min(m, s);
            auto& f = search.found();
            std::erase_if(f, [m](const auto& e) { return e.first != m; });
            return finish(m);
        }
    }
    throw ResourceError("no tiling found within the deepening limit");
}

EnumerationResult enumerate_min_tilings(const TileSet& ts, int L, std::int64_t node_budget) {
    EnumerationOptions opts;
    opts.node_budget = node_budget;
    return enumerate_tilings(ts, TilingProblem::square(L), opts);
}

KernelTables kernel_tables(const TileSet& ts, int w, int h) {
    if (!ts.globals().empty()) throw ValidationError("global constraints have no kernel representation");
    KernelTables k;
    k.site.resize(static_cast<std::size_t>(w * h) * static_cast<std::size_t>(ts.size()));
    for (int c = 0; c < w * h; ++c)
        for (int t = 0; t < ts.size(); ++t)
            k.site[static_cast<std::size_t>(c) * static_cast<std::size_t>(ts.size()) + static_cast<std::size_t>(t)] =
                ts.site_cost(t, c % w, c / w, w, h);
    return k;
}

kernels::TilingTables KernelTables::view(const TileSet& ts, int w, int h) const {
    return {w, h, ts.size(), site, ts.horizontal_table(), ts.vertical_table()};
}

}  // namespace ugap::tiles
