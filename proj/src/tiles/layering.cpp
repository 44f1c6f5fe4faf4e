#include <algorithm>
#include <memory>
#include <set>

#include "ugap/errors.hpp"
#include "ugap/tiles.hpp"

namespace ugap::tiles {

int component_id(const Tile& t, int layer) {
    int id = t.attr("layer" + std::to_string(layer) + ".id");
    if (id < 0) throw ValidationError("tile is not a product tile for layer " + std::to_string(layer));
    return id;
}

InterlayerRule same_role_rule(int layer_count) {
    std::vector<int> all(static_cast<std::size_t>(layer_count));
    for (int i = 0; i < layer_count; ++i) all[static_cast<std::size_t>(i)] = i;
    return {"same-role", all, [](std::span<const Tile* const> ts) {
                for (const Tile* t : ts)
                    if (t->role != ts.front()->role) return false;
                return true;
            }};
}

TileSet layer_and_dovetail(const std::vector<TileSet>& layers, const std::vector<InterlayerRule>& interlayer,
                           const std::vector<LayerBorderRule>& border) {
    if (layers.empty()) throw ValidationError("layering needs at least one tileset");
    const int n = static_cast<int>(layers.size());
    auto check_refs = [&](const std::vector<int>& refs, const std::string& name) {
        if (refs.empty()) throw ValidationError("rule '" + name + "' references no layer");
        for (int l : refs)
            if (l < 0 || l >= n) throw ValidationError("rule '" + name + "' references missing layer " + std::to_string(l));
    };
    for (const auto& r : interlayer) {
        check_refs(r.layers, r.name);
        if (!r.allowed) throw ValidationError("rule '" + r.name + "' has no predicate");
    }
    for (const auto& r : border) {
        check_refs(r.layers, r.name);
        if (!r.allowed) throw ValidationError("rule '" + r.name + "' has no predicate");
    }
    for (const auto& l : layers) {
        if (l.has_pair_overrides()) throw ValidationError("layers with explicit pair weights cannot be combined");
        if (!l.globals().empty()) throw ValidationError("layers with global constraints cannot be combined");
    }

    auto shared = std::make_shared<const std::vector<TileSet>>(layers);
    // A rule is checked as soon as every layer it references has a component.
    std::vector<std::vector<const InterlayerRule*>> due(static_cast<std::size_t>(n));
    for (const auto& r : interlayer) due[static_cast<std::size_t>(*std::max_element(r.layers.begin(), r.layers.end()))].push_back(&r);

    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        for (const auto& ln : layers[static_cast<std::size_t>(i)].layer_names()) names.push_back(std::to_string(i) + ":" + ln);

    std::vector<Tile> product;
    std::vector<const Tile*> pick(static_cast<std::size_t>(n));
    std::vector<const Tile*> args;
    auto passes = [&](const InterlayerRule& r) {
        args.clear();
        for (int l : r.layers) args.push_back(pick[static_cast<std::size_t>(l)]);
        return r.allowed(args);
    };
    auto emit = [&] {
        Tile t;
        std::set<std::string> roles;
        for (int i = 0; i < n; ++i) {
            const Tile& c = *pick[static_cast<std::size_t>(i)];
            t.layers.insert(t.layers.end(), c.layers.begin(), c.layers.end());
            t.decorations.insert(c.decorations.begin(), c.decorations.end());
            roles.insert(c.role);
            for (const auto& [k, v] : c.attrs) {
                auto [it, fresh] = t.attrs.emplace(k, v);
                if (!fresh && it->second != v) throw ValidationError("conflicting attribute '" + k + "' in product tile");
            }
            t.attrs["layer" + std::to_string(i) + ".id"] = c.id;
        }
        for (const auto& r : roles) t.role += (t.role.empty() ? "" : "+") + r;
        product.push_back(std::move(t));
    };
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            emit();
            return;
        }
        for (const Tile& c : layers[static_cast<std::size_t>(depth)].tiles()) {
            pick[static_cast<std::size_t>(depth)] = &c;
            bool ok = true;
            for (const auto* r : due[static_cast<std::size_t>(depth)])
                if (!passes(*r)) {
                    ok = false;
                    break;
                }
            if (ok) self(self, depth + 1);
        }
    };
    rec(rec, 0);
    if (product.empty()) throw StructuralError("interlayer rules leave no product tile");

    TileSet out(names, std::move(product));
    for (const auto& l : layers)
        for (const auto& d : l.decoration_alphabet()) out.declare_decoration(d);
    for (const auto& t : out.tiles())
        for (int i = 0; i < n; ++i) {
            const auto& layer = layers[static_cast<std::size_t>(i)];
            int cid = component_id(t, i);
            for (auto ctx : {Context::Unconditional, Context::AboveAnother, Context::RightOfAnother,
                             Context::BelowAnother, Context::LeftOfAnother})
                if (auto b = layer.site_bonus(cid, ctx); b != 0) out.add_site_bonus(t.id, ctx, b);
        }
    for (int i = 0; i < n; ++i)
        for (std::size_t r = 0; r < layers[static_cast<std::size_t>(i)].border_rules().size(); ++r) {
            const auto& rule = layers[static_cast<std::size_t>(i)].border_rules()[r];
            out.add_border_rule({std::to_string(i) + ":" + rule.name, rule.side,
                                 [shared, i, r](const Tile& t) {
                                     const auto& l = (*shared)[static_cast<std::size_t>(i)];
                                     return l.border_rules()[r].allowed(l.tile(component_id(t, i)));
                                 },
                                 rule.penalty});
        }
    for (const auto& rule : border) {
        out.add_border_rule({rule.name, rule.side,
                             [shared, rule](const Tile& t) {
                                 std::vector<const Tile*> comps;
                                 for (int l : rule.layers) comps.push_back(&(*shared)[static_cast<std::size_t>(l)].tile(component_id(t, l)));
                                 return rule.allowed(comps);
                             },
                             rule.penalty});
    }
    return out;
}

}  // namespace ugap::tiles
