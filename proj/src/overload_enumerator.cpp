#include "bindweaver/overload_enumerator.hpp"

#include "bindweaver/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace bindweaver {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::filesystem::filesystem_error("cannot open", path, std::make_error_code(std::errc::io_error));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(std::string_view text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

void expect_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw SchemaError(where + ": unknown key '" + key + "'");
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw SchemaError(where + ": missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw SchemaError(where + ": '" + std::string(key) + "' has the wrong type");
    }
}

}  // namespace

std::string_view to_string(WrapperKind kind) {
    switch (kind) {
    case WrapperKind::plain: return "plain";
    case WrapperKind::variant_result: return "variant-result";
    case WrapperKind::list_input: return "list-input";
    case WrapperKind::list_output: return "list-output";
    case WrapperKind::apply_iterator_output: return "apply-iterator-output";
    case WrapperKind::iterator: return "iterator";
    case WrapperKind::circulator: return "circulator";
    }
    return "plain";
}

SupportTable load_support_table(std::string_view json_text) {
    json doc = parse_json(json_text, "support table");
    expect_keys(doc, {"function", "arity", "symmetric", "universe", "supported"}, "support table");
    SupportTable t;
    t.function = get<std::string>(doc, "function", "support table");
    std::string where = "support table " + t.function;
    t.arity = get<int>(doc, "arity", where);
    t.symmetric = get<bool>(doc, "symmetric", where);
    t.universe = get<std::vector<std::string>>(doc, "universe", where);
    if (t.arity < 1) throw SchemaError(where + ": arity must be positive");
    if (t.symmetric && t.arity != 2) throw SchemaError(where + ": only binary tables can be symmetric");
    std::set<std::string> universe(t.universe.begin(), t.universe.end());
    if (universe.size() != t.universe.size()) throw SchemaError(where + ": repeated type in universe");

    auto listed = get<std::vector<TypeTuple>>(doc, "supported", where);
    for (const auto& tuple : listed) {
        std::string shown;
        for (const auto& s : tuple) shown += (shown.empty() ? "" : ", ") + s;
        if (tuple.size() != static_cast<std::size_t>(t.arity))
            throw SchemaError(where + ": tuple (" + shown + ") does not match the arity");
        for (const auto& s : tuple)
            if (universe.count(s) == 0) throw SchemaError(where + ": " + s + " is outside the universe");
        if (!t.supported.insert(tuple).second) throw SchemaError(where + ": duplicate tuple (" + shown + ")");
    }
    if (t.symmetric) {
        for (const auto& tuple : listed) {
            TypeTuple mirror{tuple[1], tuple[0]};
            if (mirror == tuple) continue;
            if (std::find(listed.begin(), listed.end(), mirror) != listed.end())
                throw SchemaError(where + ": (" + tuple[0] + ", " + tuple[1] +
                                  ") is listed in both orders in a symmetric table");
            t.supported.insert(mirror);
        }
    }
    return t;
}

SupportTable load_support_table_file(const std::filesystem::path& path) {
    return load_support_table(read_file(path));
}

std::vector<TypePair> expand_pairs(std::span<const std::string> candidates) {
    std::set<std::string> seen;
    for (const auto& c : candidates)
        if (!seen.insert(c).second) throw SchemaError("repeated candidate type: " + c);

    std::vector<TypePair> out;
    out.reserve(candidates.size() * candidates.size());
    // Pairs the head with each later candidate, both ways.
    auto pair_head = [&](std::size_t head) {
        for (std::size_t i = head + 1; i < candidates.size(); ++i) {
            out.emplace_back(candidates[head], candidates[i]);
            out.emplace_back(candidates[i], candidates[head]);
        }
    };
    std::function<void(std::size_t)> bind = [&](std::size_t head) {
        if (head >= candidates.size()) return;
        if (head + 1 < candidates.size()) {
            pair_head(head);
            bind(head + 1);
        }
        out.emplace_back(candidates[head], candidates[head]);
    };
    bind(0);
    return out;
}

std::vector<Registration> filter_supported(std::span<const TypePair> pairs, const SupportTable& table) {
    if (table.arity != 2) throw SchemaError("support table " + table.function + " is not binary");
    std::set<std::string> universe(table.universe.begin(), table.universe.end());
    const bool boolean = table.function == "do_intersect";
    std::vector<Registration> out;
    for (const auto& [a, b] : pairs) {
        for (const auto& t : {a, b})
            if (universe.count(t) == 0)
                throw SchemaError(t + " is outside the universe of support table " + table.function);
        if (!table.supports({a, b})) continue;
        Registration r;
        r.function = table.function;
        r.arg_types = {TypeExpr::named(a), TypeExpr::named(b)};
        r.return_type = TypeExpr::named(boolean ? "bool" : std::string(generic_object_type));
        r.wrapper = boolean ? WrapperKind::plain : WrapperKind::variant_result;
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

void check_catalog(const StrategyCatalog& c) {
    if (c.polygon_types.empty()) throw SchemaError("strategy catalog: no polygon types");
    if (c.strategies.empty()) throw SchemaError("strategy catalog: no strategies");
    const bool holes = std::any_of(c.polygon_types.begin(), c.polygon_types.end(),
                                   [](const PolygonKind& p) { return p.has_holes; });
    const bool any_for_holes = std::any_of(c.strategies.begin(), c.strategies.end(),
                                           [](const DecompositionStrategy& s) { return s.applicable_to_holes; });
    if (holes && !any_for_holes)
        throw SchemaError("strategy catalog: polygons with holes are listed but no strategy applies to them");
}

}  // namespace

StrategyCatalog load_strategy_catalog(std::string_view json_text) {
    json doc = parse_json(json_text, "strategy catalog");
    const std::string where = "strategy catalog";
    expect_keys(doc, {"function", "traits_type", "result_type", "polygon_types", "strategies"}, where);
    StrategyCatalog c;
    c.function = get<std::string>(doc, "function", where);
    c.traits_type = get<std::string>(doc, "traits_type", where);
    c.result_type = get<std::string>(doc, "result_type", where);
    std::set<std::string> names;
    for (const auto& p : get<json>(doc, "polygon_types", where)) {
        expect_keys(p, {"name", "has_holes"}, where + ".polygon_types");
        c.polygon_types.push_back({get<std::string>(p, "name", where), get<bool>(p, "has_holes", where)});
        if (!names.insert(c.polygon_types.back().name).second)
            throw SchemaError(where + ": repeated polygon type " + c.polygon_types.back().name);
    }
    for (const auto& s : get<json>(doc, "strategies", where)) {
        expect_keys(s, {"name", "applicable_to_holes"}, where + ".strategies");
        c.strategies.push_back({get<std::string>(s, "name", where), get<bool>(s, "applicable_to_holes", where)});
        if (!names.insert(c.strategies.back().name).second)
            throw SchemaError(where + ": repeated name " + c.strategies.back().name);
    }
    check_catalog(c);
    return c;
}

StrategyCatalog load_strategy_catalog_file(const std::filesystem::path& path) {
    return load_strategy_catalog(read_file(path));
}

std::vector<Registration> MinkowskiEnumeration::all() const {
    std::vector<Registration> out;
    for (const auto* list : {&reduced_convolution, &single_strategy, &dual_strategy, &single_strategy_with_traits,
                             &dual_strategy_with_traits})
        out.insert(out.end(), list->begin(), list->end());
    return out;
}

MinkowskiEnumeration enumerate_minkowski(const StrategyCatalog& catalog) {
    check_catalog(catalog);
    MinkowskiEnumeration out;
    const TypeExpr result = TypeExpr::named(catalog.result_type);
    const TypeExpr traits = TypeExpr::named(catalog.traits_type);
    auto make = [&](std::vector<TypeExpr> args) {
        return Registration{catalog.function, std::move(args), result, WrapperKind::plain};
    };
    auto with_traits = [&](Registration r) {
        r.arg_types.push_back(traits);
        return r;
    };
    auto fits = [](const DecompositionStrategy& s, const PolygonKind& p) { return s.applicable_to_holes || !p.has_holes; };

    for (const auto& p : catalog.polygon_types) {
        for (const auto& q : catalog.polygon_types) {
            Registration r = make({TypeExpr::named(p.name), TypeExpr::named(q.name)});
            out.reduced_convolution.push_back(r);
            out.reduced_convolution.push_back(with_traits(r));
        }
    }
    for (const auto& p : catalog.polygon_types) {
        for (const auto& q : catalog.polygon_types) {
            for (const auto& s : catalog.strategies) {
                if (!fits(s, p) || !fits(s, q)) continue;
                out.single_strategy.push_back(
                    make({TypeExpr::named(p.name), TypeExpr::named(q.name), TypeExpr::named(s.name)}));
            }
        }
    }
    for (const auto& p : catalog.polygon_types) {
        for (const auto& q : catalog.polygon_types) {
            for (const auto& sp : catalog.strategies) {
                if (!fits(sp, p)) continue;
                for (const auto& sq : catalog.strategies) {
                    if (!fits(sq, q)) continue;
                    out.dual_strategy.push_back(make({TypeExpr::named(p.name), TypeExpr::named(q.name),
                                                      TypeExpr::named(sp.name), TypeExpr::named(sq.name)}));
                }
            }
        }
    }
    for (const auto& r : out.single_strategy) out.single_strategy_with_traits.push_back(with_traits(r));
    for (const auto& r : out.dual_strategy) out.dual_strategy_with_traits.push_back(with_traits(r));
    return out;
}

std::string_view cell_letter(CellKind kind) {
    switch (kind) {
    case CellKind::vertex: return "v";
    case CellKind::edge: return "e";
    case CellKind::face: return "f";
    }
    return "v";
}

bool ExtensionFlags::extended(CellKind kind) const {
    switch (kind) {
    case CellKind::vertex: return vertex;
    case CellKind::edge: return halfedge;
    case CellKind::face: return face;
    }
    return false;
}

std::vector<OverlayHandler> resolve_overlay_handlers(const ExtensionFlags& flags) {
    using C = CellKind;
    static constexpr std::array<std::array<C, 3>, 10> shapes{{
        {C::vertex, C::vertex, C::vertex},
        {C::vertex, C::edge, C::vertex},
        {C::edge, C::vertex, C::vertex},
        {C::vertex, C::face, C::vertex},
        {C::face, C::vertex, C::vertex},
        {C::edge, C::edge, C::vertex},
        {C::edge, C::edge, C::edge},
        {C::edge, C::face, C::edge},
        {C::face, C::edge, C::edge},
        {C::face, C::face, C::face},
    }};
    std::vector<OverlayHandler> out;
    for (const auto& [red, blue, cell] : shapes) {
        OverlayHandler h;
        h.name = "set_" + std::string(cell_letter(red)) + std::string(cell_letter(blue)) + "_" +
                 std::string(cell_letter(cell));
        h.red = red;
        h.blue = blue;
        h.out = cell;
        h.active = flags.extended(cell);
        h.red_placeholder = !flags.extended(red);
        h.blue_placeholder = !flags.extended(blue);
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<OverlayHandler> overlay_handlers() { return resolve_overlay_handlers({true, true, true}); }

std::vector<OverlayHandler> active_overlay_handlers(const ExtensionFlags& flags) {
    std::vector<OverlayHandler> out;
    for (auto& h : resolve_overlay_handlers(flags))
        if (h.active) out.push_back(std::move(h));
    return out;
}

}  // namespace bindweaver
