#pragma once

#include "bindweaver/type_expr.hpp"

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bindweaver {

using TypeTuple = std::vector<std::string>;

struct SupportTable {
    std::string function;
    int arity = 2;
    bool symmetric = false;
    std::vector<std::string> universe;
    std::set<TypeTuple> supported;  // closed under reversal when symmetric

    bool supports(const TypeTuple& args) const { return supported.count(args) != 0; }
};

// A symmetric table lists each unordered pair once; the loader adds the
// reversal and rejects a listed pair whose reversal is also listed.
SupportTable load_support_table(std::string_view json_text);
SupportTable load_support_table_file(const std::filesystem::path& path);

enum class WrapperKind { plain, variant_result, list_input, list_output, apply_iterator_output, iterator, circulator };

std::string_view to_string(WrapperKind kind);

struct Registration {
    std::string function;
    std::vector<TypeExpr> arg_types;
    TypeExpr return_type;
    WrapperKind wrapper = WrapperKind::plain;

    friend bool operator==(const Registration&, const Registration&) = default;
};

using TypePair = std::pair<std::string, std::string>;

// All ordered pairs over the candidates, in the order the recursive
// registration visits them. Throws SchemaError on a repeated candidate.
std::vector<TypePair> expand_pairs(std::span<const std::string> candidates);

// Keeps the supported pairs, in input order. Throws SchemaError when a pair
// names a type outside the table universe.
std::vector<Registration> filter_supported(std::span<const TypePair> pairs, const SupportTable& table);

struct PolygonKind {
    std::string name;
    bool has_holes = false;
};

struct DecompositionStrategy {
    std::string name;
    bool applicable_to_holes = false;
};

struct StrategyCatalog {
    std::string function = "minkowski_sum_2";
    std::string traits_type;
    std::string result_type;
    std::vector<PolygonKind> polygon_types;
    std::vector<DecompositionStrategy> strategies;
};

StrategyCatalog load_strategy_catalog(std::string_view json_text);
StrategyCatalog load_strategy_catalog_file(const std::filesystem::path& path);

struct MinkowskiEnumeration {
    std::vector<Registration> reduced_convolution;  // with and without traits
    std::vector<Registration> single_strategy;
    std::vector<Registration> dual_strategy;
    std::vector<Registration> single_strategy_with_traits;
    std::vector<Registration> dual_strategy_with_traits;

    std::size_t convex_decomposition_count() const {
        return single_strategy.size() + dual_strategy.size() + single_strategy_with_traits.size() +
               dual_strategy_with_traits.size();
    }
    std::vector<Registration> all() const;
};

MinkowskiEnumeration enumerate_minkowski(const StrategyCatalog& catalog);

enum class CellKind { vertex, edge, face };

std::string_view cell_letter(CellKind kind);

struct ExtensionFlags {
    bool vertex = false;
    bool halfedge = false;
    bool face = false;

    bool extended(CellKind kind) const;
    friend bool operator==(const ExtensionFlags&, const ExtensionFlags&) = default;
};

struct OverlayHandler {
    std::string name;  // set_<red><blue>_<out>
    CellKind red;
    CellKind blue;
    CellKind out;
    bool active = true;
    bool red_placeholder = false;   // red input has no data; the callback receives None
    bool blue_placeholder = false;

    friend bool operator==(const OverlayHandler&, const OverlayHandler&) = default;
};

// The ten handlers, every cell extended.
std::vector<OverlayHandler> overlay_handlers();
// The ten handlers with activity and placeholders resolved for the flags.
std::vector<OverlayHandler> resolve_overlay_handlers(const ExtensionFlags& flags);
// Only the handlers whose out cell carries data.
std::vector<OverlayHandler> active_overlay_handlers(const ExtensionFlags& flags);

}  // namespace bindweaver
