#pragma once

#include "bindweaver/concept_graph.hpp"
#include "bindweaver/config.hpp"
#include "bindweaver/overload_enumerator.hpp"
#include "bindweaver/type_expr.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bindweaver {

inline constexpr std::string_view point_location_source = "registration:point-location";

enum class ReturnPolicy { copy_value, reference_to_existing, kernel_dependent };

std::string_view to_string(ReturnPolicy policy);

// Accessors whose result is tied to the kernel's representation of numbers.
bool is_kernel_dependent_accessor(std::string_view member_name);

// Kernel-dependent resolves to a reference for kernels that store their
// coordinates and to a copy for the lazy exact kernels.
ReturnPolicy resolve_return_policy(ReturnPolicy declared, KernelName kernel);

struct SurfaceMember {
    std::string name;
    Signature signature;
    ReturnPolicy policy = ReturnPolicy::copy_value;
    std::vector<WrapperKind> wrappers;
    std::vector<std::string> dispatch;  // element types tried, in order, for list inputs
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string provenance;
};

struct SurfaceClass {
    std::string name;
    std::optional<TypeExpr> type;
    std::vector<std::string> collapses;  // C++ handle and iterator types sharing this class
    std::vector<SurfaceClass> nested;
    std::vector<SurfaceMember> members;
    std::string provenance;
};

// A concept-graph model exposed in a module.
struct ModelBinding {
    Model model;  // possibly with concepts added by an extender
    std::string class_name;
    std::optional<TypeExpr> type;
    bool flatten = false;  // nested types land directly in the module namespace
    MergedInterface interface;
};

struct ModuleSurface {
    ModuleId module = ModuleId::KER;
    std::string ns;
    std::vector<std::string> lookup;  // other namespaces searched for names
    std::map<std::string, std::string> aliases;  // names standing for a builtin
    std::vector<std::string> notes;
    std::vector<ModelBinding> models;
    std::vector<SurfaceClass> classes;
    std::vector<SurfaceMember> functions;
};

struct BindingTables {
    std::vector<SupportTable> support;
    StrategyCatalog minkowski;

    const SupportTable* find(std::string_view function) const;
};

// Reads support/*.json and minkowski_catalog.json under the data directory.
BindingTables load_binding_tables(const std::filesystem::path& data_dir);

// Throws ResolutionError when a referenced model is missing from the graph.
std::vector<ModuleSurface> build_surfaces(const BuildConfig& config, const ConceptGraph& graph,
                                          const BindingTables& tables);

struct ResolvedType {
    std::string qualified;  // identifiers replaced by full paths, for plans
    std::string display;    // as written in a stub
    std::set<std::pair<std::string, std::string>> imports;  // (namespace, top-level name)
};

// Resolves type text against the classes of every surface. Lookup goes from
// the innermost enclosing class outwards to the module namespace, then the
// module's lookup namespaces, then builtins and aliases.
class TypeResolver {
public:
    explicit TypeResolver(std::span<const ModuleSurface> surfaces);

    // Throws ResolutionError naming the first identifier that resolves nowhere.
    ResolvedType resolve(std::string_view type_text, const ModuleSurface& module,
                         std::string_view context_path) const;

    bool has_class(std::string_view qualified_path) const;

private:
    std::set<std::string, std::less<>> classes_;
};

}  // namespace bindweaver
