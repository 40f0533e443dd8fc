#pragma once

#include "bindweaver/diagnostic.hpp"
#include "bindweaver/enum_text.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bindweaver {

// Library modules in their canonical order.
enum class ModuleId { KER, KERD, AOS2, AS2, AS3, BSO2, BV, CH2, CH3, POL2, PP, MS2, SS, TRI2, TRI3 };

inline constexpr std::size_t module_count = 15;

struct ModuleDescriptor {
    ModuleId id;
    std::string_view long_name;   // config spelling, e.g. ARRANGEMENT_ON_SURFACE_2
    std::string_view short_name;  // e.g. AOS2
    std::string_view namespace_name;
};

std::span<const ModuleDescriptor> module_descriptors();
const ModuleDescriptor& descriptor(ModuleId id);
std::optional<ModuleId> module_from_short_name(std::string_view short_name);

// "AOS2" -> "Aos2": first character kept upper case, the rest lowered.
std::string derive_namespace(std::string_view short_name);

enum class KernelName { epic, epec, epecws, filteredSimpleCartesianDouble, filteredSimpleCartesianLazyGmpq };
enum class KernelDName { epicd, epecd, cartesiandDouble, cartesiandLazyGmpq };
enum class DimensionTag { static_tag, dynamic_tag };
enum class GeometryTraitsName { nonCachingSegment, segment, linear, conic, circleSegment, algebraic };
enum class Tri2Name { plain, regular, delaunay, constrained, constrainedDelaunay, periodicPlain, periodicDelaunay };
enum class IntersectionTagName { ncirc };
enum class Tri3Name { plain, regular, delaunay, periodicPlain, periodicRegular, periodicDelaunay };
enum class ConcurrencyName { sequential, parallel };
enum class LocationPolicyName { fast, compact };
enum class As3Name { plain, fixed };

template <> struct EnumText<ModuleId> {
    static constexpr std::array<std::string_view, 15> names{
        "KER", "KERD", "AOS2", "AS2", "AS3", "BSO2", "BV", "CH2", "CH3", "POL2", "PP", "MS2", "SS", "TRI2", "TRI3"};
};
template <> struct EnumText<KernelName> {
    static constexpr std::array<std::string_view, 5> names{
        "epic", "epec", "epecws", "filteredSimpleCartesianDouble", "filteredSimpleCartesianLazyGmpq"};
};
template <> struct EnumText<KernelDName> {
    static constexpr std::array<std::string_view, 4> names{"epicd", "epecd", "cartesiandDouble", "cartesiandLazyGmpq"};
};
template <> struct EnumText<DimensionTag> {
    static constexpr std::array<std::string_view, 2> names{"static", "dynamic"};
};
template <> struct EnumText<GeometryTraitsName> {
    static constexpr std::array<std::string_view, 6> names{
        "nonCachingSegment", "segment", "linear", "conic", "circleSegment", "algebraic"};
};
template <> struct EnumText<Tri2Name> {
    static constexpr std::array<std::string_view, 7> names{
        "plain", "regular", "delaunay", "constrained", "constrainedDelaunay", "periodicPlain", "periodicDelaunay"};
};
template <> struct EnumText<IntersectionTagName> {
    static constexpr std::array<std::string_view, 1> names{"ncirc"};
};
template <> struct EnumText<Tri3Name> {
    static constexpr std::array<std::string_view, 6> names{
        "plain", "regular", "delaunay", "periodicPlain", "periodicRegular", "periodicDelaunay"};
};
template <> struct EnumText<ConcurrencyName> {
    static constexpr std::array<std::string_view, 2> names{"sequential", "parallel"};
};
template <> struct EnumText<LocationPolicyName> {
    static constexpr std::array<std::string_view, 2> names{"fast", "compact"};
};
template <> struct EnumText<As3Name> {
    static constexpr std::array<std::string_view, 2> names{"plain", "fixed"};
};

struct GeneralArgs {
    bool use_shared_libs = true;
    bool build_shared_libs = true;
    bool fixed_library_name = true;
    friend bool operator==(const GeneralArgs&, const GeneralArgs&) = default;
};

struct KernelSelection {
    KernelName name = KernelName::epic;
    bool intersection_bindings = true;
    friend bool operator==(const KernelSelection&, const KernelSelection&) = default;
};

struct KernelDSelection {
    KernelDName name = KernelDName::epicd;
    DimensionTag dimension_tag = DimensionTag::dynamic_tag;
    int dimension = 2;
    friend bool operator==(const KernelDSelection&, const KernelDSelection&) = default;
};

struct Aos2Selection {
    GeometryTraitsName geometry_traits = GeometryTraitsName::segment;
    bool extend_vertex = false;
    bool extend_halfedge = false;
    bool extend_face = false;
    bool point_location_bindings = true;
    friend bool operator==(const Aos2Selection&, const Aos2Selection&) = default;
};

struct Tri2Selection {
    Tri2Name name = Tri2Name::plain;
    bool vertex_with_info = false;
    bool face_with_info = false;
    IntersectionTagName intersection_tag = IntersectionTagName::ncirc;
    bool hierarchy = false;
    friend bool operator==(const Tri2Selection&, const Tri2Selection&) = default;
};

struct As2Selection {
    bool exact_comparison = false;
    friend bool operator==(const As2Selection&, const As2Selection&) = default;
};

struct Tri3Selection {
    Tri3Name name = Tri3Name::plain;
    ConcurrencyName concurrency = ConcurrencyName::sequential;
    LocationPolicyName location_policy = LocationPolicyName::compact;
    bool hierarchy = false;
    bool vertex_with_info = false;
    bool cell_with_info = false;
    friend bool operator==(const Tri3Selection&, const Tri3Selection&) = default;
};

struct As3Selection {
    As3Name name = As3Name::plain;
    bool exact_comparison = false;
    friend bool operator==(const As3Selection&, const As3Selection&) = default;
};

struct SsSelection {
    int dimension = 2;
    friend bool operator==(const SsSelection&, const SsSelection&) = default;
};

struct BuildConfig {
    GeneralArgs general;
    std::array<bool, module_count> enabled{true};  // only KER on
    KernelSelection kernel;
    KernelDSelection kernel_d;
    Aos2Selection aos2;
    Tri2Selection tri2;
    As2Selection as2;
    Tri3Selection tri3;
    As3Selection as3;
    SsSelection ss;

    bool is_enabled(ModuleId id) const { return enabled[static_cast<std::size_t>(id)]; }
    void set_enabled(ModuleId id, bool on) { enabled[static_cast<std::size_t>(id)] = on; }

    friend bool operator==(const BuildConfig&, const BuildConfig&) = default;
};

struct ParseResult {
    BuildConfig config;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// Reads "CGALPY_<KEY>=<value>" lines. Absent keys keep their defaults.
ParseResult parse_config(std::string_view text);

// Every key, one per line, in a fixed order.
std::string render_config(const BuildConfig& config);

// Cross-module requirements. Never enables anything.
std::vector<Diagnostic> validate_dependencies(const BuildConfig& config);

std::vector<ModuleId> enabled_modules(const BuildConfig& config);

// Kernels whose number type is a machine double.
bool kernel_uses_double(KernelName name);
bool kernel_d_uses_double(KernelDName name);

}  // namespace bindweaver
