#include "bindweaver/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bindweaver {

namespace {

constexpr std::array<ModuleDescriptor, module_count> descriptors{{
    {ModuleId::KER, "KERNEL", "KER", "Ker"},
    {ModuleId::KERD, "KERNEL_D", "KERD", "Kerd"},
    {ModuleId::AOS2, "ARRANGEMENT_ON_SURFACE_2", "AOS2", "Aos2"},
    {ModuleId::AS2, "ALPHA_SHAPE_2", "AS2", "As2"},
    {ModuleId::AS3, "ALPHA_SHAPE_3", "AS3", "As3"},
    {ModuleId::BSO2, "BOOLEAN_SET_OPERATIONS_2", "BSO2", "Bso2"},
    {ModuleId::BV, "BOUNDING_VOLUMES", "BV", "Bv"},
    {ModuleId::CH2, "CONVEX_HULL_2", "CH2", "Ch2"},
    {ModuleId::CH3, "CONVEX_HULL_3", "CH3", "Ch3"},
    {ModuleId::POL2, "POLYGON_2", "POL2", "Pol2"},
    {ModuleId::PP, "POLYGON_PARTITIONING", "PP", "Pp"},
    {ModuleId::MS2, "MINKOWSKI_SUM_2", "MS2", "Ms2"},
    {ModuleId::SS, "SPATIAL_SEARCHING", "SS", "Ss"},
    {ModuleId::TRI2, "TRIANGULATION_2", "TRI2", "Tri2"},
    {ModuleId::TRI3, "TRIANGULATION_3", "TRI3", "Tri3"},
}};

constexpr std::string_view key_prefix = "CGALPY_";

// Reads a value; returns an error message on failure.
using Setter = std::function<std::optional<std::string>(BuildConfig&, std::string_view)>;
using Getter = std::function<std::string(const BuildConfig&)>;

struct ConfigKey {
    std::string name;  // without the prefix
    Setter set;
    Getter get;
};

std::optional<bool> parse_bool(std::string_view v) {
    if (v == "true") return true;
    if (v == "false") return false;
    return std::nullopt;
}

std::optional<int> parse_positive(std::string_view v) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || out < 1) return std::nullopt;
    return out;
}

template <typename Sel, typename T>
ConfigKey field_key(std::string name, Sel BuildConfig::*sel, T Sel::*field) {
    if constexpr (std::is_same_v<T, bool>) {
        return {std::move(name),
                [sel, field](BuildConfig& c, std::string_view v) -> std::optional<std::string> {
                    auto b = parse_bool(v);
                    if (!b) return "expected true or false";
                    (c.*sel).*field = *b;
                    return std::nullopt;
                },
                [sel, field](const BuildConfig& c) { return std::string((c.*sel).*field ? "true" : "false"); }};
    } else if constexpr (std::is_same_v<T, int>) {
        return {std::move(name),
                [sel, field](BuildConfig& c, std::string_view v) -> std::optional<std::string> {
                    auto n = parse_positive(v);
                    if (!n) return "expected a positive integer";
                    (c.*sel).*field = *n;
                    return std::nullopt;
                },
                [sel, field](const BuildConfig& c) { return std::to_string((c.*sel).*field); }};
    } else {
        return {std::move(name),
                [sel, field](BuildConfig& c, std::string_view v) -> std::optional<std::string> {
                    auto e = parse_enum<T>(v);
                    if (!e) {
                        std::string allowed;
                        for (auto n : EnumText<T>::names) allowed += (allowed.empty() ? "" : ", ") + std::string(n);
                        return "expected one of: " + allowed;
                    }
                    (c.*sel).*field = *e;
                    return std::nullopt;
                },
                [sel, field](const BuildConfig& c) { return std::string(enum_name((c.*sel).*field)); }};
    }
}

ConfigKey enable_key(const ModuleDescriptor& d) {
    ModuleId id = d.id;
    return {std::string(d.long_name) + "_BINDINGS",
            [id](BuildConfig& c, std::string_view v) -> std::optional<std::string> {
                auto b = parse_bool(v);
                if (!b) return "expected true or false";
                c.set_enabled(id, *b);
                return std::nullopt;
            },
            [id](const BuildConfig& c) { return std::string(c.is_enabled(id) ? "true" : "false"); }};
}

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        k.push_back(field_key("USE_SHARED_LIBS", &BuildConfig::general, &GeneralArgs::use_shared_libs));
        k.push_back(field_key("BUILD_SHARED_LIBS", &BuildConfig::general, &GeneralArgs::build_shared_libs));
        k.push_back(field_key("FIXED_LIBRARY_NAME", &BuildConfig::general, &GeneralArgs::fixed_library_name));
        for (const auto& d : descriptors) k.push_back(enable_key(d));
        k.push_back(field_key("KERNEL_NAME", &BuildConfig::kernel, &KernelSelection::name));
        k.push_back(field_key("KERNEL_INTERSECTION_BINDINGS", &BuildConfig::kernel,
                              &KernelSelection::intersection_bindings));
        k.push_back(field_key("KERNEL_D_NAME", &BuildConfig::kernel_d, &KernelDSelection::name));
        k.push_back(field_key("KERNEL_D_DIMENSION_TAG", &BuildConfig::kernel_d, &KernelDSelection::dimension_tag));
        k.push_back(field_key("KERNEL_D_DIMENSION", &BuildConfig::kernel_d, &KernelDSelection::dimension));
        k.push_back(field_key("AOS2_GEOMETRY_TRAITS_NAME", &BuildConfig::aos2, &Aos2Selection::geometry_traits));
        k.push_back(field_key("AOS2_EXTEND_VERTEX", &BuildConfig::aos2, &Aos2Selection::extend_vertex));
        k.push_back(field_key("AOS2_EXTEND_HALFEDGE", &BuildConfig::aos2, &Aos2Selection::extend_halfedge));
        k.push_back(field_key("AOS2_EXTEND_FACE", &BuildConfig::aos2, &Aos2Selection::extend_face));
        k.push_back(field_key("AOS2_POINT_LOCATION_BINDINGS", &BuildConfig::aos2,
                              &Aos2Selection::point_location_bindings));
        k.push_back(field_key("TRI2_NAME", &BuildConfig::tri2, &Tri2Selection::name));
        k.push_back(field_key("TRI2_VERTEX_WITH_INFO", &BuildConfig::tri2, &Tri2Selection::vertex_with_info));
        k.push_back(field_key("TRI2_FACE_WITH_INFO", &BuildConfig::tri2, &Tri2Selection::face_with_info));
        k.push_back(field_key("TRI2_INTERSECTION_TAG_NAME", &BuildConfig::tri2, &Tri2Selection::intersection_tag));
        k.push_back(field_key("TRI2_HIERARCHY", &BuildConfig::tri2, &Tri2Selection::hierarchy));
        k.push_back(field_key("AS2_EXACT_COMPARISON", &BuildConfig::as2, &As2Selection::exact_comparison));
        k.push_back(field_key("TRI3_NAME", &BuildConfig::tri3, &Tri3Selection::name));
        k.push_back(field_key("TRI3_CONCURRENCY_NAME", &BuildConfig::tri3, &Tri3Selection::concurrency));
        k.push_back(field_key("TRI3_LOCATION_POLICY_NAME", &BuildConfig::tri3, &Tri3Selection::location_policy));
        k.push_back(field_key("TRI3_HIERARCHY", &BuildConfig::tri3, &Tri3Selection::hierarchy));
        k.push_back(field_key("TRI3_VERTEX_WITH_INFO", &BuildConfig::tri3, &Tri3Selection::vertex_with_info));
        k.push_back(field_key("TRI3_CELL_WITH_INFO", &BuildConfig::tri3, &Tri3Selection::cell_with_info));
        k.push_back(field_key("AS3_NAME", &BuildConfig::as3, &As3Selection::name));
        k.push_back(field_key("AS3_EXACT_COMPARISON", &BuildConfig::as3, &As3Selection::exact_comparison));
        k.push_back(field_key("SPATIAL_SEARCHING_DIMENSION", &BuildConfig::ss, &SsSelection::dimension));
        return k;
    }();
    return keys;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::span<const ModuleDescriptor> module_descriptors() { return descriptors; }

const ModuleDescriptor& descriptor(ModuleId id) { return descriptors[static_cast<std::size_t>(id)]; }

std::optional<ModuleId> module_from_short_name(std::string_view short_name) {
    for (const auto& d : descriptors)
        if (d.short_name == short_name) return d.id;
    return std::nullopt;
}

std::string derive_namespace(std::string_view short_name) {
    std::string out(short_name);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<char>(i == 0 ? std::toupper(static_cast<unsigned char>(out[i]))
                                          : std::tolower(static_cast<unsigned char>(out[i])));
    return out;
}

ParseResult parse_config(std::string_view text) {
    ParseResult result;
    std::map<std::string_view, const ConfigKey*> by_name;
    for (const auto& k : config_keys()) by_name[k.name] = &k;
    std::set<std::string> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        std::string where = "line " + std::to_string(line_no);

        line = trim(line);
        if (line.empty() || line.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            result.diagnostics.push_back(make_error("malformed-line", "expected CGALPY_<KEY>=<value>", where));
        } else {
            std::string_view key = trim(line.substr(0, eq));
            std::string_view value = trim(line.substr(eq + 1));
            auto it = key.rfind(key_prefix, 0) == 0 ? by_name.find(key.substr(key_prefix.size())) : by_name.end();
            if (it == by_name.end()) {
                result.diagnostics.push_back(make_error("unknown-key", "unknown key " + std::string(key), where));
            } else if (!seen.insert(std::string(key)).second) {
                result.diagnostics.push_back(make_error("duplicate-key", std::string(key) + " is set twice", where));
            } else if (auto err = it->second->set(result.config, value)) {
                result.diagnostics.push_back(make_error(
                    "malformed-value", std::string(key) + "=" + std::string(value) + ": " + *err, where));
            }
        }
        if (end == text.size()) break;
    }
    return result;
}

std::string render_config(const BuildConfig& config) {
    std::ostringstream out;
    for (const auto& k : config_keys()) out << key_prefix << k.name << '=' << k.get(config) << '\n';
    return out.str();
}

std::vector<Diagnostic> validate_dependencies(const BuildConfig& config) {
    struct Rule {
        ModuleId module;
        ModuleId requires_module;
    };
    static constexpr std::array<Rule, 8> rules{{
        {ModuleId::BSO2, ModuleId::AOS2},
        {ModuleId::BSO2, ModuleId::POL2},
        {ModuleId::BSO2, ModuleId::KER},
        {ModuleId::MS2, ModuleId::KER},
        {ModuleId::MS2, ModuleId::AOS2},
        {ModuleId::MS2, ModuleId::POL2},
        {ModuleId::AS2, ModuleId::TRI2},
        {ModuleId::AS3, ModuleId::TRI3},
    }};
    std::vector<Diagnostic> out;
    for (const auto& r : rules) {
        if (config.is_enabled(r.module) && !config.is_enabled(r.requires_module)) {
            std::string a(descriptor(r.module).short_name);
            std::string b(descriptor(r.requires_module).short_name);
            out.push_back(make_error("missing-dependency", a + " requires " + b, a));
        }
    }
    if (config.is_enabled(ModuleId::AS2) && config.is_enabled(ModuleId::TRI2)) {
        auto n = config.tri2.name;
        if (n != Tri2Name::delaunay && n != Tri2Name::regular)
            out.push_back(make_error("incompatible-selection",
                                     "AS2 requires TRI2_NAME in {delaunay, regular}, got " +
                                         std::string(enum_name(n)),
                                     "AS2"));
    }
    if (config.is_enabled(ModuleId::AS3) && config.is_enabled(ModuleId::TRI3)) {
        auto n = config.tri3.name;
        if (n != Tri3Name::delaunay && n != Tri3Name::regular && n != Tri3Name::periodicDelaunay &&
            n != Tri3Name::periodicRegular)
            out.push_back(make_error(
                "incompatible-selection",
                "AS3 requires TRI3_NAME in {delaunay, regular, periodicDelaunay, periodicRegular}, got " +
                    std::string(enum_name(n)),
                "AS3"));
    }
    return out;
}

std::vector<ModuleId> enabled_modules(const BuildConfig& config) {
    std::vector<ModuleId> out;
    for (const auto& d : descriptors)
        if (config.is_enabled(d.id)) out.push_back(d.id);
    return out;
}

bool kernel_uses_double(KernelName name) {
    return name == KernelName::epic || name == KernelName::filteredSimpleCartesianDouble;
}

bool kernel_d_uses_double(KernelDName name) {
    return name == KernelDName::epicd || name == KernelDName::cartesiandDouble;
}

}  // namespace bindweaver
