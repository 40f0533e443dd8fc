#include "bindweaver/namer.hpp"

#include "bindweaver/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>

namespace bindweaver {

namespace {

using Setter = std::function<void(BuildConfig&)>;

// One position in a module's word sequence. `encode` may yield nothing;
// `match` lists every way the slot can consume a prefix of the text.
struct Slot {
    std::function<std::string(const BuildConfig&)> encode;
    std::function<std::vector<std::pair<std::size_t, Setter>>(std::string_view)> match;
};

bool starts_with(std::string_view text, std::string_view prefix) { return text.substr(0, prefix.size()) == prefix; }

template <typename E, std::size_t N>
Slot enum_slot(const std::array<std::string_view, N>& words, std::function<E(const BuildConfig&)> get,
               std::function<void(BuildConfig&, E)> set) {
    static_assert(N == enum_count<E>());
    Slot s;
    s.encode = [words, get](const BuildConfig& c) { return std::string(words[static_cast<std::size_t>(get(c))]); };
    s.match = [words, set](std::string_view rest) {
        std::vector<std::pair<std::size_t, Setter>> out;
        for (std::size_t i = 0; i < N; ++i)
            if (starts_with(rest, words[i]))
                out.emplace_back(words[i].size(), [set, i](BuildConfig& c) { set(c, static_cast<E>(i)); });
        return out;
    };
    return s;
}

// A word present iff the flag is on (and the condition holds).
template <typename Sel>
Slot flag_slot(std::string word, Sel BuildConfig::*sel, bool Sel::*field,
               std::function<bool(const BuildConfig&)> applies = {}) {
    Slot s;
    s.encode = [word, sel, field, applies](const BuildConfig& c) {
        if (applies && !applies(c)) return std::string();
        return (c.*sel).*field ? word : std::string();
    };
    s.match = [word, sel, field](std::string_view rest) {
        std::vector<std::pair<std::size_t, Setter>> out;
        out.emplace_back(0, [sel, field](BuildConfig& c) { (c.*sel).*field = false; });
        if (starts_with(rest, word))
            out.emplace_back(word.size(), [sel, field](BuildConfig& c) { (c.*sel).*field = true; });
        return out;
    };
    return s;
}

// "<word><positive integer>"
std::vector<std::pair<std::size_t, int>> match_number(std::string_view rest, std::string_view word) {
    std::vector<std::pair<std::size_t, int>> out;
    if (!starts_with(rest, word)) return out;
    std::size_t i = word.size();
    if (i >= rest.size() || rest[i] < '1' || rest[i] > '9') return out;
    long value = 0;
    while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i])) && value < 1000000) {
        value = value * 10 + (rest[i] - '0');
        ++i;
        out.emplace_back(i, static_cast<int>(value));
    }
    return out;
}

constexpr std::array<std::string_view, 5> kernel_words{"Epic", "Epec", "Epecws", "Fscd", "Fsclg"};
constexpr std::array<std::string_view, 4> kernel_d_words{"Epicd", "Epecd", "Cdd", "Cdlg"};
constexpr std::array<std::string_view, 6> traits_words{"NonCachingSeg", "Seg",          "Linear",
                                                       "Conic",         "CircleSegment", "Algebraic"};
constexpr std::array<std::string_view, 7> tri2_words{"Plain",      "Regular",       "Delaunay",        "Constrained",
                                                     "ConstrainedDelaunay", "PeriodicPlain", "PeriodicDelaunay"};
constexpr std::array<std::string_view, 6> tri3_words{"Plain",         "Regular",         "Delaunay",
                                                     "PeriodicPlain", "PeriodicRegular", "PeriodicDelaunay"};
constexpr std::array<std::string_view, 2> as3_words{"Plain", "Fixed"};

Slot kernel_d_dimension_slot() {
    Slot s;
    s.encode = [](const BuildConfig& c) {
        return c.kernel_d.dimension_tag == DimensionTag::static_tag ? "Static" + std::to_string(c.kernel_d.dimension)
                                                                    : std::string("Dynamic");
    };
    s.match = [](std::string_view rest) {
        std::vector<std::pair<std::size_t, Setter>> out;
        if (starts_with(rest, "Dynamic"))
            out.emplace_back(7, [](BuildConfig& c) { c.kernel_d.dimension_tag = DimensionTag::dynamic_tag; });
        for (auto [len, d] : match_number(rest, "Static"))
            out.emplace_back(len, [d = d](BuildConfig& c) {
                c.kernel_d.dimension_tag = DimensionTag::static_tag;
                c.kernel_d.dimension = d;
            });
        return out;
    };
    return s;
}

Slot dcel_slot() {
    Slot s;
    s.encode = [](const BuildConfig& c) {
        const auto& a = c.aos2;
        if (!a.extend_vertex && !a.extend_halfedge && !a.extend_face) return std::string("Plain");
        return std::string("Ext") + (a.extend_vertex ? "V" : "") + (a.extend_halfedge ? "H" : "") +
               (a.extend_face ? "F" : "");
    };
    s.match = [](std::string_view rest) {
        std::vector<std::pair<std::size_t, Setter>> out;
        if (starts_with(rest, "Plain"))
            out.emplace_back(5, [](BuildConfig& c) {
                c.aos2.extend_vertex = c.aos2.extend_halfedge = c.aos2.extend_face = false;
            });
        for (int mask = 1; mask < 8; ++mask) {
            std::string word = std::string("Ext") + ((mask & 1) ? "V" : "") + ((mask & 2) ? "H" : "") +
                               ((mask & 4) ? "F" : "");
            if (starts_with(rest, word))
                out.emplace_back(word.size(), [mask](BuildConfig& c) {
                    c.aos2.extend_vertex = (mask & 1) != 0;
                    c.aos2.extend_halfedge = (mask & 2) != 0;
                    c.aos2.extend_face = (mask & 4) != 0;
                });
        }
        return out;
    };
    return s;
}

Slot ss_dimension_slot() {
    Slot s;
    s.encode = [](const BuildConfig& c) { return "D" + std::to_string(c.ss.dimension); };
    s.match = [](std::string_view rest) {
        std::vector<std::pair<std::size_t, Setter>> out;
        for (auto [len, d] : match_number(rest, "D"))
            out.emplace_back(len, [d = d](BuildConfig& c) { c.ss.dimension = d; });
        return out;
    };
    return s;
}

const std::vector<Slot>& module_slots(ModuleId id) {
    static const std::array<std::vector<Slot>, module_count> table = [] {
        std::array<std::vector<Slot>, module_count> t;
        auto at = [&t](ModuleId m) -> std::vector<Slot>& { return t[static_cast<std::size_t>(m)]; };
        at(ModuleId::KER) = {
            enum_slot<KernelName>(kernel_words, [](const BuildConfig& c) { return c.kernel.name; },
                                  [](BuildConfig& c, KernelName v) { c.kernel.name = v; }),
            flag_slot("Int", &BuildConfig::kernel, &KernelSelection::intersection_bindings),
        };
        at(ModuleId::KERD) = {
            enum_slot<KernelDName>(kernel_d_words, [](const BuildConfig& c) { return c.kernel_d.name; },
                                   [](BuildConfig& c, KernelDName v) { c.kernel_d.name = v; }),
            kernel_d_dimension_slot(),
        };
        // Word order differs from the enumeration, so map explicitly.
        static constexpr std::array<GeometryTraitsName, 6> traits_values{
            GeometryTraitsName::nonCachingSegment, GeometryTraitsName::segment,      GeometryTraitsName::linear,
            GeometryTraitsName::conic,             GeometryTraitsName::circleSegment, GeometryTraitsName::algebraic};
        Slot traits;
        traits.encode = [](const BuildConfig& c) {
            for (std::size_t i = 0; i < traits_values.size(); ++i)
                if (traits_values[i] == c.aos2.geometry_traits) return std::string(traits_words[i]);
            return std::string();
        };
        traits.match = [](std::string_view rest) {
            std::vector<std::pair<std::size_t, Setter>> out;
            for (std::size_t i = 0; i < traits_words.size(); ++i)
                if (starts_with(rest, traits_words[i]))
                    out.emplace_back(traits_words[i].size(),
                                     [i](BuildConfig& c) { c.aos2.geometry_traits = traits_values[i]; });
            return out;
        };
        at(ModuleId::AOS2) = {
            traits,
            dcel_slot(),
            flag_slot("Pl", &BuildConfig::aos2, &Aos2Selection::point_location_bindings),
        };
        at(ModuleId::TRI2) = {
            enum_slot<Tri2Name>(tri2_words, [](const BuildConfig& c) { return c.tri2.name; },
                                [](BuildConfig& c, Tri2Name v) { c.tri2.name = v; }),
            flag_slot("Hier", &BuildConfig::tri2, &Tri2Selection::hierarchy),
            flag_slot("VertexInfo", &BuildConfig::tri2, &Tri2Selection::vertex_with_info),
            flag_slot("FaceInfo", &BuildConfig::tri2, &Tri2Selection::face_with_info),
        };
        at(ModuleId::AS2) = {
            flag_slot("Ec", &BuildConfig::as2, &As2Selection::exact_comparison),
        };
        at(ModuleId::TRI3) = {
            enum_slot<Tri3Name>(tri3_words, [](const BuildConfig& c) { return c.tri3.name; },
                                [](BuildConfig& c, Tri3Name v) { c.tri3.name = v; }),
        };
        // Concurrency and location policy are enums; wrap them as words.
        Slot par;
        par.encode = [](const BuildConfig& c) {
            return c.tri3.concurrency == ConcurrencyName::parallel ? std::string("Par") : std::string();
        };
        par.match = [](std::string_view rest) {
            std::vector<std::pair<std::size_t, Setter>> out;
            out.emplace_back(0, [](BuildConfig& c) { c.tri3.concurrency = ConcurrencyName::sequential; });
            if (starts_with(rest, "Par"))
                out.emplace_back(3, [](BuildConfig& c) { c.tri3.concurrency = ConcurrencyName::parallel; });
            return out;
        };
        Slot fast;
        fast.encode = [](const BuildConfig& c) {
            return c.tri3.name == Tri3Name::delaunay && c.tri3.location_policy == LocationPolicyName::fast
                       ? std::string("Fast")
                       : std::string();
        };
        fast.match = [](std::string_view rest) {
            std::vector<std::pair<std::size_t, Setter>> out;
            out.emplace_back(0, [](BuildConfig& c) { c.tri3.location_policy = LocationPolicyName::compact; });
            if (starts_with(rest, "Fast"))
                out.emplace_back(4, [](BuildConfig& c) { c.tri3.location_policy = LocationPolicyName::fast; });
            return out;
        };
        at(ModuleId::TRI3).push_back(par);
        at(ModuleId::TRI3).push_back(fast);
        at(ModuleId::TRI3).push_back(flag_slot("Hier", &BuildConfig::tri3, &Tri3Selection::hierarchy));
        at(ModuleId::TRI3).push_back(
            flag_slot("VertexInfo", &BuildConfig::tri3, &Tri3Selection::vertex_with_info));
        at(ModuleId::TRI3).push_back(
            flag_slot("CellInfo", &BuildConfig::tri3, &Tri3Selection::cell_with_info));
        at(ModuleId::AS3) = {
            enum_slot<As3Name>(as3_words, [](const BuildConfig& c) { return c.as3.name; },
                               [](BuildConfig& c, As3Name v) { c.as3.name = v; }),
            flag_slot("Ec", &BuildConfig::as3, &As3Selection::exact_comparison,
                      [](const BuildConfig& c) { return c.as3.name == As3Name::plain; }),
        };
        at(ModuleId::SS) = {ss_dimension_slot()};
        return t;
    }();
    return table[static_cast<std::size_t>(id)];
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::string uppercase(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

std::string encode_module(ModuleId id, const BuildConfig& c) {
    std::string out = lowercase(descriptor(id).short_name);
    for (const auto& slot : module_slots(id)) out += slot.encode(c);
    return out;
}

void parse_words(const std::vector<Slot>& slots, std::size_t slot, std::string_view rest, BuildConfig current,
                 std::vector<BuildConfig>& parses) {
    if (slot == slots.size()) {
        if (rest.empty() &&
            std::find(parses.begin(), parses.end(), current) == parses.end())
            parses.push_back(std::move(current));
        return;
    }
    for (auto& [len, set] : slots[slot].match(rest)) {
        BuildConfig next = current;
        set(next);
        parse_words(slots, slot + 1, rest.substr(len), std::move(next), parses);
    }
}

ParseError name_error(const std::string& what) { return ParseError(what, 0, 0); }

}  // namespace

std::string encode_name(const BuildConfig& config) {
    if (config.general.fixed_library_name) return std::string(library_prefix);
    std::string out = std::string(library_prefix) + "_";
    bool first = true;
    for (ModuleId id : enabled_modules(config)) {
        if (!first) out += '_';
        first = false;
        out += encode_module(id, config);
    }
    return out;
}

BuildConfig decode_name(std::string_view name) {
    if (name == library_prefix) return BuildConfig{};
    const std::string head = std::string(library_prefix) + "_";
    if (!starts_with(name, head)) throw name_error("library name must start with " + head);

    BuildConfig out;
    out.general.fixed_library_name = false;
    for (ModuleId id : enabled_modules(out)) out.set_enabled(id, false);

    std::string_view rest = name.substr(head.size());
    int previous = -1;
    while (!rest.empty()) {
        const std::size_t cut = rest.find('_');
        const std::string_view part = rest.substr(0, cut);
        rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
        if (part.empty()) throw name_error("empty module part in " + std::string(name));
        if (cut != std::string_view::npos && rest.empty()) throw name_error("trailing separator in " + std::string(name));

        std::size_t p = 0;
        while (p < part.size() && (std::islower(static_cast<unsigned char>(part[p])) ||
                                   std::isdigit(static_cast<unsigned char>(part[p]))))
            ++p;
        const std::string prefix(part.substr(0, p));
        const auto id = module_from_short_name(uppercase(prefix));
        if (!id || lowercase(descriptor(*id).short_name) != prefix)
            throw name_error("unknown module prefix '" + prefix + "'");
        if (static_cast<int>(*id) <= previous)
            throw name_error("module " + prefix + " is repeated or out of order");
        previous = static_cast<int>(*id);
        out.set_enabled(*id, true);

        std::vector<BuildConfig> parses;
        parse_words(module_slots(*id), 0, part.substr(p), out, parses);
        if (parses.empty()) throw name_error("unknown selection words '" + std::string(part.substr(p)) + "' for " + prefix);
        if (parses.size() > 1) throw name_error("ambiguous selection words '" + std::string(part.substr(p)) + "'");
        if (encode_module(*id, parses.front()) != part)
            throw name_error("selection words '" + std::string(part.substr(p)) + "' are not in canonical form");
        out = std::move(parses.front());
    }
    return out;
}

BuildConfig name_projection(const BuildConfig& config) {
    if (config.general.fixed_library_name) return BuildConfig{};
    BuildConfig out;
    out.general.fixed_library_name = false;
    out.enabled = config.enabled;
    if (config.is_enabled(ModuleId::KER)) out.kernel = config.kernel;
    if (config.is_enabled(ModuleId::KERD)) {
        out.kernel_d.name = config.kernel_d.name;
        out.kernel_d.dimension_tag = config.kernel_d.dimension_tag;
        if (config.kernel_d.dimension_tag == DimensionTag::static_tag) out.kernel_d.dimension = config.kernel_d.dimension;
    }
    if (config.is_enabled(ModuleId::AOS2)) out.aos2 = config.aos2;
    if (config.is_enabled(ModuleId::TRI2)) {
        out.tri2 = config.tri2;
        out.tri2.intersection_tag = Tri2Selection{}.intersection_tag;
    }
    if (config.is_enabled(ModuleId::AS2)) out.as2 = config.as2;
    if (config.is_enabled(ModuleId::TRI3)) {
        out.tri3 = config.tri3;
        if (config.tri3.name != Tri3Name::delaunay) out.tri3.location_policy = Tri3Selection{}.location_policy;
    }
    if (config.is_enabled(ModuleId::AS3)) {
        out.as3 = config.as3;
        if (config.as3.name != As3Name::plain) out.as3.exact_comparison = As3Selection{}.exact_comparison;
    }
    if (config.is_enabled(ModuleId::SS)) out.ss = config.ss;
    return out;
}

}  // namespace bindweaver
