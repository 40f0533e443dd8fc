#pragma once

#include "bindweaver/concept_graph.hpp"
#include "bindweaver/config.hpp"
#include "bindweaver/surface.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bindweaver {

inline constexpr std::string_view typing_import = "from typing import Iterator, overload";

// Signatures here carry display types; `self` is implied for methods.
struct StubFunction {
    std::string name;
    std::vector<Signature> overloads;

    friend bool operator==(const StubFunction&, const StubFunction&) = default;
};

struct StubClass {
    std::string name;
    std::vector<StubClass> nested;
    std::vector<StubFunction> methods;

    friend bool operator==(const StubClass&, const StubClass&) = default;
};

struct StubDocument {
    std::string ns;
    std::vector<std::string> imports;
    std::vector<StubClass> classes;
    std::vector<StubFunction> functions;

    friend bool operator==(const StubDocument&, const StubDocument&) = default;
};

// One document per enabled module. Throws ResolutionError like build_plan.
std::vector<StubDocument> generate_stubs(const BuildConfig& config, const ConceptGraph& graph,
                                         const BindingTables& tables);

// The class a model exposes, with types exactly as written in the graph.
StubClass stub_class_for_model(const ConceptGraph& g, const Model& model, const std::string& class_name);

std::string render_stub(const StubDocument& doc);

// Reads back what render_stub writes. Throws ParseError.
StubDocument parse_stub(std::string_view text, std::string ns);

// Drops blank lines and trailing whitespace.
std::string normalize_stub_text(std::string_view text);

}  // namespace bindweaver
