#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bindweaver {

enum class RequirementKind { nested_type, functor, member_function, factory_method, free_function };

std::string_view to_string(RequirementKind kind);
std::optional<RequirementKind> parse_requirement_kind(std::string_view text);

// A parameter of an exposed signature. The name may be empty.
struct Param {
    std::string name;
    std::string type;

    friend bool operator==(const Param&, const Param&) = default;
};

// Types are kept as written ("Point_2", "list[float]"); they are resolved
// against a namespace only when a plan or stub is produced.
struct Signature {
    std::vector<Param> params;
    std::string returns = "None";

    std::vector<std::string> param_types() const;
    friend bool operator==(const Signature&, const Signature&) = default;
};

// Renders "(p: Point_2, q: Point_2) -> bool".
std::string render_signature(const Signature& sig);
// Inverse of render_signature. Parameters without a name are accepted.
Signature parse_signature(std::string_view text);

struct Requirement {
    RequirementKind kind = RequirementKind::member_function;
    std::string name;
    std::vector<Signature> overloads;
    std::vector<Signature> constructors;  // nested types only
    std::vector<Requirement> nested;      // member functions of a nested type

    friend bool operator==(const Requirement&, const Requirement&) = default;
};

struct Concept {
    std::string name;
    std::vector<std::string> refines;
    std::vector<Requirement> requirements;

    friend bool operator==(const Concept&, const Concept&) = default;
};

struct Model {
    std::string name;
    std::vector<std::string> models;
    // Keyed by the nested type or functor being extended.
    std::map<std::string, std::vector<Requirement>> augmentations;
    std::vector<Requirement> extra_members;

    friend bool operator==(const Model&, const Model&) = default;
};

class ConceptGraph {
public:
    // Throws SchemaError on a duplicate name.
    void add_concept(Concept c);
    void add_model(Model m);

    const Concept* find_concept(std::string_view name) const;
    const Model* find_model(std::string_view name) const;
    // Throws ResolutionError when absent.
    const Model& model(std::string_view name) const;

    const std::map<std::string, Concept, std::less<>>& concepts() const noexcept { return concepts_; }
    const std::map<std::string, Model, std::less<>>& models() const noexcept { return models_; }

    friend bool operator==(const ConceptGraph&, const ConceptGraph&) = default;

private:
    std::map<std::string, Concept, std::less<>> concepts_;
    std::map<std::string, Model, std::less<>> models_;
};

// Loads and fully checks a graph document. Refinement cycles are allowed
// here and reported by validate_acyclic. Throws ParseError, SchemaError or
// ResolutionError.
ConceptGraph load_concept_graph(std::string_view json_text);
ConceptGraph load_concept_graph_file(const std::filesystem::path& path);

std::string serialize_concept_graph(const ConceptGraph& g);

struct CycleDiagnostic {
    std::vector<std::string> cycle;  // each concept refines the next, the last refines the first
};

std::optional<CycleDiagnostic> validate_acyclic(const ConceptGraph& g);

// Every concept the model reaches through refinement, each once, parents
// before children, ties broken by name.
std::vector<std::string> export_order(const ConceptGraph& g, const Model& model);
std::vector<std::string> export_order(const ConceptGraph& g, std::string_view model);

struct Member {
    std::string name;
    Signature signature;
    std::string origin;  // concept or model that contributed it

    friend bool operator==(const Member&, const Member&) = default;
};

// A nested type or functor of a model. Constructors appear as "__init__"
// members and functor call operators as "__call__".
struct MergedType {
    std::string name;
    RequirementKind kind = RequirementKind::nested_type;
    std::string origin;
    std::vector<Member> members;

    friend bool operator==(const MergedType&, const MergedType&) = default;
};

struct MergedInterface {
    std::vector<MergedType> types;
    std::vector<Member> members;         // methods of the model class itself
    std::vector<Member> free_functions;

    const MergedType* find_type(std::string_view name) const;
    friend bool operator==(const MergedInterface&, const MergedInterface&) = default;
};

MergedInterface merged_interface(const ConceptGraph& g, const Model& model);
MergedInterface merged_interface(const ConceptGraph& g, std::string_view model);

// Applies further augmentations to an already merged interface, with the
// same collapsing rule.
MergedInterface augment_interface(MergedInterface base,
                                  const std::map<std::string, std::vector<Requirement>>& augmentations,
                                  std::string_view origin);

}  // namespace bindweaver
