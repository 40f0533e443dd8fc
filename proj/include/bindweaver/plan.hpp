#pragma once

#include "bindweaver/concept_graph.hpp"
#include "bindweaver/config.hpp"
#include "bindweaver/surface.hpp"

#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bindweaver {

struct OpenScope {
    std::string ns;
    friend bool operator==(const OpenScope&, const OpenScope&) = default;
};

struct CloseScope {
    friend bool operator==(const CloseScope&, const CloseScope&) = default;
};

struct DefineClass {
    std::string name;
    std::string scope;
    std::vector<std::string> bases;
    std::string type;  // rendered type expression, empty when none
    std::vector<std::string> collapses;
    friend bool operator==(const DefineClass&, const DefineClass&) = default;
};

// Shared by member and function registrations.
struct CallableInfo {
    std::string signature;  // resolved rendering
    ReturnPolicy policy = ReturnPolicy::copy_value;
    bool kernel_dependent = false;
    std::vector<WrapperKind> wrappers;
    std::vector<std::string> dispatch;
    std::vector<std::pair<std::string, std::string>> attributes;
    friend bool operator==(const CallableInfo&, const CallableInfo&) = default;
};

struct AugmentClass {
    std::string scope;  // path of the class being extended
    std::string member;
    CallableInfo call;
    friend bool operator==(const AugmentClass&, const AugmentClass&) = default;
};

struct DefineFunction {
    std::string name;
    std::string scope;
    CallableInfo call;
    friend bool operator==(const DefineFunction&, const DefineFunction&) = default;
};

struct DefineConstant {
    std::string name;
    std::string value;
    friend bool operator==(const DefineConstant&, const DefineConstant&) = default;
};

struct Note {
    std::string text;
    friend bool operator==(const Note&, const Note&) = default;
};

using PlanDirective = std::variant<OpenScope, CloseScope, DefineClass, AugmentClass, DefineFunction, DefineConstant, Note>;

struct RegistrationPlan {
    std::vector<PlanDirective> directives;
    std::vector<std::string> provenance;  // parallel to directives

    friend bool operator==(const RegistrationPlan&, const RegistrationPlan&) = default;
};

// Provenance labels.
std::string concept_source(std::string_view concept_name);
std::string model_source(std::string_view model_name);

// Incremental construction of a plan. Concept requirements are exported at
// most once per (class, concept) within one builder; classes defined by one
// concept are reused when a later concept or the model extends them.
class PlanBuilder {
public:
    void open_scope(const std::string& ns, const std::string& source = {});
    void close_scope(const std::string& source = {});
    void note(const std::string& text, const std::string& source);
    void define_constant(const std::string& name, const std::string& value, const std::string& source);

    // Binds a model with unresolved signatures rendered as written.
    void export_model(const ConceptGraph& g, const Model& model, const std::string& class_name);
    // Binds a model of a surface, resolving names.
    void export_binding(const ConceptGraph& g, const ModelBinding& binding, const ModuleSurface& module,
                        const TypeResolver& resolver, KernelName kernel);
    void emit_class(const SurfaceClass& cls, const std::string& scope, const ModuleSurface& module,
                    const TypeResolver& resolver, KernelName kernel);
    void emit_function(const SurfaceMember& fn, const ModuleSurface& module, const TypeResolver& resolver,
                       KernelName kernel);

    const std::string& current_scope() const;
    RegistrationPlan take();

private:
    struct Resolution;
    void export_model_impl(const ConceptGraph& g, const Model& model, const std::string& class_name, bool flatten,
                           const Resolution& res);
    void emit_requirement(const Requirement& req, const std::string& owner_path, const std::string& source,
                          bool flatten, const Resolution& res);
    void ensure_class(const std::string& name, const std::string& scope, const std::string& source,
                      const std::string& type = {});
    void add_member(const std::string& owner_path, const std::string& name, const Signature& sig,
                    const std::string& source, bool as_function, const Resolution& res);
    void push(PlanDirective d, std::string source);

    RegistrationPlan plan_;
    std::vector<std::string> scopes_;
    std::set<std::string> defined_classes_;
    std::set<std::pair<std::string, std::string>> exported_;  // (class path, concept)
    std::set<std::string> member_keys_;
};

// Throws ResolutionError on a reference that resolves to no class.
RegistrationPlan build_plan(const BuildConfig& config, const ConceptGraph& graph, const BindingTables& tables);

// Line-oriented text: "directive key=value ...", two spaces per open scope.
std::string render_plan(const RegistrationPlan& plan);
std::string render_directive(const PlanDirective& d);

}  // namespace bindweaver
