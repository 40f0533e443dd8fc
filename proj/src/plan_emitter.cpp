#include "bindweaver/plan.hpp"

#include <sstream>

namespace bindweaver {

std::string concept_source(std::string_view concept_name) { return "concept:" + std::string(concept_name); }
std::string model_source(std::string_view model_name) { return "model:" + std::string(model_name); }

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

std::string type_head(const std::string& type) { return type.substr(0, type.find('[')); }

// Wrappers implied by the shape of a graph signature.
std::vector<WrapperKind> implied_wrappers(const Signature& sig) {
    std::vector<WrapperKind> out;
    for (const auto& p : sig.params)
        if (type_head(p.type) == "list") {
            out.push_back(WrapperKind::list_input);
            break;
        }
    const std::string ret = type_head(sig.returns);
    if (ret == "list") out.push_back(WrapperKind::list_output);
    if (ret == "Iterator") out.push_back(WrapperKind::iterator);
    return out;
}

}  // namespace

struct PlanBuilder::Resolution {
    const ModuleSurface* module = nullptr;
    const TypeResolver* resolver = nullptr;
    KernelName kernel = KernelName::epic;

    std::string type(const std::string& text, const std::string& context) const {
        if (resolver == nullptr || text.empty()) return text;
        return resolver->resolve(text, *module, context).qualified;
    }

    CallableInfo call(const std::string& name, const Signature& sig, const std::string& context,
                      ReturnPolicy declared, std::vector<WrapperKind> wrappers,
                      const std::vector<std::string>& dispatch,
                      std::vector<std::pair<std::string, std::string>> attributes) const {
        CallableInfo info;
        Signature resolved = sig;
        for (auto& p : resolved.params) p.type = type(p.type, context);
        resolved.returns = type(sig.returns, context);
        info.signature = render_signature(resolved);
        if (module != nullptr && module->module == ModuleId::KER && sig.returns == "FT" &&
            is_kernel_dependent_accessor(name))
            declared = ReturnPolicy::kernel_dependent;
        info.kernel_dependent = declared == ReturnPolicy::kernel_dependent;
        info.policy = resolve_return_policy(declared, kernel);
        info.wrappers = std::move(wrappers);
        for (const auto& d : dispatch) info.dispatch.push_back(type(d, context));
        info.attributes = std::move(attributes);
        return info;
    }
};

void PlanBuilder::push(PlanDirective d, std::string source) {
    plan_.directives.push_back(std::move(d));
    plan_.provenance.push_back(std::move(source));
}

void PlanBuilder::open_scope(const std::string& ns, const std::string& source) {
    std::string path = scopes_.empty() ? ns : scopes_.back() + "." + ns;
    push(OpenScope{ns}, source);
    scopes_.push_back(std::move(path));
}

void PlanBuilder::close_scope(const std::string& source) {
    if (scopes_.empty()) return;
    scopes_.pop_back();
    push(CloseScope{}, source);
}

void PlanBuilder::note(const std::string& text, const std::string& source) { push(Note{text}, source); }

void PlanBuilder::define_constant(const std::string& name, const std::string& value, const std::string& source) {
    push(DefineConstant{name, value}, source);
}

const std::string& PlanBuilder::current_scope() const {
    static const std::string empty;
    return scopes_.empty() ? empty : scopes_.back();
}

RegistrationPlan PlanBuilder::take() {
    RegistrationPlan out = std::move(plan_);
    *this = PlanBuilder{};
    return out;
}

void PlanBuilder::ensure_class(const std::string& name, const std::string& scope, const std::string& source,
                               const std::string& type) {
    const std::string path = scope.empty() ? name : scope + "." + name;
    if (!defined_classes_.insert(path).second) return;
    DefineClass d;
    d.name = name;
    d.scope = scope;
    d.type = type;
    push(std::move(d), source);
}

void PlanBuilder::add_member(const std::string& owner_path, const std::string& name, const Signature& sig,
                             const std::string& source, bool as_function, const Resolution& res) {
    std::string key = owner_path + (as_function ? "::" : ".") + name + "(" + join(sig.param_types(), ",") + ")";
    if (!member_keys_.insert(std::move(key)).second) return;
    CallableInfo call = res.call(name, sig, owner_path, ReturnPolicy::copy_value, implied_wrappers(sig), {}, {});
    if (as_function) push(DefineFunction{name, owner_path, std::move(call)}, source);
    else push(AugmentClass{owner_path, name, std::move(call)}, source);
}

void PlanBuilder::emit_requirement(const Requirement& req, const std::string& owner_path, const std::string& source,
                                   bool flatten, const Resolution& res) {
    const std::string type_path = owner_path.empty() ? req.name : owner_path + "." + req.name;
    switch (req.kind) {
    case RequirementKind::nested_type:
        ensure_class(req.name, owner_path, source);
        for (const auto& ctor : req.constructors) {
            Signature s = ctor;
            s.returns = "None";
            add_member(type_path, "__init__", s, source, false, res);
        }
        for (const auto& n : req.nested)
            for (const auto& sig : n.overloads) add_member(type_path, n.name, sig, source, false, res);
        break;
    case RequirementKind::functor:
        ensure_class(req.name, owner_path, source);
        for (const auto& sig : req.overloads) add_member(type_path, "__call__", sig, source, false, res);
        break;
    case RequirementKind::member_function:
    case RequirementKind::factory_method:
        for (const auto& sig : req.overloads) add_member(owner_path, req.name, sig, source, flatten, res);
        break;
    case RequirementKind::free_function:
        for (const auto& sig : req.overloads) add_member(current_scope(), req.name, sig, source, true, res);
        break;
    }
}

void PlanBuilder::export_model_impl(const ConceptGraph& g, const Model& model, const std::string& class_name,
                                    bool flatten, const Resolution& res) {
    const std::string& scope = current_scope();
    std::string owner = scope;
    if (!flatten) {
        ensure_class(class_name, scope, model_source(model.name));
        owner = scope.empty() ? class_name : scope + "." + class_name;
    }
    for (const auto& c : export_order(g, model)) {
        if (!exported_.emplace(owner, c).second) continue;
        for (const auto& r : g.find_concept(c)->requirements) emit_requirement(r, owner, concept_source(c), flatten, res);
    }
    const std::string source = model_source(model.name);
    for (const auto& r : model.extra_members) emit_requirement(r, owner, source, flatten, res);
    for (const auto& [target, reqs] : model.augmentations) {
        const std::string target_path = owner + "." + target;
        for (const auto& r : reqs) {
            if (r.kind == RequirementKind::member_function) {
                for (const auto& sig : r.overloads) add_member(target_path, r.name, sig, source, false, res);
            } else {
                emit_requirement(r, owner, source, flatten, res);
            }
        }
    }
}

void PlanBuilder::export_model(const ConceptGraph& g, const Model& model, const std::string& class_name) {
    export_model_impl(g, model, class_name, false, Resolution{});
}

void PlanBuilder::export_binding(const ConceptGraph& g, const ModelBinding& binding, const ModuleSurface& module,
                                 const TypeResolver& resolver, KernelName kernel) {
    Resolution res{&module, &resolver, kernel};
    if (!binding.flatten)
        ensure_class(binding.class_name, current_scope(), model_source(binding.model.name),
                     binding.type ? binding.type->render() : std::string());
    export_model_impl(g, binding.model, binding.class_name, binding.flatten, res);
}

void PlanBuilder::emit_class(const SurfaceClass& cls, const std::string& scope, const ModuleSurface& module,
                             const TypeResolver& resolver, KernelName kernel) {
    const std::string path = scope + "." + cls.name;
    if (defined_classes_.insert(path).second) {
        DefineClass d;
        d.name = cls.name;
        d.scope = scope;
        d.type = cls.type ? cls.type->render() : std::string();
        d.collapses = cls.collapses;
        push(std::move(d), cls.provenance);
    }
    for (const auto& n : cls.nested) emit_class(n, path, module, resolver, kernel);
    Resolution res{&module, &resolver, kernel};
    for (const auto& m : cls.members) {
        std::string key = path + "." + m.name + "(" + join(m.signature.param_types(), ",") + ")";
        if (!member_keys_.insert(std::move(key)).second) continue;
        push(AugmentClass{path, m.name,
                          res.call(m.name, m.signature, path, m.policy, m.wrappers, m.dispatch, m.attributes)},
             m.provenance);
    }
}

void PlanBuilder::emit_function(const SurfaceMember& fn, const ModuleSurface& module, const TypeResolver& resolver,
                                KernelName kernel) {
    const std::string& scope = current_scope();
    std::string key = scope + "::" + fn.name + "(" + join(fn.signature.param_types(), ",") + ")";
    if (!member_keys_.insert(std::move(key)).second) return;
    Resolution res{&module, &resolver, kernel};
    push(DefineFunction{fn.name, scope,
                        res.call(fn.name, fn.signature, scope, fn.policy, fn.wrappers, fn.dispatch, fn.attributes)},
         fn.provenance);
}

RegistrationPlan build_plan(const BuildConfig& config, const ConceptGraph& graph, const BindingTables& tables) {
    const std::vector<ModuleSurface> surfaces = build_surfaces(config, graph, tables);
    const TypeResolver resolver(surfaces);
    const KernelName kernel = config.kernel.name;
    PlanBuilder b;
    for (const auto& s : surfaces) {
        const std::string source = "module:" + std::string(descriptor(s.module).short_name);
        b.open_scope(s.ns, source);
        for (const auto& n : s.notes) b.note(n, source);
        if (s.module == ModuleId::SS) b.define_constant("dimension", std::to_string(config.ss.dimension), source);
        if (s.module == ModuleId::KERD && config.kernel_d.dimension_tag == DimensionTag::static_tag)
            b.define_constant("dimension", std::to_string(config.kernel_d.dimension), source);
        for (const auto& m : s.models) b.export_binding(graph, m, s, resolver, kernel);
        for (const auto& c : s.classes) b.emit_class(c, s.ns, s, resolver, kernel);
        for (const auto& f : s.functions) b.emit_function(f, s, resolver, kernel);
        b.close_scope(source);
    }
    return b.take();
}

namespace {

bool needs_quotes(std::string_view v) {
    if (v.empty()) return true;
    for (char c : v)
        if (c == ' ' || c == '"' || c == '=' || c == '\\' || c == '#' || c == '\t') return true;
    return false;
}

void field(std::ostringstream& out, std::string_view key, std::string_view value) {
    out << ' ' << key << '=';
    if (!needs_quotes(value)) {
        out << value;
        return;
    }
    out << '"';
    for (char c : value) {
        if (c == '"' || c == '\\') out << '\\';
        out << c;
    }
    out << '"';
}

void call_fields(std::ostringstream& out, const CallableInfo& call) {
    field(out, "signature", call.signature);
    field(out, "policy", to_string(call.policy));
    if (call.kernel_dependent) field(out, "kernel_dependent", "true");
    std::vector<std::string> wrappers;
    for (auto w : call.wrappers) wrappers.emplace_back(to_string(w));
    field(out, "wrapper", wrappers.empty() ? std::string(to_string(WrapperKind::plain)) : join(wrappers, ","));
    if (!call.dispatch.empty()) field(out, "dispatch", join(call.dispatch, ","));
    for (const auto& [k, v] : call.attributes) field(out, k, v);
}

struct DirectiveRenderer {
    std::ostringstream& out;

    void operator()(const OpenScope& d) const {
        out << "open_scope";
        field(out, "namespace", d.ns);
    }
    void operator()(const CloseScope&) const { out << "close_scope"; }
    void operator()(const DefineClass& d) const {
        out << "define_class";
        field(out, "name", d.name);
        field(out, "scope", d.scope);
        if (!d.bases.empty()) field(out, "bases", join(d.bases, ","));
        if (!d.type.empty()) field(out, "type", d.type);
        if (!d.collapses.empty()) field(out, "collapses", join(d.collapses, ","));
    }
    void operator()(const AugmentClass& d) const {
        out << "augment_class";
        field(out, "scope", d.scope);
        field(out, "member", d.member);
        call_fields(out, d.call);
    }
    void operator()(const DefineFunction& d) const {
        out << "define_function";
        field(out, "name", d.name);
        field(out, "scope", d.scope);
        call_fields(out, d.call);
    }
    void operator()(const DefineConstant& d) const {
        out << "define_constant";
        field(out, "name", d.name);
        field(out, "value", d.value);
    }
    void operator()(const Note& d) const {
        out << "note";
        field(out, "text", d.text);
    }
};

}  // namespace

std::string render_directive(const PlanDirective& d) {
    std::ostringstream out;
    std::visit(DirectiveRenderer{out}, d);
    return out.str();
}

std::string render_plan(const RegistrationPlan& plan) {
    std::string out;
    std::size_t depth = 0;
    for (const auto& d : plan.directives) {
        if (std::holds_alternative<CloseScope>(d) && depth > 0) --depth;
        out.append(depth * 2, ' ');
        out += render_directive(d);
        out += '\n';
        if (std::holds_alternative<OpenScope>(d)) ++depth;
    }
    return out;
}

}  // namespace bindweaver
