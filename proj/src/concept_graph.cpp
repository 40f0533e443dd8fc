#include "bindweaver/concept_graph.hpp"

#include "bindweaver/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace bindweaver {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 5> kind_names{"nested-type", "functor", "member-function", "factory-method",
                                                     "free-function"};

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_identifier(std::string_view s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Splits on commas outside brackets.
std::vector<std::string> split_top_level(std::string_view s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '[' || c == '<' || c == '(') ++depth;
        else if (c == ']' || c == '>' || c == ')') --depth;
        else if (c == ',' && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    parts.push_back(trim(s.substr(start)));
    return parts;
}

}  // namespace

std::string_view to_string(RequirementKind kind) { return kind_names[static_cast<std::size_t>(kind)]; }

std::optional<RequirementKind> parse_requirement_kind(std::string_view text) {
    for (std::size_t i = 0; i < kind_names.size(); ++i)
        if (kind_names[i] == text) return static_cast<RequirementKind>(i);
    return std::nullopt;
}

std::vector<std::string> Signature::param_types() const {
    std::vector<std::string> out;
    out.reserve(params.size());
    for (const auto& p : params) out.push_back(p.type);
    return out;
}

std::string render_signature(const Signature& sig) {
    std::string out = "(";
    for (std::size_t i = 0; i < sig.params.size(); ++i) {
        if (i != 0) out += ", ";
        if (!sig.params[i].name.empty()) out += sig.params[i].name + ": ";
        out += sig.params[i].type;
    }
    out += ") -> " + sig.returns;
    return out;
}

Signature parse_signature(std::string_view text) {
    std::string s = trim(text);
    if (s.empty() || s.front() != '(') throw ParseError("signature must start with '(': " + s);
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(' || s[i] == '[' || s[i] == '<') ++depth;
        else if (s[i] == ')' || s[i] == ']' || s[i] == '>') {
            if (--depth == 0 && s[i] == ')') {
                close = i;
                break;
            }
        }
    }
    if (close == std::string::npos) throw ParseError("unbalanced signature: " + s);
    Signature sig;
    std::string inner = trim(std::string_view(s).substr(1, close - 1));
    if (!inner.empty()) {
        for (const auto& part : split_top_level(inner)) {
            if (part.empty()) throw ParseError("empty parameter in signature: " + s);
            Param p;
            auto colon = part.find(':');
            if (colon != std::string::npos) {
                p.name = trim(std::string_view(part).substr(0, colon));
                p.type = trim(std::string_view(part).substr(colon + 1));
                if (!is_identifier(p.name)) throw ParseError("bad parameter name '" + p.name + "' in: " + s);
            } else {
                p.type = part;
            }
            if (p.type.empty()) throw ParseError("missing parameter type in: " + s);
            sig.params.push_back(std::move(p));
        }
    }
    std::string rest = trim(std::string_view(s).substr(close + 1));
    if (!rest.empty()) {
        if (rest.rfind("->", 0) != 0) throw ParseError("expected '->' in signature: " + s);
        sig.returns = trim(std::string_view(rest).substr(2));
        if (sig.returns.empty()) throw ParseError("missing return type in: " + s);
    }
    return sig;
}

void ConceptGraph::add_concept(Concept c) {
    std::string name = c.name;
    if (!concepts_.emplace(name, std::move(c)).second) throw SchemaError("duplicate concept name: " + name);
}

void ConceptGraph::add_model(Model m) {
    std::string name = m.name;
    if (!models_.emplace(name, std::move(m)).second) throw SchemaError("duplicate model name: " + name);
}

const Concept* ConceptGraph::find_concept(std::string_view name) const {
    auto it = concepts_.find(name);
    return it == concepts_.end() ? nullptr : &it->second;
}

const Model* ConceptGraph::find_model(std::string_view name) const {
    auto it = models_.find(name);
    return it == models_.end() ? nullptr : &it->second;
}

const Model& ConceptGraph::model(std::string_view name) const {
    const Model* m = find_model(name);
    if (m == nullptr) throw ResolutionError("unknown model: " + std::string(name), std::string(name));
    return *m;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

class DocumentReader {
public:
    explicit DocumentReader(std::string_view text) : text_(text) {}

    json parse() const {
        try {
            return json::parse(text_);
        } catch (const json::parse_error& e) {
            auto [line, column] = location(e.byte);
            throw ParseError(std::string("malformed JSON: ") + e.what(), line, column);
        }
    }

private:
    std::pair<std::size_t, std::size_t> location(std::size_t byte) const {
        std::size_t line = 1;
        std::size_t column = 1;
        std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text_.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        return {line, column};
    }

    std::string_view text_;
};

void expect_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw SchemaError(where + ": unknown key '" + key + "'");
    }
}

std::string read_string(const json& j, const char* key, const std::string& where, bool required = true) {
    if (!j.contains(key)) {
        if (required) throw SchemaError(where + ": missing '" + key + "'");
        return {};
    }
    if (!j.at(key).is_string()) throw SchemaError(where + ": '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

const json& read_array(const json& j, const char* key, const std::string& where) {
    static const json empty = json::array();
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_array()) throw SchemaError(where + ": '" + key + "' must be an array");
    return j.at(key);
}

std::vector<std::string> read_names(const json& j, const char* key, const std::string& where) {
    std::vector<std::string> out;
    for (const auto& e : read_array(j, key, where)) {
        if (!e.is_string()) throw SchemaError(where + ": '" + key + "' entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Signature read_signature(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_signature(j.get<std::string>());
        } catch (const ParseError& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    expect_keys(j, {"params", "returns"}, where);
    Signature sig;
    for (const auto& p : read_array(j, "params", where)) {
        if (p.is_string()) {
            sig.params.push_back(Param{{}, p.get<std::string>()});
        } else {
            expect_keys(p, {"name", "type"}, where + ".params");
            sig.params.push_back(Param{read_string(p, "name", where, false), read_string(p, "type", where)});
        }
        if (sig.params.back().type.empty()) throw SchemaError(where + ": empty parameter type");
    }
    if (j.contains("returns")) sig.returns = read_string(j, "returns", where);
    return sig;
}

Requirement read_requirement(const json& j, const std::string& where) {
    expect_keys(j, {"kind", "name", "overloads", "constructors", "nested"}, where);
    Requirement r;
    std::string kind = read_string(j, "kind", where);
    auto k = parse_requirement_kind(kind);
    if (!k) throw SchemaError(where + ": unknown requirement kind '" + kind + "'");
    r.kind = *k;
    r.name = read_string(j, "name", where);
    if (!is_identifier(r.name)) throw SchemaError(where + ": bad requirement name '" + r.name + "'");
    std::string here = where + "." + r.name;
    for (const auto& s : read_array(j, "overloads", here)) r.overloads.push_back(read_signature(s, here));
    for (const auto& s : read_array(j, "constructors", here)) {
        Signature sig = read_signature(s, here);
        sig.returns = "None";
        r.constructors.push_back(std::move(sig));
    }
    for (const auto& n : read_array(j, "nested", here)) r.nested.push_back(read_requirement(n, here));

    if (r.kind != RequirementKind::nested_type && (!r.constructors.empty() || !r.nested.empty()))
        throw SchemaError(here + ": only nested types take constructors or nested members");
    if (r.kind == RequirementKind::nested_type && !r.overloads.empty())
        throw SchemaError(here + ": a nested type has no overloads of its own");
    for (const auto& n : r.nested)
        if (n.kind != RequirementKind::member_function)
            throw SchemaError(here + ": nested members must be member functions");
    if (r.kind != RequirementKind::nested_type && r.overloads.empty())
        throw SchemaError(here + ": requires at least one overload");
    return r;
}

// Every concept reachable from `roots` through refinement, cycle safe.
std::set<std::string> refinement_closure(const ConceptGraph& g, const std::vector<std::string>& roots) {
    std::set<std::string> seen;
    std::vector<std::string> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        std::string c = stack.back();
        stack.pop_back();
        if (!seen.insert(c).second) continue;
        if (const Concept* con = g.find_concept(c))
            for (const auto& p : con->refines) stack.push_back(p);
    }
    return seen;
}

void check_graph(const ConceptGraph& g) {
    for (const auto& [name, c] : g.concepts()) {
        std::set<std::string> parents;
        for (const auto& p : c.refines) {
            if (g.find_concept(p) == nullptr)
                throw ResolutionError("concept " + name + " refines unknown concept " + p, p);
            if (!parents.insert(p).second) throw SchemaError("concept " + name + " refines " + p + " twice");
        }
    }
    for (const auto& [name, c] : g.concepts()) {
        std::set<std::string> functors;
        for (const auto& a : refinement_closure(g, {name}))
            for (const auto& r : g.find_concept(a)->requirements)
                if (r.kind == RequirementKind::functor) functors.insert(r.name);
        for (const auto& r : c.requirements) {
            if (r.kind != RequirementKind::factory_method) continue;
            for (const auto& sig : r.overloads)
                if (functors.count(sig.returns) == 0)
                    throw ResolutionError("factory method " + name + "::" + r.name + " returns " + sig.returns +
                                              ", which is not a functor of the concept or its ancestors",
                                          sig.returns);
        }
    }
    for (const auto& [name, m] : g.models()) {
        for (const auto& c : m.models)
            if (g.find_concept(c) == nullptr) throw ResolutionError("model " + name + " models unknown concept " + c, c);
        std::set<std::string> targets;
        for (const auto& a : refinement_closure(g, m.models))
            for (const auto& r : g.find_concept(a)->requirements)
                if (r.kind == RequirementKind::nested_type || r.kind == RequirementKind::functor)
                    targets.insert(r.name);
        for (const auto& r : m.extra_members)
            if (r.kind == RequirementKind::nested_type || r.kind == RequirementKind::functor) targets.insert(r.name);
        for (const auto& [target, _] : m.augmentations)
            if (targets.count(target) == 0)
                throw ResolutionError("model " + name + " augments " + target +
                                          ", which no modeled concept requires",
                                      target);
    }
}

json signature_json(const Signature& sig) { return render_signature(sig); }

json requirement_json(const Requirement& r) {
    json j = json::object();
    j["kind"] = std::string(to_string(r.kind));
    j["name"] = r.name;
    if (!r.overloads.empty()) {
        j["overloads"] = json::array();
        for (const auto& s : r.overloads) j["overloads"].push_back(signature_json(s));
    }
    if (!r.constructors.empty()) {
        j["constructors"] = json::array();
        for (const auto& s : r.constructors) {
            std::string text = render_signature(s);
            j["constructors"].push_back(text.substr(0, text.rfind(" -> ")));
        }
    }
    if (!r.nested.empty()) {
        j["nested"] = json::array();
        for (const auto& n : r.nested) j["nested"].push_back(requirement_json(n));
    }
    return j;
}

}  // namespace

ConceptGraph load_concept_graph(std::string_view json_text) {
    json doc = DocumentReader(json_text).parse();
    expect_keys(doc, {"concepts", "models"}, "document");
    ConceptGraph g;
    for (const auto& cj : read_array(doc, "concepts", "document")) {
        expect_keys(cj, {"name", "refines", "requirements"}, "concept");
        Concept c;
        c.name = read_string(cj, "name", "concept");
        std::string where = "concept " + c.name;
        c.refines = read_names(cj, "refines", where);
        std::set<std::pair<RequirementKind, std::string>> seen;
        for (const auto& rj : read_array(cj, "requirements", where)) {
            Requirement r = read_requirement(rj, where);
            if (!seen.emplace(r.kind, r.name).second)
                throw SchemaError(where + ": duplicate requirement " + r.name);
            c.requirements.push_back(std::move(r));
        }
        g.add_concept(std::move(c));
    }
    for (const auto& mj : read_array(doc, "models", "document")) {
        expect_keys(mj, {"name", "models", "augmentations", "extra_members"}, "model");
        Model m;
        m.name = read_string(mj, "name", "model");
        std::string where = "model " + m.name;
        m.models = read_names(mj, "models", where);
        if (mj.contains("augmentations")) {
            const json& aj = mj.at("augmentations");
            if (!aj.is_object()) throw SchemaError(where + ": 'augmentations' must be an object");
            for (const auto& [target, reqs] : aj.items()) {
                if (!reqs.is_array()) throw SchemaError(where + ": augmentation lists must be arrays");
                auto& list = m.augmentations[target];
                for (const auto& rj : reqs) list.push_back(read_requirement(rj, where + "." + target));
            }
        }
        for (const auto& rj : read_array(mj, "extra_members", where))
            m.extra_members.push_back(read_requirement(rj, where));
        g.add_model(std::move(m));
    }
    check_graph(g);
    if (!validate_acyclic(g)) {
        for (const auto& [name, m] : g.models()) (void)merged_interface(g, m);
    }
    return g;
}

ConceptGraph load_concept_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::filesystem::filesystem_error("cannot open", path, std::make_error_code(std::errc::io_error));
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_concept_graph(ss.str());
}

std::string serialize_concept_graph(const ConceptGraph& g) {
    json doc = json::object();
    doc["concepts"] = json::array();
    for (const auto& [name, c] : g.concepts()) {
        json cj = json::object();
        cj["name"] = name;
        if (!c.refines.empty()) cj["refines"] = c.refines;
        if (!c.requirements.empty()) {
            cj["requirements"] = json::array();
            for (const auto& r : c.requirements) cj["requirements"].push_back(requirement_json(r));
        }
        doc["concepts"].push_back(std::move(cj));
    }
    doc["models"] = json::array();
    for (const auto& [name, m] : g.models()) {
        json mj = json::object();
        mj["name"] = name;
        mj["models"] = m.models;
        if (!m.augmentations.empty()) {
            mj["augmentations"] = json::object();
            for (const auto& [target, reqs] : m.augmentations) {
                json list = json::array();
                for (const auto& r : reqs) list.push_back(requirement_json(r));
                mj["augmentations"][target] = std::move(list);
            }
        }
        if (!m.extra_members.empty()) {
            mj["extra_members"] = json::array();
            for (const auto& r : m.extra_members) mj["extra_members"].push_back(requirement_json(r));
        }
        doc["models"].push_back(std::move(mj));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Ordering

std::optional<CycleDiagnostic> validate_acyclic(const ConceptGraph& g) {
    enum class Mark { fresh, active, done };
    std::map<std::string, Mark, std::less<>> marks;
    for (const auto& [name, _] : g.concepts()) marks[name] = Mark::fresh;
    std::vector<std::string> stack;
    std::optional<CycleDiagnostic> found;

    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        marks[name] = Mark::active;
        stack.push_back(name);
        for (const auto& p : g.find_concept(name)->refines) {
            if (found) return;
            auto it = marks.find(p);
            if (it == marks.end()) continue;
            if (it->second == Mark::active) {
                auto start = std::find(stack.begin(), stack.end(), p);
                found = CycleDiagnostic{{start, stack.end()}};
                return;
            }
            if (it->second == Mark::fresh) visit(p);
        }
        stack.pop_back();
        marks[name] = Mark::done;
    };

    for (const auto& [name, _] : g.concepts()) {
        if (found) break;
        if (marks[name] == Mark::fresh) visit(name);
    }
    return found;
}

std::vector<std::string> export_order(const ConceptGraph& g, const Model& model) {
    for (const auto& c : model.models)
        if (g.find_concept(c) == nullptr)
            throw ResolutionError("model " + model.name + " models unknown concept " + c, c);
    std::set<std::string> closure = refinement_closure(g, model.models);

    std::map<std::string, std::size_t> pending;
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& c : closure) {
        const Concept* con = g.find_concept(c);
        pending[c] = con->refines.size();
        for (const auto& p : con->refines) children[p].push_back(c);
    }
    std::set<std::string> ready;
    for (const auto& [c, n] : pending)
        if (n == 0) ready.insert(c);

    std::vector<std::string> order;
    order.reserve(closure.size());
    while (!ready.empty()) {
        std::string next = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(next);
        for (const auto& child : children[next])
            if (--pending[child] == 0) ready.insert(child);
    }
    if (order.size() != closure.size())
        throw SchemaError("refinement cycle among the concepts of model " + model.name);
    return order;
}

std::vector<std::string> export_order(const ConceptGraph& g, std::string_view model) {
    return export_order(g, g.model(model));
}

// ---------------------------------------------------------------------------
// Merging

const MergedType* MergedInterface::find_type(std::string_view name) const {
    for (const auto& t : types)
        if (t.name == name) return &t;
    return nullptr;
}

namespace {

class InterfaceBuilder {
public:
    explicit InterfaceBuilder(MergedInterface base = {}) : out_(std::move(base)) {
        for (std::size_t i = 0; i < out_.types.size(); ++i) {
            type_index_[out_.types[i].name] = i;
            for (const auto& m : out_.types[i].members) keys_.insert(key(out_.types[i].name, m));
        }
        for (const auto& m : out_.members) keys_.insert(key(model_owner, m));
        for (const auto& m : out_.free_functions) keys_.insert(key(free_owner, m));
    }

    void add_requirement(const Requirement& r, const std::string& origin) {
        switch (r.kind) {
        case RequirementKind::nested_type: {
            std::size_t t = ensure_type(r.name, r.kind, origin);
            add_type_body(t, r, origin);
            break;
        }
        case RequirementKind::functor: {
            std::size_t t = ensure_type(r.name, r.kind, origin);
            for (const auto& sig : r.overloads) add(out_.types[t].name, out_.types[t].members, "__call__", sig, origin);
            break;
        }
        case RequirementKind::member_function:
        case RequirementKind::factory_method:
            for (const auto& sig : r.overloads) add(model_owner, out_.members, r.name, sig, origin);
            break;
        case RequirementKind::free_function:
            for (const auto& sig : r.overloads) add(free_owner, out_.free_functions, r.name, sig, origin);
            break;
        }
    }

    void augment(const std::string& target, const Requirement& r, const std::string& origin) {
        auto it = type_index_.find(target);
        if (it == type_index_.end())
            throw ResolutionError("augmentation targets unknown nested type " + target, target);
        MergedType& t = out_.types[it->second];
        switch (r.kind) {
        case RequirementKind::member_function:
            for (const auto& sig : r.overloads) add(t.name, t.members, r.name, sig, origin);
            break;
        case RequirementKind::nested_type:
            if (r.name != target || t.kind != RequirementKind::nested_type)
                throw SchemaError("augmentation of " + target + " cannot add nested type " + r.name);
            add_type_body(it->second, r, origin);
            break;
        case RequirementKind::functor:
            if (r.name != target || t.kind != RequirementKind::functor)
                throw SchemaError("augmentation of " + target + " cannot add functor " + r.name);
            for (const auto& sig : r.overloads) add(t.name, t.members, "__call__", sig, origin);
            break;
        default:
            throw SchemaError("augmentation of " + target + " cannot add a " + std::string(to_string(r.kind)));
        }
    }

    MergedInterface take() { return std::move(out_); }

private:
    static constexpr const char* model_owner = "";
    static constexpr const char* free_owner = "::";

    using Key = std::tuple<std::string, std::string, std::vector<std::string>>;

    static Key key(const std::string& owner, const Member& m) { return {owner, m.name, m.signature.param_types()}; }

    std::size_t ensure_type(const std::string& name, RequirementKind kind, const std::string& origin) {
        auto it = type_index_.find(name);
        if (it != type_index_.end()) {
            if (out_.types[it->second].kind != kind)
                throw SchemaError(name + " is required both as a nested type and as a functor");
            return it->second;
        }
        out_.types.push_back(MergedType{name, kind, origin, {}});
        type_index_[name] = out_.types.size() - 1;
        return out_.types.size() - 1;
    }

    void add_type_body(std::size_t t, const Requirement& r, const std::string& origin) {
        for (const auto& sig : r.constructors) {
            Signature ctor = sig;
            ctor.returns = "None";
            add(out_.types[t].name, out_.types[t].members, "__init__", ctor, origin);
        }
        for (const auto& n : r.nested)
            for (const auto& sig : n.overloads) add(out_.types[t].name, out_.types[t].members, n.name, sig, origin);
    }

    void add(const std::string& owner, std::vector<Member>& into, const std::string& name, const Signature& sig,
             const std::string& origin) {
        Member m{name, sig, origin};
        if (keys_.insert(key(owner, m)).second) into.push_back(std::move(m));
    }

    MergedInterface out_;
    std::map<std::string, std::size_t> type_index_;
    std::set<Key> keys_;
};

}  // namespace

MergedInterface merged_interface(const ConceptGraph& g, const Model& model) {
    InterfaceBuilder b;
    for (const auto& c : export_order(g, model))
        for (const auto& r : g.find_concept(c)->requirements) b.add_requirement(r, c);
    for (const auto& r : model.extra_members) b.add_requirement(r, model.name);
    for (const auto& [target, reqs] : model.augmentations)
        for (const auto& r : reqs) b.augment(target, r, model.name);
    return b.take();
}

MergedInterface merged_interface(const ConceptGraph& g, std::string_view model) {
    return merged_interface(g, g.model(model));
}

MergedInterface augment_interface(MergedInterface base,
                                  const std::map<std::string, std::vector<Requirement>>& augmentations,
                                  std::string_view origin) {
    InterfaceBuilder b(std::move(base));
    for (const auto& [target, reqs] : augmentations)
        for (const auto& r : reqs) b.augment(target, r, std::string(origin));
    return b.take();
}

}  // namespace bindweaver
