#include "bindweaver/stubs.hpp"

#include "bindweaver/error.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace bindweaver {

namespace {

void add_overload(std::vector<StubFunction>& groups, const std::string& name, Signature sig) {
    for (auto& g : groups) {
        if (g.name != name) continue;
        for (const auto& existing : g.overloads)
            if (existing.param_types() == sig.param_types()) return;
        g.overloads.push_back(std::move(sig));
        return;
    }
    groups.push_back(StubFunction{name, {std::move(sig)}});
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Replaces the generic object placeholder where it appears as a whole word.
std::string neutral_object(const std::string& type) {
    const std::string_view token = generic_object_type;
    std::string out;
    std::size_t i = 0;
    while (i < type.size()) {
        if (type.compare(i, token.size(), token) == 0 && (i == 0 || !ident_char(type[i - 1])) &&
            (i + token.size() == type.size() || !ident_char(type[i + token.size()]))) {
            out += "object";
            i += token.size();
        } else {
            out += type[i++];
        }
    }
    return out;
}

Signature as_written(Signature sig) {
    for (auto& p : sig.params) p.type = neutral_object(p.type);
    sig.returns = neutral_object(sig.returns);
    return sig;
}

class StubBuilder {
public:
    StubBuilder(const ModuleSurface& module, const TypeResolver& resolver) : module_(module), resolver_(resolver) {}

    Signature display(const Signature& sig, const std::string& context) {
        Signature out = sig;
        for (auto& p : out.params) p.type = type(p.type, context);
        out.returns = type(sig.returns, context);
        return out;
    }

    StubClass surface_class(const SurfaceClass& cls, const std::string& scope) {
        const std::string path = scope + "." + cls.name;
        StubClass out{cls.name, {}, {}};
        for (const auto& n : cls.nested) out.nested.push_back(surface_class(n, path));
        for (const auto& m : cls.members) add_overload(out.methods, m.name, display(m.signature, path));
        return out;
    }

    StubClass merged_type(const MergedType& t, const std::string& owner) {
        const std::string path = owner + "." + t.name;
        StubClass out{t.name, {}, {}};
        for (const auto& m : t.members) add_overload(out.methods, m.name, display(m.signature, path));
        return out;
    }

    std::vector<std::string> import_lines() const {
        std::map<std::string, std::set<std::string>> by_ns;
        for (const auto& [ns, name] : imports_) by_ns[ns].insert(name);
        std::vector<std::string> out;
        for (const auto& [ns, names] : by_ns) {
            std::string line = "from ." + ns + " import ";
            bool first = true;
            for (const auto& n : names) {
                line += (first ? "" : ", ") + n;
                first = false;
            }
            out.push_back(std::move(line));
        }
        return out;
    }

private:
    std::string type(const std::string& text, const std::string& context) {
        ResolvedType r = resolver_.resolve(text, module_, context);
        imports_.insert(r.imports.begin(), r.imports.end());
        return r.display;
    }

    const ModuleSurface& module_;
    const TypeResolver& resolver_;
    std::set<std::pair<std::string, std::string>> imports_;
};

void render_function(std::ostringstream& out, const StubFunction& fn, int depth, bool method) {
    const std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
    const bool overloaded = fn.overloads.size() > 1;
    for (const auto& sig : fn.overloads) {
        if (overloaded) out << indent << "@overload\n";
        out << indent << "def " << fn.name << '(';
        bool first = true;
        if (method) {
            out << "self";
            first = false;
        }
        for (std::size_t i = 0; i < sig.params.size(); ++i) {
            if (!first) out << ", ";
            first = false;
            const auto& p = sig.params[i];
            out << (p.name.empty() ? "arg" + std::to_string(i) : p.name) << ": " << p.type;
        }
        out << ") -> " << sig.returns << ": ...\n";
    }
}

void render_class(std::ostringstream& out, const StubClass& cls, int depth) {
    const std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
    out << indent << "class " << cls.name << "():\n";
    if (cls.nested.empty() && cls.methods.empty()) out << indent << "    ...\n";
    for (const auto& n : cls.nested) render_class(out, n, depth + 1);
    for (const auto& m : cls.methods) render_function(out, m, depth + 1, true);
    out << '\n';
}

}  // namespace

std::vector<StubDocument> generate_stubs(const BuildConfig& config, const ConceptGraph& graph,
                                         const BindingTables& tables) {
    const std::vector<ModuleSurface> surfaces = build_surfaces(config, graph, tables);
    const TypeResolver resolver(surfaces);
    std::vector<StubDocument> docs;
    for (const auto& s : surfaces) {
        StubBuilder b(s, resolver);
        StubDocument doc;
        doc.ns = s.ns;
        for (const auto& m : s.models) {
            const std::string owner = m.flatten ? s.ns : s.ns + "." + m.class_name;
            std::vector<StubClass> types;
            for (const auto& t : m.interface.types) types.push_back(b.merged_type(t, owner));
            if (m.flatten) {
                for (auto& t : types) doc.classes.push_back(std::move(t));
                for (const auto& mem : m.interface.members)
                    add_overload(doc.functions, mem.name, b.display(mem.signature, owner));
            } else {
                StubClass cls{m.class_name, std::move(types), {}};
                for (const auto& mem : m.interface.members)
                    add_overload(cls.methods, mem.name, b.display(mem.signature, owner));
                doc.classes.push_back(std::move(cls));
            }
            for (const auto& fn : m.interface.free_functions)
                add_overload(doc.functions, fn.name, b.display(fn.signature, s.ns));
        }
        for (const auto& c : s.classes) doc.classes.push_back(b.surface_class(c, s.ns));
        for (const auto& f : s.functions) add_overload(doc.functions, f.name, b.display(f.signature, s.ns));
        doc.imports = b.import_lines();
        docs.push_back(std::move(doc));
    }
    return docs;
}

StubClass stub_class_for_model(const ConceptGraph& g, const Model& model, const std::string& class_name) {
    const MergedInterface iface = merged_interface(g, model);
    StubClass out{class_name, {}, {}};
    for (const auto& t : iface.types) {
        StubClass nested{t.name, {}, {}};
        for (const auto& m : t.members) add_overload(nested.methods, m.name, as_written(m.signature));
        out.nested.push_back(std::move(nested));
    }
    for (const auto& m : iface.members) add_overload(out.methods, m.name, as_written(m.signature));
    return out;
}

std::string render_stub(const StubDocument& doc) {
    std::ostringstream out;
    out << typing_import << '\n';
    for (const auto& line : doc.imports) out << line << '\n';
    for (const auto& c : doc.classes) render_class(out, c, 0);
    for (const auto& f : doc.functions) render_function(out, f, 0, false);
    return out.str();
}

namespace {

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct OpenClass {
    StubClass cls;
    int depth;
    bool has_body = false;
    bool member_of_parent;
};

class StubReader {
public:
    explicit StubReader(std::string ns) { doc_.ns = std::move(ns); }

    StubDocument read(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view line = trim_right(text.substr(pos, end - pos));
            pos = end + 1;
            ++line_no;
            if (line.empty()) {
                if (end == text.size()) break;
                continue;
            }
            line_ = line_no;
            handle(line);
            if (end == text.size()) break;
        }
        if (pending_overload_) fail("overload decorator without a function");
        close_until(0);
        check_groups(doc_.functions, false);
        return std::move(doc_);
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, 1); }

    void handle(std::string_view line) {
        std::size_t spaces = 0;
        while (spaces < line.size() && line[spaces] == ' ') ++spaces;
        if (spaces % 4 != 0) fail("indentation is not a multiple of four spaces");
        const int depth = static_cast<int>(spaces / 4);
        std::string_view body = line.substr(spaces);
        if (body.find('\t') != std::string_view::npos) fail("tab character");

        if (depth == 0 && (body.substr(0, 5) == "from " || body.substr(0, 7) == "import ")) {
            if (!open_.empty() || !doc_.classes.empty() || !doc_.functions.empty()) fail("import after definitions");
            if (body != typing_import) doc_.imports.emplace_back(body);
            return;
        }
        const int expected = open_.empty() ? 0 : open_.back().depth + 1;
        if (depth > expected) fail("unexpected indentation");
        if (!open_.empty() && depth < expected && !open_.back().has_body) fail("class without a body");
        close_until(depth);

        if (body == "...") {
            if (open_.empty() || depth != open_.back().depth + 1) fail("stray ellipsis");
            open_.back().has_body = true;
            return;
        }
        if (body == "@overload") {
            if (pending_overload_) fail("repeated overload decorator");
            pending_overload_ = true;
            return;
        }
        if (body.substr(0, 6) == "class ") {
            if (pending_overload_) fail("overload decorator on a class");
            if (depth >= 2) fail("classes nest at most two levels");
            const std::string_view tail = "():";
            if (body.size() <= 6 + tail.size() || body.substr(body.size() - tail.size()) != tail)
                fail("malformed class header");
            std::string name(body.substr(6, body.size() - 6 - tail.size()));
            check_identifier(name);
            if (!open_.empty()) open_.back().has_body = true;
            open_.push_back(OpenClass{StubClass{name, {}, {}}, depth, false, !open_.empty()});
            return;
        }
        if (body.substr(0, 4) == "def ") {
            read_def(body.substr(4));
            return;
        }
        fail("unrecognized line");
    }

    void read_def(std::string_view text) {
        const std::string_view tail = ": ...";
        if (text.size() < tail.size() || text.substr(text.size() - tail.size()) != tail)
            fail("function body must be an ellipsis");
        text.remove_suffix(tail.size());
        const std::size_t open = text.find('(');
        if (open == std::string_view::npos) fail("malformed function signature");
        std::string name(text.substr(0, open));
        check_identifier(name);
        if (text.find(") -> ") == std::string_view::npos) fail("function without a return annotation");
        Signature sig;
        try {
            sig = parse_signature(text.substr(open));
        } catch (const Error& e) {
            fail(std::string("malformed function signature: ") + e.what());
        }
        const bool method = !open_.empty();
        if (method) {
            if (sig.params.empty() || !sig.params.front().name.empty() || sig.params.front().type != "self")
                fail("method without self");
            sig.params.erase(sig.params.begin());
            open_.back().has_body = true;
        }
        auto& groups = method ? open_.back().cls.methods : doc_.functions;
        StubFunction* group = nullptr;
        for (auto& g : groups)
            if (g.name == name) group = &g;
        if (group == nullptr) {
            groups.push_back(StubFunction{name, {}});
            group = &groups.back();
            decorated_[key(method, name)] = pending_overload_;
        } else if (decorated_[key(method, name)] != pending_overload_) {
            fail("inconsistent overload decorators for " + name);
        }
        group->overloads.push_back(std::move(sig));
        pending_overload_ = false;
    }

    std::string key(bool method, const std::string& name) const {
        std::string k;
        if (method)
            for (const auto& c : open_) k += c.cls.name + ".";
        return k + name;
    }

    void close_until(int depth) {
        while (!open_.empty() && open_.back().depth >= depth) {
            if (!open_.back().has_body) fail("class without a body");
            check_groups(open_.back().cls.methods, true);
            OpenClass done = std::move(open_.back());
            open_.pop_back();
            if (open_.empty()) doc_.classes.push_back(std::move(done.cls));
            else open_.back().cls.nested.push_back(std::move(done.cls));
        }
    }

    void check_identifier(const std::string& name) const {
        if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) fail("invalid identifier");
        for (char c : name)
            if (!ident_char(c)) fail("invalid identifier '" + name + "'");
    }

    // The decorator marks exactly the names with two or more overloads.
    void check_groups(const std::vector<StubFunction>& groups, bool method) const {
        for (const auto& g : groups) {
            const bool decorated = decorated_.at(key(method, g.name));
            if (decorated != (g.overloads.size() > 1))
                fail(decorated ? "overload decorator on a single definition of " + g.name
                               : "repeated definition of " + g.name + " without overload decorator");
        }
    }

    StubDocument doc_;
    std::vector<OpenClass> open_;
    std::map<std::string, bool> decorated_;
    bool pending_overload_ = false;
    std::size_t line_ = 0;
};

}  // namespace

StubDocument parse_stub(std::string_view text, std::string ns) { return StubReader(std::move(ns)).read(text); }

std::string normalize_stub_text(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = trim_right(text.substr(pos, end - pos));
        if (!line.empty()) {
            out += line;
            out += '\n';
        }
        pos = end + 1;
    }
    return out;
}

}  // namespace bindweaver
