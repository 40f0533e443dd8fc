#include "bindweaver/pipeline.hpp"

#include "bindweaver/diagnostic.hpp"
#include "bindweaver/error.hpp"
#include "bindweaver/namer.hpp"
#include "bindweaver/plan.hpp"
#include "bindweaver/stubs.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef BINDWEAVER_DEFAULT_DATA_DIR
#define BINDWEAVER_DEFAULT_DATA_DIR "data"
#endif

namespace bindweaver {

namespace fs = std::filesystem;

namespace {

// Reruns `load` and prefixes any failure with the file it came from.
template <typename Load>
auto load_with_context(const fs::path& path, Load load) {
    try {
        return load(path);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.what());
    } catch (const ResolutionError& e) {
        throw ResolutionError(path.string() + ": " + e.what(), e.name());
    }
}

}  // namespace

DataBundle load_data(const fs::path& data_dir) {
    DataBundle out;
    out.graph = load_with_context(data_dir / "concepts.json",
                                  [](const fs::path& p) { return load_concept_graph_file(p); });
    out.tables = load_with_context(data_dir, [](const fs::path& p) { return load_binding_tables(p); });
    return out;
}

fs::path resolve_data_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv(data_dir_env); env != nullptr && *env != '\0') return env;
    return BINDWEAVER_DEFAULT_DATA_DIR;
}

GeneratedOutputs generate_outputs(const BuildConfig& config, const DataBundle& data) {
    GeneratedOutputs out;
    out.library_name = encode_name(config);
    out.plan_text = render_plan(build_plan(config, data.graph, data.tables));
    for (const auto& doc : generate_stubs(config, data.graph, data.tables))
        out.stub_files.emplace_back(doc.ns + ".pyi", render_stub(doc));
    return out;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw fs::filesystem_error("cannot open for writing", path, std::make_error_code(std::errc::io_error));
    f << text;
    f.close();
    if (!f) throw fs::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
}

}  // namespace

void write_outputs(const GeneratedOutputs& outputs, const fs::path& out_dir, bool write_plan, bool write_stubs) {
    std::vector<std::pair<fs::path, std::string>> files;
    files.emplace_back("NAME", outputs.library_name + "\n");
    if (write_plan) files.emplace_back("bindings.plan", outputs.plan_text);
    if (write_stubs)
        for (const auto& [name, text] : outputs.stub_files) files.emplace_back(fs::path("stubs") / name, text);

    const fs::path target = fs::absolute(out_dir).lexically_normal();
    const fs::path staging = target.parent_path() / ("." + target.filename().string() + ".staging");
    fs::remove_all(staging);
    try {
        for (const auto& [rel, text] : files) write_text(staging / rel, text);
        fs::create_directories(target);
        // Stubs of modules no longer enabled must not linger.
        if (write_stubs) fs::remove_all(target / "stubs");
        for (const auto& [rel, text] : files) {
            fs::create_directories((target / rel).parent_path());
            fs::rename(staging / rel, target / rel);
        }
    } catch (...) {
        std::error_code ignored;
        fs::remove_all(staging, ignored);
        throw;
    }
    fs::remove_all(staging);
}

namespace {

struct CliContext {
    std::ostream& out;
    std::ostream& err;

    int report(const Diagnostic& d, int code) const {
        err << format_diagnostic(d) << '\n';
        return code;
    }
};

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fs::filesystem_error("cannot open", path, std::make_error_code(std::errc::no_such_file_or_directory));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs `body`, turning library and file-system failures into diagnostics.
template <typename Body>
int guarded(const CliContext& ctx, Body body) {
    try {
        return body();
    } catch (const fs::filesystem_error& e) {
        return ctx.report(make_error("io", e.code().message(), e.path1().string()), exit_io_error);
    } catch (const ResolutionError& e) {
        return ctx.report(make_error("unresolved-type", e.what(), e.name()), exit_invalid);
    } catch (const ParseError& e) {
        return ctx.report(make_error("parse", e.what()), exit_invalid);
    } catch (const SchemaError& e) {
        return ctx.report(make_error("schema", e.what()), exit_invalid);
    } catch (const Error& e) {
        return ctx.report(make_error("invalid", e.what()), exit_invalid);
    }
}

// Parses and validates a config file; nullopt after printing diagnostics.
std::optional<BuildConfig> load_config(const CliContext& ctx, const std::string& path) {
    ParseResult parsed = parse_config(read_text(path));
    std::vector<Diagnostic> diags = parsed.diagnostics;
    if (parsed.ok()) {
        auto deps = validate_dependencies(parsed.config);
        diags.insert(diags.end(), deps.begin(), deps.end());
    }
    for (const auto& d : diags) ctx.err << format_diagnostic(d) << '\n';
    if (has_errors(diags)) return std::nullopt;
    return parsed.config;
}

int check_graph_cycles(const CliContext& ctx, const ConceptGraph& g) {
    if (auto cycle = validate_acyclic(g)) {
        std::string path;
        for (const auto& c : cycle->cycle) path += c + " -> ";
        path += cycle->cycle.front();
        return ctx.report(make_error("cycle", "refinement cycle " + path, cycle->cycle.front()), exit_invalid);
    }
    return exit_ok;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CliContext ctx{out, err};
    CLI::App app{"Binding plan, stub and library-name generator", "bindweaver"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> data_flag;
    std::string out_dir;
    bool stubs_only = false;
    bool plan_only = false;
    auto* generate = app.add_subcommand("generate", "Write the plan, stubs and library name");
    generate->add_option("--config", config_path, "Build configuration file")->required();
    generate->add_option("--data", data_flag, "Data directory");
    generate->add_option("--out", out_dir, "Output directory")->required();
    auto* stubs_flag = generate->add_flag("--stubs-only", stubs_only, "Write only stubs and the name");
    generate->add_flag("--plan-only", plan_only, "Write only the plan and the name")->excludes(stubs_flag);

    auto* validate = app.add_subcommand("validate", "Check a configuration");
    validate->add_option("--config", config_path, "Build configuration file")->required();

    auto* name = app.add_subcommand("name", "Library name codec");
    name->require_subcommand(1);
    auto* encode = name->add_subcommand("encode", "Print the library name of a configuration");
    encode->add_option("--config", config_path, "Build configuration file")->required();
    std::string library_name;
    auto* decode = name->add_subcommand("decode", "Print the configuration a library name carries");
    decode->add_option("name", library_name, "Library name")->required();

    auto* graph = app.add_subcommand("graph", "Concept graph tools");
    graph->require_subcommand(1);
    auto* check = graph->add_subcommand("check", "Lint the concept graph");
    check->add_option("--data", data_flag, "Data directory");
    std::string graph_file;
    check->add_option("--graph", graph_file, "Concept graph file, instead of the data directory's");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    if (*generate) {
        return guarded(ctx, [&] {
            auto config = load_config(ctx, config_path);
            if (!config) return static_cast<int>(exit_invalid);
            DataBundle data = load_data(resolve_data_dir(data_flag));
            if (int rc = check_graph_cycles(ctx, data.graph); rc != exit_ok) return rc;
            GeneratedOutputs outputs = generate_outputs(*config, data);
            write_outputs(outputs, out_dir, !stubs_only, !plan_only);
            out << outputs.library_name << '\n';
            return static_cast<int>(exit_ok);
        });
    }
    if (*validate) {
        return guarded(ctx, [&] {
            if (!load_config(ctx, config_path)) return static_cast<int>(exit_invalid);
            out << "ok\n";
            return static_cast<int>(exit_ok);
        });
    }
    if (*encode) {
        return guarded(ctx, [&] {
            auto config = load_config(ctx, config_path);
            if (!config) return static_cast<int>(exit_invalid);
            out << encode_name(*config) << '\n';
            return static_cast<int>(exit_ok);
        });
    }
    if (*decode) {
        return guarded(ctx, [&] {
            BuildConfig config = decode_name(library_name);
            if (library_name == library_prefix) out << "# defaults\n";
            out << render_config(config);
            return static_cast<int>(exit_ok);
        });
    }
    if (*check) {
        return guarded(ctx, [&] {
            const fs::path file = graph_file.empty() ? resolve_data_dir(data_flag) / "concepts.json" : fs::path(graph_file);
            ConceptGraph g = load_with_context(file, [](const fs::path& p) { return load_concept_graph_file(p); });
            if (int rc = check_graph_cycles(ctx, g); rc != exit_ok) return rc;
            out << "ok: " << g.concepts().size() << " concepts, " << g.models().size() << " models\n";
            return static_cast<int>(exit_ok);
        });
    }
    return exit_invalid;
}

}  // namespace bindweaver
