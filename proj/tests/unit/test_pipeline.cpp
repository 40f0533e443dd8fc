#include "doctest.h"

#include "bindweaver/namer.hpp"
#include "bindweaver/pipeline.hpp"
#include "test_support.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

using namespace bindweaver;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string cfg(const std::string& name) { return bwtest::fixture("configs/" + name).string(); }
std::string data() { return bwtest::data_dir().string(); }

std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = bwtest::read_text(e.path());
    return out;
}

}  // namespace

TEST_CASE("validate reports dependency errors with exit code 2") {
    auto r = cli({"validate", "--config", cfg("bso2_without_aos2.cfg")});
    CHECK(r.code == 2);
    CHECK(r.err == bwtest::read_text(bwtest::golden("bso2_without_aos2.err")));
    CHECK(r.out.empty());

    r = cli({"validate", "--config", cfg("ms2_without_pol2.cfg")});
    CHECK(r.code == 2);
    CHECK(r.err == bwtest::read_text(bwtest::golden("ms2_without_pol2.err")));

    r = cli({"validate", "--config", cfg("mixed.cfg")});
    CHECK(r.code == 0);
    CHECK(r.out == "ok\n");
    CHECK(r.err.empty());
}

TEST_CASE("generate refuses an invalid config and writes nothing") {
    fs::path dir = bwtest::scratch_dir("refuse");
    auto r = cli({"generate", "--config", cfg("bso2_without_aos2.cfg"), "--data", data(), "--out", (dir / "o").string()});
    CHECK(r.code == 2);
    CHECK(r.err == bwtest::read_text(bwtest::golden("bso2_without_aos2.err")));
    CHECK_FALSE(fs::exists(dir / "o"));
    fs::remove_all(dir);
}

TEST_CASE("bad enum value is a diagnostic, not a crash") {
    auto r = cli({"validate", "--config", cfg("bad_enum.cfg")});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error[malformed-value] line 1: ", 0) == 0);
}

TEST_CASE("missing config file is an io error") {
    auto r = cli({"validate", "--config", "/nonexistent/x.cfg"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error[io]", 0) == 0);
}

TEST_CASE("usage errors and help") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"validate"}).code == 2);
    CHECK(cli({"generate", "--config", "x", "--out", "y", "--stubs-only", "--plan-only"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("name subcommands") {
    auto r = cli({"name", "encode", "--config", cfg("default_named.cfg")});
    CHECK(r.code == 0);
    CHECK(r.out == "CGALPY_kerEpicInt\n");

    r = cli({"name", "decode", "CGALPY_kerEpecInt_aos2SegPlainPl"});
    CHECK(r.code == 0);
    ParseResult p = parse_config(r.out);
    REQUIRE(p.ok());
    CHECK(p.config == decode_name("CGALPY_kerEpecInt_aos2SegPlainPl"));

    r = cli({"name", "decode", "CGALPY"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("# defaults\n", 0) == 0);
    CHECK(parse_config(r.out).config == BuildConfig{});

    r = cli({"name", "decode", "CGALPY_bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error[parse]", 0) == 0);
}

TEST_CASE("graph check") {
    auto r = cli({"graph", "check", "--data", data()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("ok: ", 0) == 0);

    fs::path dir = bwtest::scratch_dir("cycle");
    {
        std::ofstream f(dir / "cyclic.json");
        f << R"({"concepts": [{"name": "A", "refines": ["B"], "requirements": []},
                              {"name": "B", "refines": ["A"], "requirements": []}], "models": []})";
    }
    r = cli({"graph", "check", "--graph", (dir / "cyclic.json").string()});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error[cycle]", 0) == 0);

    {
        std::ofstream f(dir / "broken.json");
        f << R"({"concepts": [{"name": "A", "refines": ["Nope"], "requirements": []}], "models": []})";
    }
    r = cli({"graph", "check", "--graph", (dir / "broken.json").string()});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error[unresolved-type] Nope:", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("generate writes the name, plan and stubs") {
    fs::path dir = bwtest::scratch_dir("gen");
    auto r = cli({"generate", "--config", cfg("mixed.cfg"), "--data", data(), "--out", (dir / "out").string()});
    REQUIRE(r.code == 0);
    auto files = tree(dir / "out");
    CHECK(files.count("NAME") == 1);
    CHECK(files.count("bindings.plan") == 1);
    CHECK(r.out == files["NAME"]);
    for (const char* ns : {"Ker", "Aos2", "As2", "Bso2", "Pol2", "Ms2", "Ss", "Tri2"})
        CHECK(files.count(std::string("stubs/") + ns + ".pyi") == 1);
    CHECK(files.size() == 2 + 8);
    // No staging leftovers.
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename() == "out");

    // Plan-only, into the same directory, replaces the plan and keeps the stubs.
    r = cli({"generate", "--config", cfg("default_named.cfg"), "--data", data(), "--out", (dir / "out").string(),
             "--plan-only"});
    REQUIRE(r.code == 0);
    auto again = tree(dir / "out");
    CHECK(again["NAME"] == "CGALPY_kerEpicInt\n");
    CHECK(again.count("stubs/Ms2.pyi") == 1);

    // Stubs are replaced as a set.
    r = cli({"generate", "--config", cfg("default_named.cfg"), "--data", data(), "--out", (dir / "out").string(),
             "--stubs-only"});
    REQUIRE(r.code == 0);
    auto third = tree(dir / "out");
    CHECK(third.count("stubs/Ms2.pyi") == 0);
    CHECK(third.count("stubs/Ker.pyi") == 1);
    fs::remove_all(dir);
}

TEST_CASE("two generate runs give byte-identical trees") {
    fs::path dir = bwtest::scratch_dir("det");
    for (const char* c : {"mixed.cfg", "default_named.cfg"}) {
        auto a = cli({"generate", "--config", cfg(c), "--data", data(), "--out", (dir / "a").string()});
        auto b = cli({"generate", "--config", cfg(c), "--data", data(), "--out", (dir / "b").string()});
        REQUIRE(a.code == 0);
        REQUIRE(b.code == 0);
        CHECK(tree(dir / "a") == tree(dir / "b"));
        fs::remove_all(dir / "a");
        fs::remove_all(dir / "b");
    }
    fs::remove_all(dir);
}

TEST_CASE("unwritable output is an io error") {
    fs::path dir = bwtest::scratch_dir("io");
    {
        std::ofstream f(dir / "file");
        f << "x";
    }
    auto r = cli({"generate", "--config", cfg("default_named.cfg"), "--data", data(), "--out",
                  (dir / "file" / "sub").string()});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error[io]", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("missing data directory is an io error") {
    fs::path dir = bwtest::scratch_dir("nodata");
    auto r = cli({"generate", "--config", cfg("default_named.cfg"), "--data", (dir / "none").string(), "--out",
                  (dir / "o").string()});
    CHECK(r.code == 1);
    fs::remove_all(dir);
}

TEST_CASE("data directory resolution order") {
    CHECK(resolve_data_dir(std::string("/flag")) == fs::path("/flag"));
    ::setenv(data_dir_env, "/from-env", 1);
    CHECK(resolve_data_dir(std::nullopt) == fs::path("/from-env"));
    ::unsetenv(data_dir_env);
    CHECK(resolve_data_dir(std::nullopt) == fs::path(BINDWEAVER_DEFAULT_DATA_DIR));
}
