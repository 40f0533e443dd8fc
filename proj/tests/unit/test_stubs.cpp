#include "doctest.h"

#include "bindweaver/error.hpp"
#include "bindweaver/namer.hpp"
#include "bindweaver/pipeline.hpp"
#include "bindweaver/stubs.hpp"
#include "test_support.hpp"

#include <random>
#include <regex>

using namespace bindweaver;

namespace {

const DataBundle& shipped() {
    static const DataBundle d = load_data(bwtest::data_dir());
    return d;
}

std::string fixture_stub(const std::string& file, const std::string& model) {
    ConceptGraph g = load_concept_graph_file(bwtest::fixture(file));
    StubDocument doc;
    doc.ns = "Aos2";
    doc.classes.push_back(stub_class_for_model(g, g.model(model), model));
    return render_stub(doc);
}

// (parameter types, return) of every "def overlay" line, whatever the spacing.
std::vector<std::string> overlay_shapes(const std::string& text) {
    std::vector<std::string> out;
    std::regex def(R"(^def overlay\((.*)\) -> (\w+): .*$)");
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::smatch m;
        if (!std::regex_match(line, m, def)) continue;
        std::string params = m[1];
        std::string shape;
        std::istringstream ps(params);
        for (std::string p; std::getline(ps, p, ',');) {
            auto colon = p.find(':');
            std::string type = p.substr(colon + 1);
            type.erase(0, type.find_first_not_of(' '));
            shape += type + ";";
        }
        out.push_back(shape + "->" + std::string(m[2]));
    }
    return out;
}

BuildConfig with_aos2() {
    BuildConfig c;
    c.general.fixed_library_name = false;
    c.set_enabled(ModuleId::AOS2, true);
    return c;
}

}  // namespace

TEST_CASE("segment traits stub matches the transcribed listing") {
    std::string got = fixture_stub("segment_traits.json", "Arr_segment_traits_2");
    CHECK(normalize_stub_text(got) == normalize_stub_text(bwtest::read_text(bwtest::golden("segment_traits.pyi"))));
}

TEST_CASE("Bezier traits stub matches the transcribed listing") {
    std::string got = fixture_stub("bezier_traits.json", "Arr_Bezier_curve_traits_2");
    CHECK(normalize_stub_text(got) == normalize_stub_text(bwtest::read_text(bwtest::golden("bezier_traits.pyi"))));
}

TEST_CASE("normalization drops blank lines and trailing spaces only") {
    CHECK(normalize_stub_text("a  \n\n  b\t\n\n") == "a\n  b\n");
    CHECK(normalize_stub_text("") == "");
}

TEST_CASE("overlay stub has exactly the three listed overloads") {
    auto docs = generate_stubs(with_aos2(), shipped().graph, shipped().tables);
    const StubDocument* aos2 = nullptr;
    for (const auto& d : docs)
        if (d.ns == "Aos2") aos2 = &d;
    REQUIRE(aos2 != nullptr);
    std::size_t groups = 0;
    for (const auto& f : aos2->functions)
        if (f.name == "overlay") {
            ++groups;
            CHECK(f.overloads.size() == 3);
        }
    CHECK(groups == 1);

    std::string text = render_stub(*aos2);
    auto got = overlay_shapes(text);
    CHECK(got.size() == 3);
    CHECK(got == overlay_shapes(bwtest::read_text(bwtest::golden("overlay_stub.pyi"))));
    // Each overlay definition is preceded by its decorator.
    std::istringstream in(text);
    std::string prev;
    for (std::string line; std::getline(in, line); prev = line)
        if (line.rfind("def overlay(", 0) == 0) CHECK(prev == "@overload");
}

TEST_CASE("rendered stubs parse back to the same document") {
    std::mt19937 rng(606);
    for (int i = 0; i < 25; ++i) {
        BuildConfig c = bwtest::random_closed_config(rng);
        CAPTURE(encode_name(c));
        for (const auto& doc : generate_stubs(c, shipped().graph, shipped().tables)) {
            CAPTURE(doc.ns);
            std::string text = render_stub(doc);
            StubDocument back = parse_stub(text, doc.ns);
            CHECK(back == doc);
            CHECK(render_stub(back) == text);
        }
    }
    for (const char* f : {"segment_traits.pyi", "bezier_traits.pyi"}) {
        std::string text = bwtest::read_text(bwtest::golden(f));
        CHECK_NOTHROW(parse_stub(text, "Aos2"));
    }
}

TEST_CASE("stub layout") {
    auto docs = generate_stubs(with_aos2(), shipped().graph, shipped().tables);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].ns == "Ker");
    CHECK(docs[1].ns == "Aos2");
    std::string aos2 = render_stub(docs[1]);
    CHECK(aos2.rfind(std::string(typing_import) + "\n", 0) == 0);
    // Segment traits refer only to their own nested types.
    CHECK(aos2.find("from .Ker import ") == std::string::npos);
    CHECK(aos2.find("class Arrangement_2():\n") != std::string::npos);
    CHECK(aos2.find("    class Face():\n") != std::string::npos);
    CHECK(aos2.find("def __iter__(self) -> Iterator[") != std::string::npos);
    // Builtins print as Python names.
    CHECK(aos2.find("PyObject_") == std::string::npos);
    CHECK(aos2.find("Boolean") == std::string::npos);
}

TEST_CASE("kernel types used by another module are imported") {
    BuildConfig c = with_aos2();
    c.aos2.geometry_traits = GeometryTraitsName::linear;
    auto docs = generate_stubs(c, shipped().graph, shipped().tables);
    REQUIRE(docs.size() == 2);
    CHECK(docs[1].imports == std::vector<std::string>{"from .Ker import Line_2, Ray_2, Segment_2"});
    std::string aos2 = render_stub(docs[1]);
    CHECK(aos2.find(std::string(typing_import) + "\nfrom .Ker import Line_2, Ray_2, Segment_2\n") == 0);
}

TEST_CASE("stub parse errors") {
    const std::string head = std::string(typing_import) + "\n";
    const std::vector<std::pair<std::string, std::string>> bad{
        {"two-space indent", "class A():\n  def f(self) -> None: ...\n"},
        {"empty class", "class A():\nclass B():\n    ...\n"},
        {"empty class at end", "class A():\n"},
        {"import after def", "def f() -> None: ...\nfrom .Ker import FT\n"},
        {"method without self", "class A():\n    def f(x: int) -> None: ...\n"},
        {"typed self", "class A():\n    def f(self: A) -> None: ...\n"},
        {"no return annotation", "def f(x: int): ...\n"},
        {"body not ellipsis", "def f(x: int) -> None: pass\n"},
        {"single overload decorated", "@overload\ndef f(x: int) -> None: ...\n"},
        {"repeat without decorator", "def f(x: int) -> None: ...\ndef f(x: float) -> None: ...\n"},
        {"mixed decorators", "@overload\ndef f(x: int) -> None: ...\ndef f(x: float) -> None: ...\n"},
        {"dangling decorator", "@overload\n"},
        {"three levels", "class A():\n    class B():\n        class C():\n            ...\n"},
        {"bad header", "class A:\n    ...\n"},
        {"bad name", "def 9f() -> None: ...\n"},
        {"garbage", "print(1)\n"},
        {"over-indent", "class A():\n        def f(self) -> None: ...\n"},
        {"tab", "class A():\n    def f(self,\tx: int) -> None: ...\n"},
        {"unbalanced", "def f(x: int -> None: ...\n"},
    };
    for (const auto& [what, body] : bad) {
        CAPTURE(what);
        CHECK_THROWS_AS(parse_stub(head + body, "T"), ParseError);
    }
}

TEST_CASE("mutated generated stubs are detected") {
    auto docs = generate_stubs(with_aos2(), shipped().graph, shipped().tables);
    std::string text = render_stub(docs[1]);
    // Drop the first decorator: the overlay group is then inconsistent.
    std::string no_decorator = text;
    no_decorator.erase(no_decorator.find("@overload\n"), std::string("@overload\n").size());
    CHECK_THROWS_AS(parse_stub(no_decorator, "Aos2"), ParseError);
    // Break indentation of a nested member.
    std::string shifted = text;
    auto at = shifted.find("\n        def ");
    REQUIRE(at != std::string::npos);
    shifted.insert(at + 1, " ");
    CHECK_THROWS_AS(parse_stub(shifted, "Aos2"), ParseError);
}

TEST_CASE("parse error carries the line") {
    try {
        parse_stub("from typing import Iterator, overload\nclass A():\n    ...\nbogus\n", "T");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}
