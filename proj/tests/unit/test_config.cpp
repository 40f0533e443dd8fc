#include "doctest.h"

#include "bindweaver/config.hpp"
#include "test_support.hpp"

#include <random>

using namespace bindweaver;

namespace {

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
    std::vector<std::string> out;
    for (const auto& d : ds) out.push_back(d.code);
    return out;
}

std::vector<std::string> messages(const std::vector<Diagnostic>& ds) {
    std::vector<std::string> out;
    for (const auto& d : ds) out.push_back(d.message);
    return out;
}

}  // namespace

TEST_CASE("module descriptors and namespaces") {
    auto ds = module_descriptors();
    REQUIRE(ds.size() == 15);
    const std::vector<std::string> want{"Ker", "Kerd", "Aos2", "As2", "As3", "Bso2", "Bv", "Ch2",
                                        "Ch3", "Pol2", "Pp",   "Ms2",  "Ss",  "Tri2", "Tri3"};
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(ds[i].namespace_name == want[i]);
        CHECK(derive_namespace(ds[i].short_name) == want[i]);
        CHECK(module_from_short_name(ds[i].short_name) == ds[i].id);
        CHECK(static_cast<std::size_t>(ds[i].id) == i);
    }
    CHECK(descriptor(ModuleId::AOS2).long_name == "ARRANGEMENT_ON_SURFACE_2");
    CHECK_FALSE(module_from_short_name("aos2").has_value());
}

TEST_CASE("empty file gives the defaults") {
    ParseResult r = parse_config("");
    REQUIRE(r.ok());
    CHECK(r.config == BuildConfig{});
    CHECK(r.config.kernel.name == KernelName::epic);
    CHECK(enabled_modules(r.config) == std::vector<ModuleId>{ModuleId::KER});
    CHECK(r.config.general.fixed_library_name);
    CHECK(r.config.aos2.point_location_bindings);
    CHECK(r.config.tri3.location_policy == LocationPolicyName::compact);
    CHECK(r.config.kernel_d.dimension_tag == DimensionTag::dynamic_tag);
}

TEST_CASE("values are parsed") {
    ParseResult r = parse_config("CGALPY_KERNEL_NAME=epec\nCGALPY_FIXED_LIBRARY_NAME=true\n");
    REQUIRE(r.ok());
    CHECK(r.config.kernel.name == KernelName::epec);
    CHECK(r.config.general.fixed_library_name);
    CHECK(r.config.is_enabled(ModuleId::KER));

    r = parse_config("# comment\n\n  CGALPY_SPATIAL_SEARCHING_DIMENSION = 5  \r\nCGALPY_TRI3_NAME=periodicRegular\n"
                     "CGALPY_AOS2_EXTEND_VERTEX=true\n");
    REQUIRE(r.ok());
    CHECK(r.config.ss.dimension == 5);
    CHECK(r.config.tri3.name == Tri3Name::periodicRegular);
    CHECK(r.config.aos2.extend_vertex);
}

TEST_CASE("bad input yields diagnostics") {
    CHECK(codes(parse_config("CGALPY_KERNEL_NAME=bogus").diagnostics) == std::vector<std::string>{"malformed-value"});
    auto d = parse_config("CGALPY_KERNEL_NAME=bogus").diagnostics;
    CHECK(d[0].message.find("bogus") != std::string::npos);
    CHECK(codes(parse_config("CGALPY_NO_SUCH_KEY=1").diagnostics) == std::vector<std::string>{"unknown-key"});
    CHECK(codes(parse_config("KERNEL_NAME=epic").diagnostics) == std::vector<std::string>{"unknown-key"});
    CHECK(codes(parse_config("just words").diagnostics) == std::vector<std::string>{"malformed-line"});
    CHECK(codes(parse_config("CGALPY_KERNEL_BINDINGS=yes").diagnostics) == std::vector<std::string>{"malformed-value"});
    // Comments take whole lines.
    CHECK(codes(parse_config("CGALPY_KERNEL_BINDINGS=true # note").diagnostics) ==
          std::vector<std::string>{"malformed-value"});
    CHECK(codes(parse_config("CGALPY_KERNEL_D_DIMENSION=0").diagnostics) == std::vector<std::string>{"malformed-value"});
    CHECK(codes(parse_config("CGALPY_KERNEL_D_DIMENSION=2x").diagnostics) == std::vector<std::string>{"malformed-value"});
    CHECK(codes(parse_config("CGALPY_KERNEL_NAME=epic\nCGALPY_KERNEL_NAME=epec").diagnostics) ==
          std::vector<std::string>{"duplicate-key"});
    CHECK(codes(parse_config("CGALPY_TRI2_INTERSECTION_TAG_NAME=other").diagnostics) ==
          std::vector<std::string>{"malformed-value"});
    // Keys are case sensitive.
    CHECK(codes(parse_config("CGALPY_kernel_name=epic").diagnostics) == std::vector<std::string>{"unknown-key"});
}

TEST_CASE("dependency rules") {
    BuildConfig c;
    CHECK(validate_dependencies(c).empty());

    c.set_enabled(ModuleId::BSO2, true);
    c.set_enabled(ModuleId::POL2, true);
    CHECK(messages(validate_dependencies(c)) == std::vector<std::string>{"BSO2 requires AOS2"});
    CHECK(validate_dependencies(c)[0].subject == "BSO2");
    CHECK(validate_dependencies(c)[0].code == "missing-dependency");

    BuildConfig ms;
    for (auto m : {ModuleId::MS2, ModuleId::KER, ModuleId::AOS2, ModuleId::POL2}) ms.set_enabled(m, true);
    CHECK(validate_dependencies(ms).empty());
    ms.set_enabled(ModuleId::POL2, false);
    CHECK(messages(validate_dependencies(ms)) == std::vector<std::string>{"MS2 requires POL2"});

    BuildConfig all_off;
    all_off.enabled.fill(false);
    CHECK(enabled_modules(all_off).empty());
    all_off.set_enabled(ModuleId::MS2, true);
    CHECK(messages(validate_dependencies(all_off)) ==
          std::vector<std::string>{"MS2 requires KER", "MS2 requires AOS2", "MS2 requires POL2"});

    BuildConfig as;
    as.set_enabled(ModuleId::AS2, true);
    CHECK(messages(validate_dependencies(as)) == std::vector<std::string>{"AS2 requires TRI2"});
    as.set_enabled(ModuleId::TRI2, true);
    CHECK(codes(validate_dependencies(as)) == std::vector<std::string>{"incompatible-selection"});
    as.tri2.name = Tri2Name::delaunay;
    CHECK(validate_dependencies(as).empty());
    as.tri2.name = Tri2Name::regular;
    CHECK(validate_dependencies(as).empty());

    BuildConfig as3;
    as3.set_enabled(ModuleId::AS3, true);
    as3.set_enabled(ModuleId::TRI3, true);
    for (auto n : enum_values<Tri3Name>()) {
        as3.tri3.name = n;
        bool ok = n == Tri3Name::delaunay || n == Tri3Name::regular || n == Tri3Name::periodicDelaunay ||
                  n == Tri3Name::periodicRegular;
        CHECK(validate_dependencies(as3).empty() == ok);
    }
}

TEST_CASE("enabled modules follow the canonical order") {
    BuildConfig c;
    c.set_enabled(ModuleId::TRI3, true);
    c.set_enabled(ModuleId::AOS2, true);
    CHECK(enabled_modules(c) == std::vector<ModuleId>{ModuleId::KER, ModuleId::AOS2, ModuleId::TRI3});
}

TEST_CASE("validation never enables anything") {
    BuildConfig c;
    c.set_enabled(ModuleId::BSO2, true);
    BuildConfig before = c;
    (void)validate_dependencies(c);
    CHECK(c == before);
}

TEST_CASE("render then parse is the identity, and parse-render-parse is stable") {
    std::mt19937 rng(99);
    for (int i = 0; i < 300; ++i) {
        BuildConfig c = bwtest::random_valid_config(rng);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t m = 0; m < module_count; ++m)
            if (coin(rng)) c.enabled[m] = !c.enabled[m];  // also cover invalid combinations
        ParseResult r = parse_config(render_config(c));
        REQUIRE(r.ok());
        CHECK(r.config == c);
        CHECK(render_config(r.config) == render_config(c));
    }
}

TEST_CASE("random repaired configs validate cleanly") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 500; ++i) {
        BuildConfig c = bwtest::random_valid_config(rng);
        CHECK(validate_dependencies(c).empty());
    }
}

TEST_CASE("validate_dependencies agrees with the rule table on random configs") {
    using M = ModuleId;
    const std::vector<std::pair<M, M>> rules{{M::BSO2, M::AOS2}, {M::BSO2, M::POL2}, {M::BSO2, M::KER},
                                             {M::MS2, M::KER},   {M::MS2, M::AOS2},  {M::MS2, M::POL2},
                                             {M::AS2, M::TRI2},  {M::AS3, M::TRI3}};
    std::mt19937 rng(5);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < 500; ++i) {
        BuildConfig c;
        for (std::size_t m = 0; m < module_count; ++m) c.enabled[m] = coin(rng);
        c.tri2.name = bwtest::random_enum<Tri2Name>(rng);
        c.tri3.name = bwtest::random_enum<Tri3Name>(rng);
        std::size_t expected = 0;
        for (auto [a, b] : rules)
            if (c.is_enabled(a) && !c.is_enabled(b)) ++expected;
        if (c.is_enabled(M::AS2) && c.is_enabled(M::TRI2) && c.tri2.name != Tri2Name::delaunay &&
            c.tri2.name != Tri2Name::regular)
            ++expected;
        if (c.is_enabled(M::AS3) && c.is_enabled(M::TRI3) && c.tri3.name != Tri3Name::delaunay &&
            c.tri3.name != Tri3Name::regular && c.tri3.name != Tri3Name::periodicDelaunay &&
            c.tri3.name != Tri3Name::periodicRegular)
            ++expected;
        CHECK(validate_dependencies(c).size() == expected);
    }
}

TEST_CASE("diagnostic formatting") {
    CHECK(format_diagnostic(make_error("missing-dependency", "BSO2 requires AOS2", "BSO2")) ==
          "error[missing-dependency] BSO2: BSO2 requires AOS2");
    CHECK(has_errors(std::vector<Diagnostic>{make_error("x", "y")}));
    CHECK_FALSE(has_errors(std::vector<Diagnostic>{}));
}
