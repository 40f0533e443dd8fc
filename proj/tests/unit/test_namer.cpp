#include "doctest.h"

#include "bindweaver/error.hpp"
#include "bindweaver/namer.hpp"
#include "test_support.hpp"

#include <map>
#include <random>

using namespace bindweaver;

namespace {

BuildConfig named_default() {
    BuildConfig c;
    c.general.fixed_library_name = false;
    return c;
}

}  // namespace

TEST_CASE("encode examples") {
    BuildConfig fixed;
    CHECK(encode_name(fixed) == "CGALPY");
    CHECK(encode_name(named_default()) == "CGALPY_kerEpicInt");

    BuildConfig c = named_default();
    c.kernel.name = KernelName::epec;
    c.set_enabled(ModuleId::AOS2, true);
    CHECK(encode_name(c) == "CGALPY_kerEpecInt_aos2SegPlainPl");

    c.aos2.extend_vertex = true;
    c.aos2.extend_face = true;
    c.aos2.point_location_bindings = false;
    c.kernel.intersection_bindings = false;
    CHECK(encode_name(c) == "CGALPY_kerEpec_aos2SegExtVF");
}

TEST_CASE("decode examples") {
    BuildConfig d = decode_name("CGALPY_kerEpecInt_aos2SegPlainPl");
    CHECK(d.is_enabled(ModuleId::KER));
    CHECK(d.is_enabled(ModuleId::AOS2));
    CHECK(enabled_modules(d).size() == 2);
    CHECK(d.kernel.name == KernelName::epec);
    CHECK(d.kernel.intersection_bindings);
    CHECK(d.aos2.geometry_traits == GeometryTraitsName::segment);
    CHECK_FALSE(d.aos2.extend_vertex);
    CHECK_FALSE(d.aos2.extend_halfedge);
    CHECK_FALSE(d.aos2.extend_face);
    CHECK(d.aos2.point_location_bindings);
    CHECK_FALSE(d.general.fixed_library_name);

    CHECK(decode_name("CGALPY") == BuildConfig{});
}

TEST_CASE("decode rejects bad names") {
    for (const char* bad : {"CGALPY_bogus", "GALPY_kernelEpecInt_Aos2SegPlainPl", "CGALPY__ker",
                            "CGALPY_kerEpic_ker", "CGALPY_aos2Seg_ker", "CGALPY_kerEpicFoo", "CGALPY_aos2Seg",
                            "CGALPY_kerIntEpic", "CGALPY_ssD0", "CGALPY_ssD", "CGALPY_ssD02", "CGALPY_kerdEpicdStatic",
                            "CGALPY_tri3PlainFast", "CGALPY_as3FixedEc", "cgalpy_kerEpic", "CGALPY_ker"}) {
        std::string name = bad;
        CAPTURE(name);
        CHECK_THROWS_AS(decode_name(bad), ParseError);
    }
}

TEST_CASE("word tables per module") {
    BuildConfig c = named_default();
    c.enabled.fill(false);
    c.set_enabled(ModuleId::KERD, true);
    c.kernel_d.name = KernelDName::epecd;
    c.kernel_d.dimension_tag = DimensionTag::static_tag;
    c.kernel_d.dimension = 4;
    CHECK(encode_name(c) == "CGALPY_kerdEpecdStatic4");
    c.kernel_d.dimension_tag = DimensionTag::dynamic_tag;
    CHECK(encode_name(c) == "CGALPY_kerdEpecdDynamic");

    BuildConfig t = named_default();
    t.enabled.fill(false);
    t.set_enabled(ModuleId::TRI3, true);
    t.set_enabled(ModuleId::AS3, true);
    t.tri3.name = Tri3Name::delaunay;
    t.tri3.concurrency = ConcurrencyName::parallel;
    t.tri3.location_policy = LocationPolicyName::fast;
    t.tri3.hierarchy = true;
    t.tri3.vertex_with_info = true;
    t.as3.exact_comparison = true;
    CHECK(encode_name(t) == "CGALPY_as3PlainEc_tri3DelaunayParFastHierVertexInfo");

    BuildConfig s = named_default();
    s.enabled.fill(false);
    s.set_enabled(ModuleId::SS, true);
    s.ss.dimension = 12;
    CHECK(encode_name(s) == "CGALPY_ssD12");
    CHECK(decode_name("CGALPY_ssD12").ss.dimension == 12);

    BuildConfig none = named_default();
    none.enabled.fill(false);
    CHECK(encode_name(none) == "CGALPY_");
    CHECK(decode_name("CGALPY_") == name_projection(none));
}

TEST_CASE("prefix law and module order") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        BuildConfig c = bwtest::random_valid_config(rng);
        std::string n = encode_name(c);
        CHECK(n.rfind("CGALPY_", 0) == 0);
        // Module prefixes appear in canonical order.
        std::size_t pos = 0;
        for (ModuleId m : enabled_modules(c)) {
            std::string part = "_" + derive_namespace(descriptor(m).short_name);
            part[1] = static_cast<char>(std::tolower(static_cast<unsigned char>(part[1])));
            auto at = n.find(part, pos);
            REQUIRE(at != std::string::npos);
            pos = at + 1;
        }
    }
}

TEST_CASE("round trip recovers the name-bearing projection") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 500; ++i) {
        BuildConfig c = bwtest::random_valid_config(rng);
        std::string n = encode_name(c);
        CAPTURE(n);
        CHECK(decode_name(n) == name_projection(c));
        CHECK(encode_name(decode_name(n)) == n);
    }
}

TEST_CASE("projection is idempotent and keeps the name") {
    std::mt19937 rng(77);
    for (int i = 0; i < 200; ++i) {
        BuildConfig c = bwtest::random_valid_config(rng);
        BuildConfig p = name_projection(c);
        CHECK(name_projection(p) == p);
        CHECK(encode_name(p) == encode_name(c));
    }
}

TEST_CASE("encode is injective on name-bearing projections") {
    std::mt19937 rng(5150);
    std::map<std::string, BuildConfig> seen;
    for (int i = 0; i < 3000; ++i) {
        BuildConfig p = name_projection(bwtest::random_valid_config(rng));
        auto [it, fresh] = seen.emplace(encode_name(p), p);
        if (!fresh) CHECK(it->second == p);
    }
}
