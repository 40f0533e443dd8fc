#pragma once

// Shared by the unit tests and the acceptance runner: file helpers,
// brute-force oracles and seeded generators.

#include "bindweaver/concept_graph.hpp"
#include "bindweaver/config.hpp"
#include "bindweaver/overload_enumerator.hpp"
#include "bindweaver/type_composer.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bwtest {

namespace fs = std::filesystem;
using namespace bindweaver;

inline fs::path source_dir() { return fs::path(BINDWEAVER_TEST_SOURCE_DIR); }
inline fs::path fixture(const std::string& name) { return source_dir() / "tests" / "fixtures" / name; }
inline fs::path golden(const std::string& name) { return source_dir() / "tests" / "golden" / name; }
inline fs::path data_dir() { return source_dir() / "data"; }

inline std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Fresh empty directory under the system temp dir.
inline fs::path scratch_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    fs::path p = fs::temp_directory_path() / ("bwtest-" + tag + "-" + std::to_string(rng()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// Every concept reachable from the model by refinement.
inline std::set<std::string> reachable_concepts(const ConceptGraph& g, const Model& m) {
    std::set<std::string> seen;
    std::vector<std::string> todo(m.models.begin(), m.models.end());
    while (!todo.empty()) {
        std::string c = todo.back();
        todo.pop_back();
        if (!seen.insert(c).second) continue;
        for (const auto& p : g.find_concept(c)->refines) todo.push_back(p);
    }
    return seen;
}

// Lexicographically least sequence among all topological orders of the
// reachable set, found by exhaustive search. Exponential; keep graphs small.
inline std::vector<std::string> brute_force_export_order(const ConceptGraph& g, const Model& m) {
    const std::set<std::string> nodes = reachable_concepts(g, m);
    std::vector<std::string> best;
    bool have = false;
    std::vector<std::string> cur;
    std::set<std::string> placed;
    std::function<void()> rec = [&] {
        if (cur.size() == nodes.size()) {
            if (!have || cur < best) best = cur;
            have = true;
            return;
        }
        for (const auto& n : nodes) {
            if (placed.count(n)) continue;
            bool ready = true;
            for (const auto& p : g.find_concept(n)->refines)
                if (!placed.count(p)) ready = false;
            if (!ready) continue;
            cur.push_back(n);
            placed.insert(n);
            rec();
            placed.erase(n);
            cur.pop_back();
        }
    };
    rec();
    return best;
}

// Violations of the export-order contract: missing or repeated concepts,
// or a concept placed before something it refines.
inline std::vector<std::string> export_order_violations(const ConceptGraph& g, const Model& m,
                                                        const std::vector<std::string>& order) {
    std::vector<std::string> out;
    const std::set<std::string> want = reachable_concepts(g, m);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (!pos.emplace(order[i], i).second) out.push_back("repeated " + order[i]);
    for (const auto& c : want)
        if (!pos.count(c)) out.push_back("missing " + c);
    for (const auto& [c, _] : pos)
        if (!want.count(c)) out.push_back("unexpected " + c);
    for (const auto& [c, i] : pos)
        for (const auto& p : g.find_concept(c)->refines)
            if (pos.count(p) && pos[p] > i) out.push_back(c + " before its parent " + p);
    return out;
}

struct RandomDag {
    ConceptGraph graph;
    std::vector<std::string> model_names;
};

// Concept names are shuffled against the topological index so that the
// name tie-break and the refinement order disagree often.
inline RandomDag random_dag(std::mt19937& rng, int max_nodes) {
    std::uniform_int_distribution<int> size_dist(1, max_nodes);
    const int n = size_dist(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("C" + std::to_string(100 + i));
    std::shuffle(names.begin(), names.end(), rng);
    std::bernoulli_distribution edge(n <= 4 ? 0.5 : 3.0 / n);
    RandomDag out;
    for (int i = 0; i < n; ++i) {
        Concept c;
        c.name = names[i];
        for (int j = 0; j < i; ++j)
            if (edge(rng)) c.refines.push_back(names[j]);
        Requirement r;
        r.kind = RequirementKind::member_function;
        r.name = "op_" + names[i];
        r.overloads.push_back(parse_signature("() -> int"));
        c.requirements.push_back(r);
        out.graph.add_concept(std::move(c));
    }
    std::bernoulli_distribution pick(0.3);
    for (int k = 0; k < 3; ++k) {
        Model m;
        m.name = "M" + std::to_string(k);
        for (int i = 0; i < n; ++i)
            if (pick(rng)) m.models.push_back(names[i]);
        if (m.models.empty()) m.models.push_back(names[n - 1]);
        out.model_names.push_back(m.name);
        out.graph.add_model(std::move(m));
    }
    return out;
}

inline std::set<TypePair> cartesian_square(const std::vector<std::string>& xs) {
    std::set<TypePair> out;
    for (const auto& a : xs)
        for (const auto& b : xs) out.emplace(a, b);
    return out;
}

// Distinct type names, random length in [1, max_len].
inline std::vector<std::string> random_candidates(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::vector<std::string> pool;
    for (int i = 0; i < 26; ++i) pool.push_back("T" + std::to_string(i) + "_2");
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(len(rng)));
    return pool;
}

// Names of the handlers whose out cell is extended, in catalog order.
inline std::vector<std::string> brute_force_active(const ExtensionFlags& flags) {
    std::vector<std::string> out;
    for (const auto& h : overlay_handlers()) {
        bool on = h.out == CellKind::vertex ? flags.vertex : h.out == CellKind::edge ? flags.halfedge : flags.face;
        if (on) out.push_back(h.name);
    }
    return out;
}

inline std::vector<std::string> handler_names(const std::vector<OverlayHandler>& hs) {
    std::vector<std::string> out;
    for (const auto& h : hs) out.push_back(h.name);
    return out;
}

template <typename E>
E random_enum(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> d(0, enum_count<E>() - 1);
    return static_cast<E>(d(rng));
}

// A random config that passes validate_dependencies, with the fixed name off.
inline BuildConfig random_valid_config(std::mt19937& rng) {
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> dim(1, 9);
    BuildConfig c;
    c.general.fixed_library_name = false;
    c.general.use_shared_libs = coin(rng);
    c.general.build_shared_libs = coin(rng);
    for (std::size_t i = 0; i < module_count; ++i) c.enabled[i] = coin(rng);

    c.kernel.name = random_enum<KernelName>(rng);
    c.kernel.intersection_bindings = coin(rng);
    c.kernel_d.name = random_enum<KernelDName>(rng);
    c.kernel_d.dimension_tag = random_enum<DimensionTag>(rng);
    c.kernel_d.dimension = dim(rng);
    c.aos2.geometry_traits = random_enum<GeometryTraitsName>(rng);
    c.aos2.extend_vertex = coin(rng);
    c.aos2.extend_halfedge = coin(rng);
    c.aos2.extend_face = coin(rng);
    c.aos2.point_location_bindings = coin(rng);
    c.tri2.name = random_enum<Tri2Name>(rng);
    c.tri2.vertex_with_info = coin(rng);
    c.tri2.face_with_info = coin(rng);
    c.tri2.hierarchy = coin(rng);
    c.as2.exact_comparison = coin(rng);
    c.tri3.name = random_enum<Tri3Name>(rng);
    c.tri3.concurrency = random_enum<ConcurrencyName>(rng);
    c.tri3.location_policy = random_enum<LocationPolicyName>(rng);
    c.tri3.hierarchy = coin(rng);
    c.tri3.vertex_with_info = coin(rng);
    c.tri3.cell_with_info = coin(rng);
    c.as3.name = random_enum<As3Name>(rng);
    c.as3.exact_comparison = coin(rng);
    c.ss.dimension = dim(rng);

    // Repair: enable prerequisites, pick alpha-shape compatible names.
    using M = ModuleId;
    if (c.is_enabled(M::BSO2) || c.is_enabled(M::MS2)) {
        c.set_enabled(M::KER, true);
        c.set_enabled(M::AOS2, true);
        c.set_enabled(M::POL2, true);
    }
    if (c.is_enabled(M::AS2)) {
        c.set_enabled(M::TRI2, true);
        if (c.tri2.name != Tri2Name::delaunay && c.tri2.name != Tri2Name::regular)
            c.tri2.name = coin(rng) ? Tri2Name::delaunay : Tri2Name::regular;
    }
    if (c.is_enabled(M::AS3)) {
        c.set_enabled(M::TRI3, true);
        static constexpr Tri3Name ok[] = {Tri3Name::delaunay, Tri3Name::regular, Tri3Name::periodicDelaunay,
                                          Tri3Name::periodicRegular};
        if (std::find(std::begin(ok), std::end(ok), c.tri3.name) == std::end(ok))
            c.tri3.name = ok[std::uniform_int_distribution<int>(0, 3)(rng)];
    }
    return c;
}

// Also enables the modules whose types others refer to (kernel, polygons),
// so every registration resolves.
inline BuildConfig random_closed_config(std::mt19937& rng) {
    BuildConfig c = random_valid_config(rng);
    c.set_enabled(ModuleId::KER, true);
    c.set_enabled(ModuleId::POL2, true);
    return c;
}

// The extender cases frozen in tests/golden/extenders.txt, one
// "label: expression" line each.
inline std::string extender_report() {
    std::ostringstream out;
    auto line = [&](const std::string& label, const TypeExpr& t) { out << label << ": " << t.render() << '\n'; };

    Aos2Selection seg;
    line("traits segment", compose_aos2(seg, false).traits);
    line("traits segment+bso2", compose_aos2(seg, true).traits);
    Aos2Selection conic;
    conic.geometry_traits = GeometryTraitsName::conic;
    line("traits conic+bso2", compose_aos2(conic, true).traits);
    Aos2Selection circle;
    circle.geometry_traits = GeometryTraitsName::circleSegment;
    line("traits circleSegment+bso2", compose_aos2(circle, true).traits);

    for (int bso2 = 0; bso2 < 2; ++bso2) {
        for (int mask = 0; mask < 8; ++mask) {
            Aos2Selection s;
            s.extend_vertex = mask & 1;
            s.extend_halfedge = mask & 2;
            s.extend_face = mask & 4;
            std::string label = std::string("dcel") + (bso2 ? "+bso2" : "") + " v" + std::to_string(mask & 1) +
                                "h" + std::to_string((mask >> 1) & 1) + "f" + std::to_string((mask >> 2) & 1);
            line(label, compose_aos2(s, bso2 != 0).dcel);
        }
    }

    Tri2Selection t2;
    line("tri2 plain vertex", compose_tri2(t2, std::nullopt).vertex);
    line("tri2 plain triangulation", compose_tri2(t2, std::nullopt).triangulation);
    t2.name = Tri2Name::delaunay;
    line("tri2 delaunay+as2 vertex", compose_tri2(t2, As2Selection{}).vertex);
    line("tri2 delaunay+as2 alpha", *compose_tri2(t2, As2Selection{true}).alpha_shape);
    t2.name = Tri2Name::periodicDelaunay;
    line("tri2 periodicDelaunay traits", compose_tri2(t2, std::nullopt).traits);
    Tri2Selection full2;
    full2.name = Tri2Name::constrainedDelaunay;
    full2.vertex_with_info = true;
    full2.face_with_info = true;
    full2.hierarchy = true;
    auto cd = compose_tri2(full2, std::nullopt);
    line("tri2 constrainedDelaunay info+hier vertex", cd.vertex);
    line("tri2 constrainedDelaunay info+hier face", cd.face);
    line("tri2 constrainedDelaunay info+hier triangulation", cd.triangulation);

    Tri3Selection t3;
    t3.name = Tri3Name::delaunay;
    t3.concurrency = ConcurrencyName::parallel;
    line("tri3 delaunay parallel tds", compose_tri3(t3, std::nullopt).tds);
    Tri3Selection fast;
    fast.name = Tri3Name::delaunay;
    fast.location_policy = LocationPolicyName::fast;
    line("tri3 delaunay fast triangulation", compose_tri3(fast, std::nullopt).triangulation);
    As3Selection fixed;
    fixed.name = As3Name::fixed;
    line("tri3 delaunay+as3 fixed vertex", compose_tri3(fast, fixed).vertex);
    line("tri3 delaunay+as3 fixed alpha", *compose_tri3(fast, fixed).alpha_shape);
    Tri3Selection full3;
    full3.name = Tri3Name::periodicRegular;
    full3.vertex_with_info = true;
    full3.cell_with_info = true;
    full3.hierarchy = true;
    auto pr = compose_tri3(full3, As3Selection{As3Name::plain, true});
    line("tri3 periodicRegular info+hier+as3 vertex", pr.vertex);
    line("tri3 periodicRegular info+hier+as3 cell", pr.face);
    line("tri3 periodicRegular info+hier+as3 triangulation", pr.triangulation);
    return out.str();
}

}  // namespace bwtest
