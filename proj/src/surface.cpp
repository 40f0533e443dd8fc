#include "bindweaver/surface.hpp"

#include "bindweaver/error.hpp"
#include "bindweaver/type_composer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace bindweaver {

std::string_view to_string(ReturnPolicy policy) {
    switch (policy) {
    case ReturnPolicy::copy_value: return "copy-value";
    case ReturnPolicy::reference_to_existing: return "reference-to-existing";
    case ReturnPolicy::kernel_dependent: return "kernel-dependent";
    }
    return "copy-value";
}

bool is_kernel_dependent_accessor(std::string_view member_name) {
    static constexpr std::array<std::string_view, 12> names{"x", "y",  "z",  "a",  "b",  "c",
                                                            "d", "hx", "hy", "hz", "hw", "squared_radius"};
    return std::find(names.begin(), names.end(), member_name) != names.end();
}

ReturnPolicy resolve_return_policy(ReturnPolicy declared, KernelName kernel) {
    if (declared != ReturnPolicy::kernel_dependent) return declared;
    const bool stores_coordinates = kernel == KernelName::epic || kernel == KernelName::filteredSimpleCartesianDouble ||
                                    kernel == KernelName::filteredSimpleCartesianLazyGmpq;
    return stores_coordinates ? ReturnPolicy::reference_to_existing : ReturnPolicy::copy_value;
}

const SupportTable* BindingTables::find(std::string_view function) const {
    for (const auto& t : support)
        if (t.function == function) return &t;
    return nullptr;
}

BindingTables load_binding_tables(const std::filesystem::path& data_dir) {
    BindingTables tables;
    std::vector<std::filesystem::path> files;
    const auto support_dir = data_dir / "support";
    if (std::filesystem::is_directory(support_dir))
        for (const auto& e : std::filesystem::directory_iterator(support_dir))
            if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        SupportTable t = load_support_table_file(f);
        if (tables.find(t.function) != nullptr) throw SchemaError("two support tables for " + t.function);
        tables.support.push_back(std::move(t));
    }
    tables.minkowski = load_strategy_catalog_file(data_dir / "minkowski_catalog.json");
    return tables;
}

namespace {

SurfaceMember callable(std::string name, std::string_view sig, std::string provenance,
                       std::vector<WrapperKind> wrappers = {}, std::vector<std::string> dispatch = {}) {
    SurfaceMember m;
    m.name = std::move(name);
    m.signature = parse_signature(sig);
    m.wrappers = std::move(wrappers);
    m.dispatch = std::move(dispatch);
    m.provenance = std::move(provenance);
    return m;
}

class ClassBuilder {
public:
    ClassBuilder(std::string name, std::string provenance) {
        cls_.name = std::move(name);
        cls_.provenance = std::move(provenance);
    }

    ClassBuilder& type(TypeExpr t) {
        cls_.type = std::move(t);
        return *this;
    }
    ClassBuilder& collapses(std::vector<std::string> names) {
        cls_.collapses = std::move(names);
        return *this;
    }
    ClassBuilder& def(std::string name, std::string_view sig, std::vector<WrapperKind> wrappers = {},
                      std::vector<std::string> dispatch = {}) {
        cls_.members.push_back(callable(std::move(name), sig, cls_.provenance, std::move(wrappers), std::move(dispatch)));
        return *this;
    }
    ClassBuilder& def(SurfaceMember m) {
        cls_.members.push_back(std::move(m));
        return *this;
    }
    ClassBuilder& def_if(bool on, std::string name, std::string_view sig, std::vector<WrapperKind> wrappers = {}) {
        if (on) def(std::move(name), sig, std::move(wrappers));
        return *this;
    }
    // Element classes of C++ iterators follow the Python iterator protocol.
    ClassBuilder& iterable() {
        def("__iter__", "() -> Iterator[" + cls_.name + "]", {WrapperKind::iterator});
        def("__next__", "() -> " + cls_.name, {WrapperKind::iterator});
        return *this;
    }
    ClassBuilder& data_accessors(bool on, const std::string& getter, const std::string& setter) {
        if (!on) return *this;
        def(getter, "() -> object");
        def(setter, "(" + getter + ": object) -> None");
        return *this;
    }
    ClassBuilder& nest(SurfaceClass c) {
        cls_.nested.push_back(std::move(c));
        return *this;
    }

    SurfaceClass build() { return std::move(cls_); }

private:
    SurfaceClass cls_;
};

std::string module_source(ModuleId id) { return "module:" + std::string(descriptor(id).short_name); }

ModuleSurface start_surface(ModuleId id, std::vector<std::string> lookup) {
    ModuleSurface s;
    s.module = id;
    s.ns = std::string(descriptor(id).namespace_name);
    s.lookup = std::move(lookup);
    return s;
}

ModelBinding bind_model(const ConceptGraph& g, Model model, std::string class_name, std::optional<TypeExpr> type,
                        bool flatten) {
    ModelBinding b;
    b.interface = merged_interface(g, model);
    b.model = std::move(model);
    b.class_name = std::move(class_name);
    b.type = std::move(type);
    b.flatten = flatten;
    return b;
}

SurfaceClass number_type_class(const std::string& provenance, TypeExpr type) {
    ClassBuilder ft("FT", provenance);
    ft.type(std::move(type))
        .def("__init__", "()")
        .def("__init__", "(value: int)")
        .def("__init__", "(value: float)")
        .def("to_double", "() -> float")
        .def("__add__", "(other: FT) -> FT")
        .def("__sub__", "(other: FT) -> FT")
        .def("__mul__", "(other: FT) -> FT")
        .def("__truediv__", "(other: FT) -> FT")
        .def("__neg__", "() -> FT")
        .def("__eq__", "(other: FT) -> bool")
        .def("__lt__", "(other: FT) -> bool");
    return ft.build();
}

void add_pair_registrations(ModuleSurface& s, const SupportTable& table) {
    auto pairs = expand_pairs(table.universe);
    for (const auto& r : filter_supported(pairs, table)) {
        std::string sig = "(a: " + r.arg_types[0].render() + ", b: " + r.arg_types[1].render() + ") -> " +
                          r.return_type.render();
        std::vector<WrapperKind> wrappers;
        if (r.wrapper != WrapperKind::plain) wrappers.push_back(r.wrapper);
        s.functions.push_back(callable(r.function, sig, "table:" + table.function, std::move(wrappers)));
    }
}

ModuleSurface kernel_surface(const BuildConfig& c, const ConceptGraph& g, const BindingTables& tables) {
    ModuleSurface s = start_surface(ModuleId::KER, {});
    const std::string src = module_source(ModuleId::KER);
    TypeExpr kernel = compose_kernel(c.kernel);
    s.notes.push_back("Kernel = " + kernel.render());
    if (kernel_uses_double(c.kernel.name)) s.aliases["FT"] = "float";
    else s.classes.push_back(number_type_class(src, TypeExpr::named("Kernel::FT")));
    s.models.push_back(bind_model(g, g.model("Kernel"), "", std::nullopt, true));
    if (c.kernel.intersection_bindings) {
        for (const char* fn : {"do_intersect", "intersection"})
            if (const SupportTable* t = tables.find(fn)) add_pair_registrations(s, *t);
    }
    return s;
}

ModuleSurface kernel_d_surface(const BuildConfig& c) {
    ModuleSurface s = start_surface(ModuleId::KERD, {});
    const std::string src = module_source(ModuleId::KERD);
    s.notes.push_back("Kernel_d = " + compose_kernel_d(c.kernel_d).render());
    if (kernel_d_uses_double(c.kernel_d.name)) s.aliases["FT"] = "float";
    else s.classes.push_back(number_type_class(src, TypeExpr::named("Kernel_d::FT")));

    ClassBuilder point("Point_d", src);
    point.type(TypeExpr::named("Kernel_d::Point_d"))
        .def("__init__", "()")
        .def("__init__", "(coordinates: list)", {WrapperKind::list_input}, {"float"})
        .def("dimension", "() -> int")
        .def("cartesian", "(i: int) -> FT")
        .def("__getitem__", "(i: int) -> FT");
    ClassBuilder vector("Vector_d", src);
    vector.type(TypeExpr::named("Kernel_d::Vector_d"))
        .def("__init__", "()")
        .def("__init__", "(coordinates: list)", {WrapperKind::list_input}, {"float"})
        .def("dimension", "() -> int")
        .def("squared_length", "() -> FT");
    ClassBuilder segment("Segment_d", src);
    segment.type(TypeExpr::named("Kernel_d::Segment_d"))
        .def("__init__", "()")
        .def("__init__", "(p: Point_d, q: Point_d)")
        .def("source", "() -> Point_d")
        .def("target", "() -> Point_d")
        .def("squared_length", "() -> FT");
    s.classes.push_back(point.build());
    s.classes.push_back(vector.build());
    s.classes.push_back(segment.build());
    s.functions.push_back(callable("do_intersect", "(a: Segment_d, b: Segment_d) -> bool", src));
    s.functions.push_back(callable("squared_distance", "(p: Point_d, q: Point_d) -> FT", src));
    return s;
}

// Name under which the arrangement module exposes its geometry traits.
std::string traits_class_name(const BuildConfig& c) { return compose_basic_traits(c.aos2.geometry_traits).head(); }

ModelBinding traits_binding(const BuildConfig& c, const ConceptGraph& g) {
    const std::string name = traits_class_name(c);
    Model model = g.model(name);
    const bool bso2 = c.is_enabled(ModuleId::BSO2);
    if (bso2 && g.find_concept("GeneralPolygonSetTraits_2") != nullptr &&
        std::find(model.models.begin(), model.models.end(), "GeneralPolygonSetTraits_2") == model.models.end())
        model.models.push_back("GeneralPolygonSetTraits_2");
    return bind_model(g, std::move(model), name, compose_aos2(c.aos2, bso2).traits, false);
}

ModuleSurface aos2_surface(const BuildConfig& c, const ConceptGraph& g) {
    ModuleSurface s = start_surface(ModuleId::AOS2, {"Ker"});
    const std::string src = module_source(ModuleId::AOS2);
    const bool bso2 = c.is_enabled(ModuleId::BSO2);
    ComposedArrangement composed = compose_aos2(c.aos2, bso2);
    s.notes.push_back("Dcel = " + composed.dcel.render());

    ModelBinding traits = traits_binding(c, g);
    const std::string T = traits.class_name;
    const bool has_curve = traits.interface.find_type("Curve_2") != nullptr;
    const auto order = export_order(g, traits.model);
    const bool landmarks = std::find(order.begin(), order.end(), "AosLandmarkTraits_2") != order.end();
    s.models.push_back(std::move(traits));

    const auto& ext = c.aos2;
    ClassBuilder vertex("Vertex", src);
    vertex.collapses({"Vertex_handle", "Vertex_const_handle", "Vertex_iterator", "Vertex_const_iterator"})
        .def("point", "() -> " + T + ".Point_2")
        .def("degree", "() -> int")
        .def("is_isolated", "() -> bool")
        .def("face", "() -> Face")
        .def("incident_halfedges", "() -> Iterator[Halfedge]", {WrapperKind::circulator})
        .data_accessors(ext.extend_vertex, "data", "set_data")
        .iterable();
    ClassBuilder halfedge("Halfedge", src);
    halfedge
        .collapses({"Halfedge_handle", "Halfedge_const_handle", "Halfedge_iterator", "Edge_iterator",
                    "Halfedge_around_vertex_circulator", "Ccb_halfedge_circulator"})
        .def("source", "() -> Vertex")
        .def("target", "() -> Vertex")
        .def("twin", "() -> Halfedge")
        .def("next", "() -> Halfedge")
        .def("prev", "() -> Halfedge")
        .def("face", "() -> Face")
        .def("curve", "() -> " + T + ".X_monotone_curve_2")
        .def("direction", "() -> int")
        .def("ccb", "() -> Iterator[Halfedge]", {WrapperKind::circulator})
        .data_accessors(ext.extend_halfedge, "data", "set_data")
        .iterable();
    ClassBuilder face("Face", src);
    face.collapses({"Face_handle", "Face_const_handle", "Face_iterator", "Face_const_iterator"})
        .def("is_unbounded", "() -> bool")
        .def("has_outer_ccb", "() -> bool")
        .def("outer_ccb", "() -> Iterator[Halfedge]", {WrapperKind::circulator})
        .def("inner_ccbs", "() -> Iterator[Halfedge]", {WrapperKind::iterator})
        .def("isolated_vertices", "() -> Iterator[Vertex]", {WrapperKind::iterator})
        .data_accessors(ext.extend_face, "data", "set_data")
        .iterable();

    ClassBuilder arr("Arrangement_2", src);
    arr.type(composed.arrangement)
        .nest(vertex.build())
        .nest(halfedge.build())
        .nest(face.build())
        .def("__init__", "()")
        .def("__init__", "(traits: " + T + ")")
        .def("vertices", "() -> Iterator[Vertex]", {WrapperKind::iterator})
        .def("halfedges", "() -> Iterator[Halfedge]", {WrapperKind::iterator})
        .def("edges", "() -> Iterator[Halfedge]", {WrapperKind::iterator})
        .def("faces", "() -> Iterator[Face]", {WrapperKind::iterator})
        .def("number_of_vertices", "() -> int")
        .def("number_of_halfedges", "() -> int")
        .def("number_of_edges", "() -> int")
        .def("number_of_faces", "() -> int")
        .def("number_of_isolated_vertices", "() -> int")
        .def("unbounded_face", "() -> Face")
        .def("insert_in_face_interior", "(p: " + T + ".Point_2, f: Face) -> Vertex")
        .def("remove_edge", "(e: Halfedge) -> Face")
        .def("is_empty", "() -> bool")
        .def("is_valid", "() -> bool")
        .def("clear", "() -> None");
    s.classes.push_back(arr.build());

    // Overlay traits: one callable per handler.
    const std::string overlay_src = "registration:overlay";
    const ExtensionFlags flags{ext.extend_vertex, ext.extend_halfedge, ext.extend_face};
    std::string all_handlers;
    for (const auto& h : resolve_overlay_handlers(flags))
        all_handlers += (all_handlers.empty() ? "" : ", ") + h.name.substr(4) + ": object";
    ClassBuilder overlay_traits("Arr_overlay_traits", overlay_src);
    overlay_traits.def("__init__", "(" + all_handlers + ")").def("__init__", "(ff_f: object)");
    ClassBuilder function_traits("Arr_overlay_function_traits", overlay_src);
    function_traits.def("__init__", "()").def("__init__", "(ff_f: object)");
    for (const auto& h : resolve_overlay_handlers(flags)) {
        SurfaceMember plain = callable(h.name, "(f: object) -> None", overlay_src);
        plain.attributes = {{"red", std::string(cell_letter(h.red))},
                            {"blue", std::string(cell_letter(h.blue))},
                            {"out", std::string(cell_letter(h.out))}};
        overlay_traits.def(plain);
        SurfaceMember gated = plain;
        gated.attributes.emplace_back("handler", h.active ? "active" : "idle");
        gated.attributes.emplace_back("red_input", h.red_placeholder ? "none" : "data");
        gated.attributes.emplace_back("blue_input", h.blue_placeholder ? "none" : "data");
        function_traits.def(gated);
    }
    s.classes.push_back(overlay_traits.build());
    s.classes.push_back(function_traits.build());

    if (ext.point_location_bindings) {
        std::vector<std::string> strategies{"Arr_naive_point_location", "Arr_walk_along_line_point_location",
                                            "Arr_trapezoid_ric_point_location"};
        if (landmarks) strategies.push_back("Arr_landmarks_point_location");
        for (const auto& name : strategies) {
            ClassBuilder pl(name, std::string(point_location_source));
            pl.type(TypeExpr::apply(name, {TypeExpr::named("Arrangement_2")}))
                .def("__init__", "()")
                .def("__init__", "(arr: Arrangement_2)")
                .def("attach", "(arr: Arrangement_2) -> None")
                .def("locate", "(p: " + T + ".Point_2) -> object", {WrapperKind::variant_result})
                .def("ray_shoot_up", "(p: " + T + ".Point_2) -> object", {WrapperKind::variant_result})
                .def("ray_shoot_down", "(p: " + T + ".Point_2) -> object", {WrapperKind::variant_result});
            s.classes.push_back(pl.build());
        }
    }

    std::vector<std::string> dispatch{T + ".X_monotone_curve_2"};
    if (has_curve) dispatch.push_back(T + ".Curve_2");
    s.functions.push_back(
        callable("insert", "(arr: Arrangement_2, curves: list) -> None", src, {WrapperKind::list_input}, dispatch));
    s.functions.push_back(callable("insert", "(arr: Arrangement_2, xcv: " + T + ".X_monotone_curve_2) -> None", src));
    if (has_curve) s.functions.push_back(callable("insert", "(arr: Arrangement_2, cv: " + T + ".Curve_2) -> None", src));
    s.functions.push_back(callable("insert_point", "(arr: Arrangement_2, p: " + T + ".Point_2) -> Arrangement_2.Vertex", src));
    SurfaceMember decompose =
        callable("decompose", "(arr: Arrangement_2) -> list", src, {WrapperKind::apply_iterator_output});
    decompose.attributes.emplace_back("element", "(Vertex, (Vertex | Halfedge | Face | None, "
                                                 "Vertex | Halfedge | Face | None))");
    s.functions.push_back(std::move(decompose));
    const std::string arrs = "r: Arrangement_2, b: Arrangement_2, o: Arrangement_2";
    s.functions.push_back(callable("overlay", "(" + arrs + ") -> None", overlay_src));
    s.functions.push_back(callable("overlay", "(" + arrs + ", t: Arr_overlay_traits) -> None", overlay_src));
    s.functions.push_back(callable("overlay", "(" + arrs + ", t: Arr_overlay_function_traits) -> None", overlay_src));
    return s;
}

ModuleSurface bso2_surface(const BuildConfig& c) {
    ModuleSurface s = start_surface(ModuleId::BSO2, {"Aos2", "Pol2", "Ker"});
    const std::string src = module_source(ModuleId::BSO2);
    const std::string T = traits_class_name(c);
    const bool linear = c.aos2.geometry_traits == GeometryTraitsName::segment;
    std::string P = "Polygon_2";
    std::string PWH = "Polygon_with_holes_2";
    std::string set_name = "Polygon_set_2";
    TypeExpr set_type = TypeExpr::apply("Polygon_set_2", {TypeExpr::named("Kernel"), TypeExpr::named("Point_2_container")});
    if (!linear) {
        P = "General_polygon_2";
        PWH = "General_polygon_with_holes_2";
        set_name = "General_polygon_set_2";
        TypeExpr traits = compose_aos2(c.aos2, true).traits;
        set_type = TypeExpr::apply("General_polygon_set_2", {traits});
        ClassBuilder pgn(P, src);
        pgn.type(TypeExpr::apply("General_polygon_2", {compose_basic_traits(c.aos2.geometry_traits)}))
            .def("__init__", "()")
            .def("__init__", "(curves: list)", {WrapperKind::list_input}, {T + ".X_monotone_curve_2"})
            .def("curves", "() -> Iterator[" + T + ".X_monotone_curve_2]", {WrapperKind::iterator})
            .def("size", "() -> int")
            .def("orientation", "() -> int");
        ClassBuilder pwh(PWH, src);
        pwh.type(TypeExpr::apply("General_polygon_with_holes_2", {TypeExpr::named(P)}))
            .def("__init__", "()")
            .def("__init__", "(outer: " + P + ")")
            .def("__init__", "(outer: " + P + ", holes: list)", {WrapperKind::list_input}, {P})
            .def("outer_boundary", "() -> " + P)
            .def("holes", "() -> Iterator[" + P + "]", {WrapperKind::iterator})
            .def("number_of_holes", "() -> int")
            .def("is_unbounded", "() -> bool");
        s.classes.push_back(pgn.build());
        s.classes.push_back(pwh.build());
    }

    ClassBuilder set(set_name, src);
    set.type(set_type).def("__init__", "()");
    for (const auto& t : {P, PWH}) set.def("__init__", "(pgn: " + t + ")");
    for (const auto& t : {P, PWH}) set.def("insert", "(pgn: " + t + ") -> None");
    set.def("insert", "(polygons: list) -> None", {WrapperKind::list_input}, {P, PWH});
    for (const char* op : {"join", "intersection", "difference", "symmetric_difference"})
        for (const auto& t : {P, PWH}) set.def(op, "(pgn: " + t + ") -> None");
    for (const auto& t : {P, PWH}) set.def("do_intersect", "(pgn: " + t + ") -> bool");
    set.def("complement", "() -> None")
        .def("oriented_side", "(p: " + T + ".Point_2) -> int")
        .def("number_of_polygons_with_holes", "() -> int")
        .def("polygons_with_holes", "() -> list", {WrapperKind::list_output})
        .def("arrangement", "() -> Arrangement_2")
        .def("is_empty", "() -> bool")
        .def("clear", "() -> None");
    s.classes.push_back(set.build());

    const std::vector<std::string> kinds{P, PWH};
    auto pairs = expand_pairs(kinds);
    for (const auto& [a, b] : pairs)
        s.functions.push_back(callable("do_intersect", "(p: " + a + ", q: " + b + ") -> bool", src));
    for (const char* op : {"intersection", "join", "difference", "symmetric_difference"})
        for (const auto& [a, b] : pairs)
            s.functions.push_back(
                callable(op, "(p: " + a + ", q: " + b + ") -> list", src, {WrapperKind::list_output}));
    for (const auto& t : kinds)
        s.functions.push_back(callable("complement", "(p: " + t + ") -> list", src, {WrapperKind::list_output}));
    return s;
}

ModuleSurface pol2_surface() {
    ModuleSurface s = start_surface(ModuleId::POL2, {"Ker"});
    const std::string src = module_source(ModuleId::POL2);
    const TypeExpr kernel = TypeExpr::named("Kernel");
    ClassBuilder pgn("Polygon_2", src);
    pgn.type(TypeExpr::apply("Polygon_2", {kernel}))
        .def("__init__", "()")
        .def("__init__", "(points: list)", {WrapperKind::list_input}, {"Point_2"})
        .def("vertices", "() -> Iterator[Point_2]", {WrapperKind::iterator})
        .def("edges", "() -> Iterator[Segment_2]", {WrapperKind::iterator})
        .def("push_back", "(p: Point_2) -> None")
        .def("size", "() -> int")
        .def("is_empty", "() -> bool")
        .def("is_simple", "() -> bool")
        .def("is_convex", "() -> bool")
        .def("orientation", "() -> int")
        .def("bounded_side", "(p: Point_2) -> int")
        .def("area", "() -> FT")
        .def("reverse_orientation", "() -> None");
    ClassBuilder pwh("Polygon_with_holes_2", src);
    pwh.type(TypeExpr::apply("Polygon_with_holes_2", {kernel}))
        .def("__init__", "()")
        .def("__init__", "(outer: Polygon_2)")
        .def("__init__", "(outer: Polygon_2, holes: list)", {WrapperKind::list_input}, {"Polygon_2"})
        .def("outer_boundary", "() -> Polygon_2")
        .def("holes", "() -> Iterator[Polygon_2]", {WrapperKind::iterator})
        .def("add_hole", "(hole: Polygon_2) -> None")
        .def("number_of_holes", "() -> int")
        .def("is_unbounded", "() -> bool");
    s.classes.push_back(pgn.build());
    s.classes.push_back(pwh.build());
    s.functions.push_back(callable("is_simple_2", "(points: list) -> bool", src, {WrapperKind::list_input}, {"Point_2"}));
    s.functions.push_back(callable("area_2", "(points: list) -> FT", src, {WrapperKind::list_input}, {"Point_2"}));
    return s;
}

ModuleSurface pp_surface() {
    ModuleSurface s = start_surface(ModuleId::PP, {"Pol2", "Ker"});
    const std::string src = module_source(ModuleId::PP);
    for (const char* fn : {"approx_convex_partition_2", "greene_approx_convex_partition_2", "optimal_convex_partition_2",
                           "y_monotone_partition_2"})
        s.functions.push_back(callable(fn, "(p: Polygon_2) -> list", src, {WrapperKind::list_output}));
    return s;
}

std::vector<std::string> minkowski_param_names(std::size_t arity, bool traits) {
    std::vector<std::string> names{"p", "q"};
    std::size_t strategies = arity - 2 - (traits ? 1 : 0);
    if (strategies == 1) names.push_back("decomposition");
    if (strategies == 2) {
        names.push_back("decomposition_p");
        names.push_back("decomposition_q");
    }
    if (traits) names.push_back("traits");
    return names;
}

ModuleSurface ms2_surface(const BindingTables& tables) {
    ModuleSurface s = start_surface(ModuleId::MS2, {"Pol2", "Ker"});
    const std::string src = module_source(ModuleId::MS2);
    const StrategyCatalog& catalog = tables.minkowski;
    const std::string cat_src = "catalog:" + catalog.function;
    for (const auto& st : catalog.strategies) {
        ClassBuilder cls(st.name, cat_src);
        cls.type(TypeExpr::apply(st.name, {TypeExpr::named("Kernel")})).def("__init__", "()");
        s.classes.push_back(cls.build());
    }
    ClassBuilder traits(catalog.traits_type, cat_src);
    traits.type(TypeExpr::apply(catalog.traits_type, {TypeExpr::named("Kernel")})).def("__init__", "()");
    s.classes.push_back(traits.build());

    const MinkowskiEnumeration e = enumerate_minkowski(catalog);
    auto add = [&](const std::vector<Registration>& regs, bool with_traits) {
        for (const auto& r : regs) {
            bool has_traits = with_traits || (!r.arg_types.empty() && r.arg_types.back().head() == catalog.traits_type);
            auto names = minkowski_param_names(r.arg_types.size(), has_traits);
            std::string sig = "(";
            for (std::size_t i = 0; i < r.arg_types.size(); ++i)
                sig += (i ? ", " : "") + names[i] + ": " + r.arg_types[i].render();
            sig += ") -> " + r.return_type.render();
            s.functions.push_back(callable(r.function, sig, cat_src));
        }
    };
    add(e.reduced_convolution, false);
    add(e.single_strategy, false);
    add(e.dual_strategy, false);
    add(e.single_strategy_with_traits, true);
    add(e.dual_strategy_with_traits, true);
    s.functions.push_back(callable("approximated_offset_2", "(p: Polygon_2, r: float, eps: float) -> object", src));
    s.functions.push_back(callable("approximated_inset_2", "(p: Polygon_2, r: float, eps: float) -> list", src,
                                   {WrapperKind::apply_iterator_output}));
    return s;
}

ModuleSurface bv_surface() {
    ModuleSurface s = start_surface(ModuleId::BV, {"Ker"});
    const std::string src = module_source(ModuleId::BV);
    ClassBuilder mc("Min_circle_2", src);
    mc.type(TypeExpr::apply("Min_circle_2", {TypeExpr::apply("Min_circle_2_traits_2", {TypeExpr::named("Kernel")})}))
        .def("__init__", "()")
        .def("__init__", "(points: list)", {WrapperKind::list_input}, {"Point_2"})
        .def("insert", "(p: Point_2) -> None")
        .def("circle", "() -> Circle_2")
        .def("is_empty", "() -> bool")
        .def("number_of_points", "() -> int")
        .def("number_of_support_points", "() -> int")
        .def("support_points", "() -> Iterator[Point_2]", {WrapperKind::iterator});
    s.classes.push_back(mc.build());
    s.functions.push_back(
        callable("bounding_box", "(points: list) -> Iso_rectangle_2", src, {WrapperKind::list_input}, {"Point_2"}));
    return s;
}

ModuleSurface ch2_surface() {
    ModuleSurface s = start_surface(ModuleId::CH2, {"Ker"});
    const std::string src = module_source(ModuleId::CH2);
    for (const char* fn : {"convex_hull_2", "lower_hull_points_2", "upper_hull_points_2"})
        s.functions.push_back(callable(fn, "(points: list) -> list", src,
                                       {WrapperKind::list_input, WrapperKind::list_output}, {"Point_2"}));
    s.functions.push_back(
        callable("is_ccw_strongly_convex_2", "(points: list) -> bool", src, {WrapperKind::list_input}, {"Point_2"}));
    return s;
}

ModuleSurface ch3_surface() {
    ModuleSurface s = start_surface(ModuleId::CH3, {"Ker"});
    const std::string src = module_source(ModuleId::CH3);
    ClassBuilder poly("Polyhedron_3", src);
    poly.type(TypeExpr::apply("Polyhedron_3", {TypeExpr::named("Kernel")}))
        .def("__init__", "()")
        .def("size_of_vertices", "() -> int")
        .def("size_of_halfedges", "() -> int")
        .def("size_of_facets", "() -> int")
        .def("points", "() -> Iterator[Point_3]", {WrapperKind::iterator})
        .def("is_closed", "() -> bool");
    s.classes.push_back(poly.build());
    s.functions.push_back(
        callable("convex_hull_3", "(points: list) -> Polyhedron_3", src, {WrapperKind::list_input}, {"Point_3"}));
    s.functions.push_back(callable("is_strongly_convex_3", "(p: Polyhedron_3) -> bool", src));
    return s;
}

ModuleSurface ss_surface(const BuildConfig& c) {
    ModuleSurface s = start_surface(ModuleId::SS, {});
    const std::string src = module_source(ModuleId::SS);
    const std::string d = std::to_string(c.ss.dimension);
    TypeExpr traits = TypeExpr::apply(
        "Search_traits_d",
        {TypeExpr::apply("Epick_d", {TypeExpr::apply("Dimension_tag", {TypeExpr::named(d)})})});
    s.notes.push_back("Search_traits = " + traits.render());

    ClassBuilder point("Point_d", src);
    point.type(TypeExpr::named("Search_traits::Point_d"))
        .def("__init__", "()")
        .def("__init__", "(coordinates: list)", {WrapperKind::list_input}, {"float"})
        .def("dimension", "() -> int")
        .def("__getitem__", "(i: int) -> float");
    ClassBuilder sphere("Fuzzy_sphere", src);
    sphere.type(TypeExpr::apply("Fuzzy_sphere", {TypeExpr::named("Search_traits")}))
        .def("__init__", "(center: Point_d, radius: float)")
        .def("__init__", "(center: Point_d, radius: float, epsilon: float)");
    ClassBuilder box("Fuzzy_iso_box", src);
    box.type(TypeExpr::apply("Fuzzy_iso_box", {TypeExpr::named("Search_traits")}))
        .def("__init__", "(p: Point_d, q: Point_d)")
        .def("__init__", "(p: Point_d, q: Point_d, epsilon: float)");
    ClassBuilder tree("Kd_tree", src);
    tree.type(TypeExpr::apply("Kd_tree", {traits}))
        .def("__init__", "()")
        .def("__init__", "(points: list)", {WrapperKind::list_input}, {"Point_d"})
        .def("insert", "(p: Point_d) -> None")
        .def("build", "() -> None")
        .def("size", "() -> int")
        .def("search", "(query: Fuzzy_sphere) -> list", {WrapperKind::list_output})
        .def("search", "(query: Fuzzy_iso_box) -> list", {WrapperKind::list_output});
    ClassBuilder knn("K_neighbor_search", src);
    knn.type(TypeExpr::apply("K_neighbor_search", {TypeExpr::named("Search_traits")}))
        .def("__init__", "(tree: Kd_tree, query: Point_d, k: int)")
        .def("neighbors", "() -> list", {WrapperKind::list_output});
    s.classes.push_back(point.build());
    s.classes.push_back(sphere.build());
    s.classes.push_back(box.build());
    s.classes.push_back(tree.build());
    s.classes.push_back(knn.build());

    SurfaceMember dim = callable("get_spatial_searching_dimension", "() -> int", src);
    dim.attributes.emplace_back("value", d);
    s.functions.push_back(std::move(dim));
    return s;
}

std::optional<As2Selection> active_as2(const BuildConfig& c) {
    if (!c.is_enabled(ModuleId::AS2)) return std::nullopt;
    return c.as2;
}

std::optional<As3Selection> active_as3(const BuildConfig& c) {
    if (!c.is_enabled(ModuleId::AS3)) return std::nullopt;
    return c.as3;
}

ModuleSurface tri2_surface(const BuildConfig& c) {
    ModuleSurface s = start_surface(ModuleId::TRI2, {"Ker"});
    const std::string src = module_source(ModuleId::TRI2);
    const auto& sel = c.tri2;
    ComposedTriangulation composed = compose_tri2(sel, active_as2(c));
    s.notes.push_back("Traits = " + composed.traits.render());
    s.notes.push_back("Tds = " + composed.tds.render());

    const bool regular = sel.name == Tri2Name::regular;
    const bool periodic = sel.name == Tri2Name::periodicPlain || sel.name == Tri2Name::periodicDelaunay;
    const bool constrained = sel.name == Tri2Name::constrained || sel.name == Tri2Name::constrainedDelaunay;
    const bool delaunay = sel.name == Tri2Name::delaunay || sel.name == Tri2Name::constrainedDelaunay ||
                          sel.name == Tri2Name::periodicDelaunay;
    const std::string P = regular ? "Weighted_point_2" : "Point_2";

    ClassBuilder vertex("Vertex", src);
    vertex.collapses({"Vertex_handle", "Finite_vertices_iterator", "All_vertices_iterator", "Vertex_circulator"})
        .def("point", "() -> " + P)
        .def("degree", "() -> int")
        .def("face", "() -> Face")
        .def("incident_faces", "() -> Iterator[Face]", {WrapperKind::circulator})
        .def("incident_vertices", "() -> Iterator[Vertex]", {WrapperKind::circulator})
        .data_accessors(sel.vertex_with_info, "info", "set_info")
        .iterable();
    ClassBuilder face("Face", src);
    face.collapses({"Face_handle", "Finite_faces_iterator", "All_faces_iterator", "Face_circulator"})
        .def("vertex", "(i: int) -> Vertex")
        .def("neighbor", "(i: int) -> Face")
        .def("index", "(v: Vertex) -> int")
        .def_if(constrained, "is_constrained", "(i: int) -> bool")
        .data_accessors(sel.face_with_info, "info", "set_info")
        .iterable();

    ClassBuilder tri("Triangulation_2", src);
    tri.type(composed.triangulation).nest(vertex.build()).nest(face.build()).def("__init__", "()");
    if (periodic) tri.def("__init__", "(domain: Iso_rectangle_2)");
    tri.def("insert", "(p: " + P + ") -> Vertex")
        .def("insert", "(points: list) -> int", {WrapperKind::list_input}, {P})
        .def("remove", "(v: Vertex) -> None")
        .def("number_of_vertices", "() -> int")
        .def("number_of_faces", "() -> int")
        .def("dimension", "() -> int")
        .def("is_valid", "() -> bool")
        .def("finite_vertices", "() -> Iterator[Vertex]", {WrapperKind::iterator})
        .def("finite_faces", "() -> Iterator[Face]", {WrapperKind::iterator})
        .def("all_vertices", "() -> Iterator[Vertex]", {WrapperKind::iterator})
        .def("all_faces", "() -> Iterator[Face]", {WrapperKind::iterator})
        .def("infinite_vertex", "() -> Vertex")
        .def("is_infinite", "(v: Vertex) -> bool")
        .def("is_infinite", "(f: Face) -> bool")
        .def("locate", "(p: Point_2) -> Face")
        .def_if(delaunay, "nearest_vertex", "(p: Point_2) -> Vertex")
        .def_if(regular, "nearest_power_vertex", "(p: Point_2) -> Vertex")
        .def_if(constrained, "insert_constraint", "(p: Point_2, q: Point_2) -> None");
    s.classes.push_back(tri.build());
    return s;
}

ModuleSurface as2_surface(const BuildConfig& c) {
    ModuleSurface s = start_surface(ModuleId::AS2, {"Tri2", "Ker"});
    const std::string src = module_source(ModuleId::AS2);
    ComposedTriangulation composed = compose_tri2(c.tri2, c.as2);
    const std::string P = c.tri2.name == Tri2Name::regular ? "Weighted_point_2" : "Point_2";
    ClassBuilder as("Alpha_shape_2", src);
    as.type(*composed.alpha_shape)
        .def("__init__", "()")
        .def("__init__", "(points: list, alpha: float)", {WrapperKind::list_input}, {P})
        .def("set_alpha", "(alpha: float) -> None")
        .def("get_alpha", "() -> float")
        .def("number_of_alphas", "() -> int")
        .def("find_optimal_alpha", "(nb_components: int) -> float")
        .def("number_of_solid_components", "() -> int")
        .def("classify", "(p: Point_2) -> int")
        .def("alpha_shape_vertices", "() -> Iterator[Triangulation_2.Vertex]", {WrapperKind::iterator})
        .def("alpha_shape_edges", "() -> list", {WrapperKind::list_output});
    s.classes.push_back(as.build());
    return s;
}

ModuleSurface tri3_surface(const BuildConfig& c) {
    ModuleSurface s = start_surface(ModuleId::TRI3, {"Ker"});
    const std::string src = module_source(ModuleId::TRI3);
    const auto& sel = c.tri3;
    ComposedTriangulation composed = compose_tri3(sel, active_as3(c));
    s.notes.push_back("Traits = " + composed.traits.render());
    s.notes.push_back("Tds = " + composed.tds.render());

    const bool regular = sel.name == Tri3Name::regular || sel.name == Tri3Name::periodicRegular;
    const bool periodic = sel.name == Tri3Name::periodicPlain || sel.name == Tri3Name::periodicRegular ||
                          sel.name == Tri3Name::periodicDelaunay;
    const bool delaunay = sel.name == Tri3Name::delaunay || sel.name == Tri3Name::periodicDelaunay;
    const std::string P = regular ? "Weighted_point_3" : "Point_3";

    ClassBuilder vertex("Vertex", src);
    vertex.collapses({"Vertex_handle", "Finite_vertices_iterator", "All_vertices_iterator"})
        .def("point", "() -> " + P)
        .def("cell", "() -> Cell")
        .data_accessors(sel.vertex_with_info, "info", "set_info")
        .iterable();
    ClassBuilder cell("Cell", src);
    cell.collapses({"Cell_handle", "Finite_cells_iterator", "All_cells_iterator", "Cell_circulator"})
        .def("vertex", "(i: int) -> Vertex")
        .def("neighbor", "(i: int) -> Cell")
        .def("index", "(v: Vertex) -> int")
        .data_accessors(sel.cell_with_info, "info", "set_info")
        .iterable();

    ClassBuilder tri("Triangulation_3", src);
    tri.type(composed.triangulation).nest(vertex.build()).nest(cell.build()).def("__init__", "()");
    if (periodic) tri.def("__init__", "(domain: Iso_cuboid_3)");
    tri.def("insert", "(p: " + P + ") -> Vertex")
        .def("insert", "(points: list) -> int", {WrapperKind::list_input}, {P})
        .def("number_of_vertices", "() -> int")
        .def("number_of_cells", "() -> int")
        .def("number_of_finite_cells", "() -> int")
        .def("dimension", "() -> int")
        .def("is_valid", "() -> bool")
        .def("finite_vertices", "() -> Iterator[Vertex]", {WrapperKind::iterator})
        .def("finite_cells", "() -> Iterator[Cell]", {WrapperKind::iterator})
        .def("all_cells", "() -> Iterator[Cell]", {WrapperKind::iterator})
        .def("locate", "(p: Point_3) -> Cell")
        .def("incident_cells", "(v: Vertex) -> list", {WrapperKind::list_output})
        .def("incident_cells_around_edge", "(c: Cell, i: int, j: int) -> Iterator[Cell]", {WrapperKind::circulator})
        .def_if(delaunay, "nearest_vertex", "(p: Point_3) -> Vertex");
    s.classes.push_back(tri.build());
    return s;
}

ModuleSurface as3_surface(const BuildConfig& c) {
    ModuleSurface s = start_surface(ModuleId::AS3, {"Tri3", "Ker"});
    const std::string src = module_source(ModuleId::AS3);
    ComposedTriangulation composed = compose_tri3(c.tri3, c.as3);
    const bool regular = c.tri3.name == Tri3Name::regular || c.tri3.name == Tri3Name::periodicRegular;
    const std::string P = regular ? "Weighted_point_3" : "Point_3";
    const bool fixed = c.as3.name == As3Name::fixed;
    ClassBuilder as(fixed ? "Fixed_alpha_shape_3" : "Alpha_shape_3", src);
    as.type(*composed.alpha_shape)
        .def("__init__", "(points: list, alpha: float)", {WrapperKind::list_input}, {P})
        .def("get_alpha", "() -> float")
        .def("classify", "(p: Point_3) -> int")
        .def("alpha_shape_vertices", "() -> list", {WrapperKind::list_output});
    if (!fixed) {
        as.def("set_alpha", "(alpha: float) -> None")
            .def("number_of_alphas", "() -> int")
            .def("find_optimal_alpha", "(nb_components: int) -> float")
            .def("number_of_solid_components", "() -> int");
    }
    s.classes.push_back(as.build());
    return s;
}

void apply_number_alias(const BuildConfig& c, ModuleSurface& s) {
    if (s.module == ModuleId::KER || s.module == ModuleId::KERD || s.module == ModuleId::SS) return;
    if (kernel_uses_double(c.kernel.name)) s.aliases["FT"] = "float";
}

void collect_classes(const SurfaceClass& cls, const std::string& scope, std::set<std::string, std::less<>>& out) {
    const std::string path = scope + "." + cls.name;
    out.insert(path);
    for (const auto& n : cls.nested) collect_classes(n, path, out);
}

bool is_identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

const std::map<std::string, std::string, std::less<>>& builtin_types() {
    static const std::map<std::string, std::string, std::less<>> builtins{
        {"int", "int"},
        {"float", "float"},
        {"bool", "bool"},
        {"Boolean", "bool"},
        {"str", "str"},
        {"None", "None"},
        {"object", "object"},
        {std::string(generic_object_type), "object"},
        {"list", "list"},
        {"tuple", "tuple"},
        {"dict", "dict"},
        {"Iterator", "Iterator"},
    };
    return builtins;
}

}  // namespace

std::vector<ModuleSurface> build_surfaces(const BuildConfig& config, const ConceptGraph& graph,
                                          const BindingTables& tables) {
    std::vector<ModuleSurface> out;
    for (ModuleId id : enabled_modules(config)) {
        ModuleSurface s;
        switch (id) {
        case ModuleId::KER: s = kernel_surface(config, graph, tables); break;
        case ModuleId::KERD: s = kernel_d_surface(config); break;
        case ModuleId::AOS2: s = aos2_surface(config, graph); break;
        case ModuleId::AS2: s = as2_surface(config); break;
        case ModuleId::AS3: s = as3_surface(config); break;
        case ModuleId::BSO2: s = bso2_surface(config); break;
        case ModuleId::BV: s = bv_surface(); break;
        case ModuleId::CH2: s = ch2_surface(); break;
        case ModuleId::CH3: s = ch3_surface(); break;
        case ModuleId::POL2: s = pol2_surface(); break;
        case ModuleId::PP: s = pp_surface(); break;
        case ModuleId::MS2: s = ms2_surface(tables); break;
        case ModuleId::SS: s = ss_surface(config); break;
        case ModuleId::TRI2: s = tri2_surface(config); break;
        case ModuleId::TRI3: s = tri3_surface(config); break;
        }
        apply_number_alias(config, s);
        out.push_back(std::move(s));
    }
    return out;
}

TypeResolver::TypeResolver(std::span<const ModuleSurface> surfaces) {
    for (const auto& s : surfaces) {
        for (const auto& b : s.models) {
            std::string owner = b.flatten ? s.ns : s.ns + "." + b.class_name;
            if (!b.flatten) classes_.insert(owner);
            for (const auto& t : b.interface.types) classes_.insert(owner + "." + t.name);
        }
        for (const auto& c : s.classes) collect_classes(c, s.ns, classes_);
    }
}

bool TypeResolver::has_class(std::string_view qualified_path) const { return classes_.count(qualified_path) != 0; }

ResolvedType TypeResolver::resolve(std::string_view type_text, const ModuleSurface& module,
                                   std::string_view context_path) const {
    ResolvedType out;
    std::size_t i = 0;
    while (i < type_text.size()) {
        if (!is_identifier_char(type_text[i])) {
            out.qualified += type_text[i];
            out.display += type_text[i];
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < type_text.size() && is_identifier_char(type_text[i])) ++i;
        const std::string id(type_text.substr(start, i - start));

        if (auto a = module.aliases.find(id); a != module.aliases.end()) {
            out.qualified += a->second;
            out.display += a->second;
            continue;
        }
        std::optional<std::string> found;
        std::string scope(context_path);
        while (!found) {
            if (classes_.count(scope + "." + id) != 0) found = scope + "." + id;
            if (scope == module.ns || scope.find('.') == std::string::npos) break;
            scope = scope.substr(0, scope.rfind('.'));
        }
        std::string found_ns = module.ns;
        for (std::size_t k = 0; !found && k < module.lookup.size(); ++k) {
            if (classes_.count(module.lookup[k] + "." + id) != 0) {
                found = module.lookup[k] + "." + id;
                found_ns = module.lookup[k];
            }
        }
        if (found) {
            out.qualified += *found;
            out.display += id;
            if (found_ns != module.ns) out.imports.emplace(found_ns, id.substr(0, id.find('.')));
            continue;
        }
        const auto& builtins = builtin_types();
        if (auto b = builtins.find(id); b != builtins.end()) {
            out.qualified += b->second;
            out.display += b->second;
            continue;
        }
        throw ResolutionError("unresolved type reference " + id + " in " + std::string(context_path), id);
    }
    return out;
}

}  // namespace bindweaver
