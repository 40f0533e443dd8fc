#include "bindweaver/type_composer.hpp"

#include <utility>

namespace bindweaver {

namespace {

TypeExpr named(std::string n) { return TypeExpr::named(std::move(n)); }

template <typename... Args>
TypeExpr apply(std::string tmpl, Args... args) {
    return TypeExpr::apply(std::move(tmpl), std::vector<TypeExpr>{std::move(args)...});
}

const TypeExpr kernel = TypeExpr::named("Kernel");
const TypeExpr traits = TypeExpr::named("Traits");
const TypeExpr generic_object = TypeExpr::named(std::string(generic_object_type));

TypeExpr lazy_gmpq() { return apply("Lazy_exact_nt", named("Gmpq")); }

}  // namespace

TypeExpr exact_comparison_tag(bool exact) { return named(exact ? "Tag_true" : "Tag_false"); }

TypeExpr compose_kernel(const KernelSelection& sel) {
    switch (sel.name) {
    case KernelName::epic: return named("Exact_predicates_inexact_constructions_kernel");
    case KernelName::epec: return named("Exact_predicates_exact_constructions_kernel");
    case KernelName::epecws: return named("Exact_predicates_exact_constructions_kernel_with_sqrt");
    case KernelName::filteredSimpleCartesianDouble:
        return apply("Filtered_kernel", apply("Simple_cartesian", named("double")));
    case KernelName::filteredSimpleCartesianLazyGmpq:
        return apply("Filtered_kernel", apply("Simple_cartesian", lazy_gmpq()));
    }
    return {};
}

TypeExpr compose_kernel_d(const KernelDSelection& sel) {
    TypeExpr tag = sel.dimension_tag == DimensionTag::static_tag
                       ? apply("Dimension_tag", named(std::to_string(sel.dimension)))
                       : named("Dynamic_dimension_tag");
    switch (sel.name) {
    case KernelDName::epicd: return apply("Epick_d", tag);
    case KernelDName::epecd: return apply("Epeck_d", tag);
    case KernelDName::cartesiandDouble: return apply("Cartesian_d", named("double"));
    case KernelDName::cartesiandLazyGmpq: return apply("Cartesian_d", lazy_gmpq());
    }
    return {};
}

TypeExpr compose_basic_traits(GeometryTraitsName name) {
    switch (name) {
    case GeometryTraitsName::nonCachingSegment: return apply("Arr_non_caching_segment_basic_traits_2", kernel);
    case GeometryTraitsName::segment: return apply("Arr_segment_traits_2", kernel);
    case GeometryTraitsName::linear: return apply("Arr_linear_traits_2", kernel);
    case GeometryTraitsName::conic:
        return apply("Arr_conic_traits_2", named("RatKernel"), named("AlgKernel"), named("NtTraits"));
    case GeometryTraitsName::circleSegment: return apply("Arr_circle_segment_traits_2", kernel);
    case GeometryTraitsName::algebraic: return apply("Arr_algebraic_segment_traits_2", named("Coefficient"));
    }
    return {};
}

ComposedArrangement compose_aos2(const Aos2Selection& sel, bool bso2_enabled) {
    TypeExpr basic = compose_basic_traits(sel.geometry_traits);
    TypeExpr traits_type = basic;
    if (bso2_enabled) {
        if (sel.geometry_traits == GeometryTraitsName::segment)
            traits_type = apply("Gps_segment_traits_2", kernel, named("Point_2_container"));
        else if (sel.geometry_traits == GeometryTraitsName::circleSegment)
            traits_type = apply("Gps_circle_segment_traits_2", kernel);
        else
            traits_type = apply("Gps_traits_2", basic);
    }

    TypeExpr vertex = apply("Arr_vertex_base", named("Traits::Point_2"));
    TypeExpr halfedge = bso2_enabled ? apply("Gps_halfedge_base", named("Traits::X_monotone_curve_2"))
                                     : apply("Arr_halfedge_base", named("Traits::X_monotone_curve_2"));
    TypeExpr face = named(bso2_enabled ? "Gps_face_base" : "Arr_face_base");
    if (sel.extend_vertex) vertex = apply("Arr_extended_vertex", vertex, generic_object);
    if (sel.extend_halfedge) halfedge = apply("Arr_extended_halfedge", halfedge, generic_object);
    if (sel.extend_face) face = apply("Arr_extended_face", face, generic_object);

    TypeExpr dcel = apply("Arr_dcel_base", vertex, halfedge, face);
    TypeExpr arrangement = apply("Arrangement_2", traits_type, dcel);
    return {traits_type, vertex, halfedge, face, dcel, arrangement};
}

namespace {

bool is_periodic(Tri2Name n) { return n == Tri2Name::periodicPlain || n == Tri2Name::periodicDelaunay; }
bool is_periodic(Tri3Name n) {
    return n == Tri3Name::periodicPlain || n == Tri3Name::periodicRegular || n == Tri3Name::periodicDelaunay;
}
bool is_regular(Tri3Name n) { return n == Tri3Name::regular || n == Tri3Name::periodicRegular; }

}  // namespace

ComposedTriangulation compose_tri2(const Tri2Selection& sel, const std::optional<As2Selection>& as2) {
    ComposedTriangulation out;
    switch (sel.name) {
    case Tri2Name::periodicPlain: out.traits = apply("Periodic_2_triangulation_traits_2", kernel); break;
    case Tri2Name::periodicDelaunay: out.traits = apply("Periodic_2_Delaunay_triangulation_traits_2", kernel); break;
    default: out.traits = kernel; break;
    }

    TypeExpr vb;
    TypeExpr fb;
    if (is_periodic(sel.name)) {
        vb = apply("Periodic_2_triangulation_vertex_base_2", traits);
        fb = apply("Periodic_2_triangulation_face_base_2", traits);
    } else if (sel.name == Tri2Name::regular) {
        vb = apply("Regular_triangulation_vertex_base_2", traits);
        fb = apply("Regular_triangulation_face_base_2", traits);
    } else if (sel.name == Tri2Name::constrained || sel.name == Tri2Name::constrainedDelaunay) {
        vb = apply("Triangulation_vertex_base_2", traits);
        fb = apply("Constrained_triangulation_face_base_2", traits);
    } else {
        vb = apply("Triangulation_vertex_base_2", traits);
        fb = apply("Triangulation_face_base_2", traits);
    }
    if (sel.vertex_with_info) vb = apply("Triangulation_vertex_base_with_info_2", generic_object, traits, vb);
    if (sel.face_with_info) fb = apply("Triangulation_face_base_with_info_2", generic_object, traits, fb);
    if (as2) {
        vb = apply("Alpha_shape_vertex_base_2", traits, vb, exact_comparison_tag(as2->exact_comparison));
        fb = apply("Alpha_shape_face_base_2", traits, fb, exact_comparison_tag(as2->exact_comparison));
    }
    if (sel.hierarchy) vb = apply("Triangulation_hierarchy_vertex_base_2", vb);
    out.vertex = vb;
    out.face = fb;
    out.tds = apply("Triangulation_data_structure_2", vb, fb);

    const TypeExpr itag = named("No_constraint_intersection_requiring_constructions_tag");
    switch (sel.name) {
    case Tri2Name::plain: out.triangulation = apply("Triangulation_2", out.traits, out.tds); break;
    case Tri2Name::regular: out.triangulation = apply("Regular_triangulation_2", out.traits, out.tds); break;
    case Tri2Name::delaunay: out.triangulation = apply("Delaunay_triangulation_2", out.traits, out.tds); break;
    case Tri2Name::constrained:
        out.triangulation = apply("Constrained_triangulation_2", out.traits, out.tds, itag);
        break;
    case Tri2Name::constrainedDelaunay:
        out.triangulation = apply("Constrained_Delaunay_triangulation_2", out.traits, out.tds, itag);
        break;
    case Tri2Name::periodicPlain:
        out.triangulation = apply("Periodic_2_triangulation_2", out.traits, out.tds);
        break;
    case Tri2Name::periodicDelaunay:
        out.triangulation = apply("Periodic_2_Delaunay_triangulation_2", out.traits, out.tds);
        break;
    }
    if (sel.hierarchy)
        out.triangulation = apply(is_periodic(sel.name) ? "Periodic_2_triangulation_hierarchy_2"
                                                        : "Triangulation_hierarchy_2",
                                  out.triangulation);
    if (as2) out.alpha_shape = apply("Alpha_shape_2", out.triangulation, exact_comparison_tag(as2->exact_comparison));
    return out;
}

ComposedTriangulation compose_tri3(const Tri3Selection& sel, const std::optional<As3Selection>& as3) {
    ComposedTriangulation out;
    switch (sel.name) {
    case Tri3Name::periodicPlain: out.traits = apply("Periodic_3_triangulation_traits_3", kernel); break;
    case Tri3Name::periodicRegular: out.traits = apply("Periodic_3_regular_triangulation_traits_3", kernel); break;
    case Tri3Name::periodicDelaunay:
        out.traits = apply("Periodic_3_Delaunay_triangulation_traits_3", kernel);
        break;
    default: out.traits = kernel; break;
    }

    const bool periodic = is_periodic(sel.name);
    TypeExpr vb = periodic ? apply("Periodic_3_triangulation_ds_vertex_base_3") : apply("Triangulation_ds_vertex_base_3");
    TypeExpr cb = periodic ? apply("Periodic_3_triangulation_ds_cell_base_3") : apply("Triangulation_ds_cell_base_3");
    if (is_regular(sel.name)) {
        vb = apply("Regular_triangulation_vertex_base_3", traits, vb);
        cb = apply("Regular_triangulation_cell_base_3", traits, cb);
    } else {
        vb = apply("Triangulation_vertex_base_3", traits, vb);
        cb = apply("Triangulation_cell_base_3", traits, cb);
    }
    if (sel.vertex_with_info) vb = apply("Triangulation_vertex_base_with_info_3", generic_object, traits, vb);
    if (sel.cell_with_info) cb = apply("Triangulation_cell_base_with_info_3", generic_object, traits, cb);
    if (as3) {
        if (as3->name == As3Name::fixed) {
            vb = apply("Fixed_alpha_shape_vertex_base_3", traits, vb);
            cb = apply("Fixed_alpha_shape_cell_base_3", traits, cb);
        } else {
            vb = apply("Alpha_shape_vertex_base_3", traits, vb, exact_comparison_tag(as3->exact_comparison));
            cb = apply("Alpha_shape_cell_base_3", traits, cb, exact_comparison_tag(as3->exact_comparison));
        }
    }
    if (sel.hierarchy) vb = apply("Triangulation_hierarchy_vertex_base_3", vb);
    out.vertex = vb;
    out.face = cb;
    out.tds = apply("Triangulation_data_structure_3", vb, cb,
                    named(sel.concurrency == ConcurrencyName::parallel ? "Parallel_tag" : "Sequential_tag"));

    switch (sel.name) {
    case Tri3Name::plain: out.triangulation = apply("Triangulation_3", out.traits, out.tds); break;
    case Tri3Name::regular: out.triangulation = apply("Regular_triangulation_3", out.traits, out.tds); break;
    case Tri3Name::delaunay:
        out.triangulation =
            apply("Delaunay_triangulation_3", out.traits, out.tds,
                  named(sel.location_policy == LocationPolicyName::fast ? "Fast_location" : "Compact_location"));
        break;
    case Tri3Name::periodicPlain:
        out.triangulation = apply("Periodic_3_triangulation_3", out.traits, out.tds);
        break;
    case Tri3Name::periodicRegular:
        out.triangulation = apply("Periodic_3_regular_triangulation_3", out.traits, out.tds);
        break;
    case Tri3Name::periodicDelaunay:
        out.triangulation = apply("Periodic_3_Delaunay_triangulation_3", out.traits, out.tds);
        break;
    }
    if (sel.hierarchy)
        out.triangulation = apply(periodic ? "Periodic_3_triangulation_hierarchy_3" : "Triangulation_hierarchy_3",
                                  out.triangulation);
    if (as3) {
        out.alpha_shape = as3->name == As3Name::fixed
                              ? apply("Fixed_alpha_shape_3", out.triangulation)
                              : apply("Alpha_shape_3", out.triangulation, exact_comparison_tag(as3->exact_comparison));
    }
    return out;
}

}  // namespace bindweaver
