#pragma once

#include "bindweaver/config.hpp"
#include "bindweaver/type_expr.hpp"

#include <optional>

namespace bindweaver {

TypeExpr compose_kernel(const KernelSelection& sel);
TypeExpr compose_kernel_d(const KernelDSelection& sel);

// The basic geometry traits, before any extension.
TypeExpr compose_basic_traits(GeometryTraitsName name);

struct ComposedArrangement {
    TypeExpr traits;
    TypeExpr vertex;
    TypeExpr halfedge;
    TypeExpr face;
    TypeExpr dcel;
    TypeExpr arrangement;
    friend bool operator==(const ComposedArrangement&, const ComposedArrangement&) = default;
};

ComposedArrangement compose_aos2(const Aos2Selection& sel, bool bso2_enabled);

struct ComposedTriangulation {
    TypeExpr traits;
    TypeExpr vertex;
    TypeExpr face;  // the cell base in three dimensions
    TypeExpr tds;
    TypeExpr triangulation;
    std::optional<TypeExpr> alpha_shape;
    friend bool operator==(const ComposedTriangulation&, const ComposedTriangulation&) = default;
};

// `as2` is set when the two-dimensional alpha shape module is enabled.
ComposedTriangulation compose_tri2(const Tri2Selection& sel, const std::optional<As2Selection>& as2);
ComposedTriangulation compose_tri3(const Tri3Selection& sel, const std::optional<As3Selection>& as3);

// Alpha-shape exact comparison tag.
TypeExpr exact_comparison_tag(bool exact);

}  // namespace bindweaver
