#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bindweaver {

// Name used in type expressions for an arbitrary Python object.
inline constexpr std::string_view generic_object_type = "PyObject_";

// A C++ type expression: either a plain name or a template applied to
// arguments. Rendering is canonical: "Tmpl<A, B>" with no space before
// closing brackets.
class TypeExpr {
public:
    TypeExpr() = default;

    static TypeExpr named(std::string name);
    static TypeExpr apply(std::string tmpl, std::vector<TypeExpr> args);

    bool is_apply() const noexcept { return is_apply_; }
    const std::string& head() const noexcept { return head_; }
    const std::vector<TypeExpr>& args() const noexcept { return args_; }

    std::string render() const;

    // Parses the canonical rendering back. Throws ParseError.
    static TypeExpr parse(std::string_view text);

    friend bool operator==(const TypeExpr&, const TypeExpr&) = default;

private:
    std::string head_;
    std::vector<TypeExpr> args_;
    bool is_apply_ = false;
};

std::ostream& operator<<(std::ostream& os, const TypeExpr& t);

}  // namespace bindweaver
