#include "bindweaver/type_expr.hpp"

#include "bindweaver/error.hpp"

#include <cctype>
#include <utility>

namespace bindweaver {

TypeExpr TypeExpr::named(std::string name) {
    TypeExpr t;
    t.head_ = std::move(name);
    return t;
}

TypeExpr TypeExpr::apply(std::string tmpl, std::vector<TypeExpr> args) {
    TypeExpr t;
    t.head_ = std::move(tmpl);
    t.args_ = std::move(args);
    t.is_apply_ = true;
    return t;
}

namespace {

void render_into(const TypeExpr& t, std::string& out) {
    out += t.head();
    if (!t.is_apply()) return;
    out += '<';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i != 0) out += ", ";
        render_into(t.args()[i], out);
    }
    out += '>';
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    TypeExpr expr() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '<' && text_[pos_] != '>' && text_[pos_] != ',') ++pos_;
        std::string head(text_.substr(start, pos_ - start));
        while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) head.pop_back();
        if (head.empty()) fail("expected a type name");
        if (pos_ < text_.size() && text_[pos_] == '<') {
            ++pos_;
            std::vector<TypeExpr> args;
            skip_space();
            if (peek() != '>') {
                args.push_back(expr());
                skip_space();
                while (peek() == ',') {
                    ++pos_;
                    args.push_back(expr());
                    skip_space();
                }
            }
            if (peek() != '>') fail("expected '>'");
            ++pos_;
            return TypeExpr::apply(std::move(head), std::move(args));
        }
        return TypeExpr::named(std::move(head));
    }

    void finish() {
        skip_space();
        if (pos_ != text_.size()) fail("trailing characters");
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("type expression: " + what, 1, pos_ + 1);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string TypeExpr::render() const {
    std::string out;
    render_into(*this, out);
    return out;
}

TypeExpr TypeExpr::parse(std::string_view text) {
    Reader r(text);
    TypeExpr t = r.expr();
    r.finish();
    return t;
}

std::ostream& operator<<(std::ostream& os, const TypeExpr& t) { return os << t.render(); }

}  // namespace bindweaver
