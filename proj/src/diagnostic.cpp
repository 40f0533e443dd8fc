#include "bindweaver/diagnostic.hpp"

#include <algorithm>
#include <utility>

namespace bindweaver {

Diagnostic make_error(std::string code, std::string message, std::string subject) {
    return Diagnostic{Severity::error, std::move(code), std::move(message), std::move(subject)};
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.severity == Severity::error ? "error" : "warning";
    out += "[" + d.code + "] ";
    if (!d.subject.empty()) out += d.subject + ": ";
    out += d.message;
    return out;
}

}  // namespace bindweaver
