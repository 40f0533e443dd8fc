#pragma once

#include <span>
#include <string>
#include <vector>

namespace bindweaver {

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    std::string subject;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

Diagnostic make_error(std::string code, std::string message, std::string subject = {});

bool has_errors(std::span<const Diagnostic> diagnostics);

// One line: "error[code] subject: message".
std::string format_diagnostic(const Diagnostic& d);

}  // namespace bindweaver
