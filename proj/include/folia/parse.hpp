#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "folia/poly.hpp"

namespace folia {

enum class SystemKind { Field, Form };

/// Contents of a field file: a vector field or a 1-form with polynomial
/// components, one per declared variable.
struct ParsedSystem {
    VarList vars;
    SystemKind kind = SystemKind::Field;
    std::vector<Poly> components;
};

/// Parse a whole field file. Errors carry line and column (1-based).
ParsedSystem parse_system(std::string_view text);

/// Parse a single expression over the given variables.
Poly parse_poly(std::string_view expr, const VarList& vars);

/// Canonical file text; parse_system(render_system(s)) == s.
std::string render_system(const ParsedSystem& s);

} // namespace folia
