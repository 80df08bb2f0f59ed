#pragma once

#include "hcont/polynomial.hpp"

#include <filesystem>
#include <string_view>

namespace hcont {

/// Parses the system text format:
///
///     n [m]
///     [vars: v1, v2, ...;]
///     p1;
///     ...
///     pn;
///
/// n is the number of polynomials and m the number of variables (defaults to
/// n). Without a `vars:` line, variables are numbered in order of first
/// appearance. Literals (integers, decimals, p/q, the unit `i`) are kept
/// exactly. Division is allowed by monomials only.
PolySystem parseSystem(std::string_view text);

PolySystem parseSystemFile(const std::filesystem::path& path);

/// Parses a single polynomial over the given variables.
LaurentPolynomial parsePolynomial(std::string_view text, const std::vector<std::string>& variables);

} // namespace hcont
