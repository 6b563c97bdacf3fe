#pragma once

#include <string>

namespace qshift {

/// Shortest decimal text that parses back to exactly `value`
/// ("nan", "inf", "-inf" for non-finite values).
std::string format_real(double value);

/// Parses a full decimal or scientific literal; throws ParseError otherwise.
double parse_real(std::string_view text);

} // namespace qshift
