#pragma once

#include <string>

namespace vgprod {

/// Locale-independent decimal with 17 significant digits (round-trips any
/// binary64). Infinities are "inf" / "-inf", NaN is "nan".
std::string format_number(double v);

/// Shortest decimal that round-trips, for labels ("0.5", "-0.9").
std::string format_short(double v);

/// Strict locale-independent parse of a whole string; "inf"/"-inf" accepted.
/// Returns false on trailing garbage or an empty string.
bool parse_number(const std::string& text, double& out);

}  // namespace vgprod
