#pragma once

#include <string>

namespace qdilemma {

/// Shortest decimal that round-trips to the same double, capped at 12
/// significant digits. Deterministic across runs; used for all CSV and
/// report output.
std::string format_number(double v);

/// Parses a radian value: a plain number or one of the literals pi, pi/2,
/// pi/4, optionally negated. Throws InvalidParameter on anything else.
double parse_angle(const std::string& text);

}  // namespace qdilemma
