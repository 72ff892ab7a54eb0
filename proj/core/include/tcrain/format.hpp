#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tcrain {

// Locale-independent number formatting shared by every serializer.

inline constexpr int kDefaultPrecision = 6;

/// General-format rendering with `significant` digits, e.g. 3.14159 or 1e-05.
std::string format_significant(double value, int significant = kDefaultPrecision);

/// Shortest text that parses back to exactly `value`.
std::string format_shortest(double value);

/// Rounds through the decimal representation used by format_significant.
double round_significant(double value, int significant = kDefaultPrecision);

/// Parses the whole token as a double; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view token);

std::optional<long long> parse_integer(std::string_view token);

std::string_view trim(std::string_view text);

std::string to_upper(std::string_view text);

}  // namespace tcrain
