#include "tcrain/format.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace tcrain {

std::string format_significant(double value, int significant) {
  if (significant < 1 || significant > 17) {
    throw std::invalid_argument("significant digits must be in 1..17");
  }
  std::array<char, 64> buffer{};
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::general, significant);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buffer.data(), result.ptr);
}

std::string format_shortest(double value) {
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buffer.data(), result.ptr);
}

double round_significant(double value, int significant) {
  if (!std::isfinite(value)) {
    return value;
  }
  return *parse_double(format_significant(value, significant));
}

std::optional<double> parse_double(std::string_view token) {
  if (token.empty()) {
    return std::nullopt;
  }
  // from_chars rejects a leading '+', which some writers emit.
  if (token.front() == '+') {
    token.remove_prefix(1);
  }
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto result = std::from_chars(token.data(), end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    return std::nullopt;
  }
  return value;
}

std::optional<long long> parse_integer(std::string_view token) {
  if (token.empty()) {
    return std::nullopt;
  }
  if (token.front() == '+') {
    token.remove_prefix(1);
  }
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto result = std::from_chars(token.data(), end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    return std::nullopt;
  }
  return value;
}

std::string_view trim(std::string_view text) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!text.empty() && is_space(text.front())) {
    text.remove_prefix(1);
  }
  while (!text.empty() && is_space(text.back())) {
    text.remove_suffix(1);
  }
  return text;
}

std::string to_upper(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace tcrain
