#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace probekit {

/// ASCII lowercase; bytes outside A-Z (including UTF-8 continuation bytes) pass through.
std::string fold_case(std::string_view word);

/// Splits on runs of ASCII whitespace.
std::vector<std::string> split_whitespace(std::string_view line);

/// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> split_on(std::string_view line, char delim);

std::string join(std::span<const std::string> tokens, std::string_view sep = " ");

/// True when every byte is an ASCII letter or part of a multi-byte UTF-8 sequence.
bool is_alphabetic(std::string_view token);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

/// Like format_real but always carries at least one fractional digit.
std::string format_score(double value);

/// Strict parse; throws InputError on trailing garbage.
double parse_real(std::string_view text, std::size_t line = 0);
long long parse_integer(std::string_view text, std::size_t line = 0);

}  // namespace probekit
