#pragma once

#include <string>
#include <string_view>

namespace speechmark {

/// NFC-normalizes UTF-8 text. Throws DataError on invalid UTF-8.
std::string nfc(std::string_view utf8);

/// Lowercases (Unicode root locale), removes every code point in a Unicode
/// punctuation category and collapses runs of whitespace to a single ASCII
/// space with no leading or trailing space. Idempotent.
std::string standardize(std::string_view utf8);

/// Decodes UTF-8 into code points. Throws DataError on invalid UTF-8.
std::u32string to_code_points(std::string_view utf8);

std::string from_code_points(std::u32string_view code_points);

/// Number of code points in a UTF-8 string.
std::size_t code_point_count(std::string_view utf8);

bool contains_whitespace(std::string_view utf8);

}  // namespace speechmark
