#include "speechmark/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "speechmark/error.hpp"

namespace speechmark {
namespace {

void check_utf8(std::string_view utf8) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<std::int32_t>(utf8.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) throw DataError("invalid UTF-8 in text");
  }
}

icu::UnicodeString to_unicode(std::string_view utf8) {
  check_utf8(utf8);
  return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<std::int32_t>(utf8.size())));
}

std::string to_utf8(const icu::UnicodeString& text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

icu::UnicodeString normalize_nfc(const icu::UnicodeString& text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  icu::UnicodeString out = normalizer->normalize(text, status);
  if (U_FAILURE(status)) throw DataError("NFC normalization failed");
  return out;
}

}  // namespace

std::string nfc(std::string_view utf8) { return to_utf8(normalize_nfc(to_unicode(utf8))); }

std::string standardize(std::string_view utf8) {
  icu::UnicodeString text = normalize_nfc(to_unicode(utf8));
  text.toLower(icu::Locale::getRoot());

  icu::UnicodeString kept;
  bool pending_space = false;
  for (std::int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_ispunct(c)) continue;
    if (u_isUWhiteSpace(c)) {
      pending_space = !kept.isEmpty();
      continue;
    }
    if (pending_space) {
      kept.append(static_cast<UChar>(u' '));
      pending_space = false;
    }
    kept.append(c);
  }
  return to_utf8(normalize_nfc(kept));
}

std::u32string to_code_points(std::string_view utf8) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<std::int32_t>(utf8.size());
  std::u32string out;
  out.reserve(utf8.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) throw DataError("invalid UTF-8 in text");
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string from_code_points(std::u32string_view code_points) {
  icu::UnicodeString text = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(code_points.data()), static_cast<std::int32_t>(code_points.size()));
  return to_utf8(text);
}

std::size_t code_point_count(std::string_view utf8) { return to_code_points(utf8).size(); }

bool contains_whitespace(std::string_view utf8) {
  for (const char32_t c : to_code_points(utf8)) {
    if (u_isUWhiteSpace(static_cast<UChar32>(c))) return true;
  }
  return false;
}

}  // namespace speechmark
