#ifndef JDDKB_UTF8_H_
#define JDDKB_UTF8_H_

#include <string>
#include <string_view>

namespace jddkb::utf8 {

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
std::string encode(char32_t c);

// Strips ASCII and ideographic whitespace from both ends.
std::string_view trim(std::string_view text);

}  // namespace jddkb::utf8

#endif  // JDDKB_UTF8_H_
