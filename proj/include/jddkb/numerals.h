#ifndef JDDKB_NUMERALS_H_
#define JDDKB_NUMERALS_H_

// Numerals as written in judgments: Arabic (ASCII or fullwidth digits, ','
// grouping, decimals, optional 百/千/万/亿 multiplier) and Chinese
// (零〇一二两三四五六七八九 with 十百千万亿, including the colloquial
// 一万五 = 15000 and the digit-by-digit 二〇一七).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace jddkb {

bool is_chinese_numeral_char(char32_t c);
bool is_arabic_digit(char32_t c);  // 0-9 or ０-９

// Value of a complete Chinese numeral; nullopt when malformed ("十十",
// "百千", "万").
std::optional<std::int64_t> parse_chinese_numeral(std::u32string_view s);

struct NumeralSpan {
  std::size_t begin = 0;
  std::size_t end = 0;            // one past the last code point
  std::optional<double> value;    // empty: numeral characters but malformed
};

// Longest numeral starting exactly at `pos`; nullopt when s[pos] cannot
// start one.
std::optional<NumeralSpan> scan_numeral(std::u32string_view s, std::size_t pos);

struct DurationSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::int64_t months = 0;
};

// "<n>年[零][<m>个月]" or "<n>个月" / "<n>月" at `pos` (leading spaces
// skipped). One year is 12 months.
std::optional<DurationSpan> scan_duration(std::u32string_view s, std::size_t pos);

struct AmountSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<std::int64_t> yuan;  // empty: malformed numeral before 元
};

// "[人民币]<numeral>[余|多]元" at `pos`.
std::optional<AmountSpan> scan_money(std::u32string_view s, std::size_t pos);

// Standard Chinese rendering (一万零五, 十二) used to write synthetic text.
std::string render_chinese_numeral(std::int64_t n);

}  // namespace jddkb

#endif  // JDDKB_NUMERALS_H_
