#include "jddkb/numerals.h"

#include <cmath>
#include <string>

#include "jddkb/utf8.h"

namespace jddkb {

namespace {

int digit_value(char32_t c) {
  switch (c) {
    case U'零': case U'〇': return 0;
    case U'一': return 1;
    case U'二': case U'两': return 2;
    case U'三': return 3;
    case U'四': return 4;
    case U'五': return 5;
    case U'六': return 6;
    case U'七': return 7;
    case U'八': return 8;
    case U'九': return 9;
    default: return -1;
  }
}

int small_unit(char32_t c) {
  switch (c) {
    case U'十': return 10;
    case U'百': return 100;
    case U'千': return 1000;
    default: return 0;
  }
}

int arabic_value(char32_t c) {
  if (c >= U'0' && c <= U'9') return static_cast<int>(c - U'0');
  if (c >= U'０' && c <= U'９') return static_cast<int>(c - U'０');
  return -1;
}

// A group below 10^4. `implied` scales a lone trailing digit that follows
// a larger unit without 零 (一万五 -> 五 * 1000).
std::optional<std::int64_t> parse_section(std::u32string_view s,
                                          std::int64_t implied) {
  if (s.empty()) return 0;
  bool has_unit = false;
  for (char32_t c : s) has_unit |= small_unit(c) != 0;
  if (!has_unit) {
    // 零五 / 五 / 〇五.
    std::int64_t v = 0;
    int nonzero = 0;
    bool leading_zero = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const int d = digit_value(s[i]);
      if (d < 0) return std::nullopt;
      if (d == 0) {
        if (nonzero > 0) return std::nullopt;
        leading_zero = true;
        continue;
      }
      if (++nonzero > 1) return std::nullopt;
      v = d;
    }
    if (nonzero == 1 && !leading_zero && implied > 1) return v * implied;
    return v;
  }
  std::int64_t value = 0;
  int last_unit = 10000;
  int pending = -1;
  bool saw_zero = false;
  for (char32_t c : s) {
    if (const int d = digit_value(c); d >= 0) {
      if (pending != -1) return std::nullopt;
      if (d == 0) {
        saw_zero = true;
        continue;
      }
      pending = d;
      continue;
    }
    const int u = small_unit(c);
    if (u == 0 || u >= last_unit) return std::nullopt;
    if (pending == -1) {
      if (u != 10) return std::nullopt;
      pending = 1;  // 十二, 一百零十
    }
    value += static_cast<std::int64_t>(pending) * u;
    last_unit = u;
    pending = -1;
    saw_zero = false;
  }
  if (pending != -1) {
    if (!saw_zero && last_unit > 10 && last_unit < 10000) {
      value += static_cast<std::int64_t>(pending) * (last_unit / 10);
    } else {
      value += pending;
    }
  }
  return value;
}

std::optional<std::int64_t> parse_wan_group(std::u32string_view s,
                                            std::int64_t implied) {
  const auto wan = s.find(U'万');
  if (wan == std::u32string_view::npos) return parse_section(s, implied);
  if (wan == 0 || s.find(U'万', wan + 1) != std::u32string_view::npos) {
    return std::nullopt;
  }
  auto high = parse_section(s.substr(0, wan), 1);
  auto low = parse_section(s.substr(wan + 1), 1000);
  if (!high || !low || *high == 0) return std::nullopt;
  return *high * 10000 + *low;
}

}  // namespace

bool is_chinese_numeral_char(char32_t c) {
  return digit_value(c) >= 0 || small_unit(c) != 0 || c == U'万' || c == U'亿';
}

bool is_arabic_digit(char32_t c) { return arabic_value(c) >= 0; }

std::optional<std::int64_t> parse_chinese_numeral(std::u32string_view s) {
  if (s.empty()) return std::nullopt;
  for (char32_t c : s) {
    if (!is_chinese_numeral_char(c)) return std::nullopt;
  }
  bool has_unit = false;
  for (char32_t c : s) has_unit |= digit_value(c) < 0;
  if (!has_unit) {
    // Digit by digit: 二〇一七.
    std::int64_t v = 0;
    for (char32_t c : s) v = v * 10 + digit_value(c);
    return v;
  }
  const auto yi = s.find(U'亿');
  if (yi == std::u32string_view::npos) return parse_wan_group(s, 1);
  if (yi == 0 || s.find(U'亿', yi + 1) != std::u32string_view::npos) {
    return std::nullopt;
  }
  auto high = parse_wan_group(s.substr(0, yi), 1);
  auto low = parse_wan_group(s.substr(yi + 1), 10000000);
  if (!high || !low || *high == 0) return std::nullopt;
  return *high * 100000000 + *low;
}

std::optional<NumeralSpan> scan_numeral(std::u32string_view s, std::size_t pos) {
  if (pos >= s.size()) return std::nullopt;
  NumeralSpan span;
  span.begin = pos;
  if (is_arabic_digit(s[pos])) {
    std::string digits;
    std::size_t i = pos;
    bool ok = true;
    while (i < s.size()) {
      if (is_arabic_digit(s[i])) {
        digits.push_back(static_cast<char>('0' + arabic_value(s[i])));
        ++i;
      } else if (s[i] == U',' && i + 1 < s.size() && is_arabic_digit(s[i + 1])) {
        // Grouping comma: exactly three digits must follow.
        std::size_t k = i + 1;
        while (k < s.size() && is_arabic_digit(s[k])) ++k;
        if (k - (i + 1) != 3) ok = false;
        ++i;
      } else if ((s[i] == U'.' || s[i] == U'．') && i + 1 < s.size() &&
                 is_arabic_digit(s[i + 1]) &&
                 digits.find('.') == std::string::npos) {
        digits.push_back('.');
        ++i;
      } else {
        break;
      }
    }
    span.end = i;
    double v = std::stod(digits);
    if (i < s.size()) {
      double mult = 0;
      switch (s[i]) {
        case U'百': mult = 1e2; break;
        case U'千': mult = 1e3; break;
        case U'万': mult = 1e4; break;
        case U'亿': mult = 1e8; break;
        default: break;
      }
      if (mult > 0) {
        v *= mult;
        span.end = i + 1;
      }
    }
    if (ok) span.value = v;
    return span;
  }
  if (!is_chinese_numeral_char(s[pos])) return std::nullopt;
  std::size_t i = pos;
  while (i < s.size() && is_chinese_numeral_char(s[i])) ++i;
  span.end = i;
  if (auto v = parse_chinese_numeral(s.substr(pos, i - pos))) {
    span.value = static_cast<double>(*v);
  }
  return span;
}

std::optional<DurationSpan> scan_duration(std::u32string_view s, std::size_t pos) {
  while (pos < s.size() && (s[pos] == U' ' || s[pos] == U'　')) ++pos;
  auto first = scan_numeral(s, pos);
  if (!first || !first->value) return std::nullopt;
  const double n1 = *first->value;
  if (n1 != std::floor(n1) || n1 < 0) return std::nullopt;
  std::size_t i = first->end;
  auto month_unit = [&](std::size_t at) -> std::size_t {
    if (at < s.size() && s[at] == U'个' && at + 1 < s.size() && s[at + 1] == U'月') return at + 2;
    if (at < s.size() && s[at] == U'月') return at + 1;
    return 0;
  };
  if (i < s.size() && s[i] == U'年') {
    DurationSpan d{pos, i + 1, static_cast<std::int64_t>(n1) * 12};
    std::size_t j = i + 1;
    if (j < s.size() && s[j] == U'零') ++j;
    if (auto second = scan_numeral(s, j); second && second->value) {
      if (std::size_t after = month_unit(second->end); after != 0) {
        d.months += static_cast<std::int64_t>(*second->value);
        d.end = after;
      }
    }
    return d;
  }
  if (std::size_t after = month_unit(i); after != 0) {
    return DurationSpan{pos, after, static_cast<std::int64_t>(n1)};
  }
  return std::nullopt;
}

std::optional<AmountSpan> scan_money(std::u32string_view s, std::size_t pos) {
  std::size_t i = pos;
  constexpr std::u32string_view kRmb = U"人民币";
  if (s.substr(i, kRmb.size()) == kRmb) i += kRmb.size();
  auto num = scan_numeral(s, i);
  if (!num) return std::nullopt;
  std::size_t j = num->end;
  if (j < s.size() && (s[j] == U'余' || s[j] == U'多')) ++j;
  if (j >= s.size() || s[j] != U'元') return std::nullopt;
  AmountSpan out{pos, j + 1, std::nullopt};
  if (num->value) out.yuan = std::llround(*num->value);
  return out;
}

std::string render_chinese_numeral(std::int64_t n) {
  static constexpr std::u32string_view kDigits = U"零一二三四五六七八九";
  static constexpr std::u32string_view kUnits = U" 十百千";
  static constexpr std::u32string_view kGroups = U" 万亿";
  if (n == 0) return "零";
  std::int64_t groups[3] = {n % 10000, n / 10000 % 10000, n / 100000000};
  std::u32string out;
  bool zero_pending = false;
  for (int g = 2; g >= 0; --g) {
    const std::int64_t v = groups[g];
    if (v == 0) {
      if (!out.empty()) zero_pending = true;
      continue;
    }
    if (!out.empty() && (zero_pending || v < 1000)) out.push_back(U'零');
    zero_pending = false;
    bool inner_zero = false;
    bool emitted = false;
    for (int p = 3; p >= 0; --p) {
      std::int64_t base = 1;
      for (int k = 0; k < p; ++k) base *= 10;
      const int d = static_cast<int>(v / base % 10);
      if (d == 0) {
        inner_zero = emitted;
        continue;
      }
      if (inner_zero) out.push_back(U'零');
      inner_zero = false;
      emitted = true;
      out.push_back(kDigits[d]);
      if (p > 0) out.push_back(kUnits[p]);
    }
    if (g > 0) out.push_back(kGroups[g]);
  }
  if (out.size() >= 2 && out[0] == U'一' && out[1] == U'十') out.erase(0, 1);
  return utf8::encode(out);
}

}  // namespace jddkb
