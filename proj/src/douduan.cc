#include "jddkb/douduan.h"

#include "jddkb/utf8.h"

namespace jddkb {

namespace {

bool is_opener(char32_t c) {
  switch (c) {
    case U'“': case U'‘': case U'「': case U'『': case U'（': case U'(':
    case U'《': case U'【': case U'〔': case U'〈': case U'[':
      return true;
    default:
      return false;
  }
}

bool is_closer(char32_t c) {
  switch (c) {
    case U'”': case U'’': case U'」': case U'』': case U'）': case U')':
    case U'》': case U'】': case U'〕': case U'〉': case U']':
      return true;
    default:
      return false;
  }
}

bool is_sentence_end(char32_t c) {
  return c == U'。' || c == U'！' || c == U'？';
}

template <typename Pred>
std::vector<std::string> split_on(std::string_view text, Pred is_delim) {
  std::vector<std::string> out;
  const std::u32string s = utf8::decode(text);
  int depth = 0;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const char32_t c = s[i];
    if (is_opener(c)) {
      ++depth;
    } else if (is_closer(c)) {
      if (depth > 0) --depth;
    } else if (depth == 0 && is_delim(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && is_delim(s[j])) ++j;
      out.push_back(utf8::encode(std::u32string_view(s).substr(start, j - start)));
      start = j;
      i = j;
      continue;
    }
    ++i;
  }
  if (start < s.size()) {
    out.push_back(utf8::encode(std::u32string_view(s).substr(start)));
  }
  return out;
}

}  // namespace

bool is_douduan_delimiter(char32_t c) {
  return c == U'，' || c == U'；' || c == U'。' || c == U'！' || c == U'？';
}

std::vector<std::string> segment_douduan(std::string_view sentence) {
  return split_on(sentence, is_douduan_delimiter);
}

std::vector<std::string> split_sentences(std::string_view text) {
  return split_on(text, is_sentence_end);
}

}  // namespace jddkb
