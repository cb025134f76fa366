#ifndef JDDKB_DOUDUAN_H_
#define JDDKB_DOUDUAN_H_

#include <string>
#include <string_view>
#include <vector>

namespace jddkb {

// ，；。！？ (fullwidth). The enumeration comma 、 is not a delimiter.
bool is_douduan_delimiter(char32_t c);

// Splits a sentence into comma-bounded clauses. Each delimiter (a run of
// consecutive delimiters) stays attached to the clause it terminates, so
// concatenating the result gives back the input. Delimiters inside paired
// quotes or brackets do not split.
std::vector<std::string> segment_douduan(std::string_view sentence);

// Sentence split on 。！？ with the same quote/bracket rule; lossless.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace jddkb

#endif  // JDDKB_DOUDUAN_H_
