#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tofh {

// A word is a sequence of generator tokens; the empty word is written ".".
using Word = std::vector<std::string>;

// Whitespace-separated tokens; "." tokens are dropped.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

Word concat(const Word& a, const Word& b);
Word power(const Word& w, int k);
Word formal_reverse(const Word& w);

// Compare ids like "r0.9" < "r0.10" by splitting digit runs.
bool natural_less(std::string_view a, std::string_view b);

}  // namespace tofh
