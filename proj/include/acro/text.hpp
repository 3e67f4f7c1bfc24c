#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace acro {

// Case handling is ASCII-only throughout: the corpora this toolkit targets
// are English scientific text, and acronym letters are ASCII by definition
// of the candidate rules. Non-ASCII bytes count toward token length but are
// never uppercase, lowercase or letters.

bool is_ascii_upper(char c);
bool is_ascii_letter(char c);
char ascii_lower(char c);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

std::string to_lower(std::string_view s);

// Canonical long-form key: lowercased, trimmed, internal whitespace runs
// collapsed to single spaces. No stemming.
std::string normalize_long_form(std::string_view s);

// Splits raw text on whitespace, then repeatedly detaches leading/trailing
// parentheses, brackets, commas and periods as separate tokens, so that
// parenthetical patterns stay token-visible. "network (CNN)," becomes
// ["network", "(", "CNN", ")", ","].
std::vector<std::string> tokenize_text(std::string_view text);

// Splits on single spaces; used to turn dictionary keys and normalized long
// forms back into token runs for matching.
std::vector<std::string> split_words(std::string_view s);

std::string join_words(const std::vector<std::string>& words,
                       std::size_t begin, std::size_t end);

}  // namespace acro
