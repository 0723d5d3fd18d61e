#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace uqcal {

using TokenSeq = std::vector<std::string>;

// Lowercases and splits on anything that is not a letter or digit.
// UTF-8 aware: ASCII and Latin-1 letters are case-mapped, codepoints above
// U+00FF count as letters and pass through unchanged.
TokenSeq tokenize(const std::string& text);

// Longest common subsequence length, O(|a|*|b|) dynamic program.
std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

// ROUGE-L F1 (beta = 1). 0 when either side is empty or the LCS is empty.
double rouge_l_f(const TokenSeq& a, const TokenSeq& b);

}  // namespace uqcal
