#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "textscreen/types.hpp"

namespace textscreen {

// ---------------------------------------------------------------------------
// Alphabet
//
// Matching operates over lowercase [a-z0-9].  Everything else is a token
// separator.  `letter_index` maps a token character to [0, 36); `kOtherIdx`
// is the sentinel slot used by the cost model for boundary / out-of-alphabet
// positions.
// ---------------------------------------------------------------------------

inline constexpr int kAlphabetSize = 36;  // 26 letters + 10 digits
inline constexpr int kOtherIdx = 36;      // boundary or out-of-alphabet slot
inline constexpr int kCostDim = 37;

constexpr bool is_token_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

constexpr int letter_index(char c) noexcept {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= '0' && c <= '9') return 26 + (c - '0');
  return kOtherIdx;
}

using TokenList = std::vector<std::string>;

// Lowercases, strips accents from Latin-1 / Latin Extended-A codepoints
// (е́→e, ü→u, ß→ss, æ→ae, ...), and replaces anything that does not fold
// into [a-z0-9] with a single space.  Invalid UTF-8 bytes fold to spaces.
std::string fold_text(std::string_view raw);

// fold_text + split on separator runs.  Never returns empty tokens.
TokenList normalize_text(std::string_view raw);

// ---------------------------------------------------------------------------
// Query expansion
//
// Queries (never dictionary entries) additionally get "window" tokens: the
// concatenation of every run of 2..window_limit consecutive base tokens.
// This catches names split by stray separators ("nether lands" →
// "netherlands").  Windows that collide with an existing base token are
// dropped so a query never searches the same string twice.
// ---------------------------------------------------------------------------

struct QueryWindow {
  std::string token;       // concatenated span
  std::size_t span_start;  // index of first base token
  std::size_t span_width;  // number of base tokens, in [2, window_limit]
};

// window_limit must be >= 1; a limit of 1 disables windowing.

struct ExpandedQuery {
  TokenList base;
  std::vector<QueryWindow> windows;
};

inline constexpr std::size_t kDefaultWindowLimit = 4;

ExpandedQuery expand_query(TokenList base_tokens,
                           std::size_t window_limit = kDefaultWindowLimit);

inline ExpandedQuery expand_query(std::string_view raw_text,
                                  std::size_t window_limit = kDefaultWindowLimit) {
  return expand_query(normalize_text(raw_text), window_limit);
}

}  // namespace textscreen
