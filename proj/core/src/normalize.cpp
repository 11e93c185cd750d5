#include "textscreen/normalize.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace textscreen {
namespace {

// Folds one Unicode codepoint to its ASCII skeleton, or "" when the
// codepoint carries no letter/digit value.  Covers ASCII, Latin-1
// Supplement, and Latin Extended-A, which is where real-world payment
// traffic and watch-list exports live.
std::string_view fold_codepoint(std::uint32_t cp) {
  if (cp < 0x80) {
    static constexpr char kAscii[] = "abcdefghijklmnopqrstuvwxyz";
    static constexpr char kDigits[] = "0123456789";
    if (cp >= 'a' && cp <= 'z') return {&kAscii[cp - 'a'], 1};
    if (cp >= 'A' && cp <= 'Z') return {&kAscii[cp - 'A'], 1};
    if (cp >= '0' && cp <= '9') return {&kDigits[cp - '0'], 1};
    return {};
  }
  switch (cp) {
    // Latin-1 Supplement, uppercase then lowercase.
    case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5:
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
      return "a";
    case 0xC6: case 0xE6: return "ae";
    case 0xC7: case 0xE7: return "c";
    case 0xC8: case 0xC9: case 0xCA: case 0xCB:
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
      return "e";
    case 0xCC: case 0xCD: case 0xCE: case 0xCF:
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
      return "i";
    case 0xD0: case 0xF0: return "d";  // eth
    case 0xD1: case 0xF1: return "n";
    case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6: case 0xD8:
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
      return "o";
    case 0xD9: case 0xDA: case 0xDB: case 0xDC:
    case 0xF9: case 0xFA: case 0xFB: case 0xFC:
      return "u";
    case 0xDD: case 0xFD: case 0xFF: return "y";
    case 0xDE: case 0xFE: return "th";  // thorn
    case 0xDF: return "ss";             // sharp s
    default: break;
  }
  if (cp >= 0x100 && cp <= 0x17F) {
    // Latin Extended-A is organised as (base-letter, diacritic) pairs; a
    // small table keyed by range keeps this honest.
    struct Range { std::uint32_t lo, hi; const char* out; };
    static constexpr Range kRanges[] = {
        {0x100, 0x105, "a"}, {0x106, 0x10D, "c"}, {0x10E, 0x111, "d"},
        {0x112, 0x11B, "e"}, {0x11C, 0x123, "g"}, {0x124, 0x127, "h"},
        {0x128, 0x131, "i"}, {0x132, 0x133, "ij"}, {0x134, 0x135, "j"},
        {0x136, 0x138, "k"}, {0x139, 0x142, "l"}, {0x143, 0x14B, "n"},
        {0x14C, 0x151, "o"}, {0x152, 0x153, "oe"}, {0x154, 0x159, "r"},
        {0x15A, 0x161, "s"}, {0x162, 0x167, "t"}, {0x168, 0x173, "u"},
        {0x174, 0x175, "w"}, {0x176, 0x178, "y"}, {0x179, 0x17E, "z"},
    };
    for (const auto& r : kRanges) {
      if (cp >= r.lo && cp <= r.hi) return r.out;
    }
  }
  return {};
}

// Decodes the UTF-8 sequence starting at raw[i].  Returns the codepoint and
// advances i past it; malformed bytes consume one byte and yield U+FFFD.
std::uint32_t next_codepoint(std::string_view raw, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> std::uint32_t {
    return static_cast<unsigned char>(raw[k]);
  };
  const std::uint32_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  std::uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
  else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
  else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
  else { ++i; return 0xFFFD; }
  if (i + len > raw.size()) { ++i; return 0xFFFD; }
  for (int k = 1; k < len; ++k) {
    const std::uint32_t bk = byte(i + k);
    if ((bk & 0xC0) != 0x80) { ++i; return 0xFFFD; }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

}  // namespace

std::string fold_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const std::uint32_t cp = next_codepoint(raw, i);
    const std::string_view folded = fold_codepoint(cp);
    if (folded.empty()) {
      out.push_back(' ');
    } else {
      out.append(folded);
    }
  }
  return out;
}

TokenList normalize_text(std::string_view raw) {
  const std::string folded = fold_text(raw);
  TokenList tokens;
  std::size_t i = 0;
  while (i < folded.size()) {
    while (i < folded.size() && !is_token_char(folded[i])) ++i;
    std::size_t start = i;
    while (i < folded.size() && is_token_char(folded[i])) ++i;
    if (i > start) tokens.emplace_back(folded.substr(start, i - start));
  }
  return tokens;
}

ExpandedQuery expand_query(TokenList base_tokens, std::size_t window_limit) {
  if (window_limit < 1) {
    throw ConfigError("window_limit must be >= 1");
  }
  ExpandedQuery out;
  out.base = std::move(base_tokens);

  std::unordered_set<std::string_view> seen;
  seen.reserve(out.base.size() * 2);
  for (const auto& t : out.base) seen.insert(t);

  // Windows in (start, width) order keeps downstream processing, and thus
  // emitted match lists, deterministic.
  for (std::size_t start = 0; start < out.base.size(); ++start) {
    std::string window = out.base[start];
    const std::size_t max_width =
        std::min(window_limit, out.base.size() - start);
    for (std::size_t width = 2; width <= max_width; ++width) {
      window += out.base[start + width - 1];
      if (seen.contains(window)) continue;
      out.windows.push_back({window, start, width});
    }
  }
  // A window string can arise from two different spans ("a ab b" gives
  // "aab" twice); keep the first occurrence only.
  std::unordered_set<std::string_view> emitted;
  emitted.reserve(out.windows.size());
  std::vector<QueryWindow> unique;
  unique.reserve(out.windows.size());
  for (auto& w : out.windows) {
    if (emitted.contains(w.token)) continue;
    unique.push_back(std::move(w));
    emitted.insert(unique.back().token);
  }
  out.windows = std::move(unique);
  return out;
}

}  // namespace textscreen
