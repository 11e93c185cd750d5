#include "textscreen/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <unordered_set>

namespace textscreen {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool valid_tag(std::string_view tag) {
  if (tag.size() != 2 && tag.size() != 3) return false;
  if (!is_digit(tag[0]) || !is_digit(tag[1])) return false;
  return tag.size() == 2 || (tag[2] >= 'A' && tag[2] <= 'Z');
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  // A trailing newline produces one empty phantom line; drop it.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

// Splits block 4's body into tagged fields.  `base` is the block body's
// offset in the whole message, for error reporting.
std::vector<MtField> parse_fields(std::string_view body, std::size_t base) {
  std::vector<MtField> fields;
  std::size_t consumed = 0;
  for (std::string& line : split_lines(body)) {
    const std::size_t line_offset = base + consumed;
    consumed += line.size() + 1;
    if (line.empty()) continue;
    if (line == "-") break;  // block terminator when kept on its own line
    if (line[0] == ':') {
      const std::size_t close = line.find(':', 1);
      if (close == std::string::npos) {
        throw MtParseError(line_offset, "field line has no closing ':'");
      }
      std::string tag = line.substr(1, close - 1);
      if (!valid_tag(tag)) {
        throw MtParseError(line_offset, "malformed field tag ':" + tag + ":'");
      }
      fields.push_back({std::move(tag), {line.substr(close + 1)}});
    } else {
      if (fields.empty()) {
        throw MtParseError(line_offset,
                           "text before the first tagged field in block 4");
      }
      fields.back().lines.push_back(std::move(line));
    }
  }
  return fields;
}

}  // namespace

std::string MtField::value() const {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty() && !line.empty()) out += ' ';
    out += line;
  }
  return out;
}

const std::string* MtMessage::block(std::string_view id) const {
  for (const auto& [bid, body] : blocks) {
    if (bid == id) return &body;
  }
  return nullptr;
}

const MtField* MtMessage::field(std::string_view tag) const {
  for (const auto& f : fields) {
    if (f.tag == tag) return &f;
  }
  return nullptr;
}

MtMessage parse_mt(std::string_view raw) {
  MtMessage msg;
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < raw.size() &&
           (raw[pos] == '\n' || raw[pos] == '\r' || raw[pos] == ' ' ||
            raw[pos] == '\t')) {
      ++pos;
    }
  };

  skip_ws();
  if (pos >= raw.size()) throw MtParseError(0, "empty message");

  while (pos < raw.size()) {
    if (raw[pos] != '{') {
      throw MtParseError(pos, "expected '{' at start of block");
    }
    const std::size_t open = pos;
    std::size_t cursor = pos + 1;
    std::size_t colon = std::string_view::npos;
    for (; cursor < raw.size(); ++cursor) {
      if (raw[cursor] == ':') { colon = cursor; break; }
      if (!is_digit(raw[cursor])) break;
    }
    if (colon == std::string_view::npos || colon == open + 1) {
      throw MtParseError(open, "block must start with '{<digits>:'");
    }
    const std::string id(raw.substr(open + 1, colon - open - 1));

    // Find the matching close brace; block bodies may nest ({3:{108:..}}).
    int depth = 1;
    std::size_t end = colon + 1;
    for (; end < raw.size() && depth > 0; ++end) {
      if (raw[end] == '{') ++depth;
      if (raw[end] == '}') --depth;
    }
    if (depth != 0) {
      throw MtParseError(open, "unbalanced braces in block " + id);
    }
    std::string body(raw.substr(colon + 1, end - 1 - (colon + 1)));

    if (id == "4") {
      // Conventional layout ends the body with "\n-"; trim the terminator.
      std::string_view fields_body = body;
      if (fields_body.ends_with("\n-")) {
        fields_body.remove_suffix(2);
      } else if (fields_body.ends_with("\n-\n")) {
        fields_body.remove_suffix(3);
      }
      msg.fields = parse_fields(fields_body, colon + 1);
    }
    msg.blocks.emplace_back(id, std::move(body));
    pos = end;
    skip_ws();
  }

  if (msg.block("4") == nullptr) {
    throw MtParseError(raw.size(), "message has no block 4");
  }
  return msg;
}

const std::vector<std::string>& default_screenable_tags() {
  static const std::vector<std::string> kTags = {"50A", "50F", "50K", "59",
                                                 "70"};
  return kTags;
}

std::string strip_slash_codes(std::string_view line) {
  std::size_t pos = 0;
  while (pos < line.size() && line[pos] == '/') {
    std::size_t end = line.find('/', pos + 1);
    if (end == std::string_view::npos) end = line.size();
    const std::string_view segment = line.substr(pos + 1, end - pos - 1);
    const bool code =
        !segment.empty() &&
        std::all_of(segment.begin(), segment.end(),
                    [](char c) { return is_alnum(c); });
    if (!code) {
      ++pos;  // drop the bare slash, keep the segment
      break;
    }
    pos = end;
  }
  return std::string(line.substr(pos));
}

std::vector<std::pair<std::string, std::string>> screenable_fields(
    const MtMessage& msg, const std::vector<std::string>& tags) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const MtField& f : msg.fields) {
    if (std::find(tags.begin(), tags.end(), f.tag) == tags.end()) continue;
    std::string text;
    for (const auto& line : f.lines) {
      const std::string kept = strip_slash_codes(line);
      if (kept.empty()) continue;
      if (!text.empty()) text += ' ';
      text += kept;
    }
    if (!text.empty()) out.emplace_back(f.tag, std::move(text));
  }
  return out;
}

std::vector<Document> load_reference_list(std::istream& in,
                                          std::string_view source) {
  std::vector<Document> docs;
  std::unordered_set<DocId> seen;
  std::string line;
  std::size_t lineno = 0;
  const auto where = [&] {
    return std::string(source) + ":" + std::to_string(lineno);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(where(), "expected doc_id<TAB>raw_name");
    }
    DocId id = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, id);
    if (ec != std::errc{} || ptr != line.data() + tab) {
      throw ParseError(where(), "bad doc id '" + line.substr(0, tab) + "'");
    }
    if (!seen.insert(id).second) {
      throw ParseError(where(), "duplicate doc id " + std::to_string(id));
    }
    std::string name = line.substr(tab + 1);
    if (name.empty()) {
      throw ParseError(where(), "empty name for doc id " + std::to_string(id));
    }
    docs.push_back(make_document(id, std::move(name)));
  }
  return docs;
}

std::vector<Document> load_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open reference list");
  return load_reference_list(in, path);
}

}  // namespace textscreen
