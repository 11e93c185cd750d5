#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "textscreen/trie_index.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

// ---------------------------------------------------------------------------
// MT-style financial messages: `{1:...}{2:...}{3:{108:...}}{4:
// :20:REF
// :50K:ORDERING CUSTOMER
// -}`.  Block 4 carries colon-tagged fields; a field value may span several
// lines (continuation lines do not start with ':').
// ---------------------------------------------------------------------------

class MtParseError : public ParseError {
public:
  MtParseError(std::size_t offset, const std::string& what)
      : ParseError("mt@" + std::to_string(offset), what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

struct MtField {
  std::string tag;                 // 2 digits + optional uppercase letter
  std::vector<std::string> lines;  // raw value lines, in order

  // Lines joined with single spaces.
  std::string value() const;
};

struct MtMessage {
  std::vector<std::pair<std::string, std::string>> blocks;  // id → raw body
  std::vector<MtField> fields;                              // block 4, in order

  const std::string* block(std::string_view id) const;
  const MtField* field(std::string_view tag) const;  // first occurrence
};

// Parses one message.  Throws MtParseError (with byte offset) on unbalanced
// braces, missing block 4, or a malformed field tag.
MtMessage parse_mt(std::string_view raw);

// {"50A", "50F", "50K", "59", "70"}: ordering/beneficiary parties and the
// narrative, where names hide.
const std::vector<std::string>& default_screenable_tags();

// (tag, text) for each whitelisted field, message order preserved.  Leading
// slash-delimited code segments (account numbers, `/RFB/` style codewords)
// are stripped per line; fields left with no text are omitted.
std::vector<std::pair<std::string, std::string>> screenable_fields(
    const MtMessage& msg,
    const std::vector<std::string>& tags = default_screenable_tags());

// Strips leading `/segment/` codes off one line: while the line starts with
// '/' and the next slash-delimited segment is pure alphanumeric, the
// segment is consumed.  The first non-code segment onward is kept.
std::string strip_slash_codes(std::string_view line);

// ---------------------------------------------------------------------------
// Reference list: `doc_id<TAB>raw_name` per line, '#' comments and blank
// lines skipped.  Throws ParseError with source:line on malformed rows and
// duplicate ids.
// ---------------------------------------------------------------------------

std::vector<Document> load_reference_list(std::istream& in,
                                          std::string_view source = "<stream>");
std::vector<Document> load_reference_file(const std::string& path);

}  // namespace textscreen
