#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textscreen/normalize.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

// Transparent hashing so containers keyed by std::string accept
// std::string_view lookups without a temporary allocation.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using StringViewEq = std::equal_to<>;

// One watch-list entry.  `tokens` is normalize_text(raw_name) and is never
// empty for an indexed document.
struct Document {
  DocId id = 0;
  std::string raw_name;
  TokenList tokens;
};

Document make_document(DocId id, std::string raw_name);

// Read-only view of sorted, duplicate-free posting lists keyed by token.
class PostingSource {
public:
  virtual ~PostingSource() = default;
  // nullptr when the token does not occur anywhere.
  virtual const std::vector<DocId>* find_postings(std::string_view token) const = 0;
};

// ---------------------------------------------------------------------------
// DictionaryStats
//
// Owns the documents and every corpus-level statistic scoring needs:
// document frequencies, inverse document frequency idf(t) = ln(1 + N/df(t)),
// per-document information I(doc, t) = tf(doc, t) * idf(t), and each
// document's total information (the sum of I over its distinct tokens, in
// first-occurrence order -- scoring reproduces that order so a full match
// reaches a ratio of exactly 1).
//
// Stats are always corpus-global, even when the trie side is sharded;
// sharding must not move any score.
// ---------------------------------------------------------------------------

class DictionaryStats final : public PostingSource {
public:
  // Validates: no duplicate ids, every document tokenizes to at least one
  // token, no token longer than 65535 characters.  Throws ConfigError.
  static DictionaryStats build(std::vector<Document> docs);

  std::size_t doc_count() const noexcept { return docs_.size(); }
  const std::vector<Document>& documents() const noexcept { return docs_; }

  bool contains(DocId id) const noexcept { return idx_by_id_.contains(id); }
  const Document& document(DocId id) const;  // throws std::out_of_range

  // 0 when the token occurs nowhere.
  std::uint32_t doc_freq(std::string_view token) const noexcept;
  // Occurrences of `token` inside the document (0 when absent).
  std::uint32_t term_freq(DocId id, std::string_view token) const;

  double idf(std::string_view token) const;               // throws on df == 0
  double information(DocId id, std::string_view token) const;
  double total_information(DocId id) const;

  std::size_t distinct_token_count() const noexcept { return postings_.size(); }

  const std::vector<DocId>* find_postings(std::string_view token) const override;

  using PostingMap =
      std::unordered_map<std::string, std::vector<DocId>, StringHash,
                         StringViewEq>;
  // Every (distinct token, ascending posting list) pair; iteration order is
  // unspecified.
  const PostingMap& postings() const noexcept { return postings_; }

private:
  std::vector<Document> docs_;
  std::unordered_map<DocId, std::uint32_t> idx_by_id_;
  PostingMap postings_;
  std::vector<double> total_information_;  // parallel to docs_

  std::uint32_t index_of(DocId id) const;  // throws std::out_of_range
};

// ---------------------------------------------------------------------------
// TrieIndex
//
// Letter trie over dictionary tokens.  First-child / next-sibling layout in
// one contiguous pool; siblings are kept sorted by letter so traversal
// order, and therefore every downstream match list, is deterministic.
// End-of-word nodes carry the posting list of documents containing that
// token.  `max_eow_depth` is the deepest end-of-word anywhere in the
// node's subtree; the fuzzy traversal uses it to bound the edit budget any
// descendant could still be granted.
// ---------------------------------------------------------------------------

class TrieIndex final : public PostingSource {
public:
  struct Node {
    std::int32_t first_child = -1;
    std::int32_t next_sibling = -1;
    std::int32_t postings = -1;  // -1 when not an end of word
    std::uint16_t max_eow_depth = 0;
    char letter = '\0';
  };

  TrieIndex() : nodes_(1) {}

  // Indexes every token of the selected documents.  `doc_ids` must refer to
  // documents present in `stats`; posting lists come out sorted by id and
  // duplicate-free regardless of input order.
  static TrieIndex build(const DictionaryStats& stats);
  static TrieIndex build(const DictionaryStats& stats,
                         const std::vector<DocId>& doc_ids);

  std::int32_t root() const noexcept { return 0; }
  const Node& node(std::int32_t idx) const noexcept {
    return nodes_[static_cast<std::size_t>(idx)];
  }
  const std::vector<DocId>& postings_at(std::int32_t postings_idx) const {
    return postings_[static_cast<std::size_t>(postings_idx)];
  }

  const std::vector<DocId>* find_postings(std::string_view token) const override;

  std::size_t node_count() const noexcept { return nodes_.size() - 1; }
  std::size_t token_count() const noexcept { return postings_.size(); }
  std::size_t max_token_length() const noexcept { return max_token_length_; }

private:
  std::int32_t child_for(std::int32_t parent, char letter);  // insert-or-find

  std::vector<Node> nodes_;                 // [0] is the root
  std::vector<std::vector<DocId>> postings_;
  std::size_t max_token_length_ = 0;
};

struct IndexBuild {
  DictionaryStats stats;
  TrieIndex trie;
};

IndexBuild build_index(std::vector<Document> docs);

}  // namespace textscreen
