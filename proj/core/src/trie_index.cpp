#include "textscreen/trie_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace textscreen {

Document make_document(DocId id, std::string raw_name) {
  Document doc;
  doc.id = id;
  doc.tokens = normalize_text(raw_name);
  doc.raw_name = std::move(raw_name);
  return doc;
}

// --------------------------------- stats ----------------------------------

DictionaryStats DictionaryStats::build(std::vector<Document> docs) {
  DictionaryStats stats;
  stats.docs_ = std::move(docs);
  stats.idx_by_id_.reserve(stats.docs_.size() * 2);
  std::size_t token_instances = 0;
  for (std::uint32_t i = 0; i < stats.docs_.size(); ++i) {
    const Document& doc = stats.docs_[i];
    if (doc.tokens.empty()) {
      throw ConfigError("document " + std::to_string(doc.id) +
                        " ('" + doc.raw_name + "') has no indexable tokens");
    }
    for (const auto& t : doc.tokens) {
      if (t.size() > std::numeric_limits<std::uint16_t>::max()) {
        throw ConfigError("document " + std::to_string(doc.id) +
                          " has a token longer than 65535 characters");
      }
    }
    token_instances += doc.tokens.size();
    if (!stats.idx_by_id_.emplace(doc.id, i).second) {
      throw ConfigError("duplicate document id " + std::to_string(doc.id));
    }
  }

  stats.postings_.reserve(token_instances);  // upper bound: no rehashing
  for (const Document& doc : stats.docs_) {
    for (const auto& t : doc.tokens) {
      auto& list = stats.postings_[t];
      if (list.empty() || list.back() != doc.id) list.push_back(doc.id);
    }
  }
  for (auto& [token, list] : stats.postings_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  const auto n_docs = static_cast<double>(stats.docs_.size());
  stats.total_information_.resize(stats.docs_.size(), 0.0);
  for (std::uint32_t i = 0; i < stats.docs_.size(); ++i) {
    const Document& doc = stats.docs_[i];
    double total = 0.0;
    // Distinct tokens in first-occurrence order; scoring sums its side in
    // the same order so the two totals can agree bit for bit.  The inlined
    // arithmetic below is information(id, token) term for term.
    for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
      bool first = true;
      for (std::size_t j = 0; j < k; ++j) {
        if (doc.tokens[j] == doc.tokens[k]) { first = false; break; }
      }
      if (!first) continue;
      std::uint32_t tf = 0;
      for (const auto& t : doc.tokens) {
        if (t == doc.tokens[k]) ++tf;
      }
      const auto df =
          static_cast<double>(stats.postings_.find(doc.tokens[k])->second.size());
      total += static_cast<double>(tf) * std::log(1.0 + n_docs / df);
    }
    stats.total_information_[i] = total;
  }
  return stats;
}

std::uint32_t DictionaryStats::index_of(DocId id) const {
  const auto it = idx_by_id_.find(id);
  if (it == idx_by_id_.end()) {
    throw std::out_of_range("unknown document id " + std::to_string(id));
  }
  return it->second;
}

const Document& DictionaryStats::document(DocId id) const {
  return docs_[index_of(id)];
}

std::uint32_t DictionaryStats::doc_freq(std::string_view token) const noexcept {
  const auto it = postings_.find(token);
  return it == postings_.end() ? 0u
                               : static_cast<std::uint32_t>(it->second.size());
}

std::uint32_t DictionaryStats::term_freq(DocId id, std::string_view token) const {
  const Document& doc = docs_[index_of(id)];
  std::uint32_t n = 0;
  for (const auto& t : doc.tokens) {
    if (t == token) ++n;
  }
  return n;
}

double DictionaryStats::idf(std::string_view token) const {
  const std::uint32_t df = doc_freq(token);
  if (df == 0) {
    throw std::out_of_range("idf of token absent from dictionary: " +
                            std::string(token));
  }
  return std::log(1.0 + static_cast<double>(doc_count()) /
                            static_cast<double>(df));
}

double DictionaryStats::information(DocId id, std::string_view token) const {
  return static_cast<double>(term_freq(id, token)) * idf(token);
}

double DictionaryStats::total_information(DocId id) const {
  return total_information_[index_of(id)];
}

const std::vector<DocId>* DictionaryStats::find_postings(
    std::string_view token) const {
  const auto it = postings_.find(token);
  return it == postings_.end() ? nullptr : &it->second;
}

// ---------------------------------- trie ----------------------------------

std::int32_t TrieIndex::child_for(std::int32_t parent, char letter) {
  // Siblings stay sorted by letter; find the insertion point.
  std::int32_t prev = -1;
  std::int32_t cur = nodes_[static_cast<std::size_t>(parent)].first_child;
  while (cur != -1 && nodes_[static_cast<std::size_t>(cur)].letter < letter) {
    prev = cur;
    cur = nodes_[static_cast<std::size_t>(cur)].next_sibling;
  }
  if (cur != -1 && nodes_[static_cast<std::size_t>(cur)].letter == letter) {
    return cur;
  }
  const auto fresh = static_cast<std::int32_t>(nodes_.size());
  Node node;
  node.letter = letter;
  node.next_sibling = cur;
  nodes_.push_back(node);
  if (prev == -1) {
    nodes_[static_cast<std::size_t>(parent)].first_child = fresh;
  } else {
    nodes_[static_cast<std::size_t>(prev)].next_sibling = fresh;
  }
  return fresh;
}

TrieIndex TrieIndex::build(const DictionaryStats& stats) {
  std::vector<DocId> ids;
  ids.reserve(stats.doc_count());
  for (const Document& doc : stats.documents()) ids.push_back(doc.id);
  return build(stats, ids);
}

TrieIndex TrieIndex::build(const DictionaryStats& stats,
                           const std::vector<DocId>& doc_ids) {
  std::unordered_set<DocId> allowed;
  allowed.reserve(doc_ids.size() * 2);
  for (const DocId id : doc_ids) {
    stats.document(id);  // rejects ids the dictionary does not know
    allowed.insert(id);
  }
  const bool full = allowed.size() == stats.doc_count();

  // One pass over the distinct tokens: the stats postings are already
  // sorted and deduplicated, so a full build copies them verbatim and a
  // shard build keeps the allowed subsequence.  Tokens no retained document
  // carries must leave no trace — shard tries stay shape-minimal.
  TrieIndex trie;
  std::vector<std::int32_t> path;
  for (const auto& [token, list] : stats.postings()) {
    std::vector<DocId> kept;
    if (full) {
      kept = list;
    } else {
      for (const DocId id : list) {
        if (allowed.contains(id)) kept.push_back(id);
      }
      if (kept.empty()) continue;
    }

    path.clear();
    std::int32_t cur = trie.root();
    for (const char c : token) {
      cur = trie.child_for(cur, c);
      path.push_back(cur);
    }
    auto& eow = trie.nodes_[static_cast<std::size_t>(cur)];
    eow.postings = static_cast<std::int32_t>(trie.postings_.size());
    trie.postings_.push_back(std::move(kept));

    // Propagate the subtree's deepest end-of-word along the path.
    const auto depth = static_cast<std::uint16_t>(token.size());
    trie.nodes_[0].max_eow_depth =
        std::max(trie.nodes_[0].max_eow_depth, depth);
    for (const std::int32_t n : path) {
      auto& nd = trie.nodes_[static_cast<std::size_t>(n)];
      nd.max_eow_depth = std::max(nd.max_eow_depth, depth);
    }
    trie.max_token_length_ = std::max(trie.max_token_length_, token.size());
  }
  return trie;
}

const std::vector<DocId>* TrieIndex::find_postings(
    std::string_view token) const {
  std::int32_t cur = root();
  for (const char c : token) {
    std::int32_t child = node(cur).first_child;
    while (child != -1 && node(child).letter < c) {
      child = node(child).next_sibling;
    }
    if (child == -1 || node(child).letter != c) return nullptr;
    cur = child;
  }
  const std::int32_t p = node(cur).postings;
  return p == -1 ? nullptr : &postings_[static_cast<std::size_t>(p)];
}

IndexBuild build_index(std::vector<Document> docs) {
  IndexBuild out{DictionaryStats::build(std::move(docs)), {}};
  out.trie = TrieIndex::build(out.stats);
  return out;
}

}  // namespace textscreen
