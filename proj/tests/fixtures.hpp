#pragma once

// Shared test fixtures: a realistic interbank payment message and small
// dictionary builders.

#include <string>
#include <utility>
#include <vector>

#include "textscreen/trie_index.hpp"

namespace fixtures {

// A customer credit transfer in the classic brace-block format: three header
// blocks, then the tagged text block.  Field 59 hides the beneficiary name
// behind an account line (note the trailing space on the name line), field
// 70 buries names in free-form narrative behind /RFB/-style codewords.
inline const std::string kSwiftSample =
    "{1:F01MIDLGB22AXXX0548034693}{2:I103BKTRUS33XBRDN3}{3:{108:MT103}}{4:\n"
    ":20:8861198-0706\n"
    ":23B:CRED\n"
    ":32A:000612USD5443,99\n"
    ":33B:USD5443,99\n"
    ":50K:MIYESE INTERNATIONAL LIMITED\n"
    ":52A:BCITITMM500\n"
    ":53A:BCITUS33\n"
    ":54A:IRVTUS3N\n"
    ":57A:BNPAFRPPGRE\n"
    ":59:/20041010050500001M02606\n"
    "AHMET EMRE \n"
    ":70:/RFB/OYA/INVOICE SENT TAMERLAAN\n"
    "TZARNAEV, FATIME ST. PLAZA DE HALIT\n"
    "28934 MOSTOLES (MADRID)\n"
    ":71A:SHA\n"
    "-}";

inline std::vector<textscreen::Document> make_docs(
    const std::vector<std::pair<textscreen::DocId, std::string>>& entries) {
  std::vector<textscreen::Document> docs;
  docs.reserve(entries.size());
  for (const auto& [id, name] : entries) {
    docs.push_back(textscreen::make_document(id, name));
  }
  return docs;
}

}  // namespace fixtures
