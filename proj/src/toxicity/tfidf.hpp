#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus/lexicon.hpp"

namespace targettox::toxicity {

struct SparseEntry {
  std::uint32_t index;
  double value;

  bool operator==(const SparseEntry&) const = default;
};

// Sorted by index, no duplicate indices.
using SparseVector = std::vector<SparseEntry>;

using TokenList = std::vector<std::string>;

// Term -> dense index with document frequencies. Terms are indexed in
// lexicographic order.
class TfIdfVocabulary {
 public:
  TfIdfVocabulary() = default;
  TfIdfVocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> document_frequency,
                  std::uint64_t total_documents, std::uint64_t min_df);

  std::optional<std::uint32_t> index_of(std::string_view term) const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::uint64_t document_frequency(std::uint32_t i) const { return df_[i]; }
  std::uint64_t total_documents() const { return total_documents_; }
  std::uint64_t min_df() const { return min_df_; }

  // ln((1 + N) / (1 + df)) + 1
  double idf(std::uint32_t i) const { return idf_[i]; }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> df_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t, corpus::StringHash, std::equal_to<>> index_;
  std::uint64_t total_documents_ = 0;
  std::uint64_t min_df_ = 1;
};

// Keeps terms with df >= min_df, then the max_features most frequent by
// document frequency (ties lexicographic). max_features == 0 keeps all.
TfIdfVocabulary build_vocabulary(const std::vector<TokenList>& docs, std::uint64_t min_df,
                                 std::size_t max_features);

// Raw term count times smoothed idf, L2-normalized. Unknown terms are ignored;
// a document without known terms maps to the empty (zero) vector.
SparseVector vectorize(const TokenList& doc, const TfIdfVocabulary& vocab);

}  // namespace targettox::toxicity
