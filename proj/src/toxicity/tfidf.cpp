#include "toxicity/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "util/error.hpp"

namespace targettox::toxicity {

TfIdfVocabulary::TfIdfVocabulary(std::vector<std::string> terms,
                                 std::vector<std::uint64_t> document_frequency,
                                 std::uint64_t total_documents, std::uint64_t min_df)
    : terms_(std::move(terms)),
      df_(std::move(document_frequency)),
      total_documents_(total_documents),
      min_df_(min_df) {
  if (terms_.size() != df_.size()) {
    fail(ErrorKind::InvalidArgument, "vocabulary terms and frequencies differ in length");
  }
  idf_.reserve(terms_.size());
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    if (df_[i] > total_documents_ || df_[i] < min_df_) {
      fail(ErrorKind::InvalidArgument, "document frequency of '" + terms_[i] + "' out of range");
    }
    if (!index_.emplace(terms_[i], i).second) {
      fail(ErrorKind::InvalidArgument, "duplicate vocabulary term '" + terms_[i] + "'");
    }
    idf_.push_back(std::log((1.0 + static_cast<double>(total_documents_)) /
                            (1.0 + static_cast<double>(df_[i]))) +
                   1.0);
  }
}

std::optional<std::uint32_t> TfIdfVocabulary::index_of(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TfIdfVocabulary build_vocabulary(const std::vector<TokenList>& docs, std::uint64_t min_df,
                                 std::size_t max_features) {
  if (docs.empty()) fail(ErrorKind::Data, "cannot build a vocabulary from zero documents");
  std::map<std::string, std::uint64_t> df;
  bool any_token = false;
  for (const auto& doc : docs) {
    std::unordered_set<std::string_view> seen;
    for (const auto& t : doc) {
      any_token = true;
      if (seen.insert(t).second) ++df[t];
    }
  }
  if (!any_token) fail(ErrorKind::Data, "cannot build a vocabulary: all documents are empty");

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [term, count] : df) {
    if (count >= min_df) kept.emplace_back(term, count);
  }
  if (max_features > 0 && kept.size() > max_features) {
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    kept.resize(max_features);
    std::sort(kept.begin(), kept.end());
  }
  std::vector<std::string> terms;
  std::vector<std::uint64_t> freqs;
  for (auto& [term, count] : kept) {
    terms.push_back(term);
    freqs.push_back(count);
  }
  return TfIdfVocabulary(std::move(terms), std::move(freqs), docs.size(), min_df);
}

SparseVector vectorize(const TokenList& doc, const TfIdfVocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for (const auto& t : doc) {
    if (auto i = vocab.index_of(t)) counts[*i] += 1.0;
  }
  SparseVector out;
  out.reserve(counts.size());
  double norm2 = 0.0;
  for (auto [i, tf] : counts) {
    double v = tf * vocab.idf(i);
    out.push_back({i, v});
    norm2 += v * v;
  }
  if (norm2 > 0.0) {
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& e : out) e.value *= inv;
  }
  return out;
}

}  // namespace targettox::toxicity
