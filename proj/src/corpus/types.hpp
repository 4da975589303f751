#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace targettox::corpus {

struct RawComment {
  std::string id;
  std::string body;
  std::string community;
  std::optional<std::int64_t> created_utc;

  bool operator==(const RawComment&) const = default;
};

// A preprocessed sentence: lemma tokens with the positions tagged as adjectives.
struct TokenizedSentence {
  std::vector<std::string> tokens;
  std::vector<std::size_t> adjective_indices;  // ascending, each < tokens.size()
  std::string source_comment;

  bool empty() const { return tokens.empty(); }
  bool operator==(const TokenizedSentence&) const = default;
};

// A comment after segmentation and preprocessing. Sentences that reduce to
// zero tokens are not kept.
struct PreparedComment {
  std::string id;
  std::vector<TokenizedSentence> sentences;
};

struct PreparedArchive {
  std::string community;
  std::vector<PreparedComment> comments;
};

struct CorpusSample {
  std::vector<TokenizedSentence> sentences;
  std::vector<std::size_t> draws;  // comment index per draw, in draw order
  std::uint64_t seed = 0;
  std::size_t sample_size_comments = 0;
  std::string community;

  bool operator==(const CorpusSample&) const = default;
};

}  // namespace targettox::corpus
