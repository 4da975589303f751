#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corpus/lexicon.hpp"
#include "corpus/sentence_splitter.hpp"
#include "corpus/types.hpp"

namespace targettox::corpus {

// Lowercases, strips punctuation, lemmatizes and removes stopwords, then
// tags adjectives on the lemma. Words listed in `keep_words` survive the
// stopword filter (attribute pronouns such as "she"/"her" are stopwords in
// the standard list but are needed for the pronoun analysis).
//
// Immutable after construction; safe for concurrent use.
class Preprocessor {
 public:
  explicit Preprocessor(LanguageResources resources, std::vector<std::string> keep_words = {});

  // Splits into raw lowercase word tokens. Punctuation-only pieces are gone;
  // stopwords and inflections are untouched.
  std::vector<std::string> tokenize(std::string_view sentence) const;

  TokenizedSentence preprocess(std::string_view sentence, std::string source_comment = {}) const;

  // Segments a comment body and preprocesses each sentence; sentences that
  // reduce to zero tokens are omitted.
  std::vector<TokenizedSentence> process_comment(std::string_view body,
                                                 const std::string& comment_id) const;

  // All lemma tokens of a comment in order (the document unit for TF-IDF).
  std::vector<std::string> comment_tokens(std::string_view body) const;

  const SentenceSplitter& splitter() const { return splitter_; }
  const LanguageResources& resources() const { return resources_; }
  bool is_kept(std::string_view word) const { return keep_.find(word) != keep_.end(); }

 private:
  LanguageResources resources_;
  SentenceSplitter splitter_;
  WordSet keep_;
};

// Runs process_comment over every comment. With threads > 1 the work is
// split into contiguous chunks and merged back in input order, so the result
// does not depend on the thread count.
PreparedArchive prepare_archive(const std::vector<RawComment>& comments,
                                const Preprocessor& preprocessor, std::string community,
                                unsigned threads = 1);

}  // namespace targettox::corpus
