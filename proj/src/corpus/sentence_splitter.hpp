#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace targettox::corpus {

// Rule-based segmenter. A sentence ends at a newline, or after a run of
// '.', '!', '?' (plus closing quotes/brackets) that is followed by
// whitespace or end of text, unless the word carrying a single '.' is a
// listed abbreviation ("e.g.", "dr.").
class SentenceSplitter {
 public:
  SentenceSplitter() = default;
  explicit SentenceSplitter(const std::vector<std::string>& abbreviations);

  std::vector<std::string> split(std::string_view body) const;

 private:
  bool is_abbreviation(std::string_view text, std::size_t period) const;

  std::unordered_set<std::string> abbreviations_;
};

}  // namespace targettox::corpus
