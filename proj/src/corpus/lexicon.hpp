#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace targettox::corpus {

// Transparent hashing so lookups take string_view without allocating.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

using WordSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

WordSet load_word_set(const std::filesystem::path& path);

// Inflected form -> lemma, with identity fallback. Tables are required to be
// idempotent: no lemma may itself appear as an inflected form.
class LemmaTable {
 public:
  LemmaTable() = default;
  explicit LemmaTable(std::unordered_map<std::string, std::string> entries);

  static LemmaTable load(const std::filesystem::path& tsv);

  std::string_view lemma(std::string_view form) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string, StringHash, std::equal_to<>> entries_;
};

// Decides whether a lemma is an adjective. Implementations must be safe for
// concurrent const use.
class AdjectiveTagger {
 public:
  virtual ~AdjectiveTagger() = default;
  virtual bool is_adjective(std::string_view lemma) const = 0;
};

class LexiconTagger final : public AdjectiveTagger {
 public:
  explicit LexiconTagger(WordSet adjectives) : adjectives_(std::move(adjectives)) {}
  bool is_adjective(std::string_view lemma) const override {
    return adjectives_.find(lemma) != adjectives_.end();
  }
  const WordSet& words() const { return adjectives_; }

 private:
  WordSet adjectives_;
};

struct LanguageResources {
  WordSet stopwords;
  LemmaTable lemmas;
  std::shared_ptr<const AdjectiveTagger> tagger;
  std::vector<std::string> abbreviations;
};

struct ResourcePaths {
  std::filesystem::path stopwords;
  std::filesystem::path lemmas;
  std::filesystem::path adjectives;
  std::filesystem::path abbreviations;
};

LanguageResources load_resources(const ResourcePaths& paths);

}  // namespace targettox::corpus
