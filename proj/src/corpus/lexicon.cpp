#include "corpus/lexicon.hpp"

#include "util/error.hpp"
#include "util/text_io.hpp"

namespace targettox::corpus {

WordSet load_word_set(const std::filesystem::path& path) {
  WordSet out;
  for (auto& w : read_word_list(path)) out.insert(to_lower_ascii(w));
  return out;
}

LemmaTable::LemmaTable(std::unordered_map<std::string, std::string> entries) {
  for (auto& [form, lemma] : entries) {
    if (form != lemma) entries_.emplace(form, lemma);
  }
  for (const auto& [form, lemma] : entries_) {
    if (entries_.find(lemma) != entries_.end()) {
      fail(ErrorKind::Format, "lemma table is not idempotent: '" + form + "' -> '" + lemma +
                                  "' but '" + lemma + "' is itself mapped");
    }
  }
}

LemmaTable LemmaTable::load(const std::filesystem::path& tsv) {
  std::unordered_map<std::string, std::string> entries;
  for (const auto& line : read_word_list(tsv)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      fail(ErrorKind::Format, tsv.string() + ": expected form<TAB>lemma, got '" + line + "'");
    }
    auto form = to_lower_ascii(trim(std::string_view(line).substr(0, tab)));
    auto lemma = to_lower_ascii(trim(std::string_view(line).substr(tab + 1)));
    if (form.empty() || lemma.empty()) {
      fail(ErrorKind::Format, tsv.string() + ": empty form or lemma in '" + line + "'");
    }
    entries[form] = lemma;
  }
  return LemmaTable(std::move(entries));
}

std::string_view LemmaTable::lemma(std::string_view form) const {
  auto it = entries_.find(form);
  return it == entries_.end() ? form : std::string_view(it->second);
}

LanguageResources load_resources(const ResourcePaths& paths) {
  LanguageResources r;
  r.stopwords = load_word_set(paths.stopwords);
  r.lemmas = LemmaTable::load(paths.lemmas);
  r.tagger = std::make_shared<LexiconTagger>(load_word_set(paths.adjectives));
  if (!paths.abbreviations.empty()) r.abbreviations = read_word_list(paths.abbreviations);
  return r;
}

}  // namespace targettox::corpus
