#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "app/config.hpp"
#include "corpus/lexicon.hpp"
#include "corpus/preprocess.hpp"
#include "toxicity/classifier.hpp"

namespace targettox::testing {

std::filesystem::path data_path(std::string_view relative);

corpus::LanguageResources default_resources();

// Bundled lexicons; every attribute word of the default pairs is kept.
corpus::Preprocessor default_preprocessor();

// Fresh, empty directory under the working directory.
std::filesystem::path scratch_dir(std::string_view name);

// Config text pointing at the bundled lexicons and labeled data.
std::string base_config_text(const std::filesystem::path& out_dir);

// Labels a sentence toxic when any token is in the given set.
class LexiconScorer final : public toxicity::SentenceScorer {
 public:
  explicit LexiconScorer(std::vector<std::string> toxic) : toxic_(toxic.begin(), toxic.end()) {}
  int label(const corpus::TokenizedSentence& s) const override;
  std::string name() const override { return "lexicon"; }

 private:
  std::set<std::string, std::less<>> toxic_;
};

}  // namespace targettox::testing
