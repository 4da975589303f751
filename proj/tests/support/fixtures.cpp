#include "support/fixtures.hpp"

#include "bias/bias.hpp"

namespace targettox::testing {

namespace fs = std::filesystem;

fs::path data_path(std::string_view relative) { return fs::path(TARGETTOX_DATA_DIR) / relative; }

corpus::LanguageResources default_resources() {
  return corpus::load_resources({data_path("lexicon/stopwords_en.txt"), data_path("lexicon/lemmas_en.tsv"),
                                 data_path("lexicon/adjectives_en.txt"),
                                 data_path("lexicon/abbreviations_en.txt")});
}

corpus::Preprocessor default_preprocessor() {
  std::vector<std::string> keep;
  for (const auto& p : bias::default_pairs()) {
    keep.insert(keep.end(), p.a.words.begin(), p.a.words.end());
    keep.insert(keep.end(), p.b.words.begin(), p.b.words.end());
  }
  return corpus::Preprocessor(default_resources(), keep);
}

fs::path scratch_dir(std::string_view name) {
  auto dir = fs::current_path() / "test_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string base_config_text(const fs::path& out_dir) {
  return "schema = targettox.config/1\n"
         "seed = 1\n"
         "[paths]\n"
         "lexicon_dir = " + data_path("lexicon").string() + "\n"
         "labeled = " + data_path("labeled/toxicity_20k.csv").string() + "\n"
         "output_dir = " + out_dir.string() + "\n";
}

int LexiconScorer::label(const corpus::TokenizedSentence& s) const {
  for (const auto& t : s.tokens) {
    if (toxic_.find(t) != toxic_.end()) return 1;
  }
  return 0;
}

}  // namespace targettox::testing
