#include "support/planted.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "support/fixtures.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace targettox::testing {

WordClasses WordClasses::load() {
  auto j = nlohmann::json::parse(read_text_file(data_path("synthetic/wordclasses.json")));
  WordClasses w;
  w.male_identity = j.at("male_identity").get<std::vector<std::string>>();
  w.female_identity = j.at("female_identity").get<std::vector<std::string>>();
  w.male_pronouns = j.at("male_pronouns").get<std::vector<std::string>>();
  w.female_pronouns = j.at("female_pronouns").get<std::vector<std::string>>();
  w.toxic_adjectives = j.at("toxic_adjectives").get<std::vector<std::string>>();
  w.neutral_adjectives = j.at("neutral_adjectives").get<std::vector<std::string>>();
  w.neutral_nouns = j.at("neutral_nouns").get<std::vector<std::string>>();
  w.neutral_verbs = j.at("neutral_verbs").get<std::vector<std::string>>();
  w.insults = j.at("insults").get<std::vector<std::string>>();
  return w;
}

std::vector<std::string> concat(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  auto out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<std::string> slice(const std::vector<std::string>& v, std::size_t first, std::size_t count) {
  return {v.begin() + static_cast<std::ptrdiff_t>(first),
          v.begin() + static_cast<std::ptrdiff_t>(std::min(v.size(), first + count))};
}

namespace {

std::size_t zipf_index(Rng& rng, std::size_t n) {
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm += 1.0 / static_cast<double>(i + 1);
  double u = rng.uniform01() * norm;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    u -= 1.0 / static_cast<double>(i + 1);
    if (u < 0) return i;
  }
  return n - 1;
}

}  // namespace

corpus::PreparedArchive planted_archive(const PlantedSpec& spec, const WordClasses& words,
                                        const std::string& community) {
  Rng rng(spec.seed);
  double total = 0.0;
  for (const auto& g : spec.groups) total += g.weight;
  std::set<std::string> adjectives;
  for (const auto& g : spec.groups) adjectives.insert(g.adjectives.begin(), g.adjectives.end());
  const auto fillers = concat(words.neutral_nouns, words.neutral_verbs);

  corpus::PreparedArchive archive;
  archive.community = community;
  for (std::size_t c = 0; c < spec.comments; ++c) {
    corpus::PreparedComment comment;
    comment.id = community + "-" + std::to_string(c);
    for (std::size_t s = 0; s < spec.sentences_per_comment; ++s) {
      double u = rng.uniform01() * total;
      std::size_t gi = 0;
      while (gi + 1 < spec.groups.size() && u >= spec.groups[gi].weight) u -= spec.groups[gi++].weight;
      const auto& g = spec.groups[gi];

      std::vector<std::string> tokens;
      auto anchors = g.anchor_words;
      rng.shuffle(anchors.begin(), anchors.end());
      for (std::size_t a = 0; a < std::min(g.anchors, anchors.size()); ++a) tokens.push_back(anchors[a]);
      if (!g.adjectives.empty()) tokens.push_back(g.adjectives[g.zipf ? zipf_index(rng, g.adjectives.size())
                                                                     : rng.uniform_index(g.adjectives.size())]);
      for (std::size_t f = 0; f < spec.fillers; ++f) tokens.push_back(fillers[rng.uniform_index(fillers.size())]);
      if (spec.insult_rate > 0 && rng.uniform01() < spec.insult_rate) {
        tokens.push_back(words.insults[rng.uniform_index(words.insults.size())]);
      }
      rng.shuffle(tokens.begin(), tokens.end());

      corpus::TokenizedSentence sentence;
      sentence.source_comment = comment.id;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (adjectives.count(tokens[i])) sentence.adjective_indices.push_back(i);
      }
      sentence.tokens = std::move(tokens);
      comment.sentences.push_back(std::move(sentence));
    }
    archive.comments.push_back(std::move(comment));
  }
  return archive;
}

std::vector<corpus::TokenizedSentence> all_sentences(const corpus::PreparedArchive& archive) {
  std::vector<corpus::TokenizedSentence> out;
  for (const auto& c : archive.comments) out.insert(out.end(), c.sentences.begin(), c.sentences.end());
  return out;
}

}  // namespace targettox::testing
