#include "bias/bias.hpp"

#include <set>

#include "embedding/cosine.hpp"
#include "util/error.hpp"

namespace targettox::bias {

void AttributeSet::validate() const {
  if (words.empty()) fail(ErrorKind::Config, "attribute set '" + name + "' is empty");
  std::set<std::string_view> seen;
  for (const auto& w : words) {
    if (w.empty()) fail(ErrorKind::Config, "attribute set '" + name + "' contains an empty word");
    if (!seen.insert(w).second) {
      fail(ErrorKind::Config, "attribute set '" + name + "' repeats '" + w + "'");
    }
  }
}

void AttributePair::validate() const {
  if (name.empty()) fail(ErrorKind::Config, "attribute pair needs a name");
  a.validate();
  b.validate();
}

std::vector<AttributePair> default_pairs() {
  return {
      {"identity",
       {"male", {"male", "man", "boy", "masculinity", "masculine", "dad", "father", "son"}},
       {"female", {"female", "woman", "girl", "femininity", "feminine", "mom", "mother", "daughter"}}},
      {"pronoun", {"male", {"he", "him", "his"}}, {"female", {"she", "her", "hers"}}},
  };
}

Centroid centroid(const embedding::EmbeddingModel& model, const AttributeSet& set,
                  CentroidWeighting weighting) {
  Centroid c;
  c.vector.assign(static_cast<std::size_t>(model.dimensions()), 0.0);
  double total = 0.0;
  for (const auto& w : set.words) {
    auto i = model.index_of(w);
    if (!i) {
      c.oov.push_back(w);
      continue;
    }
    c.used.push_back(w);
    const double weight =
        weighting == CentroidWeighting::Frequency ? static_cast<double>(model.count(*i)) : 1.0;
    auto row = model.row(*i);
    for (std::size_t d = 0; d < row.size(); ++d) c.vector[d] += weight * row[d];
    total += weight;
  }
  if (c.used.empty()) {
    fail(ErrorKind::Data, "attribute set '" + set.name + "' has no word in the embedding vocabulary");
  }
  for (auto& x : c.vector) x /= total;
  return c;
}

BiasProbe::BiasProbe(const embedding::EmbeddingModel& model, const AttributePair& pair,
                     CentroidWeighting weighting)
    : model_(model), a_(centroid(model, pair.a, weighting)), b_(centroid(model, pair.b, weighting)) {}

std::optional<double> BiasProbe::bias(std::string_view word) const {
  auto v = model_.vector(word);
  if (!v) return std::nullopt;
  std::vector<double> w(v->begin(), v->end());
  return embedding::cosine(std::span<const double>(w), std::span<const double>(a_.vector)) -
         embedding::cosine(std::span<const double>(w), std::span<const double>(b_.vector));
}

std::optional<double> embedding_bias(const embedding::EmbeddingModel& model, std::string_view word,
                                     const AttributePair& pair, CentroidWeighting weighting) {
  return BiasProbe(model, pair, weighting).bias(word);
}

Partition partition_by_bias(const std::vector<std::string>& adjectives, const BiasProbe& probe) {
  Partition p;
  for (const auto& w : adjectives) {
    auto b = probe.bias(w);
    if (!b) p.oov.push_back(w);
    else if (*b > 0) p.toward_a.emplace(w, *b);
    else if (*b < 0) p.toward_b.emplace(w, *b);
    else p.zero.push_back(w);
  }
  return p;
}

nlohmann::json to_json(const AttributePair& pair) {
  return {{"name", pair.name},
          {"a", {{"name", pair.a.name}, {"words", pair.a.words}}},
          {"b", {{"name", pair.b.name}, {"words", pair.b.words}}}};
}

}  // namespace targettox::bias
