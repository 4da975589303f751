#include "toxicity/embedded_toxicity.hpp"

#include <unordered_set>

#include "util/error.hpp"

namespace targettox::toxicity {

SentenceIndex index_sentences(const std::vector<corpus::TokenizedSentence>& sentences,
                              const std::function<bool(std::string_view)>& keep) {
  SentenceIndex index;
  std::unordered_set<std::string_view> seen;
  for (std::size_t j = 0; j < sentences.size(); ++j) {
    seen.clear();
    for (const auto& t : sentences[j].tokens) {
      if (!seen.insert(t).second) continue;
      if (keep && !keep(t)) continue;
      auto it = index.find(t);
      if (it == index.end()) it = index.emplace(t, std::vector<std::size_t>{}).first;
      it->second.push_back(j);
    }
  }
  return index;
}

std::map<std::string, double, std::less<>> embedded_toxicity(std::span<const int> labels,
                                                             const SentenceIndex& index) {
  std::map<std::string, double, std::less<>> out;
  for (const auto& [word, ids] : index) {
    if (ids.empty()) continue;
    std::size_t toxic = 0;
    for (std::size_t j : ids) {
      if (j >= labels.size()) {
        fail(ErrorKind::InvalidArgument, "sentence " + std::to_string(j) + " has no label");
      }
      toxic += labels[j] == 1 ? 1 : 0;
    }
    out.emplace(word, static_cast<double>(toxic) / static_cast<double>(ids.size()));
  }
  return out;
}

}  // namespace targettox::toxicity
