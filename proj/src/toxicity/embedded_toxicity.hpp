#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus/types.hpp"

namespace targettox::toxicity {

// word -> ids of the sentences that contain it, each id at most once.
using SentenceIndex = std::map<std::string, std::vector<std::size_t>, std::less<>>;

// Indexes the words accepted by `keep` (all words when empty).
SentenceIndex index_sentences(const std::vector<corpus::TokenizedSentence>& sentences,
                              const std::function<bool(std::string_view)>& keep = {});

// Mean label over the sentences containing each word. Words with no
// containing sentence are left out.
std::map<std::string, double, std::less<>> embedded_toxicity(std::span<const int> labels,
                                                             const SentenceIndex& index);

}  // namespace targettox::toxicity
