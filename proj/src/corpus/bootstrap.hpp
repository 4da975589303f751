#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "corpus/types.hpp"

namespace targettox::corpus {

// Draws n comments uniformly with replacement; every sentence of a drawn
// comment is appended once per draw. Deterministic in (archive, n, seed).
CorpusSample bootstrap_sample(const PreparedArchive& archive, std::size_t n, std::uint64_t seed);

// Canonical byte serialization, used to check sample identity.
std::string serialize(const CorpusSample& sample);

}  // namespace targettox::corpus
