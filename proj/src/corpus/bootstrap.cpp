#include "corpus/bootstrap.hpp"

#include "util/error.hpp"
#include "util/rng.hpp"

namespace targettox::corpus {

CorpusSample bootstrap_sample(const PreparedArchive& archive, std::size_t n, std::uint64_t seed) {
  if (archive.comments.empty()) {
    fail(ErrorKind::Data, "cannot bootstrap from an empty archive (" + archive.community + ")");
  }
  if (n == 0) fail(ErrorKind::InvalidArgument, "bootstrap sample size must be >= 1");

  CorpusSample sample;
  sample.seed = seed;
  sample.sample_size_comments = n;
  sample.community = archive.community;
  sample.draws.reserve(n);

  Rng rng(derive_seed(seed, 0x626f6f74));  // "boot"
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t idx = rng.uniform_index(archive.comments.size());
    sample.draws.push_back(idx);
    for (const auto& s : archive.comments[idx].sentences) sample.sentences.push_back(s);
  }
  return sample;
}

std::string serialize(const CorpusSample& sample) {
  std::string out;
  out += "community=" + sample.community + "\n";
  out += "seed=" + std::to_string(sample.seed) + "\n";
  out += "n=" + std::to_string(sample.sample_size_comments) + "\n";
  out += "draws=";
  for (std::size_t i = 0; i < sample.draws.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sample.draws[i]);
  }
  out += '\n';
  for (const auto& s : sample.sentences) {
    out += s.source_comment;
    out += '\t';
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      if (i) out += ' ';
      out += s.tokens[i];
    }
    out += '\t';
    for (std::size_t i = 0; i < s.adjective_indices.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s.adjective_indices[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace targettox::corpus
