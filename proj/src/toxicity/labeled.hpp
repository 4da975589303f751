#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace targettox::toxicity {

constexpr int kNonToxic = 0;
constexpr int kToxic = 1;

struct LabeledComment {
  std::string text;
  int label = kNonToxic;
  std::string source;

  bool operator==(const LabeledComment&) const = default;
};

struct LabeledData {
  std::vector<LabeledComment> items;
  std::size_t total_records = 0;
  std::size_t skipped_records = 0;
};

// CSV with a header containing `text` and `label`, or JSONL objects with the
// same keys. Records with empty text or a label outside {0,1} are skipped.
// The source tag defaults to the file stem.
LabeledData load_labeled(const std::filesystem::path& path);

struct Split {
  std::vector<LabeledComment> train;
  std::vector<LabeledComment> test;
};

// Per-class seeded shuffle; round(train_fraction * class size) of each class
// goes to train. Both halves keep input order.
Split split_stratified(const std::vector<LabeledComment>& data, double train_fraction,
                       std::uint64_t seed);

// Duplicates seeded draws (with replacement) of the minority class until both
// classes have equal counts. Originals come first, in input order.
std::vector<LabeledComment> upsample(const std::vector<LabeledComment>& data, std::uint64_t seed);

// Same draw as upsample(), expressed as indices into `labels`.
std::vector<std::size_t> upsample_indices(const std::vector<int>& labels, std::uint64_t seed);

}  // namespace targettox::toxicity
