#include "embedding/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "util/error.hpp"
#include "util/text_io.hpp"

namespace targettox::embedding {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'T', 'T', 'X', 'E', 'M', 'B', '0', '1'};

template <class T>
void put_le(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(bytes, sizeof(T));
}

class Reader {
 public:
  Reader(std::string_view data, std::string name) : data_(data), name_(std::move(name)) {}

  template <class T>
  T get() {
    need(sizeof(T));
    char bytes[sizeof(T)];
    std::memcpy(bytes, data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    pos_ += sizeof(T);
    T v;
    std::memcpy(&v, bytes, sizeof(T));
    return v;
  }

  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) fail(ErrorKind::Format, name_ + ": truncated embedding file");
  }

  std::string_view data_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

void EmbeddingConfig::validate() const {
  std::string problems;
  if (dimensions < 2) problems += " dimensions>=2;";
  if (window < 1) problems += " window>=1;";
  if (negative_samples < 1) problems += " negative_samples>=1;";
  if (min_count < 1) problems += " min_count>=1;";
  if (epochs < 1) problems += " epochs>=1;";
  if (!(initial_learning_rate > 0)) problems += " initial_learning_rate>0;";
  if (workers < 1) problems += " workers>=1;";
  if (!problems.empty()) fail(ErrorKind::InvalidArgument, "invalid embedding config, need:" + problems);
}

json EmbeddingConfig::to_json() const {
  return {{"dimensions", dimensions},
          {"window", window},
          {"negative_samples", negative_samples},
          {"min_count", min_count},
          {"epochs", epochs},
          {"initial_learning_rate", initial_learning_rate},
          {"seed", seed},
          {"workers", workers},
          {"mode", workers == 1 ? "deterministic" : "concurrent"}};
}

EmbeddingConfig EmbeddingConfig::from_json(const json& j) {
  EmbeddingConfig c;
  c.dimensions = j.at("dimensions").get<int>();
  c.window = j.at("window").get<int>();
  c.negative_samples = j.at("negative_samples").get<int>();
  c.min_count = j.at("min_count").get<std::uint64_t>();
  c.epochs = j.at("epochs").get<int>();
  c.initial_learning_rate = j.at("initial_learning_rate").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.workers = j.value("workers", 1);
  return c;
}

EmbeddingModel::EmbeddingModel(std::vector<std::string> words, std::vector<std::uint64_t> counts,
                               std::vector<float> vectors, EmbeddingConfig config,
                               std::uint64_t trained_token_count, std::vector<double> epoch_loss)
    : words_(std::move(words)),
      counts_(std::move(counts)),
      vectors_(std::move(vectors)),
      config_(config),
      trained_token_count_(trained_token_count),
      epoch_loss_(std::move(epoch_loss)) {
  config_.validate();
  if (counts_.size() != words_.size() ||
      vectors_.size() != words_.size() * static_cast<std::size_t>(config_.dimensions)) {
    fail(ErrorKind::InvalidArgument, "embedding matrix shape does not match the vocabulary");
  }
  for (float f : vectors_) {
    if (!std::isfinite(f)) fail(ErrorKind::Numeric, "embedding contains a non-finite entry");
  }
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      fail(ErrorKind::InvalidArgument, "duplicate embedding word '" + words_[i] + "'");
    }
  }
}

std::optional<std::uint32_t> EmbeddingModel::index_of(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingModel::row(std::uint32_t i) const {
  const auto d = static_cast<std::size_t>(config_.dimensions);
  return std::span<const float>(vectors_).subspan(i * d, d);
}

std::optional<std::span<const float>> EmbeddingModel::vector(std::string_view word) const {
  auto i = index_of(word);
  if (!i) return std::nullopt;
  return row(*i);
}

void EmbeddingModel::save(const std::filesystem::path& path) const {
  json header = {{"format", kEmbeddingFormat},
                 {"config", config_.to_json()},
                 {"vocab_size", words_.size()},
                 {"trained_token_count", trained_token_count_},
                 {"epoch_loss", epoch_loss_}};
  std::string h = header.dump();
  std::string out(kMagic, sizeof(kMagic));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(h.size()));
  out += h;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(words_[i].size()));
    out += words_[i];
    put_le<std::uint64_t>(out, counts_[i]);
  }
  out.reserve(out.size() + vectors_.size() * 4);
  for (float f : vectors_) put_le<float>(out, f);
  write_file_atomic(path, out);
}

EmbeddingModel EmbeddingModel::load(const std::filesystem::path& path) {
  const std::string data = read_text_file(path);
  Reader r(data, path.string());
  if (r.bytes(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    fail(ErrorKind::Format, path.string() + " is not a targettox embedding file");
  }
  auto hlen = r.get<std::uint32_t>();
  auto header = json::parse(r.bytes(hlen), nullptr, false);
  if (header.is_discarded() || header.value("format", "") != kEmbeddingFormat) {
    fail(ErrorKind::Format, path.string() + ": bad embedding header");
  }
  try {
    auto config = EmbeddingConfig::from_json(header.at("config"));
    auto n = header.at("vocab_size").get<std::size_t>();
    std::vector<std::string> words;
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < n; ++i) {
      auto len = r.get<std::uint32_t>();
      words.emplace_back(r.bytes(len));
      counts.push_back(r.get<std::uint64_t>());
    }
    std::vector<float> vectors(n * static_cast<std::size_t>(config.dimensions));
    for (auto& f : vectors) f = r.get<float>();
    if (!r.done()) fail(ErrorKind::Format, path.string() + ": trailing bytes after matrix");
    return EmbeddingModel(std::move(words), std::move(counts), std::move(vectors), config,
                          header.at("trained_token_count").get<std::uint64_t>(),
                          header.value("epoch_loss", std::vector<double>{}));
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, path.string() + ": " + e.what());
  }
}

void EmbeddingModel::export_text(const std::filesystem::path& path) const {
  std::string out;
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    out += words_[i];
    for (float f : row(i)) {
      out += ' ';
      out += format_double(static_cast<double>(f));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace targettox::embedding
