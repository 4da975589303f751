#include "toxicity/labeled.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "json.hpp"
#include "util/csv.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace targettox::toxicity {

namespace {

std::optional<int> parse_label(std::string_view s) {
  s = trim(s);
  if (s == "0") return kNonToxic;
  if (s == "1") return kToxic;
  return std::nullopt;
}

void add(LabeledData& out, std::string text, std::optional<int> label, const std::string& source) {
  if (!label || trim(text).empty() || !is_valid_utf8(text)) {
    ++out.skipped_records;
    return;
  }
  out.items.push_back({std::move(text), *label, source});
}

}  // namespace

LabeledData load_labeled(const std::filesystem::path& path) {
  const std::string content = read_text_file(path);
  std::filesystem::path name = path.filename();
  if (name.extension() == ".gz") name = name.stem();
  const std::string source = name.stem().string();
  LabeledData out;

  if (name.extension() == ".csv") {
    CsvReader reader(content);
    std::vector<std::string> fields;
    bool ok = true;
    if (!reader.next(fields, ok) || !ok) fail(ErrorKind::Format, path.string() + ": missing header");
    auto find = [&](std::string_view col) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (trim(fields[i]) == col) return i;
      }
      return std::nullopt;
    };
    auto text_col = find("text");
    auto label_col = find("label");
    if (!text_col || !label_col) {
      fail(ErrorKind::Format, path.string() + ": header must name 'text' and 'label' columns");
    }
    const std::size_t width = fields.size();
    while (reader.next(fields, ok)) {
      ++out.total_records;
      if (!ok || fields.size() != width) {
        ++out.skipped_records;
        continue;
      }
      add(out, std::move(fields[*text_col]), parse_label(fields[*label_col]), source);
    }
  } else {
    std::size_t pos = 0;
    while (pos < content.size()) {
      auto nl = content.find('\n', pos);
      if (nl == std::string::npos) nl = content.size();
      std::string_view line(content.data() + pos, nl - pos);
      pos = nl + 1;
      if (trim(line).empty()) continue;
      ++out.total_records;
      auto obj = nlohmann::json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object() || !obj.contains("text") ||
          !obj["text"].is_string() || !obj.contains("label")) {
        ++out.skipped_records;
        continue;
      }
      std::optional<int> label;
      const auto& l = obj["label"];
      if (l.is_number_integer()) {
        auto v = l.get<std::int64_t>();
        if (v == 0 || v == 1) label = static_cast<int>(v);
      } else if (l.is_string()) {
        label = parse_label(l.get<std::string>());
      }
      add(out, obj["text"].get<std::string>(), label, source);
    }
  }
  if (out.total_records > 0 && 2 * out.skipped_records > out.total_records) {
    fail(ErrorKind::Format, "format mismatch: " + std::to_string(out.skipped_records) + " of " +
                                std::to_string(out.total_records) + " labeled records in " +
                                path.string() + " are malformed");
  }
  return out;
}

Split split_stratified(const std::vector<LabeledComment>& data, double train_fraction,
                       std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    fail(ErrorKind::InvalidArgument, "train fraction must lie in (0, 1)");
  }
  std::vector<char> in_train(data.size(), 0);
  for (int cls : {kNonToxic, kToxic}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data[i].label == cls) idx.push_back(i);
    }
    Rng rng(derive_seed(seed, 0x73706c74u + static_cast<unsigned>(cls)));
    rng.shuffle(idx.begin(), idx.end());
    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < n_train; ++k) in_train[idx[k]] = 1;
  }
  Split out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (in_train[i] ? out.train : out.test).push_back(data[i]);
  }
  return out;
}

std::vector<std::size_t> upsample_indices(const std::vector<int>& labels, std::uint64_t seed) {
  std::vector<std::size_t> toxic, clean;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == kToxic ? toxic : clean).push_back(i);
  }
  if (toxic.empty() || clean.empty()) {
    fail(ErrorKind::Data, "upsampling needs both classes; got " + std::to_string(toxic.size()) +
                              " toxic and " + std::to_string(clean.size()) + " non-toxic");
  }
  std::vector<std::size_t> out(labels.size());
  std::iota(out.begin(), out.end(), 0);
  const auto& minority = toxic.size() < clean.size() ? toxic : clean;
  const std::size_t deficit = std::max(toxic.size(), clean.size()) - minority.size();
  Rng rng(derive_seed(seed, 0x7570736du));  // "upsm"
  for (std::size_t k = 0; k < deficit; ++k) {
    out.push_back(minority[rng.uniform_index(minority.size())]);
  }
  return out;
}

std::vector<LabeledComment> upsample(const std::vector<LabeledComment>& data, std::uint64_t seed) {
  std::vector<int> labels;
  labels.reserve(data.size());
  for (const auto& d : data) labels.push_back(d.label);
  std::vector<LabeledComment> out;
  for (std::size_t i : upsample_indices(labels, seed)) out.push_back(data[i]);
  return out;
}

}  // namespace targettox::toxicity
