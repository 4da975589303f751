#include "targettox/targettox.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "bias/bias.hpp"
#include "corpus/preprocess.hpp"
#include "embedding/cosine.hpp"
#include "embedding/model.hpp"
#include "indicator/indicator.hpp"
#include "toxicity/classifier.hpp"
#include "toxicity/evaluation.hpp"
#include "util/error.hpp"
#include "validation/mixture.hpp"

using namespace targettox;

struct ttx_config {
  app::RunConfig config;
};

struct ttx_classifier {
  corpus::Preprocessor preprocessor;
  toxicity::ToxicityClassifier model;
};

struct ttx_archive {
  corpus::PreparedArchive archive;
  std::size_t sentences = 0;
};

struct ttx_embedding {
  embedding::EmbeddingModel model;
};

namespace {

thread_local std::string last_error;

ttx_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return TTX_ERR_INVALID_ARGUMENT;
    case ErrorKind::Io: return TTX_ERR_IO;
    case ErrorKind::Format: return TTX_ERR_FORMAT;
    case ErrorKind::Config: return TTX_ERR_CONFIG;
    case ErrorKind::Numeric: return TTX_ERR_NUMERIC;
    case ErrorKind::Data: return TTX_ERR_DATA;
    case ErrorKind::Threshold: return TTX_ERR_THRESHOLD;
  }
  return TTX_ERR_INTERNAL;
}

template <class F>
ttx_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return TTX_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TTX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TTX_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (!p) fail(ErrorKind::InvalidArgument, std::string(name) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ttx_version(void) { return app::tool_version(); }

const char* ttx_last_error(void) { return last_error.c_str(); }

void ttx_string_free(char* s) { std::free(s); }

ttx_status ttx_config_load(const char* path, ttx_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new ttx_config{app::load_config(path)};
  });
}

ttx_status ttx_config_parse(const char* text, const char* base_dir, ttx_config** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new ttx_config{app::parse_config(text, base_dir ? base_dir : ".")};
  });
}

ttx_status ttx_config_set(ttx_config* config, const char* key, const char* value) {
  return guard([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.set(key, value, std::filesystem::current_path());
  });
}

ttx_status ttx_config_to_json(const ttx_config* config, char** out_json) {
  return guard([&] {
    require(config, "config");
    require(out_json, "out_json");
    *out_json = dup_string(config->config.to_json().dump(2));
  });
}

void ttx_config_free(ttx_config* config) { delete config; }

ttx_status ttx_command_from_name(const char* name, ttx_command* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const std::string n = name;
    if (n == "ingest-stats") *out = TTX_CMD_INGEST_STATS;
    else if (n == "train-toxicity") *out = TTX_CMD_TRAIN_TOXICITY;
    else if (n == "analyze") *out = TTX_CMD_ANALYZE;
    else if (n == "compare") *out = TTX_CMD_COMPARE;
    else if (n == "validate") *out = TTX_CMD_VALIDATE;
    else fail(ErrorKind::InvalidArgument, "unknown command '" + n + "'");
  });
}

ttx_status ttx_run_command(const ttx_config* config, ttx_command command, char** out_json) {
  return guard([&] {
    require(config, "config");
    require(out_json, "out_json");
    app::Command c;
    switch (command) {
      case TTX_CMD_INGEST_STATS: c = app::Command::IngestStats; break;
      case TTX_CMD_TRAIN_TOXICITY: c = app::Command::TrainToxicity; break;
      case TTX_CMD_ANALYZE: c = app::Command::Analyze; break;
      case TTX_CMD_COMPARE: c = app::Command::Compare; break;
      case TTX_CMD_VALIDATE: c = app::Command::Validate; break;
      default: fail(ErrorKind::InvalidArgument, "unknown command code");
    }
    *out_json = dup_string(app::run_command(c, config->config).dump(2));
  });
}

ttx_status ttx_classifier_load(const char* model_path, const ttx_config* config, ttx_classifier** out) {
  return guard([&] {
    require(model_path, "model_path");
    require(config, "config");
    require(out, "out");
    *out = new ttx_classifier{app::make_preprocessor(config->config),
                              toxicity::ToxicityClassifier::load(model_path)};
  });
}

ttx_status ttx_classifier_predict(const ttx_classifier* classifier, const char* sentence, int* label,
                                  double* probability) {
  return guard([&] {
    require(classifier, "classifier");
    require(sentence, "sentence");
    auto s = classifier->preprocessor.preprocess(sentence);
    const double p = classifier->model.probability(s.tokens);
    if (label) *label = p >= classifier->model.threshold() ? 1 : 0;
    if (probability) *probability = p;
  });
}

void ttx_classifier_free(ttx_classifier* classifier) { delete classifier; }

ttx_status ttx_archive_load(const char* path, const ttx_config* config, ttx_archive** out) {
  return guard([&] {
    require(path, "path");
    require(config, "config");
    require(out, "out");
    auto pre = app::make_preprocessor(config->config);
    auto loaded = app::load_archive(path, config->config, pre);
    std::size_t sentences = 0;
    for (const auto& c : loaded.archive.comments) sentences += c.sentences.size();
    *out = new ttx_archive{std::move(loaded.archive), sentences};
  });
}

ttx_status ttx_archive_info(const ttx_archive* archive, size_t* comments, size_t* sentences) {
  return guard([&] {
    require(archive, "archive");
    if (comments) *comments = archive->archive.comments.size();
    if (sentences) *sentences = archive->sentences;
  });
}

void ttx_archive_free(ttx_archive* archive) { delete archive; }

ttx_status ttx_embedding_train(const ttx_archive* archive, const ttx_config* config, ttx_embedding** out) {
  return guard([&] {
    require(archive, "archive");
    require(config, "config");
    require(out, "out");
    std::vector<corpus::TokenizedSentence> sentences;
    for (const auto& c : archive->archive.comments) {
      sentences.insert(sentences.end(), c.sentences.begin(), c.sentences.end());
    }
    auto cfg = config->config.embedding;
    if (config->config.deterministic) cfg.workers = 1;
    *out = new ttx_embedding{embedding::train_cbow(sentences, cfg)};
  });
}

ttx_status ttx_embedding_load(const char* path, ttx_embedding** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new ttx_embedding{embedding::EmbeddingModel::load(path)};
  });
}

ttx_status ttx_embedding_save(const ttx_embedding* embedding, const char* path) {
  return guard([&] {
    require(embedding, "embedding");
    require(path, "path");
    embedding->model.save(path);
  });
}

size_t ttx_embedding_dimensions(const ttx_embedding* embedding) {
  return embedding ? static_cast<size_t>(embedding->model.dimensions()) : 0;
}

size_t ttx_embedding_size(const ttx_embedding* embedding) {
  return embedding ? embedding->model.size() : 0;
}

ttx_status ttx_embedding_vector(const ttx_embedding* embedding, const char* word, float* out, int* found) {
  return guard([&] {
    require(embedding, "embedding");
    require(word, "word");
    require(found, "found");
    auto v = embedding->model.vector(word);
    *found = v ? 1 : 0;
    if (v) {
      require(out, "out");
      std::copy(v->begin(), v->end(), out);
    }
  });
}

ttx_status ttx_embedding_bias(const ttx_embedding* embedding, const char* word, const char* const* set_a,
                              size_t n_a, const char* const* set_b, size_t n_b, int* found, double* out) {
  return guard([&] {
    require(embedding, "embedding");
    require(word, "word");
    require(found, "found");
    require(out, "out");
    if (n_a) require(set_a, "set_a");
    if (n_b) require(set_b, "set_b");
    bias::AttributePair pair{"pair", {"a", {set_a, set_a + n_a}}, {"b", {set_b, set_b + n_b}}};
    pair.validate();
    auto b = bias::embedding_bias(embedding->model, word, pair);
    *found = b ? 1 : 0;
    *out = b.value_or(0.0);
  });
}

void ttx_embedding_free(ttx_embedding* embedding) { delete embedding; }

ttx_status ttx_metrics_from_confusion(uint64_t toxic_as_toxic, uint64_t toxic_as_clean, uint64_t clean_as_toxic,
                                      uint64_t clean_as_clean, ttx_metrics* out) {
  return guard([&] {
    require(out, "out");
    auto r = toxicity::report_from_confusion(toxic_as_toxic, toxic_as_clean, clean_as_toxic, clean_as_clean);
    *out = {r.macro_f1,       r.macro_precision,    r.macro_recall,    r.toxic.precision, r.toxic.recall,
            r.toxic.f1,       r.non_toxic.precision, r.non_toxic.recall, r.non_toxic.f1};
  });
}

ttx_status ttx_frequency_percentile_ranking(const uint64_t* freqs, size_t n, double* out) {
  return guard([&] {
    require(freqs, "freqs");
    require(out, "out");
    indicator::FrequencyTable table;
    std::vector<std::string> keys;
    for (size_t i = 0; i < n; ++i) {
      keys.push_back(std::to_string(i));
      table.emplace(keys.back(), freqs[i]);
    }
    auto fpr = indicator::frequency_percentile_ranking(table);
    for (size_t i = 0; i < n; ++i) out[i] = fpr.at(keys[i]);
  });
}

ttx_status ttx_targeted_toxicity(const double* bias, const double* fpr, const double* toxicity, size_t n,
                                 double* out) {
  return guard([&] {
    require(out, "out");
    if (n) {
      require(bias, "bias");
      require(fpr, "fpr");
      require(toxicity, "toxicity");
    }
    std::vector<indicator::AdjectiveRecord> records;
    for (size_t i = 0; i < n; ++i) records.push_back({std::to_string(i), 1, fpr[i], toxicity[i], bias[i]});
    *out = indicator::targeted_toxicity(records);
  });
}

ttx_status ttx_pearson(const double* xs, const double* ys, size_t n, double* out) {
  return guard([&] {
    require(xs, "xs");
    require(ys, "ys");
    require(out, "out");
    *out = validation::pearson_correlation(std::span<const double>(xs, n), std::span<const double>(ys, n));
  });
}

ttx_status ttx_cosine(const double* u, const double* v, size_t n, double* out) {
  return guard([&] {
    require(u, "u");
    require(v, "v");
    require(out, "out");
    *out = embedding::cosine(std::span<const double>(u, n), std::span<const double>(v, n));
  });
}

}  // extern "C"
