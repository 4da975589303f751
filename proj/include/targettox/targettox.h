#ifndef TARGETTOX_TARGETTOX_H
#define TARGETTOX_TARGETTOX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TTX_API __declspec(dllexport)
#else
#define TTX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ttx_status {
  TTX_OK = 0,
  TTX_ERR_INVALID_ARGUMENT = 1,
  TTX_ERR_IO = 2,
  TTX_ERR_FORMAT = 3,
  TTX_ERR_CONFIG = 4,
  TTX_ERR_NUMERIC = 5,
  TTX_ERR_DATA = 6,
  TTX_ERR_THRESHOLD = 7,
  TTX_ERR_INTERNAL = 8
} ttx_status;

typedef enum ttx_command {
  TTX_CMD_INGEST_STATS = 0,
  TTX_CMD_TRAIN_TOXICITY = 1,
  TTX_CMD_ANALYZE = 2,
  TTX_CMD_COMPARE = 3,
  TTX_CMD_VALIDATE = 4
} ttx_command;

typedef struct ttx_config ttx_config;
typedef struct ttx_classifier ttx_classifier;
typedef struct ttx_archive ttx_archive;
typedef struct ttx_embedding ttx_embedding;

typedef struct ttx_metrics {
  double macro_f1;
  double macro_precision;
  double macro_recall;
  double toxic_precision;
  double toxic_recall;
  double toxic_f1;
  double non_toxic_precision;
  double non_toxic_recall;
  double non_toxic_f1;
} ttx_metrics;

TTX_API const char* ttx_version(void);

/* Message of the last failed call on this thread; "" after a success. */
TTX_API const char* ttx_last_error(void);

/* Releases strings returned through char** out-parameters. */
TTX_API void ttx_string_free(char* s);

/* Configuration */
TTX_API ttx_status ttx_config_load(const char* path, ttx_config** out);
TTX_API ttx_status ttx_config_parse(const char* text, const char* base_dir, ttx_config** out);
/* key is "section.key", e.g. "analysis.sample_size"; relative paths resolve
   against the working directory. */
TTX_API ttx_status ttx_config_set(ttx_config* config, const char* key, const char* value);
TTX_API ttx_status ttx_config_to_json(const ttx_config* config, char** out_json);
TTX_API void ttx_config_free(ttx_config* config);

/* Commands. On success *out_json holds the command summary. */
TTX_API ttx_status ttx_command_from_name(const char* name, ttx_command* out);
TTX_API ttx_status ttx_run_command(const ttx_config* config, ttx_command command, char** out_json);

/* Toxicity classifier; sentences are preprocessed with the lexicons named
   in the config. */
TTX_API ttx_status ttx_classifier_load(const char* model_path, const ttx_config* config,
                                       ttx_classifier** out);
TTX_API ttx_status ttx_classifier_predict(const ttx_classifier* classifier, const char* sentence,
                                          int* label, double* probability);
TTX_API void ttx_classifier_free(ttx_classifier* classifier);

/* Comment archives (JSONL or CSV, optionally gzip-compressed). */
TTX_API ttx_status ttx_archive_load(const char* path, const ttx_config* config, ttx_archive** out);
TTX_API ttx_status ttx_archive_info(const ttx_archive* archive, size_t* comments, size_t* sentences);
TTX_API void ttx_archive_free(ttx_archive* archive);

/* Embeddings. Training uses every sentence of the archive and the
   [embedding] section of the config. */
TTX_API ttx_status ttx_embedding_train(const ttx_archive* archive, const ttx_config* config,
                                       ttx_embedding** out);
TTX_API ttx_status ttx_embedding_load(const char* path, ttx_embedding** out);
TTX_API ttx_status ttx_embedding_save(const ttx_embedding* embedding, const char* path);
TTX_API size_t ttx_embedding_dimensions(const ttx_embedding* embedding);
TTX_API size_t ttx_embedding_size(const ttx_embedding* embedding);
/* *found is 0 for out-of-vocabulary words; out must hold dimensions floats. */
TTX_API ttx_status ttx_embedding_vector(const ttx_embedding* embedding, const char* word, float* out,
                                        int* found);
TTX_API ttx_status ttx_embedding_bias(const ttx_embedding* embedding, const char* word,
                                      const char* const* set_a, size_t n_a, const char* const* set_b,
                                      size_t n_b, int* found, double* out);
TTX_API void ttx_embedding_free(ttx_embedding* embedding);

/* Metric primitives */
TTX_API ttx_status ttx_metrics_from_confusion(uint64_t toxic_as_toxic, uint64_t toxic_as_clean,
                                              uint64_t clean_as_toxic, uint64_t clean_as_clean,
                                              ttx_metrics* out);
TTX_API ttx_status ttx_frequency_percentile_ranking(const uint64_t* freqs, size_t n, double* out);
TTX_API ttx_status ttx_targeted_toxicity(const double* bias, const double* fpr, const double* toxicity,
                                         size_t n, double* out);
TTX_API ttx_status ttx_pearson(const double* xs, const double* ys, size_t n, double* out);
TTX_API ttx_status ttx_cosine(const double* u, const double* v, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif
