#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "app/config.hpp"
#include "corpus/ingest.hpp"
#include "corpus/preprocess.hpp"
#include "indicator/indicator.hpp"
#include "json.hpp"

namespace targettox::app {

const char* tool_version();

// Each command validates the config for itself, writes its artifacts
// atomically under output_dir (plus run.log) and returns a JSON summary with
// a "messages" array of human-readable lines. Failures raise Error: Config
// for invalid settings, Threshold when a configured threshold is missed
// (artifacts are still written), and the originating kind otherwise.
nlohmann::json cmd_ingest_stats(const RunConfig& config);
nlohmann::json cmd_train_toxicity(const RunConfig& config);
nlohmann::json cmd_analyze(const RunConfig& config);
nlohmann::json cmd_compare(const RunConfig& config);
nlohmann::json cmd_validate(const RunConfig& config);

nlohmann::json run_command(Command command, const RunConfig& config);

corpus::Preprocessor make_preprocessor(const RunConfig& config);

struct LoadedArchive {
  corpus::PreparedArchive archive;
  corpus::IngestReport report;
};

LoadedArchive load_archive(const std::filesystem::path& path, const RunConfig& config,
                           const corpus::Preprocessor& preprocessor);

// community,pair,seed,word,frequency,fpr,toxicity,bias
std::string records_csv(const indicator::CommunityAnalysis& analysis);

struct CommunityRecords {
  std::string community;
  std::uint64_t seed = 0;
  std::vector<indicator::AdjectiveRecord> records;
};

// Records of `pair` for the lowest seed in a records CSV.
CommunityRecords read_records(const std::filesystem::path& path, const std::string& pair);

std::string similarity_csv(const indicator::SimilarityMatrix& m);

}  // namespace targettox::app
