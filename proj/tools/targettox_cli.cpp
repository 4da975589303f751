#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "targettox/targettox.h"

namespace {

int exit_code(ttx_status s) {
  switch (s) {
    case TTX_OK: return 0;
    case TTX_ERR_CONFIG: return 2;
    case TTX_ERR_THRESHOLD: return 3;
    default: return 1;
  }
}

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_size;
  std::optional<std::size_t> reps;
  std::optional<std::string> pair;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
  bool deterministic = false;
  std::vector<std::string> sets;
};

std::vector<std::pair<std::string, std::string>> overrides_for(const std::string& command, const Flags& f) {
  std::vector<std::pair<std::string, std::string>> out;
  if (f.seed) {
    out.emplace_back("seed", std::to_string(*f.seed));
    out.emplace_back("analysis.seeds", "");
  }
  if (f.sample_size) {
    out.emplace_back(command == "validate" ? "validation.dataset_size" : "analysis.sample_size",
                     std::to_string(*f.sample_size));
  }
  if (f.reps) {
    out.emplace_back(command == "validate" ? "validation.repetitions" : "analysis.repetitions",
                     std::to_string(*f.reps));
  }
  if (f.pair) {
    if (command == "compare") out.emplace_back("compare.pair", *f.pair);
    else if (command == "validate") out.emplace_back("validation.pair", *f.pair);
    else out.emplace_back("analysis.pairs", *f.pair);
  }
  if (f.out_dir) out.emplace_back("paths.output_dir", *f.out_dir);
  if (f.threads) out.emplace_back("threads", std::to_string(*f.threads));
  if (f.deterministic) out.emplace_back("deterministic", "true");
  for (const auto& s : f.sets) {
    const auto eq = s.find('=');
    out.emplace_back(s.substr(0, eq), eq == std::string::npos ? std::string{} : s.substr(eq + 1));
  }
  return out;
}

int fail_with(ttx_status s, const std::string& what) {
  std::cerr << "targettox: " << what << ": " << ttx_last_error() << "\n";
  return exit_code(s);
}

int run(const std::string& command, const Flags& flags) {
  ttx_command cmd;
  if (auto s = ttx_command_from_name(command.c_str(), &cmd); s != TTX_OK) return fail_with(s, "command");
  ttx_config* cfg = nullptr;
  if (auto s = ttx_config_load(flags.config.c_str(), &cfg); s != TTX_OK) return fail_with(s, "config");
  for (const auto& [key, value] : overrides_for(command, flags)) {
    if (auto s = ttx_config_set(cfg, key.c_str(), value.c_str()); s != TTX_OK) {
      ttx_config_free(cfg);
      return fail_with(s, "option " + key);
    }
  }
  char* out = nullptr;
  const auto status = ttx_run_command(cfg, cmd, &out);
  ttx_config_free(cfg);
  if (status != TTX_OK) return fail_with(status, command);
  auto summary = nlohmann::json::parse(out);
  ttx_string_free(out);
  for (const auto& line : summary.value("messages", nlohmann::json::array())) {
    std::cout << line.get<std::string>() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Targeted toxicity indicators for online communities"};
  app.set_version_flag("--version", std::string(ttx_version()));
  app.require_subcommand(1);

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ingest-stats", "Count comments, sentences and adjectives per archive"},
      {"train-toxicity", "Train and evaluate the sentence toxicity classifier"},
      {"analyze", "Bootstrap targeted-toxicity indicators for each archive"},
      {"compare", "Top-k salient adjective similarity matrix across communities"},
      {"validate", "Mixture validation curve and its Pearson correlation"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "Run configuration file")->required();
    sub->add_option("--seed", flags.seed, "Base seed; replicate seeds become seed, seed+1, ...");
    sub->add_option("--sample-size", flags.sample_size, "Comments per bootstrap sample");
    sub->add_option("--reps", flags.reps, "Bootstrap repetitions");
    sub->add_option("--pair", flags.pair, "Attribute pair name");
    sub->add_option("--out-dir", flags.out_dir, "Output directory");
    sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--deterministic", flags.deterministic, "Force single-worker embedding training");
    sub->add_option("--set", flags.sets, "Override any config key: section.key=value");
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(chosen, flags);
}
