#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "corpus/types.hpp"

namespace targettox::corpus {

enum class ArchiveFormat { Jsonl, Csv };

// Picks the format from the file name (".csv" / ".csv.gz" -> Csv, else Jsonl).
ArchiveFormat format_from_path(const std::filesystem::path& path);

struct IngestOptions {
  std::string text_column = "body";
  // Used when a record carries no community tag; empty means the file stem.
  std::string default_community;
};

// Per-archive tally. valid_lines + skipped_lines == total_lines always holds;
// valid lines whose body is empty or a "[removed]"/"[deleted]" placeholder
// are counted as dropped and not emitted.
struct IngestReport {
  std::size_t total_lines = 0;
  std::size_t valid_lines = 0;
  std::size_t skipped_lines = 0;
  std::size_t dropped_empty = 0;
  std::size_t dropped_removed = 0;
  std::vector<std::size_t> first_skipped;  // at most 10 line numbers, 1-based

  std::size_t emitted() const { return valid_lines - dropped_empty - dropped_removed; }
};

using CommentSink = std::function<void(RawComment&&)>;

// Streams comments in file order. Throws Error(Io) for unreadable paths and
// Error(Format) when more than half of the records are malformed.
IngestReport for_each_comment(const std::filesystem::path& path, ArchiveFormat format,
                              const IngestOptions& options, const CommentSink& sink);

struct IngestResult {
  std::vector<RawComment> comments;
  IngestReport report;
};

IngestResult load_comments(const std::filesystem::path& path, ArchiveFormat format,
                           const IngestOptions& options = {});

}  // namespace targettox::corpus
