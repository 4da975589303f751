#include "corpus/ingest.hpp"

#include <charconv>
#include <optional>
#include <string_view>

#include "json.hpp"
#include "util/csv.hpp"
#include "util/error.hpp"
#include "util/text_io.hpp"

namespace targettox::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kMaxReportedSkips = 10;

std::string archive_stem(const fs::path& path) {
  fs::path p = path.filename();
  if (p.extension() == ".gz") p = p.stem();
  return p.stem().string();
}

void note_skip(IngestReport& report, std::size_t line) {
  ++report.skipped_lines;
  if (report.first_skipped.size() < kMaxReportedSkips) report.first_skipped.push_back(line);
}

// Applies the body rules shared by both formats and forwards the comment.
void accept(RawComment&& c, IngestReport& report, const CommentSink& sink) {
  ++report.valid_lines;
  auto body = trim(c.body);
  if (body.empty()) {
    ++report.dropped_empty;
    return;
  }
  if (body == "[removed]" || body == "[deleted]") {
    ++report.dropped_removed;
    return;
  }
  sink(std::move(c));
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  // created_utc is sometimes serialized as a float
  double d = 0;
  auto [p2, e2] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (e2 == std::errc() && p2 == s.data() + s.size()) return static_cast<std::int64_t>(d);
  return std::nullopt;
}

std::optional<RawComment> comment_from_json(const json& obj, const std::string& fallback_id,
                                            const std::string& default_community) {
  if (!obj.is_object()) return std::nullopt;
  auto it = obj.find("body");
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  RawComment c;
  c.body = it->get<std::string>();
  if (auto id = obj.find("id"); id != obj.end()) {
    if (id->is_string()) c.id = id->get<std::string>();
    else if (id->is_number_integer()) c.id = std::to_string(id->get<std::int64_t>());
  }
  if (c.id.empty()) c.id = fallback_id;
  c.community = default_community;
  for (const char* key : {"subreddit", "community"}) {
    if (auto s = obj.find(key); s != obj.end() && s->is_string() && !s->get<std::string>().empty()) {
      c.community = s->get<std::string>();
      break;
    }
  }
  if (auto t = obj.find("created_utc"); t != obj.end()) {
    if (t->is_number_integer()) c.created_utc = t->get<std::int64_t>();
    else if (t->is_number()) c.created_utc = static_cast<std::int64_t>(t->get<double>());
    else if (t->is_string()) c.created_utc = parse_int(t->get<std::string>());
  }
  return c;
}

void ingest_jsonl(std::string_view text, const std::string& stem, const std::string& community,
                  IngestReport& report, const CommentSink& sink) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    ++report.total_lines;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) {
      note_skip(report, line_no);
      continue;
    }
    auto c = comment_from_json(obj, stem + ":" + std::to_string(line_no), community);
    if (!c) {
      note_skip(report, line_no);
      continue;
    }
    accept(std::move(*c), report, sink);
  }
}

void ingest_csv(std::string_view text, const std::string& stem, const std::string& community,
                const IngestOptions& options, IngestReport& report, const CommentSink& sink) {
  CsvReader reader(text);
  std::vector<std::string> fields;
  bool ok = true;
  if (!reader.next(fields, ok) || !ok) {
    fail(ErrorKind::Format, "csv archive has no header row");
  }
  const std::vector<std::string> header = fields;
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  auto text_col = column(options.text_column);
  if (!text_col) {
    fail(ErrorKind::Format, "csv header has no text column named '" + options.text_column + "'");
  }
  auto id_col = column("id");
  auto community_col = column("subreddit");
  if (!community_col) community_col = column("community");
  auto time_col = column("created_utc");

  while (reader.next(fields, ok)) {
    ++report.total_lines;
    std::size_t line_no = reader.record_line();
    if (!ok || fields.size() != header.size() || !is_valid_utf8(fields[*text_col])) {
      note_skip(report, line_no);
      continue;
    }
    RawComment c;
    c.body = fields[*text_col];
    c.id = id_col ? fields[*id_col] : std::string();
    if (c.id.empty()) c.id = stem + ":" + std::to_string(line_no);
    c.community = community_col && !fields[*community_col].empty() ? fields[*community_col] : community;
    if (time_col) c.created_utc = parse_int(fields[*time_col]);
    accept(std::move(c), report, sink);
  }
}

}  // namespace

ArchiveFormat format_from_path(const fs::path& path) {
  fs::path p = path.filename();
  if (p.extension() == ".gz") p = p.stem();
  return p.extension() == ".csv" ? ArchiveFormat::Csv : ArchiveFormat::Jsonl;
}

IngestReport for_each_comment(const fs::path& path, ArchiveFormat format,
                              const IngestOptions& options, const CommentSink& sink) {
  const std::string text = read_text_file(path);
  const std::string stem = archive_stem(path);
  const std::string community =
      options.default_community.empty() ? stem : options.default_community;

  IngestReport report;
  if (format == ArchiveFormat::Jsonl) {
    ingest_jsonl(text, stem, community, report, sink);
  } else {
    ingest_csv(text, stem, community, options, report, sink);
  }
  if (report.total_lines > 0 && 2 * report.skipped_lines > report.total_lines) {
    fail(ErrorKind::Format, "format mismatch: " + std::to_string(report.skipped_lines) + " of " +
                                std::to_string(report.total_lines) + " records in " +
                                path.string() + " are malformed");
  }
  return report;
}

IngestResult load_comments(const fs::path& path, ArchiveFormat format,
                           const IngestOptions& options) {
  IngestResult result;
  result.report = for_each_comment(path, format, options, [&](RawComment&& c) {
    result.comments.push_back(std::move(c));
  });
  return result;
}

}  // namespace targettox::corpus
