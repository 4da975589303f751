#include "corpus/sentence_splitter.hpp"

#include "util/text_io.hpp"

namespace targettox::corpus {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }
bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

}  // namespace

SentenceSplitter::SentenceSplitter(const std::vector<std::string>& abbreviations) {
  for (const auto& a : abbreviations) abbreviations_.insert(to_lower_ascii(trim(a)));
}

bool SentenceSplitter::is_abbreviation(std::string_view text, std::size_t period) const {
  std::size_t begin = period;
  while (begin > 0 && !is_space(text[begin - 1]) && text[begin - 1] != '\n') --begin;
  while (begin < period && (text[begin] == '(' || text[begin] == '"' || text[begin] == '\'')) {
    ++begin;
  }
  return abbreviations_.count(to_lower_ascii(text.substr(begin, period - begin + 1))) > 0;
}

std::vector<std::string> SentenceSplitter::split(std::string_view body) const {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    auto s = trim(body.substr(start, end - start));
    if (!s.empty()) out.emplace_back(s);
    start = end;
  };

  std::size_t i = 0;
  while (i < body.size()) {
    char c = body[i];
    if (c == '\n') {
      flush(i);
      ++i;
      start = i;
      continue;
    }
    if (!is_terminal(c)) {
      ++i;
      continue;
    }
    std::size_t run_begin = i;
    while (i < body.size() && is_terminal(body[i])) ++i;
    while (i < body.size() && is_closer(body[i])) ++i;
    bool at_boundary = i == body.size() || is_space(body[i]) || body[i] == '\n';
    if (!at_boundary) continue;
    bool single_period = body[run_begin] == '.' &&
                         (run_begin + 1 == body.size() || !is_terminal(body[run_begin + 1]));
    if (single_period && is_abbreviation(body, run_begin)) continue;
    flush(i);
  }
  flush(body.size());
  return out;
}

}  // namespace targettox::corpus
