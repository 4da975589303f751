#include "corpus/preprocess.hpp"

#include <algorithm>
#include <thread>

#include "util/error.hpp"

namespace targettox::corpus {

namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool has_word_char(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return is_ascii_alnum(c) || c >= 0x80;
  });
}

void finish_token(std::string& cur, std::vector<std::string>& out) {
  std::string_view t = cur;
  while (!t.empty() && (t.front() == '\'' || t.front() == '-')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == '\'' || t.back() == '-')) t.remove_suffix(1);
  if (t.size() > 2 && t.substr(t.size() - 2) == "'s") t.remove_suffix(2);
  if (has_word_char(t)) out.emplace_back(t);
  cur.clear();
}

}  // namespace

Preprocessor::Preprocessor(LanguageResources resources, std::vector<std::string> keep_words)
    : resources_(std::move(resources)), splitter_(resources_.abbreviations) {
  if (!resources_.tagger) fail(ErrorKind::InvalidArgument, "preprocessor needs an adjective tagger");
  for (auto& w : keep_words) keep_.insert(std::move(w));
}

std::vector<std::string> Preprocessor::tokenize(std::string_view s) const {
  std::vector<std::string> out;
  std::string cur;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      if (is_ascii_alnum(c)) {
        cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
      } else if (c == '\'' || c == '-') {
        cur.push_back(static_cast<char>(c));
      } else {
        finish_token(cur, out);
      }
      ++i;
      continue;
    }
    // U+2000..U+206F (general punctuation) is E2 80 xx / E2 81 xx.
    if (c == 0xE2 && i + 2 < s.size() &&
        (static_cast<unsigned char>(s[i + 1]) == 0x80 ||
         static_cast<unsigned char>(s[i + 1]) == 0x81)) {
      auto c2 = static_cast<unsigned char>(s[i + 1]);
      auto c3 = static_cast<unsigned char>(s[i + 2]);
      if (c2 == 0x80 && (c3 == 0x98 || c3 == 0x99)) {
        cur.push_back('\'');  // curly apostrophes
      } else {
        finish_token(cur, out);
      }
      i += 3;
      continue;
    }
    cur.push_back(static_cast<char>(c));
    ++i;
  }
  finish_token(cur, out);
  return out;
}

TokenizedSentence Preprocessor::preprocess(std::string_view sentence,
                                           std::string source_comment) const {
  TokenizedSentence out;
  out.source_comment = std::move(source_comment);
  for (const auto& tok : tokenize(sentence)) {
    std::string_view lemma = resources_.lemmas.lemma(tok);
    bool keep = is_kept(tok) || is_kept(lemma);
    if (!keep && (resources_.stopwords.find(std::string_view(tok)) != resources_.stopwords.end() ||
                  resources_.stopwords.find(lemma) != resources_.stopwords.end())) {
      continue;
    }
    if (resources_.tagger->is_adjective(lemma)) out.adjective_indices.push_back(out.tokens.size());
    out.tokens.emplace_back(lemma);
  }
  return out;
}

std::vector<TokenizedSentence> Preprocessor::process_comment(std::string_view body,
                                                             const std::string& comment_id) const {
  std::vector<TokenizedSentence> out;
  for (const auto& s : splitter_.split(body)) {
    auto ts = preprocess(s, comment_id);
    if (!ts.empty()) out.push_back(std::move(ts));
  }
  return out;
}

std::vector<std::string> Preprocessor::comment_tokens(std::string_view body) const {
  std::vector<std::string> out;
  for (const auto& s : splitter_.split(body)) {
    auto ts = preprocess(s);
    std::move(ts.tokens.begin(), ts.tokens.end(), std::back_inserter(out));
  }
  return out;
}

PreparedArchive prepare_archive(const std::vector<RawComment>& comments,
                                const Preprocessor& preprocessor, std::string community,
                                unsigned threads) {
  PreparedArchive archive;
  archive.community = std::move(community);
  archive.comments.resize(comments.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      archive.comments[i].id = comments[i].id;
      archive.comments[i].sentences = preprocessor.process_comment(comments[i].body, comments[i].id);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || comments.size() < 2 * threads) {
    work(0, comments.size());
    return archive;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (comments.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < comments.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(comments.size(), begin + chunk));
    }
  }
  return archive;
}

}  // namespace targettox::corpus
