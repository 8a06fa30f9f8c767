#include "lexatom/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <regex>
#include <unordered_set>

#include "lexatom/error.hpp"

namespace lexatom {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::vector<Word> dedup_keep_first(const std::vector<Word>& words) {
  std::unordered_set<Word> seen;
  std::vector<Word> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

std::optional<Word> normalize_token(std::string_view raw) {
  if (raw.size() < Word::kMinLength) return std::nullopt;
  std::string text;
  text.reserve(raw.size());
  for (const char c : raw) {
    char lower = c;
    if (c >= 'A' && c <= 'Z') lower = static_cast<char>(c - 'A' + 'a');
    if (lower < 'a' || lower > 'z') return std::nullopt;
    text.push_back(lower);
  }
  return Word(std::move(text));
}

bool is_roman_numeral(const Word& token) {
  static const std::regex kNumeral("m{0,3}(cm|cd|d?c{0,3})(xc|xl|l?x{0,3})(ix|iv|v?i{0,3})",
                                   std::regex::optimize);
  return !token.str().empty() && std::regex_match(token.str(), kNumeral);
}

bool WordList::contains(const Word& w) const {
  return std::find(words.begin(), words.end(), w) != words.end();
}

CleanedList clean_word_list(const std::vector<std::string>& tokens, bool remove_roman,
                            std::string name) {
  CleanedList out;
  out.list.name = std::move(name);
  out.counts.total = tokens.size();

  std::vector<Word> cleaned;
  cleaned.reserve(tokens.size());
  for (const auto& raw : tokens) {
    auto w = normalize_token(raw);
    if (!w) continue;
    if (remove_roman && is_roman_numeral(*w)) continue;
    cleaned.push_back(std::move(*w));
  }
  out.counts.cleaned = cleaned.size();
  out.list.words = dedup_keep_first(cleaned);
  out.counts.deduplicated = out.list.size();
  if (out.list.empty()) {
    throw Error(ErrorKind::empty_corpus,
                "no usable words in list '" + out.list.name + "' (" +
                    std::to_string(tokens.size()) + " tokens read)");
  }
  return out;
}

CorpusBuild build_labeled_corpus(const CleanedList& simple, const CleanedList& complex) {
  const std::unordered_set<Word> simple_set(simple.list.words.begin(), simple.list.words.end());
  std::unordered_set<Word> common;
  for (const auto& w : complex.list.words) {
    if (simple_set.count(w)) common.insert(w);
  }

  CorpusBuild out;
  out.corpus.simple.name = simple.list.name;
  out.corpus.complex.name = complex.list.name;
  for (const auto& w : simple.list.words) {
    if (!common.count(w)) out.corpus.simple.words.push_back(w);
  }
  for (const auto& w : complex.list.words) {
    if (!common.count(w)) out.corpus.complex.words.push_back(w);
  }
  if (out.corpus.simple.empty() || out.corpus.complex.empty()) {
    throw Error(ErrorKind::empty_corpus,
                "a class is empty after removing " + std::to_string(common.size()) +
                    " between-class common words");
  }

  out.report.simple = simple.counts;
  out.report.complex = complex.counts;
  out.report.simple_final = out.corpus.simple.size();
  out.report.complex_final = out.corpus.complex.size();
  return out;
}

CorpusBuild build_labeled_corpus(const WordList& simple, const WordList& complex) {
  auto wrap = [](const WordList& l) {
    return CleanedList{l, StageCounts{l.size(), l.size(), l.size()}};
  };
  return build_labeled_corpus(wrap(simple), wrap(complex));
}

void FilterReport::write_csv(std::ostream& os) const {
  os << "stage,simple_count,complex_count\n";
  os << "total," << simple.total << ',' << complex.total << '\n';
  os << "cleaned," << simple.cleaned << ',' << complex.cleaned << '\n';
  os << "within_class_dedup," << simple.deduplicated << ',' << complex.deduplicated << '\n';
  os << "between_class_removed," << simple_final << ',' << complex_final << '\n';
}

WordList select_by_rating(const RatedWordList& rated, std::size_t n, RatingEnd end,
                          std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "selection size must be positive");
  const auto& entries = rated.entries;
  if (entries.size() < n) {
    throw Error(ErrorKind::insufficient_entries,
                "requested " + std::to_string(n) + " entries but '" + rated.name + "' has " +
                    std::to_string(entries.size()));
  }

  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return end == RatingEnd::lowest ? entries[a].rating < entries[b].rating
                                    : entries[a].rating > entries[b].rating;
  });

  const double boundary = entries[order[n - 1]].rating;
  // Sorted range [tie_begin, tie_end) holds every entry rated `boundary`.
  const auto tie_begin = static_cast<std::size_t>(
      std::find_if(order.begin(), order.end(),
                   [&](std::size_t i) { return entries[i].rating == boundary; }) -
      order.begin());
  auto tie_end = tie_begin;
  while (tie_end < order.size() && entries[order[tie_end]].rating == boundary) ++tie_end;

  std::vector<std::size_t> chosen(order.begin(), order.begin() + tie_begin);
  const std::size_t slots = n - tie_begin;
  std::vector<std::size_t> ties(order.begin() + tie_begin, order.begin() + tie_end);
  if (ties.size() > slots) {
    std::mt19937_64 rng(seed);
    std::shuffle(ties.begin(), ties.end(), rng);
    ties.resize(slots);
    // Keep the sorted (file) order among the sampled ties.
    std::sort(ties.begin(), ties.end());
  }
  chosen.insert(chosen.end(), ties.begin(), ties.end());

  std::vector<Word> words;
  words.reserve(chosen.size());
  for (const auto i : chosen) {
    if (auto w = normalize_token(entries[i].token)) words.push_back(std::move(*w));
  }
  return WordList{rated.name, dedup_keep_first(words)};
}

std::vector<std::string> read_tokens(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    tokens.emplace_back(t);
  }
  return tokens;
}

std::vector<std::string> read_tokens(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open word list " + path.string());
  return read_tokens(in);
}

RatedWordList read_rated_list(std::istream& in, std::string name) {
  RatedWordList out;
  out.name = std::move(name);
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    const bool may_be_header = first_row;
    first_row = false;
    const auto tab = t.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected token<TAB>rating");
    }
    const auto rating = parse_double(t.substr(tab + 1));
    if (!rating) {
      if (may_be_header) continue;  // header row
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": bad rating");
    }
    if (!std::isfinite(*rating)) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": rating is not finite");
    }
    out.entries.push_back({std::string(trim(t.substr(0, tab))), *rating});
  }
  return out;
}

RatedWordList read_rated_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open rated list " + path.string());
  return read_rated_list(in, path.stem().string());
}

void write_word_list(std::ostream& os, const WordList& list) {
  for (const auto& w : list.words) os << w.str() << '\n';
}

}  // namespace lexatom
