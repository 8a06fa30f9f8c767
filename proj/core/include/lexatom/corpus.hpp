#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexatom {

/// A normalized token: lowercase ASCII letters only, at least two of them.
/// The only way to obtain one is through `normalize_token`, so every Word in
/// the program satisfies the invariant.
class Word {
 public:
  static constexpr std::size_t kMinLength = 2;

  const std::string& str() const noexcept { return text_; }
  std::size_t size() const noexcept { return text_.size(); }
  char operator[](std::size_t i) const noexcept { return text_[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  explicit Word(std::string text) : text_(std::move(text)) {}
  friend std::optional<Word> normalize_token(std::string_view raw);

  std::string text_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

/// Lowercases `raw` and accepts it iff the result is 2+ characters of a-z.
/// Anything else (digits, apostrophes, hyphens, non-ASCII bytes) is rejected.
std::optional<Word> normalize_token(std::string_view raw);

/// Canonical Roman numeral grammar, e.g. "xiv", "mcmxc". Note that ordinary
/// words such as "mix", "mi" and "dim" also parse as numerals.
bool is_roman_numeral(const Word& token);

struct WordList {
  std::string name;
  std::vector<Word> words;

  std::size_t size() const noexcept { return words.size(); }
  bool empty() const noexcept { return words.empty(); }
  bool contains(const Word& w) const;
};

struct RatedEntry {
  std::string token;
  double rating = 0.0;
};

struct RatedWordList {
  std::string name;
  std::vector<RatedEntry> entries;
};

/// Word counts of one class after each cleaning stage.
struct StageCounts {
  std::size_t total = 0;
  std::size_t cleaned = 0;
  std::size_t deduplicated = 0;
};

struct CleanedList {
  WordList list;
  StageCounts counts;
};

/// Normalizes, optionally drops Roman numerals, then keeps the first
/// occurrence of every word. Throws `ErrorKind::empty_corpus` when nothing
/// survives.
CleanedList clean_word_list(const std::vector<std::string>& tokens, bool remove_roman,
                            std::string name = {});

struct LabeledCorpus {
  WordList simple;
  WordList complex;
};

struct FilterReport {
  StageCounts simple;
  StageCounts complex;
  // Class sizes once the between-class common words are gone.
  std::size_t simple_final = 0;
  std::size_t complex_final = 0;

  void write_csv(std::ostream& os) const;
};

struct CorpusBuild {
  LabeledCorpus corpus;
  FilterReport report;
};

/// Removes every word present in both classes from both classes.
CorpusBuild build_labeled_corpus(const CleanedList& simple, const CleanedList& complex);
/// Overload for lists with no cleaning history; earlier stages report the
/// list sizes.
CorpusBuild build_labeled_corpus(const WordList& simple, const WordList& complex);

enum class RatingEnd { lowest, highest };

/// Takes the `n` entries at one end of the rating order. A tie group that
/// straddles the cut is sampled uniformly (seeded) so exactly `n` entries are
/// taken; the chosen tokens are then normalized and deduplicated.
WordList select_by_rating(const RatedWordList& rated, std::size_t n, RatingEnd end,
                          std::uint64_t seed);

// File formats.
std::vector<std::string> read_tokens(std::istream& in);
std::vector<std::string> read_tokens(const std::filesystem::path& path);
RatedWordList read_rated_list(std::istream& in, std::string name = {});
RatedWordList read_rated_list(const std::filesystem::path& path);
void write_word_list(std::ostream& os, const WordList& list);

}  // namespace lexatom

template <>
struct std::hash<lexatom::Word> {
  std::size_t operator()(const lexatom::Word& w) const noexcept {
    return std::hash<std::string>{}(w.str());
  }
};
