#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lexatom/corpus.hpp"

namespace lexatom::testing {

inline Word word(const std::string& text) {
  auto w = normalize_token(text);
  if (!w) throw std::invalid_argument("not a word: " + text);
  return *w;
}

inline WordList words(std::initializer_list<const char*> texts, std::string name = {}) {
  WordList list{std::move(name), {}};
  for (const char* t : texts) list.words.push_back(word(t));
  return list;
}

inline std::string random_letters(std::mt19937_64& rng, std::size_t length) {
  std::uniform_int_distribution<int> letter(0, 25);
  std::string s;
  for (std::size_t i = 0; i < length; ++i) s.push_back(static_cast<char>('a' + letter(rng)));
  return s;
}

// Distinct random words where the first letter decides the class: a-m simple,
// n-z complex. A `noise` fraction of words is put in the other class.
inline LabeledCorpus first_letter_corpus(std::size_t n_words, double noise, std::uint64_t seed,
                                         std::size_t min_len = 3, std::size_t max_len = 10) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::bernoulli_distribution flip(noise);
  std::set<std::string> seen;
  LabeledCorpus corpus{{"simple", {}}, {"complex", {}}};
  while (seen.size() < n_words) {
    auto text = random_letters(rng, len(rng));
    if (!seen.insert(text).second) continue;
    bool complex = text[0] >= 'n';
    if (flip(rng)) complex = !complex;
    (complex ? corpus.complex : corpus.simple).words.push_back(word(text));
  }
  return corpus;
}

}  // namespace lexatom::testing
