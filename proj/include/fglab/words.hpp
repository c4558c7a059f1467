#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fgl {

// Generators of the free group on two letters, in the fixed enumeration
// order (a, a^-1, b, b^-1). Text encoding: a A b B, with "e" for the
// empty word.
enum class Letter : std::uint8_t { a = 0, A = 1, b = 2, B = 3 };

inline constexpr std::array<Letter, 4> kLetters = {Letter::a, Letter::A,
                                                   Letter::b, Letter::B};

constexpr Letter inverse(Letter x) {
  return Letter(static_cast<std::uint8_t>(x) ^ 1u);
}

constexpr char to_char(Letter x) {
  constexpr char table[4] = {'a', 'A', 'b', 'B'};
  return table[static_cast<std::uint8_t>(x)];
}

std::optional<Letter> letter_from_char(char c);

// A freely reduced word: no adjacent (x, x^-1) pair anywhere. Values are
// reduced at construction and immutable through the public surface, so they
// can be shared across threads freely.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(Letter x) : letters_{x} {}

  // Free reduction of an arbitrary letter sequence.
  static ReducedWord reduce(std::span<const Letter> raw);
  static ReducedWord reduce(std::initializer_list<Letter> raw) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()));
  }

  // Parses the text encoding ("e" or a string over aAbB). Inputs that are
  // not reduced are reduced.
  static std::optional<ReducedWord> parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const std::vector<Letter>& letters() const { return letters_; }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  ReducedWord prefix(std::size_t n) const;
  // Drops the first n letters.
  ReducedWord suffix_from(std::size_t n) const;
  bool starts_with(const ReducedWord& p) const;

  // Right append with cancellation; keeps the word reduced.
  void push_right(Letter x);
  // Left prepend with cancellation.
  void push_left(Letter x);

  std::string str() const;

  bool operator==(const ReducedWord&) const = default;
  auto operator<=>(const ReducedWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v);
ReducedWord inverse(const ReducedWord& w);
std::size_t common_prefix_len(const ReducedWord& u, const ReducedWord& v);

// All reduced words of exactly length n, in lexicographic (a, A, b, B)
// order; 4*3^(n-1) of them for n >= 1.
std::vector<ReducedWord> all_reduced_words(int n);

// Number of reduced words of exactly length n.
std::uint64_t reduced_word_count(int n);

// Bijection between depth-n words and [0, 4*3^(n-1)), matching the
// enumeration order of all_reduced_words.
std::uint64_t reduced_word_index(const ReducedWord& w);
ReducedWord reduced_word_from_index(int n, std::uint64_t index);

}  // namespace fgl
