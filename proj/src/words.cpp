#include "fglab/words.hpp"

#include <stdexcept>

namespace fgl {

std::optional<Letter> letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'A': return Letter::A;
    case 'b': return Letter::b;
    case 'B': return Letter::B;
    default: return std::nullopt;
  }
}

ReducedWord ReducedWord::reduce(std::span<const Letter> raw) {
  ReducedWord w;
  w.letters_.reserve(raw.size());
  for (Letter x : raw) w.push_right(x);
  return w;
}

std::optional<ReducedWord> ReducedWord::parse(std::string_view text) {
  if (text == "e") return ReducedWord{};
  if (text.empty()) return std::nullopt;
  ReducedWord w;
  for (char c : text) {
    auto x = letter_from_char(c);
    if (!x) return std::nullopt;
    w.push_right(*x);
  }
  return w;
}

ReducedWord ReducedWord::prefix(std::size_t n) const {
  ReducedWord p;
  p.letters_.assign(letters_.begin(), letters_.begin() + std::min(n, size()));
  return p;
}

ReducedWord ReducedWord::suffix_from(std::size_t n) const {
  ReducedWord s;
  if (n < size()) s.letters_.assign(letters_.begin() + n, letters_.end());
  return s;
}

bool ReducedWord::starts_with(const ReducedWord& p) const {
  if (p.size() > size()) return false;
  return std::equal(p.begin(), p.end(), begin());
}

void ReducedWord::push_right(Letter x) {
  if (!letters_.empty() && letters_.back() == inverse(x)) {
    letters_.pop_back();
  } else {
    letters_.push_back(x);
  }
}

void ReducedWord::push_left(Letter x) {
  if (!letters_.empty() && letters_.front() == inverse(x)) {
    letters_.erase(letters_.begin());
  } else {
    letters_.insert(letters_.begin(), x);
  }
}

std::string ReducedWord::str() const {
  if (empty()) return "e";
  std::string s;
  s.reserve(size());
  for (Letter x : letters_) s.push_back(to_char(x));
  return s;
}

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) {
  ReducedWord w = u;
  for (Letter x : v) w.push_right(x);
  return w;
}

ReducedWord inverse(const ReducedWord& w) {
  ReducedWord r;
  for (auto it = w.end(); it != w.begin();) {
    --it;
    r.push_right(inverse(*it));
  }
  return r;
}

std::size_t common_prefix_len(const ReducedWord& u, const ReducedWord& v) {
  std::size_t n = std::min(u.size(), v.size());
  std::size_t k = 0;
  while (k < n && u[k] == v[k]) ++k;
  return k;
}

std::vector<ReducedWord> all_reduced_words(int n) {
  std::vector<ReducedWord> out;
  if (n < 0) return out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  out.reserve(reduced_word_count(n));
  std::vector<ReducedWord> level;
  for (Letter x : kLetters) level.emplace_back(x);
  for (int d = 1; d < n; ++d) {
    std::vector<ReducedWord> next;
    next.reserve(level.size() * 3);
    for (const auto& w : level) {
      for (Letter x : kLetters) {
        if (x == inverse(w.back())) continue;
        ReducedWord e = w;
        e.push_right(x);
        next.push_back(std::move(e));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::uint64_t reduced_word_count(int n) {
  if (n <= 0) return 1;
  std::uint64_t c = 4;
  for (int i = 1; i < n; ++i) c *= 3;
  return c;
}

std::uint64_t reduced_word_index(const ReducedWord& w) {
  if (w.empty()) return 0;
  std::uint64_t idx = static_cast<std::uint64_t>(w[0]);
  for (std::size_t k = 1; k < w.size(); ++k) {
    const Letter forbidden = inverse(w[k - 1]);
    std::uint64_t rank = 0;
    for (Letter x : kLetters) {
      if (x == forbidden) continue;
      if (x == w[k]) break;
      ++rank;
    }
    idx = idx * 3 + rank;
  }
  return idx;
}

ReducedWord reduced_word_from_index(int n, std::uint64_t index) {
  if (n <= 0) return ReducedWord{};
  std::vector<std::uint64_t> digits(n);
  for (int k = n - 1; k >= 1; --k) {
    digits[k] = index % 3;
    index /= 3;
  }
  if (index >= 4) throw std::out_of_range("cylinder index out of range");
  digits[0] = index;
  ReducedWord w(kLetters[digits[0]]);
  for (int k = 1; k < n; ++k) {
    const Letter forbidden = inverse(w.back());
    std::uint64_t rank = 0;
    for (Letter x : kLetters) {
      if (x == forbidden) continue;
      if (rank == digits[k]) {
        w.push_right(x);
        break;
      }
      ++rank;
    }
  }
  return w;
}

}  // namespace fgl
