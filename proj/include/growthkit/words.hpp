#pragma once

// Free-group words over A^{±1}: reduction, homomorphisms onto Z, and the
// "good word" sets D_k used to build self-avoiding paths.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "growthkit/detail/checked.hpp"
#include "growthkit/errors.hpp"

namespace growthkit {

/// A generator a_index (sign +1) or its inverse (sign -1). Indices are 1-based.
struct Letter {
  int index = 1;
  int sign = 1;

  constexpr Letter inverse() const { return {index, -sign}; }

  /// Position in the fixed alphabet order a_1 < a_1^-1 < a_2 < a_2^-1 < ...
  constexpr int code() const { return 2 * (index - 1) + (sign < 0 ? 1 : 0); }
  static constexpr Letter from_code(int code) { return {code / 2 + 1, code % 2 == 0 ? 1 : -1}; }

  constexpr bool cancels(const Letter& other) const {
    return index == other.index && sign == -other.sign;
  }

  friend constexpr bool operator==(const Letter&, const Letter&) = default;
  friend constexpr auto operator<=>(const Letter& a, const Letter& b) {
    return a.code() <=> b.code();
  }
};

constexpr Letter gen(int index) { return {index, 1}; }
constexpr Letter inv(int index) { return {index, -1}; }

class Word;
Word free_reduce(std::span<const Letter> raw);

/// A freely reduced word. The only ways to build one are `free_reduce`
/// and `Word::from_reduced`, so the invariant always holds.
class Word {
 public:
  Word() = default;

  /// Adopts `letters`, which must already be freely reduced.
  static Word from_reduced(std::vector<Letter> letters) {
    for (std::size_t i = 1; i < letters.size(); ++i)
      if (letters[i - 1].cancels(letters[i]))
        throw std::invalid_argument("Word::from_reduced: input is not freely reduced");
    for (const Letter& x : letters)
      if (x.index < 1 || (x.sign != 1 && x.sign != -1))
        throw std::invalid_argument("Word::from_reduced: malformed letter");
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  std::span<const Letter> letters() const noexcept { return letters_; }

  /// Largest generator index occurring in the word (0 for the empty word).
  int max_index() const {
    int r = 0;
    for (const Letter& x : letters_) r = std::max(r, x.index);
    return r;
  }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  friend Word operator*(const Word& u, const Word& v) {
    std::vector<Letter> raw(u.letters_);
    raw.insert(raw.end(), v.letters_.begin(), v.letters_.end());
    return free_reduce(raw);
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

 private:
  friend Word free_reduce(std::span<const Letter> raw);
  std::vector<Letter> letters_;
};

inline Word free_reduce(std::span<const Letter> raw) {
  Word w;
  w.letters_.reserve(raw.size());
  for (const Letter& x : raw) {
    if (!w.letters_.empty() && w.letters_.back().cancels(x))
      w.letters_.pop_back();
    else
      w.letters_.push_back(x);
  }
  return w;
}

inline bool is_freely_reduced(std::span<const Letter> raw) {
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i - 1].cancels(raw[i])) return false;
  return true;
}

inline bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || !w.front().cancels(w.back());
}

/// Strips conjugating layers x ... x^-1 until the word is cyclically reduced.
inline Word cyclically_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo].cancels(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word::from_reduced({w.begin() + static_cast<std::ptrdiff_t>(lo),
                             w.begin() + static_cast<std::ptrdiff_t>(hi)});
}

/// A homomorphism F_m -> Z that is onto, given by the images of a_1..a_m.
///
/// C is the largest value of phi on A^{±1}; the distinguished letter is the
/// signed letter attaining it, lowest index first and positive sign first.
class PhiSpec {
 public:
  explicit PhiSpec(std::vector<std::int64_t> images) : images_(std::move(images)) {
    if (images_.empty()) throw std::invalid_argument("PhiSpec: rank must be at least 1");
    std::int64_t g = 0;
    for (std::int64_t v : images_) g = std::gcd(g, v);
    if (g != 1)
      throw std::invalid_argument("PhiSpec: images have gcd " + std::to_string(g) +
                                  ", so the map is not onto Z");
    for (std::size_t i = 0; i < images_.size(); ++i) {
      std::int64_t a = images_[i] < 0 ? -images_[i] : images_[i];
      if (a > c_) {
        c_ = a;
        distinguished_ = {static_cast<int>(i) + 1, images_[i] > 0 ? 1 : -1};
      }
    }
  }

  int rank() const noexcept { return static_cast<int>(images_.size()); }
  const std::vector<std::int64_t>& images() const noexcept { return images_; }
  std::int64_t C() const noexcept { return c_; }
  Letter distinguished() const noexcept { return distinguished_; }

  std::int64_t operator()(const Letter& x) const {
    if (x.index < 1 || x.index > rank())
      throw rank_mismatch("phi: letter index " + std::to_string(x.index) +
                          " outside rank " + std::to_string(rank()));
    return x.sign * images_[static_cast<std::size_t>(x.index - 1)];
  }

  friend bool operator==(const PhiSpec&, const PhiSpec&) = default;

 private:
  std::vector<std::int64_t> images_;
  std::int64_t c_ = 0;
  Letter distinguished_{};
};

inline std::int64_t phi_eval(const PhiSpec& phi, std::span<const Letter> w) {
  std::int64_t s = 0;
  for (const Letter& x : w) s += phi(x);
  return s;
}

inline std::int64_t phi_eval(const PhiSpec& phi, const Word& w) { return phi_eval(phi, w.letters()); }

/// Good words: freely reduced, start with the distinguished letter a,
/// do not end with a^-1, and have positive phi.
inline bool is_good(const PhiSpec& phi, std::span<const Letter> w) {
  if (w.empty() || !is_freely_reduced(w)) return false;
  const Letter a = phi.distinguished();
  if (w.front() != a || w.back() == a.inverse()) return false;
  return phi_eval(phi, w) > 0;
}

inline bool is_good(const PhiSpec& phi, const Word& w) { return is_good(phi, w.letters()); }

/// Visits every freely reduced word of length `len` over rank `m` in
/// lexicographic order (a_1 < a_1^-1 < a_2 < ...). The visitor receives a
/// span valid only for the duration of the call.
template <class Visitor>
void for_each_reduced(int m, std::size_t len, Visitor&& visit) {
  if (m < 1) throw std::invalid_argument("for_each_reduced: rank must be at least 1");
  std::vector<Letter> cur(len);
  std::vector<int> next_code(len + 1, 0);
  const int alphabet = 2 * m;
  if (len == 0) {
    visit(std::span<const Letter>(cur));
    return;
  }
  std::size_t depth = 0;
  next_code[0] = 0;
  while (true) {
    if (next_code[depth] >= alphabet) {
      if (depth == 0) return;
      --depth;
      continue;
    }
    const Letter x = Letter::from_code(next_code[depth]++);
    if (depth > 0 && cur[depth - 1].cancels(x)) continue;
    cur[depth] = x;
    if (depth + 1 == len) {
      visit(std::span<const Letter>(cur));
    } else {
      ++depth;
      next_code[depth] = 0;
    }
  }
}

/// D_k in lexicographic order.
inline std::vector<Word> enumerate_good(const PhiSpec& phi, std::size_t k) {
  if (k < 1) throw std::invalid_argument("enumerate_good: k must be at least 1");
  const int m = phi.rank();
  const Letter a = phi.distinguished();
  std::vector<Word> out;
  std::vector<Letter> cur{a};
  // Depth-first in alphabet order with running phi; prefixes always start with a.
  std::function<void(std::int64_t)> extend = [&](std::int64_t value) {
    if (cur.size() == k) {
      if (value > 0 && cur.back() != a.inverse()) out.push_back(Word::from_reduced(cur));
      return;
    }
    for (int c = 0; c < 2 * m; ++c) {
      const Letter x = Letter::from_code(c);
      if (cur.back().cancels(x)) continue;
      cur.push_back(x);
      extend(value + phi(x));
      cur.pop_back();
    }
  };
  extend(phi(a));
  return out;
}

/// |D_k| without materializing D_k: dynamic programming over
/// (last letter, phi value) states.
inline std::uint64_t count_good(const PhiSpec& phi, std::size_t k) {
  if (k < 1) throw std::invalid_argument("count_good: k must be at least 1");
  const int alphabet = 2 * phi.rank();
  const Letter a = phi.distinguished();
  const auto C = phi.C();
  const auto span = static_cast<std::int64_t>(k) * C;  // |phi| never exceeds k*C
  const auto width = static_cast<std::size_t>(2 * span + 1);
  // ways[code][phi + span]
  std::vector<std::vector<std::uint64_t>> ways(static_cast<std::size_t>(alphabet), std::vector<std::uint64_t>(width, 0));
  ways[static_cast<std::size_t>(a.code())][static_cast<std::size_t>(phi(a) + span)] = 1;
  for (std::size_t len = 1; len < k; ++len) {
    std::vector<std::vector<std::uint64_t>> next(static_cast<std::size_t>(alphabet), std::vector<std::uint64_t>(width, 0));
    for (int last = 0; last < alphabet; ++last)
      for (std::size_t v = 0; v < width; ++v) {
        const std::uint64_t n = ways[static_cast<std::size_t>(last)][v];
        if (n == 0) continue;
        for (int c = 0; c < alphabet; ++c) {
          const Letter x = Letter::from_code(c);
          if (Letter::from_code(last).cancels(x)) continue;
          auto& slot = next[static_cast<std::size_t>(c)][static_cast<std::size_t>(static_cast<std::int64_t>(v) + phi(x))];
          slot = detail::checked_add(slot, n, "count_good");
        }
      }
    ways.swap(next);
  }
  std::uint64_t total = 0;
  for (int last = 0; last < alphabet; ++last) {
    if (Letter::from_code(last) == a.inverse()) continue;
    for (std::size_t v = static_cast<std::size_t>(span) + 1; v < width; ++v)
      total = detail::checked_add(total, ways[static_cast<std::size_t>(last)][v], "count_good");
  }
  return total;
}

/// Number of freely reduced words of length `len`: 1 for len = 0, else
/// 2m(2m-1)^(len-1). Throws std::overflow_error instead of wrapping.
inline std::uint64_t count_reduced(int m, std::size_t len) {
  if (m < 1) throw std::invalid_argument("count_reduced: rank must be at least 1");
  if (len == 0) return 1;
  const auto two_m = static_cast<std::uint64_t>(2 * m);
  return detail::checked_mul(two_m, detail::checked_pow(two_m - 1, static_cast<unsigned>(len - 1), "count_reduced"),
                             "count_reduced");
}

// Text forms ---------------------------------------------------------------

/// "a1 a2^-1 a1"; the empty word is the empty string.
inline std::string format_word(std::span<const Letter> w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += 'a';
    s += std::to_string(w[i].index);
    if (w[i].sign < 0) s += "^-1";
  }
  return s;
}

inline std::string format_word(const Word& w) { return format_word(w.letters()); }

/// Compact form: a,b,c,... for generators and A,B,C,... for inverses (rank <= 26).
inline std::string format_compact(const Word& w) {
  std::string s;
  for (const Letter& x : w) {
    if (x.index > 26) throw std::invalid_argument("format_compact: generator index above 26");
    const char base = x.sign > 0 ? 'a' : 'A';
    s += static_cast<char>(base + x.index - 1);
  }
  return s;
}

/// Parses either text form into a raw letter sequence (not reduced).
/// Letters are checked against rank `m`.
inline std::vector<Letter> parse_letters(std::string_view text, int m) {
  std::vector<Letter> out;
  auto check = [&](const Letter& x) {
    if (x.index < 1 || x.index > m)
      throw rank_mismatch("parse_word: generator " + std::to_string(x.index) + " outside rank " +
                          std::to_string(m));
    out.push_back(x);
  };
  const bool verbose = text.find_first_of("0123456789") != std::string_view::npos;
  if (!verbose) {
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      if (ch >= 'a' && ch <= 'z')
        check({ch - 'a' + 1, 1});
      else if (ch >= 'A' && ch <= 'Z')
        check({ch - 'A' + 1, -1});
      else
        throw std::invalid_argument(std::string("parse_word: unexpected character '") + ch + "'");
    }
    return out;
  }
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 'a')
      throw std::invalid_argument("parse_word: bad token '" + tok + "'");
    int sign = 1;
    std::string digits = tok.substr(1);
    if (auto pos = digits.find("^-1"); pos != std::string::npos && pos + 3 == digits.size()) {
      sign = -1;
      digits.resize(pos);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("parse_word: bad token '" + tok + "'");
    check({std::stoi(digits), sign});
  }
  return out;
}

inline Word parse_word(std::string_view text, int m) { return free_reduce(parse_letters(text, m)); }

}  // namespace growthkit
