#pragma once

// Independent oracles used only by the tests.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "growthkit/quotient.hpp"
#include "growthkit/words.hpp"

namespace testing_support {

using growthkit::Letter;
using growthkit::Word;

inline std::vector<Letter> random_raw(std::mt19937_64& rng, int m, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> code(0, 2 * m - 1);
  std::vector<Letter> w(len(rng));
  for (auto& x : w) x = Letter::from_code(code(rng));
  return w;
}

inline Word random_word(std::mt19937_64& rng, int m, std::size_t max_len) {
  return growthkit::free_reduce(random_raw(rng, m, max_len));
}

/// Free reduction by repeatedly deleting the leftmost cancelling pair.
inline std::vector<Letter> rewrite_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].index == w[i + 1].index && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
  }
  return w;
}

/// Fox derivatives of a rank-2 word, with coefficients in Z[Z^2]. Built by
/// splitting the word in half: d(uv) = du + ab(u) dv.
struct Fox {
  using Poly = std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>;
  std::pair<std::int64_t, std::int64_t> shift{0, 0};
  Poly da, db;

  static void add_shifted(Poly& dst, const Poly& src, std::pair<std::int64_t, std::int64_t> s) {
    for (const auto& [mono, c] : src) {
      auto& slot = dst[{mono.first + s.first, mono.second + s.second}];
      slot += c;
      if (slot == 0) dst.erase({mono.first + s.first, mono.second + s.second});
    }
  }

  static Fox of(std::span<const Letter> w) {
    Fox f;
    if (w.empty()) return f;
    if (w.size() == 1) {
      const Letter x = w[0];
      Poly& d = x.index == 1 ? f.da : f.db;
      if (x.sign > 0) {
        d[{0, 0}] = 1;
      } else {
        d[{x.index == 1 ? -1 : 0, x.index == 2 ? -1 : 0}] = -1;
      }
      (x.index == 1 ? f.shift.first : f.shift.second) = x.sign;
      return f;
    }
    const std::size_t mid = w.size() / 2;
    Fox left = of(w.first(mid));
    const Fox right = of(w.subspan(mid));
    add_shifted(left.da, right.da, left.shift);
    add_shifted(left.db, right.db, left.shift);
    left.shift = {left.shift.first + right.shift.first, left.shift.second + right.shift.second};
    return left;
  }

  bool vanishes() const { return da.empty() && db.empty(); }
};

/// w lies in F_2'' exactly when both Fox derivatives vanish in Z[Z^2].
inline bool fox_in_second_derived(std::span<const Letter> w) { return Fox::of(w).vanishes(); }

/// Shortest nonempty reduced word trivial in o, by enumeration in
/// lexicographic order up to max_len. Returns the lexicographically least
/// cyclically reduced one of minimal length.
inline std::optional<Word> brute_force_relation(const growthkit::GroupOracle& o, std::size_t max_len) {
  const auto id = o.identity();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::optional<Word> hit;
    growthkit::for_each_reduced(o.rank(), len, [&](std::span<const Letter> w) {
      if (hit) return;
      if (w.size() > 1 && w.front().cancels(w.back())) return;
      if (o.eval(w) == id) hit = Word::from_reduced({w.begin(), w.end()});
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

/// Commutator [u,v] = u^-1 v^-1 u v.
inline Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

}  // namespace testing_support
