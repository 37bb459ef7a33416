#pragma once

// Shortest relation rho(R) of a quotient G = F_m/R.
//
// The search grows balls around the identity one sphere at a time and
// looks for two distinct reduced paths meeting at the same element. A
// meeting found while expanding sphere d closes a relation of length
// 2d+1 (an edge inside sphere d) or 2d+2 (two edges into the same vertex of
// sphere d+1). Spheres are stored as sorted fixed-width encodings.

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "growthkit/detail/parallel.hpp"
#include "growthkit/detail/record_array.hpp"
#include "growthkit/errors.hpp"
#include "growthkit/quotient.hpp"
#include "growthkit/words.hpp"

namespace growthkit {

struct SearchLimits {
  /// Cap on the number of stored states (group elements or flows).
  std::size_t max_states = std::size_t{1} << 26;
  unsigned threads = 1;
};

/// rho together with the lexicographically least relation of that length.
/// No nonempty reduced word shorter than `rho` is trivial in G.
struct RhoCertificate {
  std::size_t rho = 0;
  Word witness;
  std::size_t exhaustive_up_to = 0;
};

/// No relation of length <= max_len exists, i.e. rho > max_len.
struct RhoNotFound {
  std::size_t max_len = 0;
};

using RhoResult = std::variant<RhoCertificate, RhoNotFound>;

/// Smallest value rho is certified to reach.
inline std::size_t rho_lower_bound(const RhoResult& r) {
  if (const auto* c = std::get_if<RhoCertificate>(&r)) return c->rho;
  return std::get<RhoNotFound>(r).max_len + 1;
}

namespace detail {

/// Spheres S(0..r) of the Cayley graph, used to prune the witness search:
/// every prefix of a shortest relation of length L ends at distance
/// exactly min(i, L-i) from the identity.
inline Word least_relation(const GroupOracle& o, const std::vector<RecordArray>& spheres, std::size_t len) {
  const std::size_t r = spheres.size() - 1;
  const std::size_t w = o.width();
  const int alphabet = 2 * o.rank();
  std::vector<std::vector<std::uint8_t>> state(len + 1, std::vector<std::uint8_t>(w));
  o.impl().identity(state[0].data());
  std::vector<Letter> word(len);
  std::vector<int> next(len + 1, 0);
  std::size_t i = 0;
  while (true) {
    if (next[i] >= alphabet) {
      if (i == 0) break;
      --i;
      continue;
    }
    const Letter x = Letter::from_code(next[i]++);
    if (i > 0 && word[i - 1].cancels(x)) continue;
    if (i + 1 == len && len > 1 && word[0].cancels(x)) continue;
    std::copy(state[i].begin(), state[i].end(), state[i + 1].begin());
    o.step(state[i + 1].data(), x);
    const std::size_t rem = len - i - 1;
    if (rem <= r && !spheres[rem].contains(state[i + 1].data())) continue;
    word[i] = x;
    if (rem == 0) return Word::from_reduced(word);
    ++i;
    next[i] = 0;
  }
  throw invariant_violation("least_relation: no relation of length " + std::to_string(len) + " found");
}

}  // namespace detail

/// Computes rho(R) for G = o, searching relations up to `max_len`.
/// Throws budget_exceeded if the stored spheres outgrow `limits.max_states`.
/// The result does not depend on `limits.threads`.
inline RhoResult compute_rho(const GroupOracle& o, std::size_t max_len, const SearchLimits& limits = {}) {
  if (max_len < 1) throw std::invalid_argument("compute_rho: max_len must be at least 1");
  using detail::RecordArray;
  const std::size_t w = o.width();
  const int alphabet = 2 * o.rank();

  std::vector<RecordArray> spheres;
  spheres.emplace_back(w);
  {
    std::vector<std::uint8_t> id(w);
    o.impl().identity(id.data());
    spheres[0].push(id.data());
  }
  std::size_t stored = 1;
  const RecordArray empty(w);

  for (std::size_t d = 0;; ++d) {
    if (2 * d + 1 > max_len) return RhoNotFound{max_len};
    const RecordArray& cur = spheres[d];
    const RecordArray& prev = d > 0 ? spheres[d - 1] : empty;

    const std::size_t chunks = detail::chunk_count(cur.size(), limits.threads);
    std::vector<RecordArray> found(chunks, RecordArray(w));
    std::atomic<bool> odd{false};
    std::atomic<std::size_t> pending{0};
    std::atomic<bool> over{false};
    detail::parallel_chunks(cur.size(), limits.threads, [&](std::size_t c, std::size_t b, std::size_t e) {
      std::vector<std::uint8_t> v(w);
      for (std::size_t i = b; i < e && !odd.load(std::memory_order_relaxed) && !over.load(); ++i) {
        for (int code = 0; code < alphabet; ++code) {
          std::copy(cur[i], cur[i] + w, v.begin());
          o.step(v.data(), Letter::from_code(code));
          if (prev.contains(v.data())) continue;  // the tree edge back to the parent
          if (cur.contains(v.data())) {
            odd.store(true, std::memory_order_relaxed);
            break;
          }
          found[c].push(v.data());
        }
        if (stored + pending.fetch_add(alphabet) > limits.max_states) over.store(true);
      }
    });

    if (odd.load()) {
      const std::size_t len = 2 * d + 1;
      return RhoCertificate{len, detail::least_relation(o, spheres, len), len};
    }
    if (over.load()) throw budget_exceeded("compute_rho: state budget exceeded", static_cast<int>(d));

    RecordArray next(w);
    for (const auto& f : found) next.append(f);
    found.clear();
    next.sort();
    const bool even = next.has_adjacent_duplicate();
    next.unique();
    stored += next.size();
    if (stored > limits.max_states) throw budget_exceeded("compute_rho: state budget exceeded", static_cast<int>(d));
    if (even) {
      const std::size_t len = 2 * d + 2;
      if (len > max_len) return RhoNotFound{max_len};
      spheres.push_back(std::move(next));
      return RhoCertificate{len, detail::least_relation(o, spheres, len), len};
    }
    if (next.empty()) return RhoNotFound{max_len};
    spheres.push_back(std::move(next));
  }
}

struct GirthSearchResult {
  bool reached = false;         // some candidate certified rho >= target
  std::size_t tries = 0;        // candidates examined
  std::size_t best_rho_at_least = 0;
  std::optional<RhoResult> best_rho;
  std::vector<std::vector<int>> best_perms;  // 1-based image tuples, one per generator
  std::optional<GroupOracle> best;
};

/// Seeded random search for a subdirect oracle (phi, permutation images of
/// the given degree) whose shortest relation has length >= target_rho.
/// Candidates are drawn with std::shuffle over mt19937_64(seed); the search
/// stops at the first candidate reaching the target.
inline GirthSearchResult find_high_girth_subdirect(const PhiSpec& phi, std::size_t degree, std::size_t tries,
                                                   std::size_t target_rho, std::uint64_t seed,
                                                   const SearchLimits& limits = {}) {
  if (target_rho < 2) throw std::invalid_argument("find_high_girth_subdirect: target_rho must be at least 2");
  std::mt19937_64 rng(seed);
  GirthSearchResult out;
  for (std::size_t i = 0; i < tries; ++i) {
    std::vector<std::vector<int>> perms(static_cast<std::size_t>(phi.rank()), std::vector<int>(degree));
    for (auto& p : perms) {
      std::iota(p.begin(), p.end(), 1);
      std::shuffle(p.begin(), p.end(), rng);
    }
    ++out.tries;
    const GroupOracle o = make_subdirect(phi, make_finite_perm(phi.rank(), perms, degree));
    RhoResult r;
    try {
      r = compute_rho(o, target_rho - 1, limits);
    } catch (const budget_exceeded&) {
      continue;
    }
    const std::size_t lower = rho_lower_bound(r);
    if (lower > out.best_rho_at_least) {
      out.best_rho_at_least = lower;
      out.best_rho = r;
      out.best_perms = perms;
      out.best = o;
    }
    if (lower >= target_rho) {
      out.reached = true;
      break;
    }
  }
  return out;
}

}  // namespace growthkit
