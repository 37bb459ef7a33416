#pragma once

// Exact spheres and balls of G = F_m/R and of F_m/R' (through flows), the
// path tracer, and the two experiments built on products of good words:
// self-avoidance of their paths in Cay(G) and distinctness in F_m/R'.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "growthkit/bounds.hpp"
#include "growthkit/detail/parallel.hpp"
#include "growthkit/detail/record_array.hpp"
#include "growthkit/girth.hpp"
#include "growthkit/magnus.hpp"
#include "growthkit/quotient.hpp"
#include "growthkit/words.hpp"

namespace growthkit {

struct GrowthReport {
  std::size_t n_max = 0;
  /// Largest radius with exact counts; below n_max only when the budget ran out.
  std::size_t achieved = 0;
  bool complete = true;
  std::vector<std::uint64_t> sphere;  // s(0..achieved)
  std::vector<std::uint64_t> ball;    // b(0..achieved)

  /// b(n)^(1/n) for 1 <= n <= achieved.
  std::optional<double> rate_root(std::size_t n) const {
    if (n == 0 || n > achieved) return std::nullopt;
    return std::pow(static_cast<double>(ball[n]), 1.0 / static_cast<double>(n));
  }
  /// s(n+1)/s(n) when both are known and s(n) > 0.
  std::optional<double> rate_ratio(std::size_t n) const {
    if (n + 1 > achieved || sphere[n] == 0) return std::nullopt;
    return static_cast<double>(sphere[n + 1]) / static_cast<double>(sphere[n]);
  }
};

namespace detail {

inline void record_sphere(GrowthReport& r, std::uint64_t size) {
  r.sphere.push_back(size);
  r.ball.push_back((r.ball.empty() ? 0 : r.ball.back()) + size);
  r.achieved = r.sphere.size() - 1;
}

}  // namespace detail

/// Breadth-first spheres of G around the identity. On budget exhaustion
/// the report is returned with complete = false.
inline GrowthReport enumerate_balls_G(const GroupOracle& o, std::size_t n_max, const SearchLimits& limits = {}) {
  using detail::RecordArray;
  const std::size_t w = o.width();
  const int alphabet = 2 * o.rank();
  GrowthReport rep;
  rep.n_max = n_max;

  RecordArray prev(w), cur(w);
  {
    std::vector<std::uint8_t> id(w);
    o.impl().identity(id.data());
    cur.push(id.data());
  }
  detail::record_sphere(rep, 1);

  for (std::size_t n = 0; n < n_max; ++n) {
    if (cur.empty()) {
      detail::record_sphere(rep, 0);
      continue;
    }
    const std::size_t chunks = detail::chunk_count(cur.size(), limits.threads);
    std::vector<RecordArray> found(chunks, RecordArray(w));
    detail::parallel_chunks(cur.size(), limits.threads, [&](std::size_t c, std::size_t b, std::size_t e) {
      std::vector<std::uint8_t> v(w);
      for (std::size_t i = b; i < e; ++i)
        for (int code = 0; code < alphabet; ++code) {
          std::copy(cur[i], cur[i] + w, v.begin());
          o.step(v.data(), Letter::from_code(code));
          if (!prev.contains(v.data()) && !cur.contains(v.data())) found[c].push(v.data());
        }
    });
    RecordArray next(w);
    for (const auto& f : found) next.append(f);
    found.clear();
    if (prev.size() + cur.size() + next.size() > limits.max_states) {
      rep.complete = false;
      return rep;
    }
    next.sort();
    next.unique();
    detail::record_sphere(rep, next.size());
    prev = std::move(cur);
    cur = std::move(next);
  }
  return rep;
}

namespace detail {

using FlowKey = std::vector<std::uint8_t>;

/// Spheres of F_m/R' as sorted flow encodings. Calls on_sphere(n, keys)
/// for n = 0, 1, ... and stops after n_max, when on_sphere returns false,
/// or when the budget is hit. Returns the last completed radius and
/// whether it stopped for budget.
template <class OnSphere>
std::pair<std::size_t, bool> lifted_spheres(const GroupOracle& o, std::size_t n_max, const SearchLimits& limits,
                                            OnSphere&& on_sphere) {
  const int alphabet = 2 * o.rank();
  std::vector<FlowKey> prev_keys;
  std::vector<FlowKey> cur_keys{flow_encode(FlowElement(o))};
  std::vector<FlowElement> cur{FlowElement(o)};
  if (!on_sphere(std::size_t{0}, cur_keys)) return {0, false};

  for (std::size_t n = 0; n < n_max; ++n) {
    using Cand = std::pair<FlowKey, FlowElement>;
    const std::size_t chunks = chunk_count(cur.size(), limits.threads);
    std::vector<std::vector<Cand>> found(chunks);
    parallel_chunks(cur.size(), limits.threads, [&](std::size_t c, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        for (int code = 0; code < alphabet; ++code) {
          FlowElement y = cur[i];
          y.step(Letter::from_code(code));
          FlowKey k = flow_encode(y);
          if (std::binary_search(prev_keys.begin(), prev_keys.end(), k) ||
              std::binary_search(cur_keys.begin(), cur_keys.end(), k))
            continue;
          found[c].emplace_back(std::move(k), std::move(y));
        }
    });
    std::vector<Cand> next;
    for (auto& f : found)
      for (auto& cand : f) next.push_back(std::move(cand));
    found.clear();
    if (prev_keys.size() + cur_keys.size() + next.size() > limits.max_states) return {n, true};
    std::sort(next.begin(), next.end(), [](const Cand& a, const Cand& b) { return a.first < b.first; });
    next.erase(std::unique(next.begin(), next.end(), [](const Cand& a, const Cand& b) { return a.first == b.first; }),
               next.end());
    prev_keys = std::move(cur_keys);
    cur_keys.clear();
    cur.clear();
    for (auto& [k, y] : next) {
      cur_keys.push_back(std::move(k));
      cur.push_back(std::move(y));
    }
    if (!on_sphere(n + 1, cur_keys)) return {n + 1, false};
  }
  return {n_max, false};
}

}  // namespace detail

/// Breadth-first spheres of F_m/R' with generators A, as flows over `o`.
inline GrowthReport enumerate_balls_FmodRprime(const GroupOracle& o, std::size_t n_max,
                                              const SearchLimits& limits = {}) {
  GrowthReport rep;
  rep.n_max = n_max;
  const auto [reached, out_of_budget] =
      detail::lifted_spheres(o, n_max, limits, [&](std::size_t, const std::vector<detail::FlowKey>& keys) {
        detail::record_sphere(rep, keys.size());
        return true;
      });
  (void)reached;
  rep.complete = !out_of_budget;
  return rep;
}

/// Word length in F_m/R' of each target flow encoding, by breadth-first
/// search up to `max_radius`. Targets not reached get std::nullopt.
inline std::vector<std::optional<std::size_t>> lifted_lengths(const GroupOracle& o,
                                                              const std::vector<std::vector<std::uint8_t>>& targets,
                                                              std::size_t max_radius,
                                                              const SearchLimits& limits = {}) {
  std::vector<std::optional<std::size_t>> len(targets.size());
  std::size_t remaining = targets.size();
  const auto [reached, out_of_budget] =
      detail::lifted_spheres(o, max_radius, limits, [&](std::size_t n, const std::vector<detail::FlowKey>& keys) {
        for (std::size_t i = 0; i < targets.size(); ++i)
          if (!len[i] && std::binary_search(keys.begin(), keys.end(), targets[i])) {
            len[i] = n;
            --remaining;
          }
        return remaining > 0;
      });
  (void)reached;
  if (out_of_budget && remaining > 0)
    throw budget_exceeded("lifted_lengths: state budget exceeded", static_cast<int>(reached));
  return len;
}

// Path tracing -----------------------------------------------------------

struct TraceResult {
  std::vector<Element> vertices;  // |w| + 1 vertices starting at the identity
  bool self_avoiding = true;
  /// Index of the first vertex equal to an earlier one.
  std::optional<std::size_t> first_repeat;
};

inline TraceResult trace_path(const GroupOracle& o, std::span<const Letter> w) {
  TraceResult r;
  r.vertices.reserve(w.size() + 1);
  r.vertices.push_back(o.identity());
  for (const Letter& x : w) {
    o.check_letter(x);
    Element v = r.vertices.back();
    o.step(v.bytes.data(), x);
    r.vertices.push_back(std::move(v));
  }
  std::vector<Element> seen;
  for (std::size_t i = 0; i < r.vertices.size(); ++i) {
    auto it = std::lower_bound(seen.begin(), seen.end(), r.vertices[i]);
    if (it != seen.end() && *it == r.vertices[i]) {
      r.self_avoiding = false;
      r.first_repeat = i;
      break;
    }
    seen.insert(it, r.vertices[i]);
  }
  return r;
}

inline TraceResult trace_path(const GroupOracle& o, const Word& w) { return trace_path(o, w.letters()); }

// Products of good words --------------------------------------------------

enum class Precondition { verified, failed, unverified };

inline const char* precondition_name(Precondition p) {
  switch (p) {
    case Precondition::verified: return "verified";
    case Precondition::failed: return "false";
    case Precondition::unverified: return "unverified";
  }
  return "?";
}

/// Evaluates a rho inequality against what a girth search certified.
/// An exact rho decides it; a lower bound can only confirm it.
inline Precondition rho_precondition(const std::optional<RhoResult>& rho, const std::function<bool(std::int64_t)>& holds) {
  if (!rho) return Precondition::unverified;
  if (const auto* c = std::get_if<RhoCertificate>(&*rho))
    return holds(static_cast<std::int64_t>(c->rho)) ? Precondition::verified : Precondition::failed;
  return holds(static_cast<std::int64_t>(rho_lower_bound(*rho))) ? Precondition::verified : Precondition::unverified;
}

/// Iterates over the d_k^t products g_1...g_t, either all of them in
/// lexicographic order of section indices, or `budget` independent uniform
/// samples drawn from mt19937_64(seed).
class ProductSource {
 public:
  ProductSource(std::size_t sections, std::size_t t, std::uint64_t budget, std::uint64_t seed)
      : sections_(sections), t_(t), seed_(seed) {
    std::uint64_t total = 1;
    exhaustive_ = true;
    for (std::size_t i = 0; i < t && exhaustive_; ++i) {
      if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(sections), &total)) exhaustive_ = false;
    }
    if (exhaustive_ && total > budget) exhaustive_ = false;
    count_ = exhaustive_ ? total : budget;
  }

  bool exhaustive() const { return exhaustive_; }
  std::uint64_t count() const { return count_; }

  /// Section indices of product number `i`. Samples are generated in one
  /// sequential stream, so call sample_all() for the sampled case.
  std::vector<std::size_t> exhaustive_indices(std::uint64_t i) const {
    std::vector<std::size_t> idx(t_);
    for (std::size_t s = t_; s-- > 0;) {
      idx[s] = static_cast<std::size_t>(i % sections_);
      i /= sections_;
    }
    return idx;
  }

  std::vector<std::vector<std::size_t>> sample_all() const {
    std::mt19937_64 rng(seed_);
    std::uniform_int_distribution<std::size_t> pick(0, sections_ - 1);
    std::vector<std::vector<std::size_t>> out(count_, std::vector<std::size_t>(t_));
    for (auto& v : out)
      for (auto& x : v) x = pick(rng);
    return out;
  }

 private:
  std::size_t sections_, t_;
  std::uint64_t seed_;
  bool exhaustive_ = true;
  std::uint64_t count_ = 0;
};

inline std::vector<Letter> concat_sections(const std::vector<Word>& good, const std::vector<std::size_t>& idx) {
  std::vector<Letter> w;
  for (std::size_t i : idx) w.insert(w.end(), good[i].begin(), good[i].end());
  return w;
}

struct SawViolation {
  Word word;
  std::size_t first_repeat = 0;
};

struct SawReport {
  std::size_t k = 0;
  std::size_t t = 0;
  std::uint64_t d_k = 0;
  std::uint64_t words_checked = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  Precondition precondition = Precondition::unverified;
  std::int64_t threshold = 0;  // rho must exceed this
  std::optional<std::size_t> rho_lower;
  std::vector<SawViolation> violations;  // first kMaxListed, in product order
  std::uint64_t violation_count = 0;

  static constexpr std::size_t kMaxListed = 100;
};

/// Traces every product of t good words of length k (or `budget` uniform
/// samples) through Cay(G) and records the paths that revisit a vertex.
inline SawReport saw_check(const GroupOracle& o, const PhiSpec& phi, std::size_t k, std::size_t t,
                           std::uint64_t budget, std::uint64_t seed, const std::optional<RhoResult>& rho,
                           const SearchLimits& limits = {}) {
  if (o.rank() != phi.rank()) throw rank_mismatch("saw_check: oracle and phi ranks differ");
  const std::vector<Word> good = enumerate_good(phi, k);
  if (good.empty()) throw std::invalid_argument("saw_check: D_k is empty");
  SawReport rep;
  rep.k = k;
  rep.t = t;
  rep.d_k = good.size();
  rep.seed = seed;
  const auto C = phi.C();
  const auto kk = static_cast<std::int64_t>(k);
  if (k >= 2) {
    rep.threshold = rhok_threshold(C, kk);
    rep.precondition = rho_precondition(rho, [&](std::int64_t r) { return rhok_holds(C, kk, r); });
  }
  if (rho) rep.rho_lower = rho_lower_bound(*rho);

  const ProductSource src(good.size(), t, budget, seed);
  rep.sampled = !src.exhaustive();
  rep.words_checked = src.count();
  std::vector<std::vector<std::size_t>> samples;
  if (rep.sampled) samples = src.sample_all();

  const std::size_t n = static_cast<std::size_t>(src.count());
  const std::size_t chunks = detail::chunk_count(n, limits.threads);
  std::vector<std::vector<SawViolation>> found(chunks);
  std::vector<std::uint64_t> counts(chunks, 0);
  detail::parallel_chunks(n, limits.threads, [&](std::size_t c, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto idx = rep.sampled ? samples[i] : src.exhaustive_indices(i);
      const std::vector<Letter> w = concat_sections(good, idx);
      const TraceResult tr = trace_path(o, w);
      if (!tr.self_avoiding) {
        ++counts[c];
        if (found[c].size() < SawReport::kMaxListed) found[c].push_back({Word::from_reduced(w), *tr.first_repeat});
      }
    }
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    rep.violation_count += counts[c];
    for (auto& v : found[c])
      if (rep.violations.size() < SawReport::kMaxListed) rep.violations.push_back(std::move(v));
  }
  return rep;
}

struct DistinctnessReport {
  std::size_t k = 0;
  std::size_t t = 0;
  std::uint64_t expected = 0;  // d_k^t
  std::uint64_t observed = 0;  // distinct flow encodings
  Precondition precondition = Precondition::unverified;
  /// Elements whose F_m/R' length was measured by breadth-first search,
  /// and how many of them came out at exactly k*t.
  std::uint64_t lengths_checked = 0;
  std::uint64_t lengths_equal_kt = 0;
};

/// Maps every product g_1...g_t of good words to its flow in F_m/R' and
/// counts distinct elements. If `length_samples` > 0, that many products
/// (evenly spaced through the enumeration) get their word length in
/// F_m/R' measured by breadth-first search.
inline DistinctnessReport distinctness_check(const GroupOracle& o, const PhiSpec& phi, std::size_t k, std::size_t t,
                                             std::uint64_t budget, const std::optional<RhoResult>& rho,
                                             std::size_t length_samples = 0, const SearchLimits& limits = {}) {
  if (o.rank() != phi.rank()) throw rank_mismatch("distinctness_check: oracle and phi ranks differ");
  const std::vector<Word> good = enumerate_good(phi, k);
  if (good.empty()) throw std::invalid_argument("distinctness_check: D_k is empty");
  const ProductSource src(good.size(), t, budget, 0);
  if (!src.exhaustive()) throw budget_exceeded("distinctness_check: d_k^t exceeds the budget", 0);

  DistinctnessReport rep;
  rep.k = k;
  rep.t = t;
  rep.expected = src.count();
  const auto C = phi.C();
  const auto kk = static_cast<std::int64_t>(k);
  if (k >= 4) rep.precondition = rho_precondition(rho, [&](std::int64_t r) { return rhock_holds(C, kk, r); });

  const std::size_t n = static_cast<std::size_t>(src.count());
  std::vector<std::vector<std::uint8_t>> keys(n);
  detail::parallel_chunks(n, limits.threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      keys[i] = flow_encode(flow_from_word(o, concat_sections(good, src.exhaustive_indices(i))));
  });

  if (length_samples > 0) {
    std::vector<std::vector<std::uint8_t>> targets;
    const std::size_t step = std::max<std::size_t>(1, n / length_samples);
    for (std::size_t i = 0; i < n && targets.size() < length_samples; i += step) targets.push_back(keys[i]);
    const auto lens = lifted_lengths(o, targets, k * t, limits);
    rep.lengths_checked = targets.size();
    for (const auto& l : lens)
      if (l && *l == k * t) ++rep.lengths_equal_kt;
  }

  std::sort(keys.begin(), keys.end());
  rep.observed = static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  return rep;
}

}  // namespace growthkit
