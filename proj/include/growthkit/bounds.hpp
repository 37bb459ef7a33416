#pragma once

// Closed-form counts and inequalities tying rho, C and k to a lower bound
// on the growth rate of F_m/R'. Integer predicates are exact; only the
// final rate uses floating point.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "growthkit/detail/checked.hpp"

namespace growthkit {

/// 4m(m-1)^2(2m-1)^(k-4), the guaranteed minimum of |D_k|.
inline std::uint64_t goods_bound(int m, int k) {
  if (m < 2 || k < 4) throw std::domain_error("goods_bound: requires m >= 2 and k >= 4");
  using detail::checked_mul;
  const auto mm = static_cast<std::uint64_t>(m);
  std::uint64_t r = checked_mul(std::uint64_t{4} * mm, (mm - 1) * (mm - 1), "goods_bound");
  return checked_mul(r, detail::checked_pow(2 * mm - 1, static_cast<unsigned>(k - 4), "goods_bound"), "goods_bound");
}

/// C k (2k-3) + 2k - 2; paths built from D_k are self-avoiding once rho exceeds it.
inline std::int64_t rhok_threshold(std::int64_t C, std::int64_t k) {
  using detail::checked_add;
  using detail::checked_mul;
  const std::int64_t t = checked_mul(checked_mul(C, k, "rhok"), 2 * k - 3, "rhok");
  return checked_add(t, 2 * k - 2, "rhok");
}

inline bool rhok_holds(std::int64_t C, std::int64_t k, std::int64_t rho) {
  if (C < 1 || k < 2) throw std::domain_error("rhok_holds: requires C >= 1 and k >= 2");
  return rho > rhok_threshold(C, k);
}

/// C k (2k-3) + 2k - 1, the least rho admitting block length k in the rate bound.
inline std::int64_t rhock_threshold(std::int64_t C, std::int64_t k) {
  return detail::checked_add(rhok_threshold(C, k), 1, "rhock");
}

inline bool rhock_holds(std::int64_t C, std::int64_t k, std::int64_t rho) {
  if (C < 1 || k < 4) throw std::domain_error("rhock_holds: requires C >= 1 and k >= 4");
  return rho >= rhock_threshold(C, k);
}

/// Largest k >= 4 with rhock_holds(C, k, rho).
inline std::optional<std::int64_t> max_valid_k(std::int64_t C, std::int64_t rho) {
  if (C < 1) throw std::domain_error("max_valid_k: requires C >= 1");
  // The threshold is strictly increasing in k.
  if (!rhock_holds(C, 4, rho)) return std::nullopt;
  std::int64_t k = 4;
  while (rhock_holds(C, k + 1, rho)) ++k;
  return k;
}

/// (2m-1) * (4m(m-1)^2 / (2m-1)^4)^(1/k), which equals goods_bound(m,k)^(1/k).
inline double thm1_bound(int m, int k) {
  if (m < 2 || k < 4) throw std::domain_error("thm1_bound: requires m >= 2 and k >= 4");
  const double q = 2.0 * m - 1.0;
  const double ratio = 4.0 * m * (m - 1.0) * (m - 1.0) / (q * q * q * q);
  return q * std::pow(ratio, 1.0 / k);
}

/// floor(sqrt(n)) for n >= 0, exactly.
inline std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// floor(sqrt(rho / 2C)): block length schedule for a chain of subgroups.
inline std::int64_t chain_k(std::int64_t C, std::int64_t rho) {
  if (C < 1 || rho < 1) throw std::domain_error("chain_k: requires C >= 1 and rho >= 1");
  // floor(sqrt(x/y)) == isqrt(floor(x/y)) for positive integers.
  return isqrt(rho / (2 * C));
}

struct BoundReport {
  int m = 0;
  std::int64_t C = 0;
  std::int64_t rho = 0;
  std::optional<std::int64_t> k_used;  // absent when no k >= 4 qualifies
  bool lemma2_ok = false;
  bool thm1_ok = false;
  std::optional<double> lower_bound;
  std::optional<std::uint64_t> dk_bound;
  std::int64_t chain_k = 0;

  bool vacuous() const { return !k_used.has_value(); }
};

inline BoundReport make_bound_report(int m, std::int64_t C, std::int64_t rho) {
  if (m < 2) throw std::domain_error("bound: requires m >= 2");
  if (C < 1) throw std::domain_error("bound: requires C >= 1");
  if (rho < 1) throw std::domain_error("bound: requires rho >= 1");
  BoundReport r;
  r.m = m;
  r.C = C;
  r.rho = rho;
  r.chain_k = chain_k(C, rho);
  r.k_used = max_valid_k(C, rho);
  if (r.k_used) {
    const auto k = static_cast<int>(*r.k_used);
    r.thm1_ok = true;
    r.lemma2_ok = rhok_holds(C, k, rho);
    r.lower_bound = thm1_bound(m, k);
    try {
      r.dk_bound = goods_bound(m, k);
    } catch (const std::overflow_error&) {
      // count exceeds 64 bits; dk_bound stays empty
    }
  }
  return r;
}

}  // namespace growthkit
