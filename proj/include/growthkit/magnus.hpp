#pragma once

// Elements of F_m/R' as pairs (endpoint in G, integer flow on the edges
// of Cay(G)). A word maps to the net number of times its path crosses each
// positively oriented edge; w lies in R' exactly when that flow vanishes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "growthkit/errors.hpp"
#include "growthkit/quotient.hpp"
#include "growthkit/words.hpp"

namespace growthkit {

/// The positively oriented edge source -> source * a_gen.
struct EdgeKey {
  Element source;
  int gen = 1;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct FlowEntry {
  EdgeKey edge;
  std::int64_t weight = 0;

  friend bool operator==(const FlowEntry&, const FlowEntry&) = default;
};

class FlowElement {
 public:
  /// The identity of F_m/R' over `o`.
  explicit FlowElement(GroupOracle o) : oracle_(std::move(o)), endpoint_(oracle_.identity()) {}

  const GroupOracle& oracle() const noexcept { return oracle_; }
  const Element& endpoint() const noexcept { return endpoint_; }
  /// Nonzero entries sorted by (source bytes, gen).
  const std::vector<FlowEntry>& flow() const noexcept { return flow_; }

  std::int64_t weight(const EdgeKey& e) const {
    auto it = find(e);
    return it != flow_.end() && it->edge == e ? it->weight : 0;
  }

  /// Right multiplication by a single letter.
  void step(Letter x) {
    oracle_.check_letter(x);
    if (x.sign > 0) {
      add({endpoint_, x.index}, 1);
      oracle_.step(endpoint_.bytes.data(), x);
    } else {
      oracle_.step(endpoint_.bytes.data(), x);
      add({endpoint_, x.index}, -1);
    }
  }

  friend bool operator==(const FlowElement& a, const FlowElement& b) {
    return a.oracle_.same_as(b.oracle_) && a.endpoint_ == b.endpoint_ && a.flow_ == b.flow_;
  }

 private:
  friend FlowElement flow_mul(const FlowElement&, const FlowElement&);
  friend FlowElement flow_inv(const FlowElement&);

  std::vector<FlowEntry>::const_iterator find(const EdgeKey& e) const {
    return std::lower_bound(flow_.begin(), flow_.end(), e,
                            [](const FlowEntry& f, const EdgeKey& k) { return f.edge < k; });
  }

  void add(EdgeKey e, std::int64_t w) {
    auto it = std::lower_bound(flow_.begin(), flow_.end(), e,
                               [](const FlowEntry& f, const EdgeKey& k) { return f.edge < k; });
    if (it != flow_.end() && it->edge == e) {
      it->weight += w;
      if (it->weight == 0) flow_.erase(it);
    } else {
      flow_.insert(it, FlowEntry{std::move(e), w});
    }
  }

  GroupOracle oracle_;
  Element endpoint_;
  std::vector<FlowEntry> flow_;
};

inline FlowElement flow_from_word(const GroupOracle& o, std::span<const Letter> w) {
  FlowElement x(o);
  for (const Letter& l : w) x.step(l);
  return x;
}

inline FlowElement flow_from_word(const GroupOracle& o, const Word& w) { return flow_from_word(o, w.letters()); }

namespace detail {

/// Left translation g * f of a flow, re-sorted.
inline std::vector<FlowEntry> translate(const GroupOracle& o, const Element& g, const std::vector<FlowEntry>& f) {
  std::vector<FlowEntry> out;
  out.reserve(f.size());
  for (const FlowEntry& e : f) out.push_back({{o.multiply(g, e.edge.source), e.edge.gen}, e.weight});
  std::sort(out.begin(), out.end(), [](const FlowEntry& a, const FlowEntry& b) { return a.edge < b.edge; });
  return out;
}

}  // namespace detail

/// (g1, f1)(g2, f2) = (g1 g2, f1 + g1 f2).
inline FlowElement flow_mul(const FlowElement& x, const FlowElement& y) {
  if (!x.oracle_.same_as(y.oracle_)) throw oracle_mismatch("flow_mul: operands live over different oracles");
  const GroupOracle& o = x.oracle_;
  FlowElement r(o);
  r.endpoint_ = o.multiply(x.endpoint_, y.endpoint_);
  const auto shifted = detail::translate(o, x.endpoint_, y.flow_);
  auto a = x.flow_.begin();
  auto b = shifted.begin();
  while (a != x.flow_.end() || b != shifted.end()) {
    if (b == shifted.end() || (a != x.flow_.end() && a->edge < b->edge)) {
      r.flow_.push_back(*a++);
    } else if (a == x.flow_.end() || b->edge < a->edge) {
      r.flow_.push_back(*b++);
    } else {
      if (const std::int64_t s = a->weight + b->weight; s != 0) r.flow_.push_back({a->edge, s});
      ++a;
      ++b;
    }
  }
  return r;
}

/// (g, f)^-1 = (g^-1, -(g^-1 f)).
inline FlowElement flow_inv(const FlowElement& x) {
  const GroupOracle& o = x.oracle_;
  FlowElement r(o);
  r.endpoint_ = o.inverse(x.endpoint_);
  r.flow_ = detail::translate(o, r.endpoint_, x.flow_);
  for (FlowEntry& e : r.flow_) e.weight = -e.weight;
  return r;
}

/// Zero flow means the word lies in R'.
inline bool in_R_prime(const FlowElement& x) {
  if (!x.flow().empty()) return false;
  if (!x.oracle().is_identity(x.endpoint()))
    throw invariant_violation("in_R_prime: zero flow with endpoint " + x.oracle().format(x.endpoint()));
  return true;
}

/// inflow - outflow at every vertex equals [v = endpoint] - [v = identity].
inline bool boundary_holds(const FlowElement& x) {
  const GroupOracle& o = x.oracle();
  std::map<Element, std::int64_t> net;
  for (const FlowEntry& e : x.flow()) {
    net[e.edge.source] -= e.weight;
    Element head = e.edge.source;
    o.step(head.bytes.data(), gen(e.edge.gen));
    net[head] += e.weight;
  }
  net[x.endpoint()] -= 1;
  net[o.identity()] += 1;
  return std::all_of(net.begin(), net.end(), [](const auto& kv) { return kv.second == 0; });
}

/// Endpoint bytes, u32 entry count, then per entry: source bytes,
/// u16 generator, i64 weight (all little-endian).
inline std::vector<std::uint8_t> flow_encode(const FlowElement& x) {
  std::vector<std::uint8_t> out(x.endpoint().bytes);
  const auto n = static_cast<std::uint32_t>(x.flow().size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  std::uint8_t w[8];
  for (const FlowEntry& e : x.flow()) {
    out.insert(out.end(), e.edge.source.bytes.begin(), e.edge.source.bytes.end());
    out.push_back(static_cast<std::uint8_t>(e.edge.gen & 0xff));
    out.push_back(static_cast<std::uint8_t>((e.edge.gen >> 8) & 0xff));
    detail::store_i64(w, e.weight);
    out.insert(out.end(), w, w + 8);
  }
  return out;
}

/// Debug text: "endpoint <g>" then one "edge <source> <gen> <weight>" line per entry.
inline std::string flow_to_text(const FlowElement& x) {
  const GroupOracle& o = x.oracle();
  std::string s = "endpoint " + o.format(x.endpoint()) + "\n";
  for (const FlowEntry& e : x.flow())
    s += "edge " + o.format(e.edge.source) + " " + std::to_string(e.edge.gen) + " " + std::to_string(e.weight) + "\n";
  return s;
}

}  // namespace growthkit
