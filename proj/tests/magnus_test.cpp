#include <gtest/gtest.h>

#include <random>

#include "growthkit/detail/checked.hpp"
#include "growthkit/magnus.hpp"
#include "test_support.hpp"

using namespace growthkit;
using testing_support::commutator;
using testing_support::Fox;
using testing_support::random_word;

namespace {

const Letter a = gen(1), A = inv(1), b = gen(2), B = inv(2);

Word W(std::vector<Letter> v) { return free_reduce(v); }

GroupOracle sym3() { return make_finite_perm(2, {{2, 3, 1}, {2, 1, 3}}, 3); }

std::pair<std::int64_t, std::int64_t> z2(const Element& e) {
  return {detail::load_i64(e.bytes.data()), detail::load_i64(e.bytes.data() + 8)};
}

}  // namespace

TEST(Flow, SingleLetters) {
  const auto o = make_free_abelian(2);
  const FlowElement x = flow_from_word(o, W({a}));
  ASSERT_EQ(x.flow().size(), 1u);
  EXPECT_EQ(x.flow()[0].edge.source, o.identity());
  EXPECT_EQ(x.flow()[0].edge.gen, 1);
  EXPECT_EQ(x.flow()[0].weight, 1);

  // a^-1 traverses the edge a^-1 -> 1 backwards
  const FlowElement y = flow_from_word(o, W({A}));
  ASSERT_EQ(y.flow().size(), 1u);
  EXPECT_EQ(y.flow()[0].edge.source, o.eval(W({A})));
  EXPECT_EQ(y.flow()[0].weight, -1);
}

TEST(Flow, CommutatorOfGeneratorsIsNotInRPrime) {
  const auto o = make_free_abelian(2);
  const FlowElement x = flow_from_word(o, commutator(W({a}), W({b})));
  EXPECT_TRUE(o.is_identity(x.endpoint()));
  EXPECT_EQ(x.flow().size(), 4u);
  EXPECT_FALSE(in_R_prime(x));
  EXPECT_TRUE(boundary_holds(x));
}

TEST(Flow, CommutatorOfRelatorsIsInRPrime) {
  const auto o = make_free_abelian(2);
  const Word r1 = commutator(W({a}), W({b}));
  const Word r2 = W({a}) * r1 * W({A});
  const FlowElement x = flow_from_word(o, commutator(r1, r2));
  EXPECT_TRUE(x.flow().empty());
  EXPECT_TRUE(in_R_prime(x));
}

TEST(Flow, MatchesFoxDerivativesOverZ2) {
  const auto o = make_free_abelian(2);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const Word w = random_word(rng, 2, 20);
    const FlowElement x = flow_from_word(o, w);
    const Fox f = Fox::of(w.letters());
    Fox::Poly da, db;
    for (const FlowEntry& e : x.flow()) (e.edge.gen == 1 ? da : db)[z2(e.edge.source)] = e.weight;
    ASSERT_EQ(da, f.da) << format_word(w);
    ASSERT_EQ(db, f.db) << format_word(w);
    ASSERT_EQ(z2(x.endpoint()), f.shift);
  }
}

TEST(Flow, StepMatchesWordEvaluation) {
  const auto o = make_nilpotent_class2(2);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(rng, 2, 16);
    FlowElement x(o);
    for (const Letter& l : w) x.step(l);
    ASSERT_EQ(x, flow_from_word(o, w));
    ASSERT_EQ(x.endpoint(), o.eval(w));
  }
}

TEST(Flow, UnreducedWordsGiveTheSameFlow) {
  const auto o = sym3();
  const std::vector<Letter> raw{a, b, B, a, A, b};
  EXPECT_EQ(flow_from_word(o, raw), flow_from_word(o, free_reduce(raw)));
}

TEST(Flow, AlgebraLaws) {
  std::mt19937_64 rng(23);
  for (const auto& o : {make_free_abelian(2), sym3(), make_nilpotent_class2(2)}) {
    for (int i = 0; i < 300; ++i) {
      const Word u = random_word(rng, 2, 12), v = random_word(rng, 2, 12), w = random_word(rng, 2, 12);
      const auto fu = flow_from_word(o, u), fv = flow_from_word(o, v), fw = flow_from_word(o, w);
      ASSERT_EQ(flow_mul(fu, fv), flow_from_word(o, u * v));
      ASSERT_EQ(flow_mul(flow_mul(fu, fv), fw), flow_mul(fu, flow_mul(fv, fw)));
      ASSERT_EQ(flow_inv(fu), flow_from_word(o, u.inverse()));
      ASSERT_TRUE(in_R_prime(flow_mul(fu, flow_inv(fu))));
      ASSERT_TRUE(boundary_holds(fu));
    }
  }
}

TEST(Flow, RejectsMixedOracles) {
  const auto x = flow_from_word(make_free_abelian(2), W({a}));
  const auto y = flow_from_word(make_free_abelian(2), W({b}));
  EXPECT_THROW(flow_mul(x, y), oracle_mismatch);
}

TEST(Flow, WeightLookup) {
  const auto o = make_free_abelian(2);
  const auto x = flow_from_word(o, W({a, b, A}));
  EXPECT_EQ(x.weight({o.identity(), 1}), 1);
  EXPECT_EQ(x.weight({o.eval(W({b})), 1}), -1);
  EXPECT_EQ(x.weight({o.eval(W({a})), 2}), 1);
  EXPECT_EQ(x.weight({o.eval(W({b})), 2}), 0);
}

TEST(Flow, EncodingLayout) {
  const auto o = sym3();
  const auto x = flow_from_word(o, W({a}));
  const auto bytes = flow_encode(x);
  // endpoint (3) + count (4) + one entry (3 + 2 + 8)
  ASSERT_EQ(bytes.size(), 3u + 4u + 13u);
  EXPECT_EQ(bytes[3], 1);
  EXPECT_EQ(bytes[4] | bytes[5] | bytes[6], 0);
  EXPECT_EQ(bytes[10], 1);  // generator index, low byte
  EXPECT_EQ(bytes[12], 1);  // weight, low byte
}

TEST(Flow, EncodingIsInjectiveOnSamples) {
  const auto o = make_free_abelian(2);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const Word u = random_word(rng, 2, 10), v = random_word(rng, 2, 10);
    const auto fu = flow_from_word(o, u), fv = flow_from_word(o, v);
    ASSERT_EQ(fu == fv, flow_encode(fu) == flow_encode(fv));
  }
}

TEST(Flow, TextDump) {
  const auto o = make_free_abelian(2);
  const std::string s = flow_to_text(flow_from_word(o, W({a, b})));
  EXPECT_EQ(s, "endpoint (1,1)\nedge (0,0) 1 1\nedge (1,0) 2 1\n");
}
