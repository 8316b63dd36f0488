#include <gtest/gtest.h>

#include <random>

#include "dialectic/order.hpp"

using namespace dialectic;

namespace {

poset_ptr share(finite_poset p) { return std::make_shared<finite_poset>(std::move(p)); }

poset_ptr subsets(std::size_t n) {
  return share(finite_poset::from_relation(std::size_t(1) << n, [](idx a, idx b) { return (a & ~b) == 0; }));
}

}  // namespace

TEST(order, chain_and_antichain) {
  auto c = finite_poset::chain(5);
  EXPECT_EQ(c.bottom(), idx(0));
  EXPECT_EQ(c.top(), idx(4));
  EXPECT_EQ(c.join(1, 3), idx(3));
  EXPECT_EQ(c.meet(1, 3), idx(1));
  auto a = finite_poset::antichain(3);
  EXPECT_FALSE(a.join(0, 1));
  EXPECT_FALSE(a.bottom());
  EXPECT_EQ(a.join(2, 2), idx(2));
}

TEST(order, rejects_non_orders) {
  EXPECT_THROW(finite_poset::from_relation(2, [](idx, idx) { return true; }), model_error);
  EXPECT_THROW(finite_poset::from_relation(2, [](idx a, idx b) { return a < b; }), model_error);
  // 0<=1, 1<=2 but not 0<=2
  EXPECT_THROW(finite_poset::from_relation(3,
                                           [](idx a, idx b) {
                                             return a == b || (a == 0 && b == 1) || (a == 1 && b == 2);
                                           }),
               model_error);
  EXPECT_THROW(finite_poset::chain(2000), model_error);
}

TEST(order, generated_is_the_transitive_closure) {
  auto p = finite_poset::generated(4, {{0, 1}, {1, 2}, {3, 2}});
  EXPECT_TRUE(p.le(0, 2));
  EXPECT_FALSE(p.le(0, 3));
  EXPECT_EQ(p.top(), idx(2));
  EXPECT_FALSE(p.bottom());
  EXPECT_EQ(p.join(0, 3), idx(2));
  EXPECT_FALSE(p.meet(0, 3));
  EXPECT_THROW(finite_poset::generated(2, {{0, 1}, {1, 0}}), model_error);
  EXPECT_THROW(finite_poset::generated(2, {{0, 5}}), model_error);
}

TEST(order, lattice_operations_match_set_operations) {
  auto p = subsets(4);
  for (idx a = 0; a < 16; ++a)
    for (idx b = 0; b < 16; ++b) {
      EXPECT_EQ(p->join(a, b), idx(a | b));
      EXPECT_EQ(p->meet(a, b), idx(a & b));
    }
  auto d = p->dual();
  EXPECT_EQ(d.join(3, 5), idx(1));
  EXPECT_EQ(d.bottom(), idx(15));
}

TEST(order, random_generated_orders_are_orders) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng() % 7;
    std::vector<std::pair<idx, idx>> pairs;
    // edges upward only, so the closure is antisymmetric
    for (int k = 0; k < 6; ++k) {
      idx a = idx(rng() % n), b = idx(rng() % n);
      if (a < b) pairs.emplace_back(a, b);
    }
    auto p = finite_poset::generated(n, pairs);
    for (idx a = 0; a < n; ++a)
      for (idx b = 0; b < n; ++b) {
        auto j = p.join(a, b);
        if (!j) continue;
        EXPECT_TRUE(p.le(a, *j) && p.le(b, *j));
        for (idx c = 0; c < n; ++c)
          if (p.le(a, c) && p.le(b, c)) EXPECT_TRUE(p.le(*j, c));
      }
  }
}

TEST(order, monotone_maps_checked) {
  auto c = share(finite_poset::chain(3));
  EXPECT_NO_THROW(monotone_map::make(c, c, {0, 0, 2}));
  EXPECT_THROW(monotone_map::make(c, c, {2, 1, 0}), model_error);
  EXPECT_THROW(monotone_map::make(c, c, {0, 1}), model_error);
  EXPECT_THROW(monotone_map::make(c, c, {0, 1, 7}), model_error);
  EXPECT_NO_THROW(antitone_map(c, {2, 1, 0}));
  auto f = monotone_map::make(c, c, {1, 1, 2});
  auto g = then(f, f);
  EXPECT_EQ(g.table, (std::vector<idx>{1, 1, 2}));
  EXPECT_THROW(then(f, monotone_map::make(share(finite_poset::chain(2)), c, {0, 1})), shape_error);
}

TEST(order, halving_galois_connection) {
  // ceil(b/2) <= a iff b <= 2a between 0..6 and 0..3
  auto B = share(finite_poset::chain(7));
  auto A = share(finite_poset::chain(4));
  auto f = monotone_map::make(B, A, {0, 1, 1, 2, 2, 3, 3});
  auto g = monotone_map::make(A, B, {0, 2, 4, 6});
  auto v = check_adjoint_pair(f, g);
  EXPECT_TRUE(v.is_adjoint);
  EXPECT_TRUE(v.is_reflective);
  EXPECT_FALSE(v.is_coreflective);
  EXPECT_FALSE(v.is_inverse);
  auto p = adjoint_pair::make(f, g);
  auto ci = closure_interior_images(p);
  EXPECT_EQ(ci.closed_elements, (std::vector<idx>{0, 2, 4, 6}));
  EXPECT_EQ(ci.open_elements, (std::vector<idx>{0, 1, 2, 3}));
  for (auto [b, a] : ci.iso_witness) EXPECT_EQ(g(a), b);
}

TEST(order, non_adjoint_pair_rejected) {
  auto c = share(finite_poset::chain(3));
  auto f = identity_map(c);
  auto g = monotone_map::make(c, c, {0, 0, 1});
  EXPECT_FALSE(check_adjoint_pair(f, g).is_adjoint);
  EXPECT_THROW(adjoint_pair::make(f, g), model_error);
  auto other = share(finite_poset::chain(4));
  EXPECT_THROW(check_adjoint_pair(f, identity_map(other)), shape_error);
}

TEST(order, identity_is_an_inverse_pair) {
  auto c = subsets(3);
  auto v = check_adjoint_pair(identity_map(c), identity_map(c));
  EXPECT_TRUE(v.is_inverse);
}

TEST(order, complement_is_an_involutive_negation) {
  auto p = subsets(3);
  std::vector<idx> t(8);
  for (idx a = 0; a < 8; ++a) t[a] = ~a & 7;
  auto v = check_negation_involution(antitone_map(p, t));
  EXPECT_TRUE(v.is_self_adjoint);
  EXPECT_TRUE(v.involutive_on_closed);
  EXPECT_TRUE(v.demorgan_holds);
  EXPECT_EQ(v.closed.size(), 8u);
  EXPECT_EQ(v.demorgan_pairs, 36u);
}

TEST(order, pseudocomplement_on_a_chain) {
  auto c = share(finite_poset::chain(3));
  auto v = check_negation_involution(antitone_map(c, {2, 0, 0}));
  EXPECT_TRUE(v.is_self_adjoint);
  EXPECT_TRUE(v.involutive_on_closed);
  EXPECT_EQ(v.closed, (std::vector<idx>{0, 2}));
  EXPECT_TRUE(v.demorgan_holds);
  EXPECT_THROW(check_negation_involution(identity_map(c)), shape_error);
}
