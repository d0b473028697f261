#include <gtest/gtest.h>

#include "hhbv/group_ring.hpp"

using namespace hhbv;

namespace {

GroupRingElement sigma_pow(const GroupRingPtr& a, long k, long c = 1) { return GroupRingElement::power_of(a, 0, k, c); }

}  // namespace

TEST(GroupRing, SigmaTimesInverse) {
  for (long n : {2, 3, 5}) {
    auto a = make_group_ring(GroupDescriptor::cyclic(n), CoeffRingTag::integers());
    EXPECT_EQ(gr_mul(sigma_pow(a, 1), sigma_pow(a, n - 1)), GroupRingElement::scalar(a, 1));
  }
}

TEST(GroupRing, AugmentationIdealSquareModTwo) {
  auto a = make_group_ring(GroupDescriptor::cyclic(2), CoeffRingTag::integers_mod(2));
  auto x = sigma_pow(a, 0) + sigma_pow(a, 1);
  EXPECT_TRUE(gr_mul(x, x).is_zero());
}

TEST(GroupRing, LaurentInverse) {
  auto a = make_group_ring(GroupDescriptor::free(1), CoeffRingTag::integers());
  EXPECT_EQ(gr_mul(sigma_pow(a, 1), sigma_pow(a, -1)), GroupRingElement::scalar(a, 1));
}

TEST(GroupRing, MismatchedAlgebrasThrow) {
  auto a = make_group_ring(GroupDescriptor::cyclic(2), CoeffRingTag::integers());
  auto b = make_group_ring(GroupDescriptor::cyclic(3), CoeffRingTag::integers());
  EXPECT_THROW(gr_mul(sigma_pow(a, 1), sigma_pow(b, 1)), RingMismatch);
}

TEST(GroupRing, Augmentation) {
  auto a = make_group_ring(GroupDescriptor::cyclic(4), CoeffRingTag::integers());
  EXPECT_EQ(augmentation(sigma_pow(a, 0, 2) + sigma_pow(a, 1, 3)).value(), 2);
  EXPECT_TRUE(augmentation(GroupRingElement(a)).is_zero());
  EXPECT_TRUE(augmentation(sigma_pow(a, 2)).is_zero());
}

TEST(GroupRing, FrobeniusPair) {
  for (long n : {2, 3, 4, 7}) {
    auto a = make_group_ring(GroupDescriptor::cyclic(n), CoeffRingTag::integers());
    EXPECT_TRUE(frobenius_pair(sigma_pow(a, 1), sigma_pow(a, n - 1)).is_one());
  }
  auto a4 = make_group_ring(GroupDescriptor::cyclic(4), CoeffRingTag::integers());
  EXPECT_TRUE(frobenius_pair(sigma_pow(a4, 1), sigma_pow(a4, 1)).is_zero());
  auto a3 = make_group_ring(GroupDescriptor::cyclic(3), CoeffRingTag::integers());
  EXPECT_TRUE(frobenius_pair(sigma_pow(a3, 0), sigma_pow(a3, 0) + sigma_pow(a3, 1) + sigma_pow(a3, 2)).is_one());
  auto lz = make_group_ring(GroupDescriptor::free(1), CoeffRingTag::integers());
  EXPECT_THROW(frobenius_pair(sigma_pow(lz, 1), sigma_pow(lz, -1)), DomainError);
}

TEST(GroupRing, DualBasisCyclic) {
  const auto g = GroupDescriptor::cyclic(3);
  auto pairs = dual_basis(g);
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[0].first, g.identity());
  EXPECT_EQ(pairs[0].second, g.identity());
  EXPECT_EQ(pairs[1].first, g.generator(0, 1));
  EXPECT_EQ(pairs[1].second, g.generator(0, 2));
  EXPECT_EQ(pairs[2].first, g.generator(0, 2));
  EXPECT_EQ(pairs[2].second, g.generator(0, 1));
  const auto two = GroupDescriptor::cyclic(2);
  for (const auto& [x, y] : dual_basis(two)) EXPECT_EQ(x, y);
  EXPECT_THROW(dual_basis(GroupDescriptor::free(1)), DomainError);
}

TEST(GroupRing, DualBasisProductAgainstPairing) {
  const auto g = GroupDescriptor::parse("Z/4 x Z/2");
  auto a = make_group_ring(g, CoeffRingTag::integers());
  auto pairs = dual_basis(g);
  ASSERT_EQ(pairs.size(), 8u);
  for (const auto& [x, xd] : pairs)
    for (const auto& h : g.elements()) {
      auto v = frobenius_pair(GroupRingElement::monomial(a, x), GroupRingElement::monomial(a, h));
      EXPECT_EQ(v.value(), h == xd ? 1 : 0);
    }
}

TEST(GroupRing, ParseSpecs) {
  const auto g = GroupDescriptor::parse("Z^2 x Z/4 x Z/2");
  EXPECT_EQ(g.free_rank(), 2);
  EXPECT_EQ(g.torsion_orders(), (std::vector<std::int64_t>{4, 2}));
  EXPECT_EQ(GroupDescriptor::parse("z/3 × Z"), (GroupDescriptor{1, {3}}));
  EXPECT_THROW(GroupDescriptor::parse("Z/1"), Error);
  EXPECT_THROW(GroupDescriptor::parse("Q"), ParseError);
}

TEST(GroupRingProperties, PairingSymmetricAssociative) {
  const auto g = GroupDescriptor::parse("Z/3 x Z/2");
  auto a = make_group_ring(g, CoeffRingTag::integers());
  std::vector<GroupRingElement> samples;
  long k = 1;
  for (const auto& x : g.elements())
    for (const auto& y : g.elements()) {
      samples.push_back(GroupRingElement::monomial(a, x, k) + GroupRingElement::monomial(a, y, -2 * k + 1));
      k = (k % 5) + 1;
    }
  for (std::size_t i = 0; i < samples.size(); i += 3)
    for (std::size_t j = 1; j < samples.size(); j += 4)
      for (std::size_t l = 2; l < samples.size(); l += 5) {
        const auto &x = samples[i], &y = samples[j], &z = samples[l];
        EXPECT_EQ(frobenius_pair(x, y), frobenius_pair(y, x));
        EXPECT_EQ(frobenius_pair(x * y, z), frobenius_pair(x, y * z));
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x * y) * z, x * (y * z));
      }
}

TEST(GroupRingProperties, GramMatrixIsPermutation) {
  const auto g = GroupDescriptor::parse("Z/4 x Z/3");
  auto a = make_group_ring(g, CoeffRingTag::integers());
  const auto elems = g.elements();
  for (const auto& x : elems) {
    int ones = 0;
    for (const auto& y : elems) {
      auto v = frobenius_pair(GroupRingElement::monomial(a, x), GroupRingElement::monomial(a, y)).value();
      EXPECT_TRUE(v == 0 || v == 1);
      ones += v == 1;
    }
    EXPECT_EQ(ones, 1);
  }
}

TEST(GroupRing, ModularCoefficientsReduce) {
  auto a = make_group_ring(GroupDescriptor::cyclic(3), CoeffRingTag::integers_mod(3));
  auto x = sigma_pow(a, 1, 2) + sigma_pow(a, 1, 1);
  EXPECT_TRUE(x.is_zero());
}

TEST(GroupRing, TensorLayoutRoundTrip) {
  TensorLayout layout(GroupDescriptor::parse("Z x Z/2"), GroupDescriptor::parse("Z/3"));
  for (long f = -2; f <= 2; ++f)
    for (long s = 0; s < 2; ++s)
      for (long u = 0; u < 3; ++u) {
        std::int64_t lc[] = {f, s}, rc[] = {u};
        auto l = layout.left().element(lc);
        auto r = layout.right().element(rc);
        auto [l2, r2] = layout.split(layout.join(l, r));
        EXPECT_EQ(l, l2);
        EXPECT_EQ(r, r2);
      }
}
