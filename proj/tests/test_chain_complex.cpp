#include <gtest/gtest.h>

#include <random>

#include "hhbv/chain_complex.hpp"

using namespace hhbv;

namespace {

IntVector repeated(long value, std::size_t count) { return IntVector(count, mpz_class(value)); }

void expect_unimodular(const IntMatrix& m) {
  const auto det = m.determinant();
  EXPECT_TRUE(det == 1 || det == -1) << m.to_string();
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int spread) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, dist(rng));
  return m;
}

}  // namespace

TEST(Smith, DiagonalTwoThree) {
  auto s = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  EXPECT_EQ(s.diagonal(), (IntVector{1, 6}));
  EXPECT_EQ(s.u * IntMatrix::from_rows({{2, 0}, {0, 3}}) * s.v, s.d);
}

TEST(Smith, ZeroMatrix) {
  IntMatrix z(3, 2);
  auto s = smith_normal_form(z);
  EXPECT_TRUE(s.d.is_zero());
  EXPECT_EQ(s.u, IntMatrix::identity(3));
  EXPECT_EQ(s.v, IntMatrix::identity(2));
  EXPECT_EQ(s.rank, 0u);
}

TEST(Smith, OneByOne) {
  auto s = smith_normal_form(IntMatrix::from_rows({{7}}));
  EXPECT_EQ(s.d, IntMatrix::from_rows({{7}}));
}

TEST(Smith, RejectsModularRing) {
  EXPECT_THROW(smith_normal_form(IntMatrix(2, 2, CoeffRingTag::integers_mod(4))), DomainError);
}

TEST(SmithProperties, RandomMatricesFactorAndDivide) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 5, c = 1 + (trial * 7) % 6;
    auto m = random_matrix(rng, r, c, 6);
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.u * m * s.v, s.d);
    EXPECT_EQ(s.u * s.u_inv, IntMatrix::identity(r));
    EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(c));
    expect_unimodular(s.u);
    expect_unimodular(s.v);
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) EXPECT_EQ(s.d.at(i, j), 0);
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      EXPECT_GE(diag[i], 0);
      if (diag[i] != 0) EXPECT_TRUE(diag[i + 1] % diag[i] == 0);
      else EXPECT_EQ(diag[i + 1], 0);
    }
  }
}

TEST(Homology, CokernelOfMultiplication) {
  for (long n : {2, 5, 12}) {
    FreeComplex c(CoeffRingTag::integers(), 0, {1, 1}, -1);
    c.set_differential(1, IntMatrix::from_rows({{n}}));
    auto h = homology_at(c, 0);
    EXPECT_EQ(h.free_rank, 0u);
    EXPECT_EQ(h.torsion, repeated(n, 1));
    EXPECT_TRUE(homology_at(c, 1).is_zero());
  }
}

TEST(Homology, PeriodicCochainsOverZ) {
  auto c = periodic_cochain_complex(3, 6);
  auto even = homology_at(c, 2);
  EXPECT_EQ(even.free_rank, 0u);
  EXPECT_EQ(even.torsion, repeated(3, 3));
  EXPECT_TRUE(homology_at(c, 3).is_zero());
  EXPECT_EQ(homology_at(c, 0).free_rank, 3u);
}

// A/nA, Ann(n) and A itself, counted from the shape of multiplication by n s^{n-1}.
TEST(HomologyProperties, PeriodicTablesAllSmallOrders) {
  for (long n = 2; n <= 8; ++n) {
    const std::size_t rank = static_cast<std::size_t>(n);
    auto cz = periodic_cochain_complex(n, 6);
    EXPECT_EQ(homology_at(cz, 0).free_rank, rank);
    EXPECT_TRUE(homology_at(cz, 0).torsion.empty());
    for (int k = 1; k <= 5; ++k) {
      auto h = homology_at(cz, k);
      if (k % 2 == 1) {
        EXPECT_TRUE(h.is_zero()) << n << " " << k;
      } else {
        EXPECT_EQ(h.free_rank, 0u);
        EXPECT_EQ(h.torsion, repeated(n, rank)) << n << " " << k;
      }
    }
    for (long p : {2, 3, 5}) {
      const auto ring = CoeffRingTag::integers_mod(p);
      auto cp = periodic_cochain_complex(n, 6, ring);
      const bool divides = n % p == 0;
      EXPECT_EQ(homology_at(cp, 0).free_rank, rank);
      for (int k = 1; k <= 5; ++k) {
        auto h = homology_at(cp, k);
        EXPECT_TRUE(h.torsion.empty());
        EXPECT_EQ(h.free_rank, divides ? rank : 0u) << n << " " << p << " " << k;
      }
    }
  }
}

TEST(HomologyProperties, RepresentativesAreCycles) {
  for (const auto& ring : {CoeffRingTag::integers(), CoeffRingTag::integers_mod(4), CoeffRingTag::integers_mod(6)}) {
    auto c = periodic_cochain_complex(4, 5, ring);
    for (int k = 0; k <= 4; ++k) {
      auto h = homology_at(c, k);
      const auto d = c.differential(k);
      for (const auto& v : h.representatives) {
        auto image = d.apply(v);
        for (auto& x : image) {
          if (ring.is_modular()) x = ((x % ring.modulus()) + ring.modulus()) % ring.modulus();
          EXPECT_EQ(x, 0);
        }
      }
      EXPECT_EQ(h.representatives.size(), h.free_rank + h.torsion.size());
    }
  }
}

TEST(HomologyProperties, RankNullityAgainstRationals) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    // d1 d2 = 0 by building d1 from the left kernel of d2
    auto d2 = random_matrix(rng, 4, 3, 3);
    auto left_kernel = integer_kernel(d2.transpose()).transpose();
    FreeComplex cz(CoeffRingTag::integers(), 0, {left_kernel.rows(), 4, 3}, -1);
    cz.set_differential(1, left_kernel);
    cz.set_differential(2, d2);
    cz.validate();
    FreeComplex cq = FreeComplex::deserialize(cz.serialize());
    EXPECT_EQ(cq.serialize(), cz.serialize());
    FreeComplex q(CoeffRingTag::rationals(), 0, {left_kernel.rows(), 4, 3}, -1);
    q.set_differential(1, left_kernel.with_ring(CoeffRingTag::rationals()));
    q.set_differential(2, d2.with_ring(CoeffRingTag::rationals()));
    for (int k = 0; k <= 2; ++k) EXPECT_EQ(homology_at(cz, k).free_rank, homology_at(q, k).free_rank);
  }
}

TEST(FreeComplexTest, RejectsNonComplex) {
  FreeComplex c(CoeffRingTag::integers(), 0, {1, 1, 1}, -1);
  c.set_differential(1, IntMatrix::from_rows({{1}}));
  c.set_differential(2, IntMatrix::from_rows({{1}}));
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(TensorTotal, ZeroDifferentials) {
  FreeComplex a(CoeffRingTag::integers(), 0, {1, 1}, -1);
  a.set_differential(1, IntMatrix(1, 1));
  auto t = tensor_total_complex(a, a);
  EXPECT_EQ(t.rank(0), 1u);
  EXPECT_EQ(t.rank(1), 2u);
  EXPECT_EQ(t.rank(2), 1u);
  for (int k = 0; k <= 2; ++k) EXPECT_TRUE(t.differential(k).is_zero());
}

TEST(TensorTotal, TwoByTwoPeriodicCochains) {
  auto a = periodic_cochain_complex(2, 4);
  auto t = tensor_total_complex(a, a);
  t.validate();
  auto h = homology_at(t, 2);
  EXPECT_EQ(h.free_rank, 0u);
  EXPECT_EQ(h.torsion, repeated(2, 8));
}

TEST(TensorTotal, RingMismatch) {
  auto a = periodic_cochain_complex(2, 2);
  auto b = periodic_cochain_complex(2, 2, CoeffRingTag::integers_mod(2));
  EXPECT_THROW(tensor_total_complex(a, b), RingMismatch);
}

TEST(Tor, FourTwo) {
  auto h = tor_one(4, 2);
  EXPECT_EQ(h.free_rank, 0u);
  EXPECT_EQ(h.torsion, repeated(2, 8));
}

TEST(Tor, TwoTwo) { EXPECT_EQ(tor_one(2, 2).torsion, repeated(2, 4)); }

TEST(Tor, TrivialSecondFactor) { EXPECT_TRUE(tor_one(3, 1).is_zero()); }

TEST(Serialization, SummaryRoundTrip) {
  auto h = homology_at(periodic_cochain_complex(3, 4), 2);
  EXPECT_EQ(HomologySummary::deserialize(h.serialize()), h);
}
