#include <gtest/gtest.h>

#include <random>

#include "hhbv/small_resolutions.hpp"

using namespace hhbv;

namespace {

EnvAlgebras cyclic_env(long n, CoeffRingTag ring = {}) { return EnvAlgebras::of(make_group_ring(GroupDescriptor::cyclic(n), ring)); }

GroupElement pw(const EnvAlgebras& env, long k) { return env.base->group.generator(0, k); }

}  // namespace

TEST(Periodic, OddDifferential) {
  auto env = cyclic_env(4);
  auto expected = env.pure(pw(env, 0), pw(env, 1)) - env.pure(pw(env, 1), pw(env, 0));
  EXPECT_EQ(periodic_differential(env, 4, 1), expected);
  EXPECT_EQ(periodic_boundary(env, 4, Parity::Odd, env.one()), expected);
}

TEST(Periodic, EvenDifferential) {
  auto env = cyclic_env(5);
  GroupRingElement expected(env.env);
  for (long i = 0; i < 5; ++i) expected += env.pure(pw(env, i), pw(env, 4 - i));
  EXPECT_EQ(periodic_differential(env, 5, 2), expected);
}

TEST(Periodic, BoundarySquaredVanishes) {
  for (long n = 2; n <= 6; ++n) {
    auto env = cyclic_env(n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        auto x = env.pure(pw(env, i), pw(env, j));
        EXPECT_TRUE(periodic_boundary(env, n, Parity::Odd, periodic_boundary(env, n, Parity::Even, x)).is_zero());
        EXPECT_TRUE(periodic_boundary(env, n, Parity::Even, periodic_boundary(env, n, Parity::Odd, x)).is_zero());
      }
  }
}

TEST(Periodic, HomotopyBaseCases) {
  auto env = cyclic_env(4);
  for (long i = 0; i < 4; ++i)
    EXPECT_EQ(contracting_homotopy(env, 4, 0, GroupRingElement::monomial(env.base, pw(env, i))), env.pure(pw(env, 0), pw(env, i)));
  EXPECT_TRUE(contracting_homotopy(env, 4, 1, env.one()).is_zero());
}

TEST(Periodic, HomotopyIdentityAtSigmaSquared) {
  const long n = 4;
  auto env = cyclic_env(n);
  auto x = env.pure(pw(env, 2), pw(env, 0));
  auto lhs = periodic_boundary(env, n, 2, contracting_homotopy(env, n, 2, x)) +
             contracting_homotopy(env, n, 1, periodic_boundary(env, n, 1, x));
  EXPECT_EQ(lhs, x);
}

TEST(PeriodicProperties, HomotopyIdentityAllDegrees) {
  for (long n = 2; n <= 6; ++n) {
    auto env = cyclic_env(n);
    for (int k = 1; k <= 6; ++k)
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
          auto x = env.pure(pw(env, i), pw(env, j));
          // at k = 1 the lower map is s̃_0 after μ
          auto lower = (k == 1) ? contracting_homotopy(env, n, 0, env.mu(x))
                                : contracting_homotopy(env, n, k - 1, periodic_boundary(env, n, k - 1, x));
          auto total = periodic_boundary(env, n, k, contracting_homotopy(env, n, k, x)) + lower;
          EXPECT_EQ(total, x) << "n=" << n << " k=" << k << " i=" << i << " j=" << j;
        }
    // μ s̃_0 = id
    for (long i = 0; i < n; ++i) {
      auto a = GroupRingElement::monomial(env.base, pw(env, i));
      EXPECT_EQ(env.mu(contracting_homotopy(env, n, 0, a)), a);
    }
  }
}

TEST(KoszulZ, Differential) {
  auto env = EnvAlgebras::of(make_group_ring(GroupDescriptor::free(1), CoeffRingTag::integers()));
  auto expected = env.pure(pw(env, 0), pw(env, 1)) - env.pure(pw(env, 1), pw(env, 0));
  EXPECT_EQ(koszul_z_differential(env), expected);
  for (long i = -3; i <= 3; ++i)
    EXPECT_TRUE(env.mu(koszul_z_boundary(env, env.pure(pw(env, i), pw(env, -2 * i)))).is_zero());
}

TEST(KoszulZ, HomotopyNegativeBranch) {
  auto env = EnvAlgebras::of(make_group_ring(GroupDescriptor::free(1), CoeffRingTag::integers()));
  EXPECT_EQ(koszul_z_homotopy(env, 1, env.pure(pw(env, -1), pw(env, 0))), env.pure(pw(env, -1), pw(env, -1)));
}

TEST(KoszulZProperties, HomotopyIdentity) {
  auto env = EnvAlgebras::of(make_group_ring(GroupDescriptor::free(1), CoeffRingTag::integers()));
  for (long i = -4; i <= 4; ++i)
    for (long j = -3; j <= 3; ++j) {
      auto x = env.pure(pw(env, i), pw(env, j));
      auto total = koszul_z_boundary(env, koszul_z_homotopy(env, 1, x)) + koszul_z_homotopy(env, 0, env.mu(x));
      EXPECT_EQ(total, x);
      // degree 1 module is the top: s_1 d_1 = id there
      EXPECT_EQ(koszul_z_homotopy(env, 1, koszul_z_boundary(env, x)), x);
    }
}

TEST(KoszulZ, Diagonal) {
  auto env = EnvAlgebras::of(make_group_ring(GroupDescriptor::free(1), CoeffRingTag::integers()));
  auto d0 = koszul_z_diagonal(env, 0);
  ASSERT_EQ(d0.size(), 1u);
  EXPECT_EQ(d0.at({0, 0}), env.pure3(pw(env, 0), pw(env, 0), pw(env, 0)));
  auto d1 = koszul_z_diagonal(env, 1);
  ASSERT_EQ(d1.size(), 2u);
  EXPECT_EQ(d1.at({1, 0}), env.pure3(pw(env, 0), pw(env, 0), pw(env, 0)));
  EXPECT_EQ(d1.at({0, 1}), env.pure3(pw(env, 0), pw(env, 0), pw(env, 0)));
}

TEST(KoszulZProperties, DiagonalCounitAndChainMap) {
  auto env = EnvAlgebras::of(make_group_ring(GroupDescriptor::free(1), CoeffRingTag::integers()));
  // μ3 ∘ Δ_0 = μ on a⊗b
  for (long i = -2; i <= 2; ++i) {
    auto x = env.pure(pw(env, i), pw(env, 3 - i));
    auto d = koszul_z_diagonal(env, 0).at({0, 0});
    // Δ is A^e-linear: a⊗b acts on the outer legs
    auto image = env.pure3(pw(env, i), pw(env, 0), pw(env, 3 - i)) * d;
    EXPECT_EQ(env.mu3(image), env.mu(x));
  }
  // Δ_0 d_1 = (d⊗1 + 1⊗d) Δ_1
  auto diff = [&](int k) { return k == 1 ? koszul_z_differential(env) : GroupRingElement(env.env); };
  std::map<std::pair<int, int>, GroupRingElement> lhs;
  for (const auto& [key, t] : koszul_z_diagonal(env, 1))
    for (const auto& [k2, v] : triple_boundary(env, key.first, key.second, t, diff)) {
      auto [it, inserted] = lhs.emplace(k2, v);
      if (!inserted) it->second += v;
    }
  const auto d1 = koszul_z_differential(env);
  GroupRingElement rhs(env.triple);
  for (const auto& [g, c] : d1.terms()) {
    auto [a, b] = env.pair_layout.split(g);
    rhs += env.pure3(a, pw(env, 0), b, c) * koszul_z_diagonal(env, 0).at({0, 0});
  }
  ASSERT_EQ(lhs.size(), 1u);
  EXPECT_EQ(lhs.at({0, 0}), rhs);
}

TEST(Resolution, SummariesAndTopDegrees) {
  auto p = SmallResolution::periodic(3, CoeffRingTag::integers(), 6);
  EXPECT_EQ(p.top_degree(), 6);
  EXPECT_EQ(p.summands(4).size(), 1u);
  auto z = SmallResolution::koszul_z(CoeffRingTag::integers());
  EXPECT_EQ(z.top_degree(), 1);
  auto t = SmallResolution::tensor({p, z});
  auto s = t.summands(2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (std::vector<int>{2, 0}));
  EXPECT_EQ(s[1], (std::vector<int>{1, 1}));
}

TEST(Tau, SignsAndInvolution) {
  auto a = make_group_ring(GroupDescriptor::cyclic(2), CoeffRingTag::integers());
  auto b = make_group_ring(GroupDescriptor::cyclic(3), CoeffRingTag::integers());
  auto env = TensorEnv::of(a, b);
  auto ta = env.left.pure3(pw(env.left, 1), pw(env.left, 0), pw(env.left, 1));
  auto tb = env.right.pure3(pw(env.right, 2), pw(env.right, 1), pw(env.right, 0));
  auto split = env.split_pure(ta, tb);
  auto plus = tau_interchange(env, 0, 0, split);
  auto minus = tau_interchange(env, 1, 1, split);
  EXPECT_EQ(plus, -minus);
  EXPECT_EQ(tau_interchange(env, 1, 2, split), plus);
  for (int a2 = 0; a2 <= 2; ++a2)
    for (int b1 = 0; b1 <= 2; ++b1) EXPECT_EQ(tau_inverse(env, a2, b1, tau_interchange(env, a2, b1, split)), split);
}
