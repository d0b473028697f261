#include <gtest/gtest.h>

#include <random>

#include "hhbv/errors.hpp"
#include "hhbv/presentations.hpp"

using namespace hhbv;

namespace {

CoeffRingTag F(std::int64_t p) { return CoeffRingTag::integers_mod(p); }

void expect_delta_squared_zero(const GradedPresentation& p, int top) {
  int low = 0;
  for (const auto& g : p.generators) low = std::min(low, g.degree);
  for (int d = low; d <= top; ++d)
    for (const auto& e : p.normal_monomials(d))
      EXPECT_TRUE(p.delta(p.delta(p.monomial(e))).empty()) << p.family << " " << p.monomial_to_string(e);
}

}  // namespace

TEST(Presentation, ParseRoundTrip) {
  const auto p = present_cyclic(F(3), 6);
  for (const char* text : {"x^3*y*z^2", "2*z*x + y", "x^-1", "-x y", "1", "x^5*z - 2*y*x"}) {
    const Polynomial v = p.parse(text);
    EXPECT_EQ(p.parse(p.to_string(v)), v) << text;
  }
  EXPECT_EQ(p.parse("x^-1"), p.parse("x^5"));
  EXPECT_EQ(p.parse("y x^2 z"), p.parse("x^2*y*z"));
  EXPECT_THROW(p.parse("w"), ParseError);
  EXPECT_THROW(p.parse("x^"), ParseError);
  EXPECT_THROW(p.parse(""), ParseError);
}

TEST(Presentation, MultiCharacterNames) {
  const auto p = present_free_abelian(2);
  EXPECT_EQ(p.to_string(p.parse("x1^-2 y2 x2")), "x1^-2*x2*y2");
  EXPECT_EQ(p.parse("y2*y1"), p.parse("-y1*y2"));
  EXPECT_TRUE(p.parse("y1*y1").empty());
}

TEST(Presentation, CyclicIntegralTorsion) {
  const auto p = present_cyclic(CoeffRingTag::integers(), 3);
  EXPECT_EQ(p.relations, (std::vector<std::string>{"x^3 - 1", "3*z"}));
  EXPECT_TRUE(p.parse("3*z*x").empty());
  EXPECT_EQ(p.to_string(p.parse("4*z")), "z");
  EXPECT_EQ(p.to_string(p.parse("-z")), "2*z");
  EXPECT_EQ(p.to_string(p.parse("5*x^4")), "5*x");
  const auto q = present_cyclic(CoeffRingTag::rationals(), 3);
  EXPECT_TRUE(q.parse("z").empty());
  EXPECT_EQ(q.to_string(q.parse("1/2*x")), "1/2*x");
}

TEST(Presentation, CharPSquareBranch) {
  const auto odd_m = present_cyclic(F(2), 6);
  EXPECT_EQ(odd_m.multiply(odd_m.generator("y"), odd_m.generator("y")), odd_m.parse("x^4*z"));
  const auto order_two = present_cyclic(F(2), 2);
  EXPECT_EQ(order_two.multiply(order_two.generator("y"), order_two.generator("y")), order_two.generator("z"));
  const auto even_m = present_cyclic(F(2), 4);
  EXPECT_TRUE(even_m.multiply(even_m.generator("y"), even_m.generator("y")).empty());
  const auto odd_p = present_cyclic(F(3), 6);
  EXPECT_TRUE(odd_p.multiply(odd_p.generator("y"), odd_p.generator("y")).empty());
}

TEST(Presentation, CyclicRejectsNonDomains) {
  EXPECT_THROW(present_cyclic(CoeffRingTag::integers_mod(6), 6), HypothesisError);
  EXPECT_NO_THROW(present_cyclic(F(5), 6));
  EXPECT_EQ(present_cyclic(F(5), 6).family, "cyclic");
}

TEST(Presentation, CharPClosedForm) {
  const auto p = present_cyclic(F(3), 6);
  EXPECT_EQ(p.delta(p.parse("y")), p.parse("-x^5"));
  EXPECT_EQ(p.delta(p.parse("z^2*y*x^4")), p.parse("3*z^2*x^3"));
  EXPECT_TRUE(p.delta(p.parse("z*x^2")).empty());
  EXPECT_EQ(p.delta(p.parse("y*x^2")), p.parse("x"));
}

TEST(Presentation, DeltaSquaredVanishes) {
  expect_delta_squared_zero(present_cyclic(F(3), 6), 6);
  expect_delta_squared_zero(present_cyclic(F(2), 6), 6);
  expect_delta_squared_zero(present_tensor_Z(4, 2), 6);
  expect_delta_squared_zero(present_tensor_Z(6, 3), 6);
  expect_delta_squared_zero(present_free_abelian(2), 2);
  expect_delta_squared_zero(present_truncated_poly(3), 6);
  expect_delta_squared_zero(present_truncated_poly(2), 6);
  expect_delta_squared_zero(present_fg_abelian(GroupDescriptor(1, {3}), F(3)), 4);
}

TEST(Presentation, SevenTermOnGenerators) {
  for (const auto& p : {present_cyclic(F(3), 6), present_cyclic(F(2), 6), present_tensor_Z(4, 2), present_tensor_Z(2, 2),
                        present_free_abelian(2), present_truncated_poly(5), present_truncated_poly(2)}) {
    std::vector<Polynomial> gens;
    for (const auto& g : p.generators) gens.push_back(p.generator(g.name));
    gens.push_back(p.multiply(gens.front(), gens.back()));
    for (const auto& a : gens)
      for (const auto& b : gens)
        for (const auto& c : gens) {
          const auto r = seven_term_closed_form(p, a, b, c);
          EXPECT_TRUE(r.holds) << p.family << ": " << p.to_string(a) << ", " << p.to_string(b) << ", " << p.to_string(c)
                               << " residual " << p.to_string(r.residual);
        }
  }
}

TEST(Presentation, CyclicBracketTableMatchesDeltaRoute) {
  for (const auto& p : {present_cyclic(F(3), 6), present_cyclic(F(2), 6), present_cyclic(F(2), 4)}) {
    std::vector<Exponents> monomials;
    for (int d = 0; d <= 3; ++d)
      for (const auto& e : p.normal_monomials(d)) monomials.push_back(e);
    for (const auto& a : monomials)
      for (const auto& b : monomials) {
        const auto table = p.bracket_table(p.monomial(a), p.monomial(b));
        ASSERT_TRUE(table.has_value());
        EXPECT_EQ(*table, p.bracket_from_delta(p.monomial(a), p.monomial(b)))
            << p.monomial_to_string(a) << ", " << p.monomial_to_string(b);
      }
  }
}

TEST(Presentation, FreeAbelianBracketTable) {
  const auto p = present_free_abelian(2);
  for (const char* a : {"x1^3", "x1^-2", "x2^2", "y1", "y2", "x1"})
    for (const char* b : {"x1^3", "x1^-2", "x2^2", "y1", "y2", "x1"}) {
      const auto table = p.bracket_table(p.parse(a), p.parse(b));
      ASSERT_TRUE(table.has_value()) << a << ", " << b;
      EXPECT_EQ(*table, p.bracket_from_delta(p.parse(a), p.parse(b))) << a << ", " << b;
    }
  EXPECT_EQ(*p.bracket_table(p.parse("x1^3"), p.parse("y1")), p.parse("-3*x1^2"));
  EXPECT_FALSE(p.bracket_table(p.parse("x1*y1"), p.parse("y1")).has_value());
}

TEST(Presentation, TensorIntegralBoxedValues) {
  const auto p = present_tensor_Z(4, 2);
  EXPECT_EQ(p.delta(p.parse("c")), p.parse("-x^3*b"));
  EXPECT_TRUE(p.delta(p.parse("x*c")).empty());
  EXPECT_EQ(p.delta(p.parse("t*c")), p.parse("-x^3*t*b - 2*x^3*t*a"));
  EXPECT_EQ(p.delta(p.parse("a*c")), p.parse("-x^3*a*b"));
  EXPECT_EQ(p.delta(p.parse("b*c")), p.parse("-x^3*b^2"));
  // 2a = 0 only modulo 4
  EXPECT_FALSE(p.parse("2*a").empty());
  EXPECT_TRUE(p.parse("2*a*b").empty());
  EXPECT_TRUE(p.multiply(p.generator("c"), p.generator("c")).empty());
}

TEST(Presentation, TensorIntegralOddSquareBranch) {
  // m even, k odd
  const auto p = present_tensor_Z(6, 2);
  EXPECT_EQ(p.multiply(p.generator("c"), p.generator("c")), p.parse("x^4*a*b^2 + 3*x^4*a^2*b"));
  EXPECT_THROW(present_tensor_Z(6, 4), HypothesisError);
}

TEST(Presentation, KunnethShapes) {
  for (auto [n, m] : std::vector<std::pair<long, long>>{{2, 2}, {4, 2}, {6, 3}, {6, 2}}) {
    const auto p = present_tensor_Z(n, m);
    const FreeComplex total = tensor_total_complex(periodic_cochain_complex(n, 8), periodic_cochain_complex(m, 8));
    for (int d = 0; d <= 6; ++d) {
      const ModuleShape expected = kunneth_shape(n, m, d);
      EXPECT_EQ(presentation_shape(p, d), expected) << n << "," << m << " degree " << d;
      EXPECT_EQ(shape_of(homology_at(total, d)), expected)
          << n << "," << m << " degree " << d << ": " << shape_of(homology_at(total, d)).to_string();
    }
  }
  EXPECT_EQ(kunneth_shape(4, 2, 0).to_string(), "Z^8");
  EXPECT_EQ(kunneth_shape(4, 2, 1).to_string(), "0");
  EXPECT_EQ(kunneth_shape(4, 2, 2).to_string(), "(Z/2)^8 + (Z/4)^8");
}

TEST(Presentation, TruncatedPolynomialIso) {
  for (std::int64_t p : {2, 3, 5, 7}) {
    const auto iso = truncated_poly_iso(p);
    EXPECT_TRUE(iso.report.holds) << p << ": " << (iso.report.failures.empty() ? "" : iso.report.failures.front());
    EXPECT_GT(iso.report.checked, 10u);
  }
  EXPECT_THROW(truncated_poly_iso(4), HypothesisError);
}

TEST(Presentation, LoopSpaceIso) {
  for (const auto& ring : {CoeffRingTag::integers(), CoeffRingTag::rationals(), F(5)}) {
    const auto iso = loop_space_iso(ring);
    EXPECT_TRUE(iso.report.holds) << (iso.report.failures.empty() ? "" : iso.report.failures.front()) << " (" << iso.report.failures.size() << " failures)";
    EXPECT_EQ(iso.report.checked, 36u);
  }
}

TEST(Presentation, FgAbelianDispatch) {
  const auto mixed = present_fg_abelian(GroupDescriptor(1, {3}), F(3));
  std::vector<std::string> names;
  for (const auto& g : mixed.generators) names.push_back(g.name);
  EXPECT_EQ(names, (std::vector<std::string>{"x1", "y1", "x2", "y2", "z2"}));
  EXPECT_EQ(present_fg_abelian(GroupDescriptor(0, {4, 2}), CoeffRingTag::integers()).family, "tensor-integral");
  EXPECT_THROW(present_fg_abelian(GroupDescriptor(0, {2, 4}), CoeffRingTag::integers()), HypothesisError);
  EXPECT_THROW(present_fg_abelian(GroupDescriptor(0, {2, 2, 2}), CoeffRingTag::integers()), HypothesisError);
  EXPECT_NO_THROW(present_fg_abelian(GroupDescriptor(2, {5}), CoeffRingTag::integers()));
  EXPECT_EQ(present_fg_abelian(GroupDescriptor(0, {3, 3}), F(3)).relations.front(), "x1^3 - 1");
}

TEST(Presentation, EncodedClassesMatchEngine) {
  {
    const auto p = present_cyclic(F(3), 6);
    const TensorBvModel model(*p.group, p.ring);
    for (int d = 0; d <= 5; ++d)
      for (const auto& e : p.normal_monomials(d)) {
        const Polynomial m = p.monomial(e);
        EXPECT_TRUE(model.same_class(model.delta(encode_class(model, p, m)), encode_class(model, p, p.delta(m))))
            << p.monomial_to_string(e);
      }
  }
  {
    const auto p = present_tensor_Z(4, 2);
    const TensorBvModel model(*p.group, p.ring);
    for (const char* text : {"c", "x*c", "t*c", "a*c", "b*c"}) {
      const Polynomial m = p.parse(text);
      EXPECT_TRUE(model.same_class(model.delta(encode_class(model, p, m)), encode_class(model, p, p.delta(m)))) << text;
    }
    const TensorCochain c = encode_class(model, p, p.generator("c"));
    EXPECT_TRUE(model.is_cocycle(c));
    EXPECT_TRUE(model.is_coboundary(model.cup(c, c)));
  }
}

TEST(Presentation, DocumentListsTables) {
  const auto doc = document(present_cyclic(F(2), 2), 2);
  EXPECT_EQ(doc.family, "cyclic-char-p");
  EXPECT_EQ(doc.generators.size(), 3u);
  EXPECT_FALSE(doc.delta_table.empty());
  EXPECT_EQ(doc.bracket_table.size(), 9u);
}

TEST(PresentationProperties, RewriterRejoinsAcrossOrders) {
  // (ab)c = a(bc) and ab = (-1)^{|a||b|} ba on sampled normal monomials: every overlap of the
  // square, torsion and cyclic rules reduces to the same normal form
  std::mt19937 rng(17);
  for (const auto& p : {present_cyclic(F(2), 6), present_cyclic(F(3), 6), present_tensor_Z(6, 2), present_tensor_Z(4, 2),
                        present_truncated_poly(2), present_free_abelian(2), present_fg_abelian(GroupDescriptor(1, {2}), F(2))}) {
    std::vector<Exponents> pool;
    for (int d = 0; d <= 4; ++d)
      for (auto& e : p.normal_monomials(d)) pool.push_back(std::move(e));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial a = p.monomial(pool[pick(rng)]), b = p.monomial(pool[pick(rng)]), c = p.monomial(pool[pick(rng)]);
      EXPECT_EQ(p.multiply(p.multiply(a, b), c), p.multiply(a, p.multiply(b, c))) << p.family;
      const mpq_class sign = (p.degree(a) * p.degree(b)) % 2 == 0 ? 1 : -1;
      EXPECT_EQ(p.multiply(a, b), p.add({}, p.multiply(b, a), sign)) << p.family;
    }
  }
}
