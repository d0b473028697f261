#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hhbv/bar_complex.hpp"
#include "hhbv/chain_complex.hpp"
#include "hhbv/comparison.hpp"

namespace hhbv {

// Δ(f)(a_1..a_m) = Σ_{g≠e} Σ_{i=0}^{m} (-1)^{im} ε(f(rot_i(a; g))) g^{-1}, where rot_0 = (g, a_1..a_m) and
// rot_i = (a_i..a_m, g, a_1..a_{i-1}); the dual of connes_B under the canonical Frobenius form.
BarCochain delta_dual_basis(const BarCochain& f);
BarCochainTable delta_dual_basis(const BarCochainTable& f);

// (x ⊗ c)·f = (-1)^{nm} c·v·μ3(Δ_{m,n-m}(1⊗1)) for x = 1⊗1 in degree n and f(1⊗1) = v in degree m;
// `diagonal` must be the degree-n diagonal of the resolution.
GroupRingElement action_small(const EnvAlgebras& env, const DiagonalComponents& diagonal, int chain_degree,
                              const GroupRingElement& chain_value, int cochain_degree, const GroupRingElement& cochain_value);

// HH^* of R[Z/n] on the 2-periodic resolution; small cochains are (degree, value in A).
class CyclicBvModel {
 public:
  explicit CyclicBvModel(GroupRingPtr algebra);

  const GroupRingPtr& algebra() const noexcept { return comparison_.algebra(); }
  long order() const noexcept { return comparison_.order(); }
  const CyclicComparison& comparison() const noexcept { return comparison_; }

  // ψ̄*_{r-1} Δ φ̄*_r(value); zero in degree 0
  GroupRingElement delta(int degree, const GroupRingElement& value) const;
  // μ3 of the (p, q) component of the periodic diagonal
  GroupRingElement kappa(int p, int q) const;
  // μ(d_r(1⊗1)): the coboundary into degree r is multiplication by this
  GroupRingElement coboundary_multiplier(int degree) const;

  GroupRingElement cup(int p, const GroupRingElement& a, int q, const GroupRingElement& b) const;
  // the same products and brackets routed through bar cochains: ψ̄*(φ̄*a ⌣ φ̄*b), ψ̄*[φ̄*a, φ̄*b]
  GroupRingElement bar_cup(int p, const GroupRingElement& a, int q, const GroupRingElement& b) const;
  GroupRingElement circle_bracket(int p, const GroupRingElement& a, int q, const GroupRingElement& b) const;

 private:
  struct Cache;
  GroupRingElement delta_basis(int degree, std::int64_t exponent) const;
  CyclicComparison comparison_;
  std::shared_ptr<Cache> cache_;
};

// HH^* of R[t, t^-1] with the BV operator transferred along ρ_a for a fundamental class a = u t^k.
class LaurentBvModel {
 public:
  // throws NonUnit unless `fundamental` is u t^k with u a unit of R
  LaurentBvModel(GroupRingPtr algebra, GroupRingElement fundamental);

  const GroupRingPtr& algebra() const noexcept { return comparison_.algebra(); }
  const GroupRingElement& fundamental() const noexcept { return fundamental_; }
  const LaurentComparison& comparison() const noexcept { return comparison_; }

  // ρ_a(b) ∈ HH_{1-r}: the action of the degree-r class b on a
  GroupRingElement rho(int degree, const GroupRingElement& value) const;
  // inverse of ρ_a on HH^r, given the chain-side value in HH_{1-r}
  GroupRingElement rho_inverse(int degree, const GroupRingElement& chain_value) const;
  // ρ_a^{-1} φ̄ B ψ̄ ρ_a, composed step by step
  GroupRingElement delta(int degree, const GroupRingElement& value) const;

  GroupRingElement kappa(int p, int q) const;
  GroupRingElement coboundary_multiplier(int degree) const;

 private:
  LaurentComparison comparison_;
  GroupRingElement fundamental_;
  std::map<int, DiagonalComponents> diagonals_;
};

using MultiDegree = std::vector<int>;

// Cochain on a tensor product of small resolutions: multidegree ↦ value in R[G].
class TensorCochain {
 public:
  TensorCochain() = default;
  TensorCochain(GroupRingPtr algebra, int degree) : algebra_(std::move(algebra)), degree_(degree) {}

  const GroupRingPtr& algebra() const noexcept { return algebra_; }
  int degree() const noexcept { return degree_; }
  const std::map<MultiDegree, GroupRingElement>& parts() const& noexcept { return parts_; }
  // iterating a temporary's parts would dangle
  void parts() && = delete;
  bool is_zero() const noexcept { return parts_.empty(); }
  GroupRingElement part(const MultiDegree& d) const;

  void add(const MultiDegree& d, const GroupRingElement& value);
  TensorCochain& operator+=(const TensorCochain& other);
  TensorCochain& operator-=(const TensorCochain& other);
  TensorCochain operator-() const;
  TensorCochain scaled(const mpq_class& c) const;
  friend TensorCochain operator+(TensorCochain a, const TensorCochain& b) { return a += b; }
  friend TensorCochain operator-(TensorCochain a, const TensorCochain& b) { return a -= b; }
  friend bool operator==(const TensorCochain& a, const TensorCochain& b) { return a.parts_ == b.parts_; }

  std::string to_string() const;

 private:
  GroupRingPtr algebra_;
  int degree_ = 0;
  std::map<MultiDegree, GroupRingElement> parts_;
};

std::ostream& operator<<(std::ostream& os, const TensorCochain& x);

// Fundamental class u t^k used for every Z factor.
struct LaurentUnit {
  long unit = 1;
  long exponent = -1;
};

// HH^* of R[Z^r × Z/n_1 × … ] on the tensor product of the factor resolutions. Factor j owns
// group coordinate j. Classes are TensorCochains; equality is up to coboundaries.
class TensorBvModel {
 public:
  using Factor = std::variant<CyclicBvModel, LaurentBvModel>;

  TensorBvModel(GroupDescriptor group, CoeffRingTag ring, LaurentUnit unit = {});

  const GroupRingPtr& algebra() const noexcept { return algebra_; }
  std::size_t factor_count() const noexcept { return factors_.size(); }
  const Factor& factor(std::size_t j) const { return factors_.at(j); }
  const GroupRingPtr& factor_algebra(std::size_t j) const;

  std::vector<MultiDegree> multidegrees(int degree) const;

  // value ⊗ 1 ⊗ … placed on factor j in degree d
  GroupRingElement embed(std::size_t j, const GroupRingElement& factor_value) const;
  // the element of R[G] with the given per-factor exponents
  GroupRingElement monomial(const std::vector<std::int64_t>& exponents, const mpq_class& c = 1) const;

  TensorCochain cup(const TensorCochain& f, const TensorCochain& g) const;
  // Σ_j (-1)^{d_1+…+d_{j-1}} Δ^{(j)}
  TensorCochain delta(const TensorCochain& f) const;
  TensorCochain coboundary(const TensorCochain& f) const;
  // {a,b} = -(-1)^{|a|}(Δ(ab) - Δ(a)b - (-1)^{|a|} aΔ(b))
  TensorCochain bracket_from_delta(const TensorCochain& a, const TensorCochain& b) const;

  bool is_cocycle(const TensorCochain& f) const { return coboundary(f).is_zero(); }
  bool is_coboundary(const TensorCochain& f) const;
  bool same_class(const TensorCochain& f, const TensorCochain& g) const { return is_coboundary(f - g); }

 private:
  struct Cache;
  GroupRingElement factor_delta(std::size_t j, int degree, const GroupElement& g) const;
  GroupRingElement factor_kappa(std::size_t j, int p, int q) const;
  GroupRingElement factor_multiplier(std::size_t j, int degree) const;
  int factor_top(std::size_t j) const;

  GroupRingPtr algebra_;
  std::vector<Factor> factors_;
  std::vector<GroupRingPtr> factor_algebras_;
  std::shared_ptr<Cache> cache_;
};

struct SevenTermReport {
  bool holds = false;
  TensorCochain residual;  // lhs - rhs
};

// Δ(abc) = Δ(ab)c + (-1)^{|a|}aΔ(bc) + (-1)^{(|a|-1)|b|} bΔ(ac) - Δ(a)bc - (-1)^{|a|}aΔ(b)c - (-1)^{|a|+|b|}abΔ(c)
SevenTermReport seven_term_check(const TensorBvModel& model, const TensorCochain& a, const TensorCochain& b,
                                 const TensorCochain& c);

// Künneth-style hypothesis for the signed tensor Δ: field ground ring, or at most one finite factor
// (the Z factors have free cohomology), or two cyclic factors Z/n, Z/m over Z with m | n.
// Returns an empty string when satisfied, otherwise the unmet hypothesis.
std::string tensor_hypothesis_failure(const GroupDescriptor& group, const CoeffRingTag& ring);

}  // namespace hhbv
