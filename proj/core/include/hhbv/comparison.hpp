#pragma once

#include <map>

#include "hhbv/bar_complex.hpp"
#include "hhbv/small_resolutions.hpp"

namespace hhbv {

// Element of A ⊗ Ā^r ⊗ A in the (unreduced-ends) bar resolution: full tuples (a_0, a_1..a_r, a_{r+1})
// with scalar coefficients. Interior entries are never the identity.
class BarResolutionElement {
 public:
  BarResolutionElement() = default;
  BarResolutionElement(GroupRingPtr algebra, int degree) : algebra_(std::move(algebra)), degree_(degree) {}

  const GroupRingPtr& algebra() const noexcept { return algebra_; }
  int degree() const noexcept { return degree_; }
  const std::map<Tuple, mpq_class>& terms() const& noexcept { return terms_; }
  // iterating a temporary's terms would dangle
  void terms() && = delete;
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const Tuple& full, const mpq_class& c);
  BarResolutionElement& operator+=(const BarResolutionElement& other);
  friend bool operator==(const BarResolutionElement& a, const BarResolutionElement& b) { return a.terms_ == b.terms_; }

  // (x ⊗ y)·(a_0 ⊗ … ⊗ a_{r+1}) = x a_0 ⊗ … ⊗ a_{r+1} y for x⊗y in A⊗A
  BarResolutionElement acted(const EnvAlgebras& env, const GroupRingElement& xy) const;

  std::string to_string() const;

 private:
  GroupRingPtr algebra_;
  int degree_ = 0;
  std::map<Tuple, mpq_class> terms_;
};

std::ostream& operator<<(std::ostream& os, const BarResolutionElement& x);

BarResolutionElement bar_resolution_boundary(const BarResolutionElement& x);
// s(a_0 ⊗ … ) = 1 ⊗ a_0 ⊗ …, zero when a_0 = 1
BarResolutionElement bar_resolution_homotopy(const BarResolutionElement& x);

// Comparison maps between the 2-periodic resolution of R[Z/n] and the bar resolution.
class CyclicComparison {
 public:
  explicit CyclicComparison(GroupRingPtr algebra);

  const EnvAlgebras& env() const noexcept { return env_; }
  const GroupRingPtr& algebra() const noexcept { return env_.base; }
  long order() const noexcept { return n_; }

  // ψ_r(1⊗1): closed form and the recursion ψ_{r+1} = s ψ_r d_{r+1}
  BarResolutionElement psi(int degree) const;
  BarResolutionElement psi_recursive(int degree) const;
  // φ_r(1 ⊗ tuple ⊗ 1) in A⊗A: closed form and the product recursion
  GroupRingElement phi(TupleView tuple) const;
  GroupRingElement phi_recursive(TupleView tuple) const;

  // induced maps after tensoring or homming over A^e into A
  BarChain psi_chain(int degree, const GroupRingElement& a) const;
  GroupRingElement phi_chain(const BarChain& c) const;
  GroupRingElement psi_cochain(const BarCochain& f) const;
  BarCochain phi_cochain(int degree, const GroupRingElement& a) const;

  // Δ(1⊗1) = (φ⊗φ) Δ_bar ψ(1⊗1) in degree k, split by bidegree
  DiagonalComponents diagonal(int degree) const;

 private:
  std::int64_t exponent(const GroupElement& g) const { return g[0]; }
  EnvAlgebras env_;
  long n_ = 0;
};

// Comparison maps for R[t, t^-1] and its two-term resolution; degrees 0 and 1 only.
class LaurentComparison {
 public:
  explicit LaurentComparison(GroupRingPtr algebra);

  const EnvAlgebras& env() const noexcept { return env_; }
  const GroupRingPtr& algebra() const noexcept { return env_.base; }

  BarResolutionElement psi(int degree) const;
  BarResolutionElement psi_recursive(int degree) const;
  GroupRingElement phi(TupleView tuple) const;

  BarChain psi_chain(int degree, const GroupRingElement& a) const;
  GroupRingElement phi_chain(const BarChain& c) const;
  GroupRingElement psi_cochain(const BarCochain& f) const;
  BarCochain phi_cochain(int degree, const GroupRingElement& a) const;

 private:
  void check_degree(int degree) const;
  EnvAlgebras env_;
};

// Shared plumbing: the maps induced by ψ_r(1⊗1) and φ_r(1⊗t⊗1) through the identifications.
BarChain induced_psi_chain(const BarResolutionElement& psi, const GroupRingElement& a);
GroupRingElement induced_phi_chain(const EnvAlgebras& env, const GroupRingElement& phi_value, const GroupRingElement& a);
GroupRingElement induced_psi_cochain(const BarResolutionElement& psi, const BarCochain& f);

}  // namespace hhbv
