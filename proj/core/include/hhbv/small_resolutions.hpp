#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hhbv/group_ring.hpp"

namespace hhbv {

// A, A⊗A and A⊗A⊗A realised as the group rings of G, G×G and (G×G)×G.
struct EnvAlgebras {
  GroupRingPtr base, env, triple;
  TensorLayout pair_layout;    // (G, G)
  TensorLayout triple_layout;  // (G×G, G)

  static EnvAlgebras of(GroupRingPtr base);

  GroupRingElement pure(const GroupElement& a, const GroupElement& b, const mpq_class& c = 1) const;
  GroupRingElement pair(const GroupRingElement& a, const GroupRingElement& b) const;
  GroupRingElement pure3(const GroupElement& a, const GroupElement& b, const GroupElement& c, const mpq_class& coeff = 1) const;
  GroupRingElement one() const { return pure(base->group.identity(), base->group.identity()); }

  GroupRingElement mu(const GroupRingElement& x) const;   // a⊗b ↦ ab
  GroupRingElement mu3(const GroupRingElement& x) const;  // a⊗b⊗c ↦ abc
  // (x1⊗x2) ⊗_A (y1⊗y2) ↦ x1 ⊗ x2·y1 ⊗ y2
  GroupRingElement over_base(const GroupRingElement& x, const GroupRingElement& y) const;
  // a ⊗ b ↦ a ⊗ b·c  (right A-module structure)
  GroupRingElement right_act(const GroupRingElement& x, const GroupRingElement& c) const;
};

enum class Parity { Even, Odd };

// d_k(1⊗1) of the 2-periodic resolution of R[Z/n], k ≥ 1
GroupRingElement periodic_differential(const EnvAlgebras& env, long n, int degree);
GroupRingElement periodic_boundary(const EnvAlgebras& env, long n, Parity parity, const GroupRingElement& x);
GroupRingElement periodic_boundary(const EnvAlgebras& env, long n, int degree, const GroupRingElement& x);
// s̃_k : P_{k-1} → P_k (s̃_0 : A → P_0); x lives in A for k = 0, in A⊗A otherwise
GroupRingElement contracting_homotopy(const EnvAlgebras& env, long n, int degree, const GroupRingElement& x);

// two-term resolution of R[t, t^-1]
GroupRingElement koszul_z_differential(const EnvAlgebras& env);
GroupRingElement koszul_z_boundary(const EnvAlgebras& env, const GroupRingElement& x);
GroupRingElement koszul_z_homotopy(const EnvAlgebras& env, int degree, const GroupRingElement& x);

// Δ(1⊗1) in one degree: (p, q) ↦ element of P_p ⊗_A P_q ≅ A⊗A⊗A
using DiagonalComponents = std::map<std::pair<int, int>, GroupRingElement>;

DiagonalComponents koszul_z_diagonal(const EnvAlgebras& env, int degree);

// Boundary of a P_p ⊗_A P_q element: d⊗1 + (-1)^p 1⊗d, for a single-factor resolution whose
// d_k(1⊗1) is given by `differential` (empty element for absent degrees).
template <class DifferentialFn>
std::map<std::pair<int, int>, GroupRingElement> triple_boundary(const EnvAlgebras& env, int p, int q, const GroupRingElement& t,
                                                                DifferentialFn differential);

enum class ResolutionKind { Periodic, KoszulZ, Tensor };

class SmallResolution {
 public:
  static SmallResolution periodic(long n, CoeffRingTag ring, int degree_cap = 6);
  static SmallResolution koszul_z(CoeffRingTag ring);
  static SmallResolution tensor(std::vector<SmallResolution> factors);

  ResolutionKind kind() const noexcept { return kind_; }
  const GroupRingPtr& algebra() const noexcept { return env_.base; }
  const EnvAlgebras& env() const noexcept { return env_; }
  long order() const noexcept { return order_; }
  int degree_cap() const noexcept { return cap_; }
  const std::vector<SmallResolution>& factors() const noexcept { return factors_; }

  // highest degree with a nonzero module (cap for periodic factors)
  int top_degree() const;
  // multi-degrees of the rank-one summands in `degree`
  std::vector<std::vector<int>> summands(int degree) const;
  // d_k(1⊗1) for single-factor kinds; zero element outside the range
  GroupRingElement differential(int degree) const;

 private:
  ResolutionKind kind_ = ResolutionKind::Periodic;
  EnvAlgebras env_;
  long order_ = 0;
  int cap_ = 6;
  std::vector<SmallResolution> factors_;
};

// Everything needed to move between A, B and A⊗B triples.
struct TensorEnv {
  TensorLayout factors;  // (G_A, G_B)
  EnvAlgebras left, right, product;
  TensorLayout split_triples;  // (G_A^3, G_B^3): the source of τ
  GroupRingPtr split_algebra;

  static TensorEnv of(const GroupRingPtr& a, const GroupRingPtr& b);
  GroupRingElement split_pure(const GroupRingElement& ta, const GroupRingElement& tb) const;
};

// τ((a1⊗a2)⊗(b1⊗b2)) = (-1)^{|a2||b1|} (a1⊗b1)⊗(a2⊗b2); input in R[G_A^3 × G_B^3], output
// in R[(G_A×G_B)^3].
GroupRingElement tau_interchange(const TensorEnv& env, int a2_degree, int b1_degree, const GroupRingElement& split);
GroupRingElement tau_inverse(const TensorEnv& env, int a2_degree, int b1_degree, const GroupRingElement& joined);

// Tensor diagonal τ(Δ_A ⊗ Δ_B) on e_p ⊗ e_q; keys are ((p1, q1), (p2, q2)).
using TensorDiagonal = std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, GroupRingElement>;
TensorDiagonal tensor_diagonal(const TensorEnv& env, const DiagonalComponents& delta_a, const DiagonalComponents& delta_b);

}  // namespace hhbv

#include "hhbv/detail/triple_boundary.ipp"
