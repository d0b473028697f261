#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "hhbv/group_ring.hpp"

namespace hhbv {

class BarChainPair;

using Tuple = std::vector<GroupElement>;
using TupleView = std::span<const GroupElement>;

bool is_degenerate(TupleView tuple);

// Element of Ā^d ⊗ A: tuple of non-identity group elements ↦ module coefficient.
class BarChain {
 public:
  BarChain() = default;
  BarChain(GroupRingPtr algebra, int degree) : algebra_(std::move(algebra)), degree_(degree) {}

  const GroupRingPtr& algebra() const noexcept { return algebra_; }
  int degree() const noexcept { return degree_; }
  const std::map<Tuple, GroupRingElement>& terms() const& noexcept { return terms_; }
  // iterating a temporary's terms would dangle
  void terms() && = delete;
  bool is_zero() const noexcept { return terms_.empty(); }

  // degenerate tuples are dropped
  void add(const Tuple& tuple, const GroupRingElement& coefficient);
  void add(const Tuple& tuple, const GroupElement& g, const mpq_class& c);
  BarChain& operator+=(const BarChain& other);
  BarChain& operator-=(const BarChain& other);
  BarChain operator-() const;
  friend BarChain operator+(BarChain a, const BarChain& b) { return a += b; }
  friend BarChain operator-(BarChain a, const BarChain& b) { return a -= b; }
  // tuple lengths carry the degree, so zero chains of any degree compare equal
  friend bool operator==(const BarChain& a, const BarChain& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  GroupRingPtr algebra_;
  int degree_ = 0;
  std::map<Tuple, GroupRingElement> terms_;
};

// Normalized cochain Ā^d → A, evaluated on demand. Degenerate tuples give 0 without calling `fn`.
class BarCochain {
 public:
  using Fn = std::function<GroupRingElement(TupleView)>;

  BarCochain() = default;
  BarCochain(GroupRingPtr algebra, int degree, Fn fn) : algebra_(std::move(algebra)), degree_(degree), fn_(std::move(fn)) {}

  const GroupRingPtr& algebra() const noexcept { return algebra_; }
  int degree() const noexcept { return degree_; }
  GroupRingElement operator()(TupleView tuple) const;

  static BarCochain zero(GroupRingPtr algebra, int degree);
  static BarCochain constant(const GroupRingElement& value);  // degree 0

 private:
  GroupRingPtr algebra_;
  int degree_ = 0;
  Fn fn_;
};

// Dense table on all (|G|-1)^d non-identity tuples of a finite group.
class BarCochainTable {
 public:
  BarCochainTable() = default;
  static BarCochainTable tabulate(const BarCochain& f);

  const GroupRingPtr& algebra() const noexcept { return algebra_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return values_->size(); }
  const GroupRingElement& at(TupleView tuple) const;
  const GroupRingElement& at_index(std::size_t index) const { return (*values_)[index]; }
  Tuple tuple_at(std::size_t index) const;
  BarCochain as_cochain() const;

  friend bool operator==(const BarCochainTable& a, const BarCochainTable& b);

 private:
  std::size_t index_of(TupleView tuple) const;
  GroupRingPtr algebra_;
  int degree_ = 0;
  std::shared_ptr<const std::vector<GroupRingElement>> values_;
  std::shared_ptr<const GroupRingElement> zero_;
};

// All non-identity tuples of length d of a finite group, in table order.
std::vector<Tuple> normalized_tuples(const GroupDescriptor& group, int degree);

std::ostream& operator<<(std::ostream& os, const BarChain& c);
std::ostream& operator<<(std::ostream& os, const BarChainPair& c);

BarChain hochschild_boundary(const BarChain& c);
BarCochain hochschild_coboundary(const BarCochain& f);

BarCochain cup(const BarCochain& f, const BarCochain& g);
BarCochainTable cup_bar(const BarCochainTable& f, const BarCochainTable& g);

BarCochain circle_product(const BarCochain& f, const BarCochain& g);
BarCochain gerstenhaber_bracket(const BarCochain& f, const BarCochain& g);
BarCochainTable circle_product(const BarCochainTable& f, const BarCochainTable& g);
BarCochainTable gerstenhaber_bracket(const BarCochainTable& f, const BarCochainTable& g);

BarChain connes_B(const BarChain& c);

// (a_1..a_n ⊗ a)·f = (-1)^{nm} a_{m+1}..a_n ⊗ a f(a_1..a_m)
BarChain action_bar(const BarChain& c, const BarCochain& f);

// Σ_tuples f(tuple)·coefficient: the evaluation Hom(Ā^d, A) × Ā^d⊗A → A.
GroupRingElement pair_cochain_chain(const BarCochain& f, const BarChain& c);

struct Shuffle {
  int p = 0, q = 0;
  std::vector<int> perm;  // perm[i] = output position (0-based) of input i
  int sign = 1;
};
std::vector<Shuffle> shuffles(int p, int q);

// Element of ⊕ (Ā_A^i ⊗ A) ⊗ (Ā_B^j ⊗ B) with coefficients a⊗b in R[G_A × G_B].
class BarChainPair {
 public:
  using Key = std::pair<Tuple, Tuple>;

  BarChainPair() = default;
  BarChainPair(GroupRingPtr left, GroupRingPtr right);

  const GroupRingPtr& left() const noexcept { return left_; }
  const GroupRingPtr& right() const noexcept { return right_; }
  const GroupRingPtr& product() const noexcept { return product_; }
  const TensorLayout& layout() const noexcept { return layout_; }
  const std::map<Key, GroupRingElement>& terms() const& noexcept { return terms_; }
  // iterating a temporary's terms would dangle
  void terms() && = delete;
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const Tuple& a, const Tuple& b, const GroupRingElement& coefficient);
  void add(const Tuple& a, const Tuple& b, const GroupElement& ga, const GroupElement& gb, const mpq_class& c);
  BarChainPair& operator+=(const BarChainPair& other);
  BarChainPair& operator-=(const BarChainPair& other);
  friend bool operator==(const BarChainPair& a, const BarChainPair& b) { return a.terms_ == b.terms_; }

  static BarChainPair pure(const BarChain& a, const BarChain& b);

  std::string to_string() const;

 private:
  GroupRingPtr left_, right_, product_;
  TensorLayout layout_;
  std::map<Key, GroupRingElement> terms_;
};

// Bar chain algebra for A⊗B compatible with a BarChainPair's product group ring.
BarChainPair aw_map(const BarChain& c, const GroupRingPtr& left, const GroupRingPtr& right);
BarChain ez_map(const BarChainPair& x);

// b ⊗ 1 + (-1)^p 1 ⊗ b on a pair of bar chains
BarChainPair pair_boundary(const BarChainPair& x);
// every (A-tuple, a, B-tuple, b) basis element with |A| + |B| = total
std::vector<BarChainPair> pair_basis(const GroupRingPtr& a, const GroupRingPtr& b, int total);

enum class TensorSign { Koszul, Unsigned };
// (B^A ⊗ id + ε id ⊗ B^B) with ε = (-1)^{|A-part|} for Koszul, 1 for Unsigned
BarChainPair tensor_connes(const BarChainPair& x, TensorSign sign);

}  // namespace hhbv
