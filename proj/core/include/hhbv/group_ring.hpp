#pragma once

#include <array>
#include <compare>
#include <iosfwd>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhbv/coeff.hpp"

namespace hhbv {

inline constexpr std::size_t kMaxCoords = 8;

// Coordinates: free part first, then one residue per torsion factor.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::span<const std::int64_t> coords);

  std::size_t size() const noexcept { return size_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const noexcept { return {coords_.data(), size_}; }
  bool is_identity() const noexcept;

  friend bool operator==(const GroupElement& a, const GroupElement& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.coords_.begin(), a.coords_.begin() + a.size_, b.coords_.begin());
  }
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) noexcept;

 private:
  friend class GroupDescriptor;
  std::array<std::int64_t, kMaxCoords> coords_{};
  std::uint8_t size_ = 0;
};

class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  GroupDescriptor(int free_rank, std::vector<std::int64_t> torsion_orders);
  // "Z^2 x Z/4 x Z/2", case-insensitive, '×' accepted
  static GroupDescriptor parse(std::string_view spec);
  static GroupDescriptor cyclic(std::int64_t order) { return {0, {order}}; }
  static GroupDescriptor free(int rank) { return {rank, {}}; }
  // Direct product, coordinates re-laid out as free(a), free(b), torsion(a), torsion(b).
  static GroupDescriptor product(const GroupDescriptor& a, const GroupDescriptor& b);

  int free_rank() const noexcept { return free_rank_; }
  const std::vector<std::int64_t>& torsion_orders() const noexcept { return torsion_; }
  std::size_t coords() const noexcept { return static_cast<std::size_t>(free_rank_) + torsion_.size(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  std::int64_t order() const;  // finite groups only

  GroupElement identity() const;
  GroupElement element(std::span<const std::int64_t> coords) const;  // reduces torsion residues
  GroupElement generator(std::size_t coord, std::int64_t power = 1) const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, std::int64_t e) const;

  // Finite groups: mixed-radix enumeration, identity has index 0.
  std::int64_t index_of(const GroupElement& g) const;
  GroupElement element_at(std::int64_t index) const;
  std::vector<GroupElement> elements() const;
  std::vector<GroupElement> non_identity_elements() const;

  std::string to_string() const;
  std::string element_to_string(const GroupElement& g) const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  void check(const GroupElement& g) const;
  int free_rank_ = 0;
  std::vector<std::int64_t> torsion_;
};

// The algebra R[G].
struct GroupRing {
  GroupDescriptor group;
  CoeffRingTag ring;
  friend bool operator==(const GroupRing&, const GroupRing&) = default;
};

using GroupRingPtr = std::shared_ptr<const GroupRing>;

GroupRingPtr make_group_ring(GroupDescriptor group, CoeffRingTag ring);

class GroupRingElement {
 public:
  using Terms = std::map<GroupElement, mpq_class>;

  GroupRingElement() = default;
  explicit GroupRingElement(GroupRingPtr algebra) : algebra_(std::move(algebra)) {}

  static GroupRingElement monomial(GroupRingPtr algebra, const GroupElement& g, const mpq_class& c = 1);
  static GroupRingElement scalar(GroupRingPtr algebra, const mpq_class& c);
  // c * g^exponent where g generates coordinate `coord`: σ^i in R[Z/n], t^k in R[t, t^-1].
  static GroupRingElement power_of(GroupRingPtr algebra, std::size_t coord, std::int64_t exponent, const mpq_class& c = 1);

  const GroupRingPtr& algebra() const noexcept { return algebra_; }
  const GroupDescriptor& group() const { return algebra_->group; }
  const CoeffRingTag& ring() const { return algebra_->ring; }
  const Terms& terms() const& noexcept { return terms_; }
  // iterating a temporary's terms would dangle
  void terms() && = delete;
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t support_size() const noexcept { return terms_.size(); }
  mpq_class coefficient(const GroupElement& g) const;

  void add_term(const GroupElement& g, const mpq_class& c);
  GroupRingElement& operator+=(const GroupRingElement& other);
  GroupRingElement& operator-=(const GroupRingElement& other);
  GroupRingElement& operator*=(const mpq_class& c);

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(GroupRingElement a, const mpq_class& c) { return a *= c; }
  GroupRingElement operator-() const;

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);

  // multiply by a single group element
  GroupRingElement shifted(const GroupElement& g) const;

  std::string to_string() const;

 private:
  GroupRingPtr algebra_;
  Terms terms_;
};

void require_same_algebra(const GroupRingPtr& a, const GroupRingPtr& b);

std::ostream& operator<<(std::ostream& os, const GroupRingElement& x);

// Coordinates of G×H laid out as free(G), free(H), torsion(G), torsion(H).
class TensorLayout {
 public:
  TensorLayout() = default;
  TensorLayout(GroupDescriptor left, GroupDescriptor right);

  const GroupDescriptor& left() const noexcept { return left_; }
  const GroupDescriptor& right() const noexcept { return right_; }
  const GroupDescriptor& product() const noexcept { return product_; }

  GroupElement join(const GroupElement& l, const GroupElement& r) const;
  std::pair<GroupElement, GroupElement> split(const GroupElement& g) const;

 private:
  GroupDescriptor left_, right_, product_;
};

// a ⊗ b as an element of R[G×H]
GroupRingElement tensor_elements(const GroupRingElement& a, const GroupRingElement& b, const TensorLayout& layout,
                                 const GroupRingPtr& target);

GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b);
Coefficient augmentation(const GroupRingElement& a);
Coefficient frobenius_pair(const GroupRingElement& a, const GroupRingElement& b);
std::vector<std::pair<GroupElement, GroupElement>> dual_basis(const GroupDescriptor& group);

}  // namespace hhbv
