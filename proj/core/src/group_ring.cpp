#include "hhbv/group_ring.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace hhbv {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::string normalize_group_spec(std::string_view spec) {
  std::string s;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    // UTF-8 multiplication sign
    if (static_cast<unsigned char>(spec[i]) == 0xC3 && i + 1 < spec.size() && static_cast<unsigned char>(spec[i + 1]) == 0x97) {
      s.push_back('X');
      ++i;
      continue;
    }
    const char c = spec[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return s;
}

std::int64_t parse_positive(const std::string& digits, std::string_view spec) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad group spec: " + std::string(spec));
  return std::stoll(digits);
}

}  // namespace

GroupElement::GroupElement(std::span<const std::int64_t> coords) {
  if (coords.size() > kMaxCoords) throw DomainError("too many group coordinates");
  std::copy(coords.begin(), coords.end(), coords_.begin());
  size_ = static_cast<std::uint8_t>(coords.size());
}

bool GroupElement::is_identity() const noexcept {
  return std::all_of(coords_.begin(), coords_.begin() + size_, [](std::int64_t c) { return c == 0; });
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) noexcept {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t i = 0; i < a.size_; ++i)
    if (auto c = a.coords_[i] <=> b.coords_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

GroupDescriptor::GroupDescriptor(int free_rank, std::vector<std::int64_t> torsion_orders)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
  if (free_rank_ < 0) throw DomainError("negative free rank");
  for (auto n : torsion_)
    if (n < 2) throw DomainError("torsion orders must be at least 2");
  if (coords() > kMaxCoords) throw DomainError("at most 8 cyclic factors supported");
}

GroupDescriptor GroupDescriptor::parse(std::string_view spec) {
  const std::string s = normalize_group_spec(spec);
  if (s.empty()) throw ParseError("empty group spec");
  int free_rank = 0;
  std::vector<std::int64_t> torsion;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find('X', start), s.size());
    const std::string tok = s.substr(start, end - start);
    if (tok == "Z") {
      ++free_rank;
    } else if (tok.starts_with("Z^")) {
      free_rank += static_cast<int>(parse_positive(tok.substr(2), spec));
    } else if (tok.starts_with("Z/")) {
      torsion.push_back(parse_positive(tok.substr(2), spec));
    } else if (tok == "1" || tok == "0") {
      // trivial factor
    } else {
      throw ParseError("bad group factor '" + tok + "' in " + std::string(spec));
    }
    start = end + 1;
  }
  return {free_rank, std::move(torsion)};
}

GroupDescriptor GroupDescriptor::product(const GroupDescriptor& a, const GroupDescriptor& b) {
  std::vector<std::int64_t> torsion = a.torsion_;
  torsion.insert(torsion.end(), b.torsion_.begin(), b.torsion_.end());
  return {a.free_rank_ + b.free_rank_, std::move(torsion)};
}

std::int64_t GroupDescriptor::order() const {
  if (!is_finite()) throw DomainError("infinite group has no finite order");
  std::int64_t n = 1;
  for (auto t : torsion_) n *= t;
  return n;
}

GroupElement GroupDescriptor::identity() const {
  GroupElement g;
  g.size_ = static_cast<std::uint8_t>(coords());
  return g;
}

GroupElement GroupDescriptor::element(std::span<const std::int64_t> coords) const {
  if (coords.size() != this->coords()) throw DomainError("group element has wrong number of coordinates");
  GroupElement g(coords);
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto& c = g.coords_[free_rank_ + i];
    c = floor_mod(c, torsion_[i]);
  }
  return g;
}

GroupElement GroupDescriptor::generator(std::size_t coord, std::int64_t power) const {
  if (coord >= coords()) throw DomainError("generator index out of range");
  GroupElement g = identity();
  g.coords_[coord] = coord < static_cast<std::size_t>(free_rank_) ? power : floor_mod(power, torsion_[coord - free_rank_]);
  return g;
}

void GroupDescriptor::check(const GroupElement& g) const {
  if (g.size() != coords()) throw DomainError("group element does not belong to " + to_string());
}

GroupElement GroupDescriptor::multiply(const GroupElement& g, const GroupElement& h) const {
  GroupElement r = g;
  const std::size_t f = static_cast<std::size_t>(free_rank_);
  for (std::size_t i = 0; i < f; ++i) r.coords_[i] += h.coords_[i];
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto& c = r.coords_[f + i];
    c += h.coords_[f + i];
    if (c >= torsion_[i]) c -= torsion_[i];
  }
  return r;
}

GroupElement GroupDescriptor::inverse(const GroupElement& g) const {
  GroupElement r = g;
  const std::size_t f = static_cast<std::size_t>(free_rank_);
  for (std::size_t i = 0; i < f; ++i) r.coords_[i] = -r.coords_[i];
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto& c = r.coords_[f + i];
    if (c != 0) c = torsion_[i] - c;
  }
  return r;
}

GroupElement GroupDescriptor::power(const GroupElement& g, std::int64_t e) const {
  GroupElement r = g;
  const std::size_t f = static_cast<std::size_t>(free_rank_);
  for (std::size_t i = 0; i < f; ++i) r.coords_[i] *= e;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto& c = r.coords_[f + i];
    c = floor_mod(floor_mod(e, torsion_[i]) * c, torsion_[i]);
  }
  return r;
}

std::int64_t GroupDescriptor::index_of(const GroupElement& g) const {
  if (!is_finite()) throw DomainError("element indexing needs a finite group");
  std::int64_t idx = 0;
  for (std::size_t i = torsion_.size(); i-- > 0;) idx = idx * torsion_[i] + g.coords_[i];
  return idx;
}

GroupElement GroupDescriptor::element_at(std::int64_t index) const {
  GroupElement g = identity();
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    g.coords_[i] = index % torsion_[i];
    index /= torsion_[i];
  }
  return g;
}

std::vector<GroupElement> GroupDescriptor::elements() const {
  const std::int64_t n = order();
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<GroupElement> GroupDescriptor::non_identity_elements() const {
  auto all = elements();
  all.erase(all.begin());
  return all;
}

std::string GroupDescriptor::to_string() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (auto n : torsion_) parts.push_back("Z/" + std::to_string(n));
  if (parts.empty()) return "1";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
  return s;
}

std::string GroupDescriptor::element_to_string(const GroupElement& g) const {
  if (g.is_identity()) return "1";
  const std::size_t f = static_cast<std::size_t>(free_rank_);
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    if (!s.empty()) s += "*";
    std::string name = i < f ? "t" : "s";
    if (coords() > 1) name += std::to_string(i < f ? i + 1 : i - f + 1);
    s += name;
    if (g[i] != 1) s += "^" + std::to_string(g[i]);
  }
  return s;
}

GroupRingPtr make_group_ring(GroupDescriptor group, CoeffRingTag ring) {
  return std::make_shared<const GroupRing>(GroupRing{std::move(group), std::move(ring)});
}

void require_same_algebra(const GroupRingPtr& a, const GroupRingPtr& b) {
  if (!a || !b) throw DomainError("group ring element without an algebra");
  if (a == b) return;
  if (!(a->group == b->group)) throw RingMismatch("group mismatch: " + a->group.to_string() + " vs " + b->group.to_string());
  require_same_ring(a->ring, b->ring);
}

GroupRingElement GroupRingElement::monomial(GroupRingPtr algebra, const GroupElement& g, const mpq_class& c) {
  GroupRingElement e(std::move(algebra));
  e.add_term(g, c);
  return e;
}

GroupRingElement GroupRingElement::scalar(GroupRingPtr algebra, const mpq_class& c) {
  const GroupElement one = algebra->group.identity();
  return monomial(std::move(algebra), one, c);
}

GroupRingElement GroupRingElement::power_of(GroupRingPtr algebra, std::size_t coord, std::int64_t exponent, const mpq_class& c) {
  const GroupElement g = algebra->group.generator(coord, exponent);
  return monomial(std::move(algebra), g, c);
}

mpq_class GroupRingElement::coefficient(const GroupElement& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void GroupRingElement::add_term(const GroupElement& g, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (!inserted) it->second += c;
  algebra_->ring.reduce(it->second);
  if (it->second == 0) terms_.erase(it);
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
  if (!algebra_) algebra_ = other.algebra_;
  if (other.algebra_) require_same_algebra(algebra_, other.algebra_);
  for (const auto& [g, c] : other.terms_) add_term(g, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& other) {
  if (!algebra_) algebra_ = other.algebra_;
  if (other.algebra_) require_same_algebra(algebra_, other.algebra_);
  for (const auto& [g, c] : other.terms_) add_term(g, -c);
  return *this;
}

GroupRingElement& GroupRingElement::operator*=(const mpq_class& c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    algebra_->ring.reduce(it->second);
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  require_same_algebra(a.algebra_, b.algebra_);
  const auto& group = a.group();
  GroupRingElement r(a.algebra_);
  for (const auto& [g, c] : a.terms_)
    for (const auto& [h, d] : b.terms_) r.add_term(group.multiply(g, h), c * d);
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r(algebra_);
  for (const auto& [g, c] : terms_) r.add_term(g, -c);
  return r;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.algebra_ && b.algebra_) require_same_algebra(a.algebra_, b.algebra_);
  return a.terms_ == b.terms_;
}

GroupRingElement GroupRingElement::shifted(const GroupElement& g) const {
  GroupRingElement r(algebra_);
  for (const auto& [h, c] : terms_) r.terms_.emplace(group().multiply(g, h), c);
  return r;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    std::string coef = scalar_to_string(c);
    const bool neg = c < 0;
    if (neg) coef.erase(0, 1);
    out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const std::string name = group().element_to_string(g);
    if (name == "1")
      out << coef;
    else if (coef == "1")
      out << name;
    else
      out << coef << "*" << name;
  }
  return out.str();
}

TensorLayout::TensorLayout(GroupDescriptor left, GroupDescriptor right)
    : left_(std::move(left)), right_(std::move(right)), product_(GroupDescriptor::product(left_, right_)) {}

GroupElement TensorLayout::join(const GroupElement& l, const GroupElement& r) const {
  std::array<std::int64_t, kMaxCoords> c{};
  const std::size_t fl = static_cast<std::size_t>(left_.free_rank()), fr = static_cast<std::size_t>(right_.free_rank());
  const std::size_t tl = left_.torsion_orders().size(), tr = right_.torsion_orders().size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < fl; ++i) c[k++] = l[i];
  for (std::size_t i = 0; i < fr; ++i) c[k++] = r[i];
  for (std::size_t i = 0; i < tl; ++i) c[k++] = l[fl + i];
  for (std::size_t i = 0; i < tr; ++i) c[k++] = r[fr + i];
  return GroupElement(std::span<const std::int64_t>(c.data(), k));
}

std::pair<GroupElement, GroupElement> TensorLayout::split(const GroupElement& g) const {
  std::array<std::int64_t, kMaxCoords> a{}, b{};
  const std::size_t fl = static_cast<std::size_t>(left_.free_rank()), fr = static_cast<std::size_t>(right_.free_rank());
  const std::size_t tl = left_.torsion_orders().size(), tr = right_.torsion_orders().size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < fl; ++i) a[i] = g[k++];
  for (std::size_t i = 0; i < fr; ++i) b[i] = g[k++];
  for (std::size_t i = 0; i < tl; ++i) a[fl + i] = g[k++];
  for (std::size_t i = 0; i < tr; ++i) b[fr + i] = g[k++];
  return {GroupElement(std::span<const std::int64_t>(a.data(), fl + tl)), GroupElement(std::span<const std::int64_t>(b.data(), fr + tr))};
}

GroupRingElement tensor_elements(const GroupRingElement& a, const GroupRingElement& b, const TensorLayout& layout,
                                 const GroupRingPtr& target) {
  GroupRingElement r(target);
  for (const auto& [g, c] : a.terms())
    for (const auto& [h, d] : b.terms()) r.add_term(layout.join(g, h), c * d);
  return r;
}

GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) { return a * b; }

Coefficient augmentation(const GroupRingElement& a) {
  return Coefficient(a.ring(), a.coefficient(a.group().identity()));
}

Coefficient frobenius_pair(const GroupRingElement& a, const GroupRingElement& b) {
  require_same_algebra(a.algebra(), b.algebra());
  if (!a.group().is_finite()) throw DomainError("Frobenius form undefined for infinite group");
  return augmentation(a * b);
}

std::vector<std::pair<GroupElement, GroupElement>> dual_basis(const GroupDescriptor& group) {
  if (!group.is_finite()) throw DomainError("dual basis undefined for infinite group");
  std::vector<std::pair<GroupElement, GroupElement>> out;
  for (const auto& g : group.elements()) out.emplace_back(g, group.inverse(g));
  return out;
}

std::ostream& operator<<(std::ostream& os, const GroupRingElement& x) { return os << x.to_string(); }

}  // namespace hhbv
