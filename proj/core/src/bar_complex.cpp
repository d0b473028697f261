#include "hhbv/bar_complex.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "hhbv/errors.hpp"

namespace hhbv {

namespace {

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

GroupElement product_of(const GroupDescriptor& group, TupleView xs) {
  GroupElement r = group.identity();
  for (const auto& x : xs) r = group.multiply(r, x);
  return r;
}

std::string tuple_to_string(const GroupDescriptor& group, TupleView t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += "|";
    s += group.element_to_string(t[i]);
  }
  return s + "]";
}

}  // namespace

bool is_degenerate(TupleView tuple) {
  return std::any_of(tuple.begin(), tuple.end(), [](const GroupElement& g) { return g.is_identity(); });
}

// ---- BarChain ----

void BarChain::add(const Tuple& tuple, const GroupRingElement& coefficient) {
  if (coefficient.is_zero() || is_degenerate(tuple)) return;
  if (static_cast<int>(tuple.size()) != degree_) throw DomainError("bar chain degree mismatch");
  auto it = terms_.find(tuple);
  if (it == terms_.end()) {
    terms_.emplace(tuple, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

void BarChain::add(const Tuple& tuple, const GroupElement& g, const mpq_class& c) {
  add(tuple, GroupRingElement::monomial(algebra_, g, c));
}

BarChain& BarChain::operator+=(const BarChain& other) {
  if (!algebra_) *this = BarChain(other.algebra_, other.degree_);
  for (const auto& [t, c] : other.terms_) add(t, c);
  return *this;
}

BarChain& BarChain::operator-=(const BarChain& other) {
  if (!algebra_) *this = BarChain(other.algebra_, other.degree_);
  for (const auto& [t, c] : other.terms_) add(t, -c);
  return *this;
}

BarChain BarChain::operator-() const {
  BarChain r(algebra_, degree_);
  for (const auto& [t, c] : terms_) r.terms_.emplace(t, -c);
  return r;
}

std::string BarChain::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [t, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += tuple_to_string(algebra_->group, t) + "(" + c.to_string() + ")";
  }
  return s;
}

// ---- BarCochain ----

GroupRingElement BarCochain::operator()(TupleView tuple) const {
  if (static_cast<int>(tuple.size()) != degree_) throw DomainError("cochain evaluated on wrong degree");
  if (is_degenerate(tuple) || !fn_) return GroupRingElement(algebra_);
  return fn_(tuple);
}

BarCochain BarCochain::zero(GroupRingPtr algebra, int degree) {
  return BarCochain(std::move(algebra), degree, nullptr);
}

BarCochain BarCochain::constant(const GroupRingElement& value) {
  return BarCochain(value.algebra(), 0, [value](TupleView) { return value; });
}

// ---- dense tables ----

std::vector<Tuple> normalized_tuples(const GroupDescriptor& group, int degree) {
  const auto nonid = group.non_identity_elements();
  std::vector<Tuple> out;
  if (degree == 0) return {Tuple{}};
  if (nonid.empty()) return {};
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  while (true) {
    Tuple t;
    t.reserve(idx.size());
    for (auto i : idx) t.push_back(nonid[i]);
    out.push_back(std::move(t));
    // last slot varies fastest
    int k = degree - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == nonid.size()) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

BarCochainTable BarCochainTable::tabulate(const BarCochain& f) {
  if (!f.algebra()->group.is_finite()) throw DomainError("cochain tables need a finite group");
  BarCochainTable t;
  t.algebra_ = f.algebra();
  t.degree_ = f.degree();
  std::vector<GroupRingElement> values;
  for (const auto& tuple : normalized_tuples(t.algebra_->group, t.degree_)) values.push_back(f(tuple));
  t.values_ = std::make_shared<const std::vector<GroupRingElement>>(std::move(values));
  t.zero_ = std::make_shared<const GroupRingElement>(t.algebra_);
  return t;
}

std::size_t BarCochainTable::index_of(TupleView tuple) const {
  const auto& group = algebra_->group;
  const std::size_t base = static_cast<std::size_t>(group.order() - 1);
  std::size_t index = 0;
  for (const auto& g : tuple) index = index * base + static_cast<std::size_t>(group.index_of(g) - 1);
  return index;
}

const GroupRingElement& BarCochainTable::at(TupleView tuple) const {
  if (static_cast<int>(tuple.size()) != degree_) throw DomainError("table evaluated on wrong degree");
  if (is_degenerate(tuple)) return *zero_;
  return (*values_)[index_of(tuple)];
}

Tuple BarCochainTable::tuple_at(std::size_t index) const {
  const auto& group = algebra_->group;
  const std::size_t base = static_cast<std::size_t>(group.order() - 1);
  Tuple t(static_cast<std::size_t>(degree_));
  for (int k = degree_ - 1; k >= 0; --k) {
    t[static_cast<std::size_t>(k)] = group.element_at(static_cast<std::int64_t>(index % base) + 1);
    index /= base;
  }
  return t;
}

BarCochain BarCochainTable::as_cochain() const {
  auto self = *this;
  return BarCochain(algebra_, degree_, [self](TupleView t) { return self.at(t); });
}

bool operator==(const BarCochainTable& a, const BarCochainTable& b) {
  return a.degree_ == b.degree_ && *a.algebra_ == *b.algebra_ && *a.values_ == *b.values_;
}

std::ostream& operator<<(std::ostream& os, const BarChain& c) { return os << c.to_string(); }
std::ostream& operator<<(std::ostream& os, const BarChainPair& c) { return os << c.to_string(); }

// ---- boundary and coboundary ----

BarChain hochschild_boundary(const BarChain& c) {
  const int n = c.degree();
  if (n < 1) throw DomainError("Hochschild boundary needs degree >= 1");
  const auto& group = c.algebra()->group;
  BarChain r(c.algebra(), n - 1);
  for (const auto& [t, coeff] : c.terms()) {
    // first face moves a_1 onto the coefficient
    r.add(Tuple(t.begin() + 1, t.end()), coeff.shifted(t.front()));
    for (int i = 1; i < n; ++i) {
      Tuple merged;
      merged.reserve(static_cast<std::size_t>(n - 1));
      for (int k = 0; k < n; ++k) {
        if (k == i - 1) merged.push_back(group.multiply(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k + 1)]));
        else if (k != i) merged.push_back(t[static_cast<std::size_t>(k)]);
      }
      r.add(merged, coeff * mpq_class(parity_sign(i)));
    }
    r.add(Tuple(t.begin(), t.end() - 1), coeff.shifted(t.back()) * mpq_class(parity_sign(n)));
  }
  return r;
}

BarCochain hochschild_coboundary(const BarCochain& f) {
  const int k = f.degree();
  const auto algebra = f.algebra();
  return BarCochain(algebra, k + 1, [f, k, algebra](TupleView t) {
    const auto& group = algebra->group;
    GroupRingElement r = f(t.subspan(1)).shifted(t.front());
    Tuple merged(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
      std::size_t m = 0;
      for (int j = 0; j <= k; ++j) {
        if (j == i - 1) merged[m++] = group.multiply(t[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j + 1)]);
        else if (j != i) merged[m++] = t[static_cast<std::size_t>(j)];
      }
      r += f(merged) * mpq_class(parity_sign(i));
    }
    r += f(t.first(static_cast<std::size_t>(k))).shifted(t.back()) * mpq_class(parity_sign(k + 1));
    return r;
  });
}

// ---- products ----

BarCochain cup(const BarCochain& f, const BarCochain& g) {
  require_same_algebra(f.algebra(), g.algebra());
  const auto k = static_cast<std::size_t>(f.degree());
  return BarCochain(f.algebra(), f.degree() + g.degree(), [f, g, k](TupleView t) {
    auto left = f(t.first(k));
    if (left.is_zero()) return left;
    return left * g(t.subspan(k));
  });
}

BarCochainTable cup_bar(const BarCochainTable& f, const BarCochainTable& g) {
  return BarCochainTable::tabulate(cup(f.as_cochain(), g.as_cochain()));
}

BarCochain circle_product(const BarCochain& f, const BarCochain& g) {
  require_same_algebra(f.algebra(), g.algebra());
  const int k = f.degree(), j = g.degree();
  if (k == 0) return BarCochain::zero(f.algebra(), j - 1);
  return BarCochain(f.algebra(), k + j - 1, [f, g, k, j](TupleView t) {
    GroupRingElement r(f.algebra());
    Tuple args(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
      const auto inner = g(t.subspan(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j)));
      if (inner.is_zero()) continue;
      std::size_t m = 0;
      for (int p = 0; p < i - 1; ++p) args[m++] = t[static_cast<std::size_t>(p)];
      const std::size_t slot = m++;
      for (int p = i + j - 1; p < k + j - 1; ++p) args[m++] = t[static_cast<std::size_t>(p)];
      const mpq_class sign = parity_sign(static_cast<long long>(j - 1) * (i - 1));
      for (const auto& [h, c] : inner.terms()) {
        if (h.is_identity()) continue;
        args[slot] = h;
        r += f(args) * mpq_class(c * sign);
      }
    }
    return r;
  });
}

BarCochain gerstenhaber_bracket(const BarCochain& f, const BarCochain& g) {
  const long long e = static_cast<long long>(f.degree() - 1) * (g.degree() - 1);
  const auto fg = circle_product(f, g);
  const auto gf = circle_product(g, f);
  const mpq_class sign = parity_sign(e);
  return BarCochain(f.algebra(), f.degree() + g.degree() - 1, [fg, gf, sign](TupleView t) { return fg(t) - gf(t) * sign; });
}

BarCochainTable circle_product(const BarCochainTable& f, const BarCochainTable& g) {
  return BarCochainTable::tabulate(circle_product(f.as_cochain(), g.as_cochain()));
}

BarCochainTable gerstenhaber_bracket(const BarCochainTable& f, const BarCochainTable& g) {
  return BarCochainTable::tabulate(gerstenhaber_bracket(f.as_cochain(), g.as_cochain()));
}

// ---- Connes B ----

BarChain connes_B(const BarChain& c) {
  const int n = c.degree();
  BarChain r(c.algebra(), n + 1);
  const auto one = GroupRingElement::scalar(c.algebra(), 1);
  for (const auto& [t, coeff] : c.terms()) {
    for (const auto& [g, a] : coeff.terms()) {
      if (g.is_identity()) continue;
      const auto term = one * a;
      // i = 0: coefficient goes first
      Tuple rot;
      rot.reserve(static_cast<std::size_t>(n + 1));
      rot.push_back(g);
      rot.insert(rot.end(), t.begin(), t.end());
      r.add(rot, term);
      for (int i = 1; i <= n; ++i) {
        rot.clear();
        rot.insert(rot.end(), t.begin() + (i - 1), t.end());
        rot.push_back(g);
        rot.insert(rot.end(), t.begin(), t.begin() + (i - 1));
        r.add(rot, term * mpq_class(parity_sign(static_cast<long long>(i) * n)));
      }
    }
  }
  return r;
}

// ---- action and pairing ----

BarChain action_bar(const BarChain& c, const BarCochain& f) {
  const int n = c.degree(), m = f.degree();
  if (n < m) throw DomainError("action needs chain degree >= cochain degree");
  require_same_algebra(c.algebra(), f.algebra());
  BarChain r(c.algebra(), n - m);
  const mpq_class sign = parity_sign(static_cast<long long>(n) * m);
  for (const auto& [t, coeff] : c.terms()) {
    const auto value = f(TupleView(t).first(static_cast<std::size_t>(m)));
    if (value.is_zero()) continue;
    r.add(Tuple(t.begin() + m, t.end()), coeff * value * sign);
  }
  return r;
}

GroupRingElement pair_cochain_chain(const BarCochain& f, const BarChain& c) {
  if (f.degree() != c.degree()) throw DomainError("pairing degree mismatch");
  GroupRingElement r(f.algebra());
  for (const auto& [t, coeff] : c.terms()) r += f(t) * coeff;
  return r;
}

// ---- shuffles ----

std::vector<Shuffle> shuffles(int p, int q) {
  if (p < 0 || q < 0) throw DomainError("shuffle sizes must be non-negative");
  std::vector<Shuffle> out;
  // choose which output positions the first block occupies
  std::vector<bool> mask(static_cast<std::size_t>(p + q), false);
  std::fill(mask.begin(), mask.begin() + p, true);
  do {
    Shuffle s{p, q, std::vector<int>(static_cast<std::size_t>(p + q)), 1};
    int a = 0, b = p;
    for (int pos = 0; pos < p + q; ++pos) {
      if (mask[static_cast<std::size_t>(pos)]) s.perm[static_cast<std::size_t>(a++)] = pos;
      else s.perm[static_cast<std::size_t>(b++)] = pos;
    }
    long long inversions = 0;
    for (int i = 0; i < p + q; ++i)
      for (int j = i + 1; j < p + q; ++j)
        if (s.perm[static_cast<std::size_t>(i)] > s.perm[static_cast<std::size_t>(j)]) ++inversions;
    s.sign = parity_sign(inversions);
    out.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// ---- pairs of bar chains ----

BarChainPair::BarChainPair(GroupRingPtr left, GroupRingPtr right) : left_(std::move(left)), right_(std::move(right)) {
  require_same_ring(left_->ring, right_->ring);
  layout_ = TensorLayout(left_->group, right_->group);
  product_ = make_group_ring(layout_.product(), left_->ring);
}

void BarChainPair::add(const Tuple& a, const Tuple& b, const GroupRingElement& coefficient) {
  if (coefficient.is_zero() || is_degenerate(a) || is_degenerate(b)) return;
  Key key{a, b};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

void BarChainPair::add(const Tuple& a, const Tuple& b, const GroupElement& ga, const GroupElement& gb, const mpq_class& c) {
  add(a, b, GroupRingElement::monomial(product_, layout_.join(ga, gb), c));
}

BarChainPair& BarChainPair::operator+=(const BarChainPair& other) {
  if (!product_) *this = BarChainPair(other.left_, other.right_);
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

BarChainPair& BarChainPair::operator-=(const BarChainPair& other) {
  if (!product_) *this = BarChainPair(other.left_, other.right_);
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, -c);
  return *this;
}

BarChainPair BarChainPair::pure(const BarChain& a, const BarChain& b) {
  BarChainPair r(a.algebra(), b.algebra());
  for (const auto& [ta, ca] : a.terms())
    for (const auto& [tb, cb] : b.terms()) r.add(ta, tb, tensor_elements(ca, cb, r.layout_, r.product_));
  return r;
}

std::string BarChainPair::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += tuple_to_string(left_->group, k.first) + "⊗" + tuple_to_string(right_->group, k.second) + "(" + c.to_string() + ")";
  }
  return s;
}

BarChainPair aw_map(const BarChain& c, const GroupRingPtr& left, const GroupRingPtr& right) {
  BarChainPair r(left, right);
  if (!(r.product()->group == c.algebra()->group)) throw RingMismatch("chain does not live over the tensor algebra");
  const auto& layout = r.layout();
  const auto& ga = left->group;
  const auto& gb = right->group;
  const int n = c.degree();
  for (const auto& [t, coeff] : c.terms()) {
    Tuple as, bs;
    for (const auto& x : t) {
      auto [a, b] = layout.split(x);
      as.push_back(a);
      bs.push_back(b);
    }
    for (int k = 0; k <= n; ++k) {
      Tuple ta(as.begin() + k, as.end()), tb(bs.begin(), bs.begin() + k);
      if (is_degenerate(ta) || is_degenerate(tb)) continue;
      const auto pa = product_of(ga, TupleView(as).first(static_cast<std::size_t>(k)));
      const auto pb = product_of(gb, TupleView(bs).subspan(static_cast<std::size_t>(k)));
      const mpq_class sign = parity_sign(static_cast<long long>(k) * (n - k));
      GroupRingElement moved(r.product());
      for (const auto& [g, val] : coeff.terms()) {
        auto [a, b] = layout.split(g);
        moved.add_term(layout.join(ga.multiply(a, pa), gb.multiply(pb, b)), val * sign);
      }
      r.add(ta, tb, moved);
    }
  }
  return r;
}

BarChain ez_map(const BarChainPair& x) {
  const auto& layout = x.layout();
  const auto ea = x.left()->group.identity();
  const auto eb = x.right()->group.identity();
  std::optional<BarChain> out;
  for (const auto& [k, coeff] : x.terms()) {
    const int p = static_cast<int>(k.first.size()), q = static_cast<int>(k.second.size());
    if (!out) out.emplace(x.product(), p + q);
    if (out->degree() != p + q) throw DomainError("EZ input must be homogeneous in total degree");
    for (const auto& s : shuffles(p, q)) {
      Tuple t(static_cast<std::size_t>(p + q));
      for (int i = 0; i < p; ++i) t[static_cast<std::size_t>(s.perm[static_cast<std::size_t>(i)])] = layout.join(k.first[static_cast<std::size_t>(i)], eb);
      for (int j = 0; j < q; ++j) t[static_cast<std::size_t>(s.perm[static_cast<std::size_t>(p + j)])] = layout.join(ea, k.second[static_cast<std::size_t>(j)]);
      out->add(t, coeff * mpq_class(s.sign));
    }
  }
  return out ? *out : BarChain(x.product(), 0);
}

BarChainPair tensor_connes(const BarChainPair& x, TensorSign sign) {
  BarChainPair r(x.left(), x.right());
  const auto& layout = x.layout();
  for (const auto& [k, coeff] : x.terms()) {
    const long long adeg = static_cast<long long>(k.first.size());
    // split the coefficient into pure a⊗b monomials, apply B on one side
    for (const auto& [g, val] : coeff.terms()) {
      auto [a, b] = layout.split(g);
      BarChain ca(x.left(), static_cast<int>(k.first.size()));
      ca.add(k.first, a, 1);
      BarChain cb(x.right(), static_cast<int>(k.second.size()));
      cb.add(k.second, b, 1);
      if (ca.is_zero() || cb.is_zero()) continue;
      auto left = BarChainPair::pure(connes_B(ca), cb);
      auto right = BarChainPair::pure(ca, connes_B(cb));
      const mpq_class eps = (sign == TensorSign::Koszul) ? mpq_class(parity_sign(adeg)) : mpq_class(1);
      for (const auto& [kk, cc] : left.terms()) r.add(kk.first, kk.second, cc * val);
      for (const auto& [kk, cc] : right.terms()) r.add(kk.first, kk.second, cc * mpq_class(val * eps));
    }
  }
  return r;
}

BarChainPair pair_boundary(const BarChainPair& x) {
  BarChainPair r(x.left(), x.right());
  const auto& layout = x.layout();
  for (const auto& [key, coeff] : x.terms())
    for (const auto& [g, c] : coeff.terms()) {
      auto [a, b] = layout.split(g);
      BarChain ca(x.left(), static_cast<int>(key.first.size()));
      ca.add(key.first, a, 1);
      BarChain cb(x.right(), static_cast<int>(key.second.size()));
      cb.add(key.second, b, 1);
      const mpq_class sign = key.first.size() % 2 == 0 ? 1 : -1;
      if (ca.degree() > 0) {
        const auto left = BarChainPair::pure(hochschild_boundary(ca), cb);
        for (const auto& [k2, v] : left.terms()) r.add(k2.first, k2.second, v * c);
      }
      if (cb.degree() > 0) {
        const auto right = BarChainPair::pure(ca, hochschild_boundary(cb));
        for (const auto& [k2, v] : right.terms()) r.add(k2.first, k2.second, v * mpq_class(c * sign));
      }
    }
  return r;
}

std::vector<BarChainPair> pair_basis(const GroupRingPtr& a, const GroupRingPtr& b, int total) {
  std::vector<BarChainPair> out;
  for (int p = 0; p <= total; ++p)
    for (const auto& ta : normalized_tuples(a->group, p))
      for (const auto& tb : normalized_tuples(b->group, total - p))
        for (const auto& ga : a->group.elements())
          for (const auto& gb : b->group.elements()) {
            BarChainPair x(a, b);
            x.add(ta, tb, ga, gb, 1);
            out.push_back(std::move(x));
          }
  return out;
}

}  // namespace hhbv
