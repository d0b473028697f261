#include "hhbv/comparison.hpp"

#include <ostream>

namespace hhbv {

namespace {

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

bool interior_degenerate(const Tuple& full) {
  for (std::size_t i = 1; i + 1 < full.size(); ++i)
    if (full[i].is_identity()) return true;
  return false;
}

}  // namespace

// ---- bar resolution ----

void BarResolutionElement::add(const Tuple& full, const mpq_class& c) {
  if (static_cast<int>(full.size()) != degree_ + 2) throw DomainError("bar resolution degree mismatch");
  if (interior_degenerate(full)) return;
  mpq_class v = c;
  algebra_->ring.reduce(v);
  if (v == 0) return;
  auto [it, inserted] = terms_.emplace(full, v);
  if (inserted) return;
  it->second += v;
  algebra_->ring.reduce(it->second);
  if (it->second == 0) terms_.erase(it);
}

BarResolutionElement& BarResolutionElement::operator+=(const BarResolutionElement& other) {
  if (!algebra_) *this = BarResolutionElement(other.algebra_, other.degree_);
  for (const auto& [t, c] : other.terms_) add(t, c);
  return *this;
}

BarResolutionElement BarResolutionElement::acted(const EnvAlgebras& env, const GroupRingElement& xy) const {
  BarResolutionElement r(algebra_, degree_);
  const auto& group = algebra_->group;
  for (const auto& [g, d] : xy.terms()) {
    auto [x, y] = env.pair_layout.split(g);
    for (const auto& [t, c] : terms_) {
      Tuple u = t;
      u.front() = group.multiply(x, u.front());
      u.back() = group.multiply(u.back(), y);
      r.add(u, c * d);
    }
  }
  return r;
}

std::string BarResolutionElement::to_string() const {
  if (terms_.empty()) return "0";
  const auto& group = algebra_->group;
  std::string s;
  for (const auto& [t, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += scalar_to_string(c) + "*";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) s += "⊗";
      s += group.element_to_string(t[i]);
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const BarResolutionElement& x) { return os << x.to_string(); }

BarResolutionElement bar_resolution_boundary(const BarResolutionElement& x) {
  const int r = x.degree();
  if (r < 1) throw DomainError("bar resolution boundary needs degree >= 1");
  const auto& group = x.algebra()->group;
  BarResolutionElement out(x.algebra(), r - 1);
  for (const auto& [t, c] : x.terms()) {
    for (int i = 0; i <= r; ++i) {
      Tuple u;
      u.reserve(t.size() - 1);
      for (int k = 0; k < static_cast<int>(t.size()); ++k) {
        if (k == i) u.push_back(group.multiply(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k + 1)]));
        else if (k != i + 1) u.push_back(t[static_cast<std::size_t>(k)]);
      }
      out.add(u, c * parity_sign(i));
    }
  }
  return out;
}

BarResolutionElement bar_resolution_homotopy(const BarResolutionElement& x) {
  const auto& group = x.algebra()->group;
  BarResolutionElement out(x.algebra(), x.degree() + 1);
  for (const auto& [t, c] : x.terms()) {
    if (t.front().is_identity()) continue;
    Tuple u;
    u.reserve(t.size() + 1);
    u.push_back(group.identity());
    u.insert(u.end(), t.begin(), t.end());
    out.add(u, c);
  }
  return out;
}

// ---- induced maps ----

BarChain induced_psi_chain(const BarResolutionElement& psi, const GroupRingElement& a) {
  const auto& group = psi.algebra()->group;
  BarChain out(psi.algebra(), psi.degree());
  for (const auto& [t, c] : psi.terms()) {
    Tuple inner(t.begin() + 1, t.end() - 1);
    out.add(inner, a.shifted(group.multiply(t.back(), t.front())) * c);
  }
  return out;
}

GroupRingElement induced_phi_chain(const EnvAlgebras& env, const GroupRingElement& phi_value, const GroupRingElement& a) {
  // (x⊗y)⊗a ↦ y a x
  return env.mu(phi_value) * a;
}

GroupRingElement induced_psi_cochain(const BarResolutionElement& psi, const BarCochain& f) {
  const auto& group = psi.algebra()->group;
  GroupRingElement out(psi.algebra());
  for (const auto& [t, c] : psi.terms()) {
    const auto value = f(TupleView(t).subspan(1, t.size() - 2));
    out += value.shifted(group.multiply(t.front(), t.back())) * c;
  }
  return out;
}

// ---- Z/n ----

CyclicComparison::CyclicComparison(GroupRingPtr algebra) {
  const auto& g = algebra->group;
  if (g.free_rank() != 0 || g.torsion_orders().size() != 1) throw DomainError("cyclic comparison needs A = R[Z/n]");
  n_ = static_cast<long>(g.torsion_orders().front());
  env_ = EnvAlgebras::of(std::move(algebra));
}

BarResolutionElement CyclicComparison::psi(int degree) const {
  if (degree < 0) throw DomainError("negative degree");
  const auto& g = env_.base->group;
  const int r = degree / 2;
  const bool odd = degree % 2 == 1;
  BarResolutionElement out(env_.base, degree);
  const int sign = odd ? parity_sign(r + 1) : parity_sign(r);
  std::vector<long> idx(static_cast<std::size_t>(r), 0);
  while (true) {
    Tuple t;
    t.reserve(static_cast<std::size_t>(degree + 2));
    t.push_back(g.identity());
    if (odd) t.push_back(g.generator(0, 1));
    long sum = 0;
    for (long i : idx) {
      t.push_back(g.generator(0, i));
      t.push_back(g.generator(0, 1));
      sum += i;
    }
    t.push_back(g.generator(0, static_cast<long>(r) * (n_ - 1) - sum));
    out.add(t, sign);
    int k = r - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == n_) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

BarResolutionElement CyclicComparison::psi_recursive(int degree) const {
  const auto& g = env_.base->group;
  BarResolutionElement cur(env_.base, 0);
  cur.add({g.identity(), g.identity()}, 1);
  for (int r = 0; r < degree; ++r) cur = bar_resolution_homotopy(cur.acted(env_, periodic_differential(env_, n_, r + 1)));
  return cur;
}

GroupRingElement CyclicComparison::phi(TupleView tuple) const {
  const auto& g = env_.base->group;
  GroupRingElement out(env_.env);
  if (is_degenerate(tuple)) return out;
  const int m = static_cast<int>(tuple.size());
  const long r = m / 2;
  long sum = 0;
  for (const auto& x : tuple) sum += exponent(x);
  if (m % 2 == 0) {
    for (int k = 0; k < m; k += 2)
      if (exponent(tuple[static_cast<std::size_t>(k)]) + exponent(tuple[static_cast<std::size_t>(k + 1)]) < n_) return out;
    out.add_term(env_.pair_layout.join(g.identity(), g.generator(0, sum - r * n_)), parity_sign(r));
    return out;
  }
  for (int k = 1; k < m; k += 2)
    if (exponent(tuple[static_cast<std::size_t>(k)]) + exponent(tuple[static_cast<std::size_t>(k + 1)]) < n_) return out;
  const long first = exponent(tuple[0]);
  for (long j = 0; j < first; ++j)
    out.add_term(env_.pair_layout.join(g.generator(0, j), g.generator(0, sum - j - r * n_ - 1)), parity_sign(r + 1));
  return out;
}

GroupRingElement CyclicComparison::phi_recursive(TupleView tuple) const {
  const auto& g = env_.base->group;
  const std::size_t m = tuple.size();
  GroupRingElement out(env_.env);
  if (is_degenerate(tuple)) return out;
  if (m == 0) return env_.one();
  if (m == 1) {
    const long i = exponent(tuple[0]);
    for (long j = 0; j < i; ++j) out.add_term(env_.pair_layout.join(g.generator(0, j), g.generator(0, i - j - 1)), -1);
    return out;
  }
  if (m == 2) {
    const long s = exponent(tuple[0]) + exponent(tuple[1]);
    if (s >= n_) out.add_term(env_.pair_layout.join(g.identity(), g.generator(0, s - n_)), -1);
    return out;
  }
  return phi_recursive(tuple.first(m - 2)) * phi_recursive(tuple.subspan(m - 2));
}

BarChain CyclicComparison::psi_chain(int degree, const GroupRingElement& a) const { return induced_psi_chain(psi(degree), a); }

GroupRingElement CyclicComparison::phi_chain(const BarChain& c) const {
  GroupRingElement out(env_.base);
  for (const auto& [t, coeff] : c.terms()) out += induced_phi_chain(env_, phi(t), coeff);
  return out;
}

GroupRingElement CyclicComparison::psi_cochain(const BarCochain& f) const { return induced_psi_cochain(psi(f.degree()), f); }

BarCochain CyclicComparison::phi_cochain(int degree, const GroupRingElement& a) const {
  require_same_algebra(a.algebra(), env_.base);
  auto self = *this;
  return BarCochain(env_.base, degree, [self, a](TupleView t) { return self.env_.mu(self.phi(t)) * a; });
}

DiagonalComponents CyclicComparison::diagonal(int degree) const {
  DiagonalComponents out;
  const auto one = GroupRingElement::scalar(env_.base, 1);
  const auto lift = psi(degree);
  for (const auto& [t, c] : lift.terms()) {
    const TupleView inner = TupleView(t).subspan(1, static_cast<std::size_t>(degree));
    const auto left_end = env_.pair(GroupRingElement::monomial(env_.base, t.front()), one);
    const auto right_end = env_.pair(one, GroupRingElement::monomial(env_.base, t.back()));
    for (int i = 0; i <= degree; ++i) {
      const auto left = left_end * phi(inner.first(static_cast<std::size_t>(i)));
      if (left.is_zero()) continue;
      const auto right = phi(inner.subspan(static_cast<std::size_t>(i))) * right_end;
      if (right.is_zero()) continue;
      auto piece = env_.over_base(left, right) * c;
      auto [it, inserted] = out.emplace(std::pair{i, degree - i}, piece);
      if (!inserted) it->second += piece;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// ---- Z ----

LaurentComparison::LaurentComparison(GroupRingPtr algebra) {
  const auto& g = algebra->group;
  if (g.free_rank() != 1 || !g.torsion_orders().empty()) throw DomainError("Laurent comparison needs A = R[Z]");
  env_ = EnvAlgebras::of(std::move(algebra));
}

void LaurentComparison::check_degree(int degree) const {
  if (degree < 0 || degree > 1) throw DomainError("the two-term resolution lives in degrees 0 and 1");
}

BarResolutionElement LaurentComparison::psi(int degree) const {
  check_degree(degree);
  const auto& g = env_.base->group;
  BarResolutionElement out(env_.base, degree);
  if (degree == 0) out.add({g.identity(), g.identity()}, 1);
  else out.add({g.identity(), g.generator(0, 1), g.identity()}, -1);
  return out;
}

BarResolutionElement LaurentComparison::psi_recursive(int degree) const {
  check_degree(degree);
  const auto& g = env_.base->group;
  BarResolutionElement cur(env_.base, 0);
  cur.add({g.identity(), g.identity()}, 1);
  if (degree == 1) cur = bar_resolution_homotopy(cur.acted(env_, koszul_z_differential(env_)));
  return cur;
}

GroupRingElement LaurentComparison::phi(TupleView tuple) const {
  check_degree(static_cast<int>(tuple.size()));
  const auto& g = env_.base->group;
  if (tuple.empty()) return env_.one();
  GroupRingElement out(env_.env);
  const std::int64_t k = tuple[0][0];
  if (k >= 1)
    for (std::int64_t j = 0; j < k; ++j) out.add_term(env_.pair_layout.join(g.generator(0, j), g.generator(0, k - j - 1)), -1);
  else
    for (std::int64_t j = 0; j <= -k - 1; ++j) out.add_term(env_.pair_layout.join(g.generator(0, -j - 1), g.generator(0, k + j)), 1);
  return out;
}

BarChain LaurentComparison::psi_chain(int degree, const GroupRingElement& a) const { return induced_psi_chain(psi(degree), a); }

GroupRingElement LaurentComparison::phi_chain(const BarChain& c) const {
  GroupRingElement out(env_.base);
  for (const auto& [t, coeff] : c.terms()) out += induced_phi_chain(env_, phi(t), coeff);
  return out;
}

GroupRingElement LaurentComparison::psi_cochain(const BarCochain& f) const { return induced_psi_cochain(psi(f.degree()), f); }

BarCochain LaurentComparison::phi_cochain(int degree, const GroupRingElement& a) const {
  check_degree(degree);
  require_same_algebra(a.algebra(), env_.base);
  auto self = *this;
  return BarCochain(env_.base, degree, [self, a](TupleView t) { return self.env_.mu(self.phi(t)) * a; });
}

}  // namespace hhbv
