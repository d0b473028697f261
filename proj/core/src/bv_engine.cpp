#include "hhbv/bv_engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>

namespace hhbv {

namespace {

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

GroupRingElement inverse_monomial(const GroupRingElement& e) {
  if (e.support_size() != 1) throw NonUnit("expected a unit multiple of a group element, got " + e.to_string());
  const auto& [g, c] = *e.terms().begin();
  const auto& ring = e.ring();
  if (!ring.is_unit(c)) throw NonUnit("coefficient " + scalar_to_string(c) + " is not a unit of " + ring.to_string());
  return GroupRingElement::monomial(e.algebra(), e.group().inverse(g), ring.inverse(c));
}

GroupRingElement component_mu3(const EnvAlgebras& env, const DiagonalComponents& diagonal, int p, int q) {
  auto it = diagonal.find({p, q});
  if (it == diagonal.end()) return GroupRingElement(env.base);
  return env.mu3(it->second);
}

}  // namespace

// ---- dual-basis Δ ----

BarCochain delta_dual_basis(const BarCochain& f) {
  const auto& algebra = f.algebra();
  if (!algebra->group.is_finite()) throw DomainError("dual-basis Δ needs a finite group");
  const int m = f.degree() - 1;
  if (m < 0) return BarCochain::zero(algebra, -1);
  auto others = algebra->group.non_identity_elements();
  return BarCochain(algebra, m, [f, m, others = std::move(others)](TupleView t) {
    const auto& group = f.algebra()->group;
    const GroupElement e = group.identity();
    GroupRingElement out(f.algebra());
    Tuple rot(static_cast<std::size_t>(m + 1));
    for (const auto& g : others) {
      mpq_class total = 0;
      for (int i = 0; i <= m; ++i) {
        // rot_0 = (g, a_1..a_m); rot_i = (a_i..a_m, g, a_1..a_{i-1})
        std::size_t k = 0;
        if (i == 0) {
          rot[k++] = g;
          for (int p = 0; p < m; ++p) rot[k++] = t[static_cast<std::size_t>(p)];
        } else {
          for (int p = i - 1; p < m; ++p) rot[k++] = t[static_cast<std::size_t>(p)];
          rot[k++] = g;
          for (int p = 0; p < i - 1; ++p) rot[k++] = t[static_cast<std::size_t>(p)];
        }
        const mpq_class value = f(rot).coefficient(e);
        if (value != 0) total += value * parity_sign(static_cast<long long>(i) * m);
      }
      if (total != 0) out.add_term(group.inverse(g), total);
    }
    return out;
  });
}

BarCochainTable delta_dual_basis(const BarCochainTable& f) { return BarCochainTable::tabulate(delta_dual_basis(f.as_cochain())); }

GroupRingElement action_small(const EnvAlgebras& env, const DiagonalComponents& diagonal, int chain_degree,
                              const GroupRingElement& chain_value, int cochain_degree, const GroupRingElement& cochain_value) {
  if (cochain_degree > chain_degree) throw DomainError("action needs chain degree >= cochain degree");
  if (cochain_degree < 0) throw DomainError("negative cochain degree");
  const auto kappa = component_mu3(env, diagonal, cochain_degree, chain_degree - cochain_degree);
  return chain_value * cochain_value * kappa * mpq_class(parity_sign(static_cast<long long>(chain_degree) * cochain_degree));
}

// ---- Z/n ----

struct CyclicBvModel::Cache {
  std::mutex mutex;
  std::map<std::pair<int, std::int64_t>, GroupRingElement> delta;
  std::map<int, DiagonalComponents> diagonals;
  std::map<int, BarResolutionElement> psi;
};

CyclicBvModel::CyclicBvModel(GroupRingPtr algebra) : comparison_(std::move(algebra)), cache_(std::make_shared<Cache>()) {}

GroupRingElement CyclicBvModel::delta_basis(int degree, std::int64_t exponent) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->delta.find({degree, exponent}); it != cache_->delta.end()) return it->second;
  }
  BarResolutionElement psi;
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->psi.find(degree - 1);
    if (it == cache_->psi.end()) it = cache_->psi.emplace(degree - 1, comparison_.psi(degree - 1)).first;
    psi = it->second;
  }
  const auto f = comparison_.phi_cochain(degree, GroupRingElement::power_of(algebra(), 0, exponent));
  auto value = induced_psi_cochain(psi, delta_dual_basis(f));
  std::lock_guard lock(cache_->mutex);
  cache_->delta.emplace(std::pair{degree, exponent}, value);
  return value;
}

GroupRingElement CyclicBvModel::delta(int degree, const GroupRingElement& value) const {
  require_same_algebra(value.algebra(), algebra());
  GroupRingElement out(algebra());
  if (degree <= 0) return out;
  for (const auto& [g, c] : value.terms()) out += delta_basis(degree, g[0]) * c;
  return out;
}

GroupRingElement CyclicBvModel::kappa(int p, int q) const {
  if (p < 0 || q < 0) throw DomainError("negative degree");
  const int k = p + q;
  std::unique_lock lock(cache_->mutex);
  auto it = cache_->diagonals.find(k);
  if (it == cache_->diagonals.end()) {
    lock.unlock();
    auto diagonal = comparison_.diagonal(k);
    lock.lock();
    it = cache_->diagonals.emplace(k, std::move(diagonal)).first;
  }
  return component_mu3(comparison_.env(), it->second, p, q);
}

GroupRingElement CyclicBvModel::coboundary_multiplier(int degree) const {
  if (degree < 1) return GroupRingElement(algebra());
  const auto& env = comparison_.env();
  return env.mu(periodic_differential(env, order(), degree));
}

GroupRingElement CyclicBvModel::cup(int p, const GroupRingElement& a, int q, const GroupRingElement& b) const {
  return a * b * kappa(p, q);
}

GroupRingElement CyclicBvModel::bar_cup(int p, const GroupRingElement& a, int q, const GroupRingElement& b) const {
  const auto product = hhbv::cup(comparison_.phi_cochain(p, a), comparison_.phi_cochain(q, b));
  return comparison_.psi_cochain(product);
}

GroupRingElement CyclicBvModel::circle_bracket(int p, const GroupRingElement& a, int q, const GroupRingElement& b) const {
  if (p + q < 1) return GroupRingElement(algebra());
  const auto bracket = gerstenhaber_bracket(comparison_.phi_cochain(p, a), comparison_.phi_cochain(q, b));
  return comparison_.psi_cochain(bracket);
}

// ---- Z ----

LaurentBvModel::LaurentBvModel(GroupRingPtr algebra, GroupRingElement fundamental)
    : comparison_(std::move(algebra)), fundamental_(std::move(fundamental)) {
  require_same_algebra(fundamental_.algebra(), comparison_.algebra());
  inverse_monomial(fundamental_);  // validates u t^k with u a unit
  for (int d = 0; d <= 1; ++d) diagonals_.emplace(d, koszul_z_diagonal(comparison_.env(), d));
}

GroupRingElement LaurentBvModel::rho(int degree, const GroupRingElement& value) const {
  if (degree < 0 || degree > 1) return GroupRingElement(algebra());
  return action_small(comparison_.env(), diagonals_.at(1), 1, fundamental_, degree, value);
}

GroupRingElement LaurentBvModel::rho_inverse(int degree, const GroupRingElement& chain_value) const {
  if (degree < 0 || degree > 1) return GroupRingElement(algebra());
  const auto image_of_one = rho(degree, GroupRingElement::scalar(algebra(), 1));
  return chain_value * inverse_monomial(image_of_one);
}

GroupRingElement LaurentBvModel::delta(int degree, const GroupRingElement& value) const {
  require_same_algebra(value.algebra(), algebra());
  if (degree < 0 || degree > 1) return GroupRingElement(algebra());
  const auto chain = rho(degree, value);  // HH_{1-r}
  const auto bar = comparison_.psi_chain(1 - degree, chain);
  const auto rotated = connes_B(bar);
  if (rotated.degree() > 1) return GroupRingElement(algebra());  // the resolution stops in degree 1
  const auto back = comparison_.phi_chain(rotated);
  return rho_inverse(degree - 1, back);
}

GroupRingElement LaurentBvModel::kappa(int p, int q) const {
  if (p < 0 || q < 0) throw DomainError("negative degree");
  if (p + q > 1) return GroupRingElement(algebra());
  return component_mu3(comparison_.env(), diagonals_.at(p + q), p, q);
}

GroupRingElement LaurentBvModel::coboundary_multiplier(int degree) const {
  if (degree != 1) return GroupRingElement(algebra());
  return comparison_.env().mu(koszul_z_differential(comparison_.env()));
}

// ---- tensor cochains ----

GroupRingElement TensorCochain::part(const MultiDegree& d) const {
  if (auto it = parts_.find(d); it != parts_.end()) return it->second;
  return GroupRingElement(algebra_);
}

void TensorCochain::add(const MultiDegree& d, const GroupRingElement& value) {
  if (std::accumulate(d.begin(), d.end(), 0) != degree_) throw DomainError("multidegree does not match cochain degree");
  if (value.is_zero()) return;
  auto [it, inserted] = parts_.emplace(d, value);
  if (inserted) return;
  it->second += value;
  if (it->second.is_zero()) parts_.erase(it);
}

TensorCochain& TensorCochain::operator+=(const TensorCochain& other) {
  if (!algebra_) *this = TensorCochain(other.algebra_, other.degree_);
  if (other.is_zero()) return *this;
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [d, v] : other.parts_) add(d, v);
  return *this;
}

TensorCochain& TensorCochain::operator-=(const TensorCochain& other) { return *this += -other; }

TensorCochain TensorCochain::operator-() const { return scaled(-1); }

TensorCochain TensorCochain::scaled(const mpq_class& c) const {
  TensorCochain out(algebra_, degree_);
  for (const auto& [d, v] : parts_) out.add(d, v * c);
  return out;
}

std::string TensorCochain::to_string() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (const auto& [d, v] : parts_) {
    if (!s.empty()) s += " + ";
    s += "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    s += "):[" + v.to_string() + "]";
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const TensorCochain& x) { return os << x.to_string(); }

// ---- tensor model ----

std::string tensor_hypothesis_failure(const GroupDescriptor& group, const CoeffRingTag& ring) {
  const auto& torsion = group.torsion_orders();
  if (ring.is_field() || torsion.size() <= 1) return {};
  if (ring.kind() == RingKind::Integers && group.free_rank() == 0 && torsion.size() == 2 && torsion[0] % torsion[1] == 0)
    return {};
  return "the signed tensor Δ needs a field, at most one finite cyclic factor, or Z/n x Z/m over Z with m | n (got " +
         group.to_string() + " over " + ring.to_string() + ")";
}

struct TensorBvModel::Cache {
  std::mutex mutex;
  std::map<int, std::shared_ptr<const IntMatrix>> coboundary_matrices;
};

TensorBvModel::TensorBvModel(GroupDescriptor group, CoeffRingTag ring, LaurentUnit unit) : cache_(std::make_shared<Cache>()) {
  if (auto failure = tensor_hypothesis_failure(group, ring); !failure.empty()) throw HypothesisError(failure);
  for (int j = 0; j < group.free_rank(); ++j) {
    auto a = make_group_ring(GroupDescriptor::free(1), ring);
    factor_algebras_.push_back(a);
    factors_.emplace_back(LaurentBvModel(a, GroupRingElement::power_of(a, 0, unit.exponent, ring.make(unit.unit))));
  }
  for (auto n : group.torsion_orders()) {
    auto a = make_group_ring(GroupDescriptor::cyclic(n), ring);
    factor_algebras_.push_back(a);
    factors_.emplace_back(CyclicBvModel(a));
  }
  algebra_ = make_group_ring(std::move(group), std::move(ring));
}

const GroupRingPtr& TensorBvModel::factor_algebra(std::size_t j) const { return factor_algebras_.at(j); }

int TensorBvModel::factor_top(std::size_t j) const {
  return std::holds_alternative<LaurentBvModel>(factors_[j]) ? 1 : std::numeric_limits<int>::max();
}

std::vector<MultiDegree> TensorBvModel::multidegrees(int degree) const {
  std::vector<MultiDegree> out;
  if (degree < 0) return out;
  MultiDegree d(factors_.size(), 0);
  auto rec = [&](auto&& self, std::size_t j, int remaining) -> void {
    if (j + 1 == factors_.size()) {
      if (remaining <= factor_top(j)) {
        d[j] = remaining;
        out.push_back(d);
      }
      return;
    }
    for (int k = std::min(remaining, factor_top(j)); k >= 0; --k) {
      d[j] = k;
      self(self, j + 1, remaining - k);
    }
  };
  if (factors_.empty()) {
    if (degree == 0) out.push_back(d);
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

GroupRingElement TensorBvModel::embed(std::size_t j, const GroupRingElement& factor_value) const {
  require_same_algebra(factor_value.algebra(), factor_algebras_.at(j));
  GroupRingElement out(algebra_);
  std::vector<std::int64_t> coords(factors_.size(), 0);
  for (const auto& [g, c] : factor_value.terms()) {
    coords[j] = g[0];
    out.add_term(algebra_->group.element(coords), c);
  }
  return out;
}

GroupRingElement TensorBvModel::monomial(const std::vector<std::int64_t>& exponents, const mpq_class& c) const {
  if (exponents.size() != factors_.size()) throw DomainError("one exponent per factor expected");
  return GroupRingElement::monomial(algebra_, algebra_->group.element(exponents), c);
}

GroupRingElement TensorBvModel::factor_delta(std::size_t j, int degree, const GroupElement& g) const {
  const auto& a = factor_algebras_[j];
  const auto x = GroupRingElement::power_of(a, 0, g[j]);
  const auto d = std::visit([&](const auto& f) { return f.delta(degree, x); }, factors_[j]);
  GroupElement rest = g;
  rest[j] = 0;
  return embed(j, d).shifted(rest);
}

GroupRingElement TensorBvModel::factor_kappa(std::size_t j, int p, int q) const {
  return embed(j, std::visit([&](const auto& f) { return f.kappa(p, q); }, factors_[j]));
}

GroupRingElement TensorBvModel::factor_multiplier(std::size_t j, int degree) const {
  return embed(j, std::visit([&](const auto& f) { return f.coboundary_multiplier(degree); }, factors_[j]));
}

TensorCochain TensorBvModel::cup(const TensorCochain& f, const TensorCochain& g) const {
  TensorCochain out(algebra_, f.degree() + g.degree());
  const std::size_t s = factors_.size();
  for (const auto& [d1, v1] : f.parts()) {
    for (const auto& [d2, v2] : g.parts()) {
      // Koszul sign from moving g's factor j past f's factors l > j
      long long exponent = 0;
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t l = j + 1; l < s; ++l) exponent += static_cast<long long>(d2[j]) * d1[l];
      GroupRingElement value = v1 * v2 * mpq_class(parity_sign(exponent));
      MultiDegree d(s);
      for (std::size_t j = 0; j < s && !value.is_zero(); ++j) {
        d[j] = d1[j] + d2[j];
        value = value * factor_kappa(j, d1[j], d2[j]);
      }
      if (!value.is_zero()) out.add(d, value);
    }
  }
  return out;
}

TensorCochain TensorBvModel::delta(const TensorCochain& f) const {
  TensorCochain out(algebra_, f.degree() - 1);
  for (const auto& [d, v] : f.parts()) {
    int prefix = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (d[j] >= 1) {
        MultiDegree lowered = d;
        --lowered[j];
        GroupRingElement value(algebra_);
        for (const auto& [g, c] : v.terms()) value += factor_delta(j, d[j], g) * c;
        out.add(lowered, value * mpq_class(parity_sign(prefix)));
      }
      prefix += d[j];
    }
  }
  return out;
}

TensorCochain TensorBvModel::coboundary(const TensorCochain& f) const {
  TensorCochain out(algebra_, f.degree() + 1);
  for (const auto& [d, v] : f.parts()) {
    int prefix = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (d[j] + 1 <= factor_top(j)) {
        MultiDegree raised = d;
        ++raised[j];
        out.add(raised, v * factor_multiplier(j, d[j] + 1) * mpq_class(parity_sign(prefix)));
      }
      prefix += d[j];
    }
  }
  return out;
}

TensorCochain TensorBvModel::bracket_from_delta(const TensorCochain& a, const TensorCochain& b) const {
  const int sa = parity_sign(a.degree());
  auto inner = delta(cup(a, b)) - cup(delta(a), b) - cup(a, delta(b)).scaled(sa);
  return inner.scaled(-sa);
}

bool TensorBvModel::is_coboundary(const TensorCochain& f) const {
  if (f.is_zero()) return true;
  const int r = f.degree();
  if (r <= 0) return false;
  const auto& group = algebra_->group;
  const int free = group.free_rank();
  const GroupDescriptor torsion_group(0, group.torsion_orders());
  const auto h_size = static_cast<std::size_t>(torsion_group.order());
  const auto rows_d = multidegrees(r);
  const auto cols_d = multidegrees(r - 1);
  auto index_in = [](const std::vector<MultiDegree>& list, const MultiDegree& d) {
    return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), d, std::greater<>()) - list.begin());
  };
  auto torsion_part = [&](const GroupElement& g) {
    std::vector<std::int64_t> t(g.coords().begin() + free, g.coords().end());
    return torsion_group.element(t);
  };

  std::shared_ptr<const IntMatrix> matrix;
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->coboundary_matrices.find(r); it != cache_->coboundary_matrices.end()) matrix = it->second;
  }
  if (!matrix) {
    const auto& ring = algebra_->ring;
    IntMatrix m(rows_d.size() * h_size, cols_d.size() * h_size, ring);
    for (std::size_t col_d = 0; col_d < cols_d.size(); ++col_d) {
      const auto& d = cols_d[col_d];
      for (std::size_t h = 0; h < h_size; ++h) {
        TensorCochain unit(algebra_, r - 1);
        std::vector<std::int64_t> coords(static_cast<std::size_t>(free), 0);
        const auto th = torsion_group.element_at(static_cast<std::int64_t>(h));
        coords.insert(coords.end(), th.coords().begin(), th.coords().end());
        unit.add(d, GroupRingElement::monomial(algebra_, group.element(coords)));
        const auto image = coboundary(unit);
        for (const auto& [rd, v] : image.parts()) {
          const std::size_t row_block = index_in(rows_d, rd);
          for (const auto& [g, c] : v.terms())
            m.add_to(row_block * h_size + static_cast<std::size_t>(torsion_group.index_of(torsion_part(g))),
                     col_d * h_size + h, c.get_num());
        }
      }
    }
    matrix = std::make_shared<const IntMatrix>(std::move(m));
    std::lock_guard lock(cache_->mutex);
    cache_->coboundary_matrices.emplace(r, matrix);
  }

  // the coboundary only moves torsion coordinates, so solve one free slice at a time
  std::map<std::vector<std::int64_t>, std::vector<mpq_class>> slices;
  for (const auto& [d, v] : f.parts()) {
    const std::size_t row_block = index_in(rows_d, d);
    if (row_block >= rows_d.size() || rows_d[row_block] != d) return false;
    for (const auto& [g, c] : v.terms()) {
      std::vector<std::int64_t> key(g.coords().begin(), g.coords().begin() + free);
      auto& target = slices.try_emplace(key, rows_d.size() * h_size, mpq_class(0)).first->second;
      target[row_block * h_size + static_cast<std::size_t>(torsion_group.index_of(torsion_part(g)))] += c;
    }
  }
  if (matrix->is_zero()) return false;
  for (const auto& [key, target] : slices) {
    mpz_class scale = 1;
    for (const auto& c : target) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    IntVector v(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
      const mpq_class scaled = target[i] * scale;
      v[i] = scaled.get_num();
    }
    if (!in_image(*matrix, v)) return false;
  }
  return true;
}

SevenTermReport seven_term_check(const TensorBvModel& model, const TensorCochain& a, const TensorCochain& b,
                                 const TensorCochain& c) {
  const int da = a.degree(), db = b.degree();
  const auto ab = model.cup(a, b);
  const auto lhs = model.delta(model.cup(ab, c));
  auto rhs = model.cup(model.delta(ab), c);
  rhs += model.cup(a, model.delta(model.cup(b, c))).scaled(parity_sign(da));
  rhs += model.cup(b, model.delta(model.cup(a, c))).scaled(parity_sign(static_cast<long long>(da - 1) * db));
  rhs -= model.cup(model.cup(model.delta(a), b), c);
  rhs -= model.cup(model.cup(a, model.delta(b)), c).scaled(parity_sign(da));
  rhs -= model.cup(ab, model.delta(c)).scaled(parity_sign(da + db));
  SevenTermReport report;
  report.residual = lhs - rhs;
  report.holds = model.is_coboundary(report.residual);
  return report;
}

}  // namespace hhbv
