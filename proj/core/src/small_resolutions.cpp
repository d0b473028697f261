#include "hhbv/small_resolutions.hpp"

namespace hhbv {

namespace {

std::array<GroupElement, 3> split3(const EnvAlgebras& env, const GroupElement& g) {
  auto [ab, c] = env.triple_layout.split(g);
  auto [a, b] = env.pair_layout.split(ab);
  return {a, b, c};
}

}  // namespace

EnvAlgebras EnvAlgebras::of(GroupRingPtr base) {
  EnvAlgebras e;
  const GroupDescriptor& g = base->group;
  e.pair_layout = TensorLayout(g, g);
  e.triple_layout = TensorLayout(e.pair_layout.product(), g);
  e.env = make_group_ring(e.pair_layout.product(), base->ring);
  e.triple = make_group_ring(e.triple_layout.product(), base->ring);
  e.base = std::move(base);
  return e;
}

GroupRingElement EnvAlgebras::pure(const GroupElement& a, const GroupElement& b, const mpq_class& c) const {
  return GroupRingElement::monomial(env, pair_layout.join(a, b), c);
}

GroupRingElement EnvAlgebras::pair(const GroupRingElement& a, const GroupRingElement& b) const {
  return tensor_elements(a, b, pair_layout, env);
}

GroupRingElement EnvAlgebras::pure3(const GroupElement& a, const GroupElement& b, const GroupElement& c, const mpq_class& coeff) const {
  return GroupRingElement::monomial(triple, triple_layout.join(pair_layout.join(a, b), c), coeff);
}

GroupRingElement EnvAlgebras::mu(const GroupRingElement& x) const {
  GroupRingElement r(base);
  for (const auto& [g, c] : x.terms()) {
    auto [a, b] = pair_layout.split(g);
    r.add_term(base->group.multiply(a, b), c);
  }
  return r;
}

GroupRingElement EnvAlgebras::mu3(const GroupRingElement& x) const {
  GroupRingElement r(base);
  const auto& group = base->group;
  for (const auto& [g, c] : x.terms()) {
    const auto parts = split3(*this, g);
    r.add_term(group.multiply(group.multiply(parts[0], parts[1]), parts[2]), c);
  }
  return r;
}

GroupRingElement EnvAlgebras::over_base(const GroupRingElement& x, const GroupRingElement& y) const {
  GroupRingElement r(triple);
  for (const auto& [g, c] : x.terms()) {
    auto [x1, x2] = pair_layout.split(g);
    for (const auto& [h, d] : y.terms()) {
      auto [y1, y2] = pair_layout.split(h);
      r.add_term(triple_layout.join(pair_layout.join(x1, base->group.multiply(x2, y1)), y2), c * d);
    }
  }
  return r;
}

GroupRingElement EnvAlgebras::right_act(const GroupRingElement& x, const GroupRingElement& c) const {
  return x * pair(GroupRingElement::scalar(base, 1), c);
}

GroupRingElement periodic_differential(const EnvAlgebras& env, long n, int degree) {
  if (degree < 1) throw DomainError("periodic differential starts in degree 1");
  const auto& g = env.base->group;
  GroupRingElement d(env.env);
  if (degree % 2 == 1) {
    d.add_term(env.pair_layout.join(g.identity(), g.generator(0, 1)), 1);
    d.add_term(env.pair_layout.join(g.generator(0, 1), g.identity()), -1);
  } else {
    for (long i = 0; i < n; ++i) d.add_term(env.pair_layout.join(g.generator(0, i), g.generator(0, n - i - 1)), 1);
  }
  return d;
}

GroupRingElement periodic_boundary(const EnvAlgebras& env, long n, Parity parity, const GroupRingElement& x) {
  return x * periodic_differential(env, n, parity == Parity::Odd ? 1 : 2);
}

GroupRingElement periodic_boundary(const EnvAlgebras& env, long n, int degree, const GroupRingElement& x) {
  return x * periodic_differential(env, n, degree);
}

GroupRingElement contracting_homotopy(const EnvAlgebras& env, long n, int degree, const GroupRingElement& x) {
  const auto& g = env.base->group;
  if (degree == 0) return env.pair(GroupRingElement::scalar(env.base, 1), x);
  GroupRingElement out(env.env);
  for (const auto& [h, c] : x.terms()) {
    auto [left, right] = env.pair_layout.split(h);
    const long i = static_cast<long>(left[0]);
    const long j = static_cast<long>(right[0]);
    if (degree % 2 == 1) {
      for (long l = 0; l < i; ++l) out.add_term(env.pair_layout.join(g.generator(0, l), g.generator(0, i - l - 1 + j)), -c);
    } else if (i == n - 1) {
      out.add_term(env.pair_layout.join(g.identity(), g.generator(0, j)), c);
    }
  }
  return out;
}

GroupRingElement koszul_z_differential(const EnvAlgebras& env) {
  const auto& g = env.base->group;
  GroupRingElement d(env.env);
  d.add_term(env.pair_layout.join(g.identity(), g.generator(0, 1)), 1);
  d.add_term(env.pair_layout.join(g.generator(0, 1), g.identity()), -1);
  return d;
}

GroupRingElement koszul_z_boundary(const EnvAlgebras& env, const GroupRingElement& x) { return x * koszul_z_differential(env); }

GroupRingElement koszul_z_homotopy(const EnvAlgebras& env, int degree, const GroupRingElement& x) {
  const auto& g = env.base->group;
  if (degree == 0) return env.pair(GroupRingElement::scalar(env.base, 1), x);
  if (degree != 1) throw DomainError("two-term resolution has no homotopy in degree " + std::to_string(degree));
  GroupRingElement out(env.env);
  for (const auto& [h, c] : x.terms()) {
    auto [left, right] = env.pair_layout.split(h);
    const std::int64_t i = left[0], j = right[0];
    if (i >= 1) {
      for (std::int64_t l = 0; l < i; ++l) out.add_term(env.pair_layout.join(g.generator(0, l), g.generator(0, i - l - 1 + j)), -c);
    } else if (i <= -1) {
      for (std::int64_t l = 0; l <= -i - 1; ++l) out.add_term(env.pair_layout.join(g.generator(0, -l - 1), g.generator(0, i + l + j)), c);
    }
  }
  return out;
}

DiagonalComponents koszul_z_diagonal(const EnvAlgebras& env, int degree) {
  const auto& g = env.base->group;
  const GroupRingElement unit = env.pure3(g.identity(), g.identity(), g.identity());
  DiagonalComponents out;
  if (degree == 0) out.emplace(std::make_pair(0, 0), unit);
  if (degree == 1) {
    out.emplace(std::make_pair(1, 0), unit);
    out.emplace(std::make_pair(0, 1), unit);
  }
  return out;
}

SmallResolution SmallResolution::periodic(long n, CoeffRingTag ring, int degree_cap) {
  SmallResolution r;
  r.kind_ = ResolutionKind::Periodic;
  r.env_ = EnvAlgebras::of(make_group_ring(GroupDescriptor::cyclic(n), std::move(ring)));
  r.order_ = n;
  r.cap_ = degree_cap;
  return r;
}

SmallResolution SmallResolution::koszul_z(CoeffRingTag ring) {
  SmallResolution r;
  r.kind_ = ResolutionKind::KoszulZ;
  r.env_ = EnvAlgebras::of(make_group_ring(GroupDescriptor::free(1), std::move(ring)));
  r.cap_ = 1;
  return r;
}

SmallResolution SmallResolution::tensor(std::vector<SmallResolution> factors) {
  if (factors.empty()) throw DomainError("tensor resolution needs at least one factor");
  GroupDescriptor group = factors.front().algebra()->group;
  const CoeffRingTag ring = factors.front().algebra()->ring;
  int cap = 0;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    require_same_ring(ring, factors[i].algebra()->ring);
    group = GroupDescriptor::product(group, factors[i].algebra()->group);
  }
  for (const auto& f : factors) cap += f.top_degree();
  SmallResolution r;
  r.kind_ = ResolutionKind::Tensor;
  r.env_ = EnvAlgebras::of(make_group_ring(group, ring));
  r.cap_ = cap;
  r.factors_ = std::move(factors);
  return r;
}

int SmallResolution::top_degree() const {
  switch (kind_) {
    case ResolutionKind::Periodic: return cap_;
    case ResolutionKind::KoszulZ: return 1;
    case ResolutionKind::Tensor: return cap_;
  }
  return 0;
}

namespace {

void enumerate_multidegrees(const std::vector<SmallResolution>& factors, std::size_t i, int remaining, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
  if (i == factors.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int d = std::min(remaining, factors[i].top_degree()); d >= 0; --d) {
    cur.push_back(d);
    enumerate_multidegrees(factors, i + 1, remaining - d, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> SmallResolution::summands(int degree) const {
  if (degree < 0) return {};
  if (kind_ != ResolutionKind::Tensor) {
    if (degree > top_degree()) return {};
    return {{degree}};
  }
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumerate_multidegrees(factors_, 0, degree, cur, out);
  return out;
}

GroupRingElement SmallResolution::differential(int degree) const {
  if (degree < 1 || degree > top_degree()) return GroupRingElement(env_.env);
  switch (kind_) {
    case ResolutionKind::Periodic: return periodic_differential(env_, order_, degree);
    case ResolutionKind::KoszulZ: return koszul_z_differential(env_);
    case ResolutionKind::Tensor: break;
  }
  throw DomainError("tensor resolutions have one differential per summand; use the factors");
}

TensorEnv TensorEnv::of(const GroupRingPtr& a, const GroupRingPtr& b) {
  require_same_ring(a->ring, b->ring);
  TensorEnv t;
  t.factors = TensorLayout(a->group, b->group);
  t.left = EnvAlgebras::of(a);
  t.right = EnvAlgebras::of(b);
  t.product = EnvAlgebras::of(make_group_ring(t.factors.product(), a->ring));
  t.split_triples = TensorLayout(t.left.triple->group, t.right.triple->group);
  t.split_algebra = make_group_ring(t.split_triples.product(), a->ring);
  return t;
}

GroupRingElement TensorEnv::split_pure(const GroupRingElement& ta, const GroupRingElement& tb) const {
  return tensor_elements(ta, tb, split_triples, split_algebra);
}

GroupRingElement tau_interchange(const TensorEnv& env, int a2_degree, int b1_degree, const GroupRingElement& split) {
  GroupRingElement out(env.product.triple);
  const mpq_class sign = (a2_degree * b1_degree) % 2 == 0 ? 1 : -1;
  for (const auto& [g, c] : split.terms()) {
    auto [ga, gb] = env.split_triples.split(g);
    const auto a = split3(env.left, ga);
    const auto b = split3(env.right, gb);
    const GroupElement joined = env.product.triple_layout.join(
        env.product.pair_layout.join(env.factors.join(a[0], b[0]), env.factors.join(a[1], b[1])), env.factors.join(a[2], b[2]));
    out.add_term(joined, sign * c);
  }
  return out;
}

GroupRingElement tau_inverse(const TensorEnv& env, int a2_degree, int b1_degree, const GroupRingElement& joined) {
  GroupRingElement out(env.split_algebra);
  const mpq_class sign = (a2_degree * b1_degree) % 2 == 0 ? 1 : -1;
  for (const auto& [g, c] : joined.terms()) {
    const auto x = split3(env.product, g);
    auto [a1, b1] = env.factors.split(x[0]);
    auto [a2, b2] = env.factors.split(x[1]);
    auto [a3, b3] = env.factors.split(x[2]);
    const GroupElement ga = env.left.triple_layout.join(env.left.pair_layout.join(a1, a2), a3);
    const GroupElement gb = env.right.triple_layout.join(env.right.pair_layout.join(b1, b2), b3);
    out.add_term(env.split_triples.join(ga, gb), sign * c);
  }
  return out;
}

TensorDiagonal tensor_diagonal(const TensorEnv& env, const DiagonalComponents& delta_a, const DiagonalComponents& delta_b) {
  TensorDiagonal out;
  for (const auto& [pa, ta] : delta_a)
    for (const auto& [pb, tb] : delta_b) {
      GroupRingElement v = tau_interchange(env, pa.second, pb.first, env.split_pure(ta, tb));
      if (v.is_zero()) continue;
      auto key = std::make_pair(std::make_pair(pa.first, pb.first), std::make_pair(pa.second, pb.second));
      auto [it, inserted] = out.emplace(key, v);
      if (!inserted) it->second += v;
    }
  return out;
}

}  // namespace hhbv
