#pragma once

namespace hhbv {

template <class DifferentialFn>
std::map<std::pair<int, int>, GroupRingElement> triple_boundary(const EnvAlgebras& env, int p, int q, const GroupRingElement& t,
                                                                DifferentialFn differential) {
  std::map<std::pair<int, int>, GroupRingElement> out;
  const auto& group = env.base->group;
  const auto split3 = [&](const GroupElement& g) {
    auto [ab, c] = env.triple_layout.split(g);
    auto [a, b] = env.pair_layout.split(ab);
    return std::array<GroupElement, 3>{a, b, c};
  };
  // left factor: (x1⊗x2)·d_p(1⊗1), right factor: (x2⊗x3)·d_q(1⊗1)
  if (p >= 1) {
    const GroupRingElement d = differential(p);
    GroupRingElement acc(env.triple);
    for (const auto& [g, c] : t.terms()) {
      const auto x = split3(g);
      for (const auto& [h, e] : d.terms()) {
        auto [u, v] = env.pair_layout.split(h);
        acc.add_term(env.triple_layout.join(env.pair_layout.join(group.multiply(x[0], u), group.multiply(x[1], v)), x[2]), c * e);
      }
    }
    if (!acc.is_zero()) out.emplace(std::make_pair(p - 1, q), std::move(acc));
  }
  if (q >= 1) {
    const GroupRingElement d = differential(q);
    GroupRingElement acc(env.triple);
    const mpq_class sign = p % 2 == 0 ? 1 : -1;
    for (const auto& [g, c] : t.terms()) {
      const auto x = split3(g);
      for (const auto& [h, e] : d.terms()) {
        auto [u, v] = env.pair_layout.split(h);
        acc.add_term(env.triple_layout.join(env.pair_layout.join(x[0], group.multiply(x[1], u)), group.multiply(x[2], v)), sign * c * e);
      }
    }
    if (!acc.is_zero()) {
      auto [it, inserted] = out.emplace(std::make_pair(p, q - 1), acc);
      if (!inserted) it->second += acc;
    }
  }
  return out;
}

}  // namespace hhbv
