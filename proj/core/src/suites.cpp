#include "hhbv/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

#include "hhbv/bar_complex.hpp"
#include "hhbv/bv_engine.hpp"
#include "hhbv/chain_complex.hpp"
#include "hhbv/comparison.hpp"
#include "hhbv/errors.hpp"
#include "hhbv/presentations.hpp"
#include "hhbv/small_resolutions.hpp"

namespace hhbv {

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

namespace {

using Failure = std::optional<std::string>;

struct Case {
  std::string label;
  std::function<Failure()> run;
};

struct Plan {
  std::vector<Case> cases;
  std::vector<std::string> notes;
  std::optional<std::string> skip_reason;
  std::function<void(SuiteReport&)> finish;
};

constexpr std::size_t kFailureSamples = 5;

CoeffRingTag field(std::int64_t p) { return CoeffRingTag::integers_mod(p); }

bool is_cyclic_group(const GroupDescriptor& g) { return g.free_rank() == 0 && g.torsion_orders().size() == 1; }

Failure expect(bool ok, const std::function<std::string()>& message) {
  if (ok) return std::nullopt;
  return message();
}

// value of a cyclic presentation class on the 2-periodic resolution
GroupRingElement small_value(const GradedPresentation& p, const Polynomial& value, const GroupRingPtr& algebra) {
  GroupRingElement out(algebra);
  for (const auto& [e, c] : p.normalize(value)) out += GroupRingElement::power_of(algebra, 0, e[0], c);
  return out;
}

TensorCochain single_factor(const GroupRingPtr& algebra, int degree, const GroupRingElement& value) {
  TensorCochain out(algebra, degree);
  if (degree >= 0) out.add({degree}, value);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> char_p_grid(const SuiteOptions& o) {
  std::vector<std::pair<std::int64_t, std::int64_t>> grid{{2, 2}, {2, 4}, {2, 6}, {3, 3}, {3, 6}, {5, 5}};
  if (!o.group && !o.ring) return grid;
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (o.group && !is_cyclic_group(*o.group)) return out;
  if (o.group && o.ring) {
    const std::int64_t n = o.group->torsion_orders()[0];
    if (o.ring->is_modular() && o.ring->is_field() && n % o.ring->modulus().get_si() == 0)
      out.emplace_back(o.ring->modulus().get_si(), n);
    return out;
  }
  for (auto [p, n] : grid)
    if ((o.group && o.group->torsion_orders()[0] == n) ||
        (o.ring && o.ring->is_modular() && o.ring->modulus() == p))
      out.emplace_back(p, n);
  return out;
}

std::string grid_note(const std::vector<std::pair<std::int64_t, std::int64_t>>& grid, const char* a, const char* b) {
  std::string s = std::string("grid (") + a + "," + b + ") in {";
  for (std::size_t i = 0; i < grid.size(); ++i)
    s += (i ? ", " : "") + std::string("(") + std::to_string(grid[i].first) + "," + std::to_string(grid[i].second) + ")";
  return s + "}";
}

std::vector<Polynomial> generators_with_inverses(const GradedPresentation& p) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Exponents e(p.size(), 0);
    e[i] = 1;
    out.push_back(p.monomial(e));
    if (p.generators[i].kind == GeneratorKind::Unit) {
      e[i] = -1;
      out.push_back(p.monomial(e));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------------------------------

Plan cyclic_module(const SuiteOptions& o) {
  Plan plan;
  std::vector<std::int64_t> orders{2, 3, 4, 5, 6, 7, 8};
  if (o.group) {
    if (!is_cyclic_group(*o.group)) return {{}, {}, "needs a finite cyclic group", {}};
    orders = {o.group->torsion_orders()[0]};
  }
  const CoeffRingTag ring = o.ring.value_or(CoeffRingTag::integers());
  const int bound = o.degree_bound;
  plan.notes.push_back("n in " + std::to_string(orders.front()) + ".." + std::to_string(orders.back()) + " over " +
                       ring.to_string() + ", degrees 0.." + std::to_string(bound));
  for (auto n : orders)
    plan.cases.push_back({"Z/" + std::to_string(n), [=]() -> Failure {
                            const FreeComplex c = periodic_cochain_complex(n, bound + 1, ring);
                            std::optional<GradedPresentation> pres;
                            if (ring.kind() != RingKind::Integers) pres = present_cyclic(ring, n);
                            for (int i = 0; i <= bound; ++i) {
                              ModuleShape expected;
                              if (pres) {
                                expected = presentation_shape(*pres, i);
                              } else if (i == 0) {
                                expected.free_rank = static_cast<std::size_t>(n);
                              } else if (i % 2 == 0) {
                                expected.torsion.assign(static_cast<std::size_t>(n), mpz_class(static_cast<long>(n)));
                              }
                              const ModuleShape got = shape_of(homology_at(c, i));
                              if (!(got == expected))
                                return "HH^" + std::to_string(i) + " = " + got.to_string() + ", expected " + expected.to_string();
                            }
                            return std::nullopt;
                          }});
  return plan;
}

Plan char_p_ring(const SuiteOptions& o) {
  Plan plan;
  const auto grid = char_p_grid(o);
  if (grid.empty()) return {{}, {}, "no (p, n) with p | n in the selection", {}};
  plan.notes.push_back(grid_note(grid, "p", "n"));
  plan.notes.push_back("products evaluated as psi*(phi* a cup phi* b) on dense normalized bar tables, cross-checked lazily");
  for (auto [p, n] : grid) {
    auto pres = std::make_shared<const GradedPresentation>(present_cyclic(field(p), n));
    auto model = std::make_shared<const CyclicBvModel>(make_group_ring(GroupDescriptor::cyclic(n), field(p)));
    std::vector<Polynomial> left;
    for (const char* g : {"x", "y", "z", "y*x", "z*x"}) left.push_back(pres->parse(g));
    std::vector<Polynomial> right;
    for (int d = 0; d <= std::min(3, o.degree_bound); ++d)
      for (const auto& e : pres->normal_monomials(d)) right.push_back(pres->monomial(e));
    for (const auto& a : left)
      for (const auto& b : right) {
        if (pres->degree(a) + pres->degree(b) > o.degree_bound) continue;
        plan.cases.push_back(
            {"F_" + std::to_string(p) + "[Z/" + std::to_string(n) + "] " + pres->to_string(a) + " * " + pres->to_string(b),
             [pres, model, a, b]() -> Failure {
               const auto& alg = model->algebra();
               const auto& cmp = model->comparison();
               const int da = pres->degree(a), db = pres->degree(b);
               const GroupRingElement va = small_value(*pres, a, alg), vb = small_value(*pres, b, alg);
               const BarCochainTable product_table = cup_bar(BarCochainTable::tabulate(cmp.phi_cochain(da, va)),
                                                             BarCochainTable::tabulate(cmp.phi_cochain(db, vb)));
               const GroupRingElement got = cmp.psi_cochain(product_table.as_cochain());
               const Polynomial product = pres->multiply(a, b);
               const GroupRingElement expected = small_value(*pres, product, alg);
               if (got != expected) return "bar table cup gives " + got.to_string() + ", ring gives " + pres->to_string(product);
               const GroupRingElement lazy = model->bar_cup(da, va, db, vb);
               return expect(lazy == got, [&] { return "lazy bar cup gives " + lazy.to_string(); });
             }});
      }
  }
  return plan;
}

Plan integral_bv(const SuiteOptions& o) {
  Plan plan;
  std::vector<std::int64_t> orders{2, 3, 4, 5, 6};
  std::vector<CoeffRingTag> rings{CoeffRingTag::integers(), CoeffRingTag::rationals()};
  if (o.group) {
    if (!is_cyclic_group(*o.group)) return {{}, {}, "needs a finite cyclic group", {}};
    orders = {o.group->torsion_orders()[0]};
  }
  if (o.ring) {
    if (!o.ring->is_integral_domain()) return {{}, {}, "needs an integral domain", {}};
    rings = {*o.ring};
  }
  plan.notes.push_back("classes z^k x^l with 2k <= " + std::to_string(o.degree_bound));
  for (const auto& ring : rings)
    for (auto n : orders) {
      if (ring.is_modular() && n % ring.modulus().get_si() == 0) continue;
      auto model = std::make_shared<const TensorBvModel>(GroupDescriptor::cyclic(n), ring);
      for (int k = 0; 2 * k <= o.degree_bound; ++k)
        for (std::int64_t l = 0; l < n; ++l)
          plan.cases.push_back({ring.to_string() + "[Z/" + std::to_string(n) + "] z^" + std::to_string(k) + " x^" + std::to_string(l),
                                [model, k, l]() -> Failure {
                                  const auto f = single_factor(model->algebra(), 2 * k,
                                                               GroupRingElement::power_of(model->algebra(), 0, l));
                                  const auto d = model->delta(f);
                                  return expect(model->is_coboundary(d), [&] { return "Delta = " + d.to_string(); });
                                }});
    }
  return plan;
}

Plan char_p_bv(const SuiteOptions& o) {
  Plan plan;
  const auto grid = char_p_grid(o);
  if (grid.empty()) return {{}, {}, "no (p, n) with p | n in the selection", {}};
  plan.notes.push_back(grid_note(grid, "p", "n") + ", k <= 2, l < n");
  for (auto [p, n] : grid) {
    auto pres = std::make_shared<const GradedPresentation>(present_cyclic(field(p), n));
    auto model = std::make_shared<const TensorBvModel>(GroupDescriptor::cyclic(n), field(p));
    for (std::int64_t k = 0; k <= 2; ++k)
      for (std::int64_t y = 0; y <= 1; ++y)
        for (std::int64_t l = 0; l < n; ++l) {
          const Exponents e{l, y, k};
          if (2 * k + y > o.degree_bound) continue;
          plan.cases.push_back({"F_" + std::to_string(p) + "[Z/" + std::to_string(n) + "] " + pres->monomial_to_string(e),
                                [pres, model, e]() -> Failure {
                                  const Polynomial m = pres->monomial(e);
                                  // Δ(z^k y x^l) = (l-1) z^k x^{l-1}, Δ(z^k x^l) = 0
                                  Polynomial expected;
                                  if (e[1] == 1)
                                    expected = pres->monomial({e[0] - 1, 0, e[2]}, static_cast<long>(e[0] - 1));
                                  if (pres->delta(m) != expected) return "closed form disagrees with the theorem";
                                  const auto got = model->delta(encode_class(*model, *pres, m));
                                  return expect(model->same_class(got, encode_class(*model, *pres, expected)), [&] {
                                    return "engine Delta = " + got.to_string() + ", expected " + pres->to_string(expected);
                                  });
                                }});
        }
  }
  return plan;
}

Plan brackets(const SuiteOptions& o) {
  Plan plan;
  const auto grid = char_p_grid(o);
  if (grid.empty()) return {{}, {}, "no (p, n) with p | n in the selection", {}};
  plan.notes.push_back(grid_note(grid, "p", "n") + ", generator pairs of {x, y, z}");
  struct Counters {
    std::atomic<std::size_t> pairs{0}, adb_table{0}, circle_adb{0}, circle_minus_adb{0};
  };
  auto counters = std::make_shared<Counters>();
  for (auto [p, n] : grid) {
    auto pres = std::make_shared<const GradedPresentation>(present_cyclic(field(p), n));
    auto tensor = std::make_shared<const TensorBvModel>(GroupDescriptor::cyclic(n), field(p));
    auto cyclic = std::make_shared<const CyclicBvModel>(tensor->algebra());
    for (const char* a : {"x", "y", "z"})
      for (const char* b : {"x", "y", "z"})
        plan.cases.push_back(
            {"F_" + std::to_string(p) + "[Z/" + std::to_string(n) + "] {" + a + "," + b + "}",
             [=, as = std::string(a), bs = std::string(b)]() -> Failure {
               const Polynomial pa = pres->parse(as), pb = pres->parse(bs);
               const int da = pres->degree(pa), db = pres->degree(pb), d = da + db - 1;
               const auto& alg = tensor->algebra();
               const TensorCochain adb = tensor->bracket_from_delta(encode_class(*tensor, *pres, pa), encode_class(*tensor, *pres, pb));
               const TensorCochain table = encode_class(*tensor, *pres, *pres->bracket_table(pa, pb));
               const TensorCochain circle =
                   d < 0 ? TensorCochain(alg, 0)
                         : single_factor(alg, d, cyclic->circle_bracket(da, small_value(*pres, pa, alg), db, small_value(*pres, pb, alg)));
               const bool t_ok = tensor->same_class(adb, table);
               const bool c_ok = tensor->same_class(circle, adb);
               const bool c_minus = tensor->is_coboundary(circle + adb);
               ++counters->pairs;
               if (t_ok) ++counters->adb_table;
               if (c_ok) ++counters->circle_adb;
               if (c_minus) ++counters->circle_minus_adb;
               if (t_ok && c_ok) return std::nullopt;
               return "circle " + circle.to_string() + ", aDb " + adb.to_string() + ", table " + table.to_string();
             }});
  }
  plan.finish = [counters](SuiteReport& r) {
    const auto n = counters->pairs.load();
    r.notes.push_back("aDb = table on " + std::to_string(counters->adb_table.load()) + "/" + std::to_string(n) + " pairs");
    r.notes.push_back("circle = aDb on " + std::to_string(counters->circle_adb.load()) + "/" + std::to_string(n) + " pairs");
    r.notes.push_back("circle = -aDb on " + std::to_string(counters->circle_minus_adb.load()) + "/" + std::to_string(n) +
                      " pairs (global sign between the two bracket definitions)");
  };
  return plan;
}

Plan tensor_integral(const SuiteOptions& o) {
  Plan plan;
  std::vector<std::pair<std::int64_t, std::int64_t>> grid{{2, 2}, {4, 2}, {6, 3}, {6, 2}};
  if (o.ring && o.ring->kind() != RingKind::Integers) return {{}, {}, "integral pair only", {}};
  if (o.group) {
    const auto& t = o.group->torsion_orders();
    if (o.group->free_rank() != 0 || t.size() != 2 || t[0] % t[1] != 0) return {{}, {}, "needs Z/n x Z/m with m | n", {}};
    grid = {{t[0], t[1]}};
  }
  plan.notes.push_back(grid_note(grid, "n", "m") + ", degrees <= " + std::to_string(o.degree_bound) +
                       ", 50 random normal monomials each (seed " + std::to_string(o.seed) + ")");
  const int bound = o.degree_bound;
  for (auto [n, m] : grid) {
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ") ";
    auto pres = std::make_shared<const GradedPresentation>(present_tensor_Z(n, m));
    auto model = std::make_shared<const TensorBvModel>(*pres->group, pres->ring);
    const std::int64_t k = n / m;

    plan.cases.push_back({tag + "Kunneth", [=]() -> Failure {
                            const FreeComplex total =
                                tensor_total_complex(periodic_cochain_complex(n, bound + 2), periodic_cochain_complex(m, bound + 2));
                            for (int d = 0; d <= bound; ++d) {
                              const ModuleShape expected = kunneth_shape(n, m, d);
                              const ModuleShape got = shape_of(homology_at(total, d));
                              if (!(got == expected))
                                return "HH^" + std::to_string(d) + " = " + got.to_string() + ", expected " + expected.to_string();
                              if (!(presentation_shape(*pres, d) == expected))
                                return "presentation module in degree " + std::to_string(d) + " is " +
                                       presentation_shape(*pres, d).to_string();
                            }
                            return std::nullopt;
                          }});

    plan.cases.push_back({tag + "c^2", [=]() -> Failure {
                            const bool exceptional = m % 2 == 0 && k % 2 == 1;
                            const Polynomial branch =
                                exceptional ? pres->parse(std::to_string(m / 2) + "*x^" + std::to_string(n - 2) + "*a*b^2 + " +
                                                          std::to_string(m / 2 * k) + "*x^" + std::to_string(n - 2) + "*a^2*b")
                                            : Polynomial{};
                            const Polynomial c = pres->generator("c");
                            if (pres->multiply(c, c) != branch) return "presentation c^2 = " + pres->to_string(pres->multiply(c, c));
                            const TensorCochain cc = encode_class(*model, *pres, c);
                            const TensorCochain square = model->cup(cc, cc);
                            const TensorCochain expected = encode_class(*model, *pres, branch);
                            if (!model->same_class(square, expected)) return "engine c^2 = " + square.to_string();
                            // the two branches really differ
                            if (exceptional && model->is_coboundary(expected)) return "exceptional branch value is a coboundary";
                            return std::nullopt;
                          }});

    const std::string top = std::to_string(n - 1), ks = std::to_string(k);
    const std::vector<std::pair<std::string, std::string>> boxed{
        {"c", "-x^" + top + "*b"},
        {"x*c", "0"},
        {"t*c", "-x^" + top + "*t*b - " + ks + "*x^" + top + "*t*a"},
        {"a*c", "-x^" + top + "*a*b"},
        {"b*c", "-x^" + top + "*b^2"},
    };
    for (const auto& [input, value] : boxed)
      plan.cases.push_back({tag + "Delta(" + input + ")", [=]() -> Failure {
                              const Polynomial m_in = pres->parse(input);
                              const Polynomial expected = value == "0" ? Polynomial{} : pres->parse(value);
                              if (pres->delta(m_in) != expected) return "closed form gives " + pres->to_string(pres->delta(m_in));
                              const auto got = model->delta(encode_class(*model, *pres, m_in));
                              return expect(model->same_class(got, encode_class(*model, *pres, expected)),
                                            [&] { return "engine gives " + got.to_string() + ", boxed " + value; });
                            }});

    std::vector<Exponents> pool;
    for (int d = 0; d <= bound; ++d)
      for (auto& e : pres->normal_monomials(d)) pool.push_back(std::move(e));
    std::mt19937_64 rng(o.seed + static_cast<std::uint64_t>(n * 131 + m));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      const Exponents e = pool[pick(rng)];
      plan.cases.push_back({tag + "random " + pres->monomial_to_string(e), [=]() -> Failure {
                              const Polynomial mono = pres->monomial(e);
                              const Polynomial closed = pres->delta(mono);
                              const auto got = model->delta(encode_class(*model, *pres, mono));
                              return expect(model->same_class(got, encode_class(*model, *pres, closed)), [&] {
                                return "engine " + got.to_string() + ", closed form " + pres->to_string(closed);
                              });
                            }});
    }
  }
  return plan;
}

Plan tensor_connes_suite(const SuiteOptions& o) {
  Plan plan;
  std::int64_t n1 = 2, n2 = 3;
  if (o.group) {
    const auto& t = o.group->torsion_orders();
    if (o.group->free_rank() != 0 || t.size() != 2) return {{}, {}, "needs two finite cyclic factors", {}};
    n1 = t[0];
    n2 = t[1];
  }
  const CoeffRingTag ring = o.ring.value_or(CoeffRingTag::integers());
  auto a = make_group_ring(GroupDescriptor::cyclic(n1), ring);
  auto b = make_group_ring(GroupDescriptor::cyclic(n2), ring);
  auto unsigned_mismatch = std::make_shared<std::atomic<std::size_t>>(0);
  auto total_checked = std::make_shared<std::atomic<std::size_t>>(0);
  plan.notes.push_back("Z/" + std::to_string(n1) + " (x) Z/" + std::to_string(n2) + ", every basis chain of total degree <= 3");
  for (int total = 0; total <= 3; ++total)
    for (auto& x : pair_basis(a, b, total))
      plan.cases.push_back({x.to_string(), [a, b, x, unsigned_mismatch, total_checked]() -> Failure {
                              const BarChain ez = ez_map(x);
                              if (!(aw_map(ez, a, b) == x)) return "AW(EZ(x)) != x";
                              const BarChainPair lhs = aw_map(connes_B(ez), a, b);
                              ++*total_checked;
                              if (!(lhs == tensor_connes(x, TensorSign::Unsigned))) ++*unsigned_mismatch;
                              return expect(lhs == tensor_connes(x, TensorSign::Koszul), [&] {
                                return "AW B EZ = " + lhs.to_string() + ", signed sum = " + tensor_connes(x, TensorSign::Koszul).to_string();
                              });
                            }});
  plan.finish = [unsigned_mismatch, total_checked](SuiteReport& r) {
    r.notes.push_back("identity checked with the Koszul sign (-1)^{A-degree} on the second term");
    r.notes.push_back("unsigned form B(x)id + id(x)B fails on " + std::to_string(unsigned_mismatch->load()) + "/" +
                      std::to_string(total_checked->load()) + " inputs (odd A-degree)");
  };
  return plan;
}

Plan bvkz(const SuiteOptions& o) {
  Plan plan;
  if (o.group && !(*o.group == GroupDescriptor::free(1))) return {{}, {}, "needs the group Z", {}};
  const CoeffRingTag ring = o.ring.value_or(CoeffRingTag::integers());
  auto alg = make_group_ring(GroupDescriptor::free(1), ring);
  plan.notes.push_back("grid u in {1,-1}, k in [-2,2], i in [-3,3] over " + ring.to_string());
  for (long u : {1L, -1L})
    for (long k = -2; k <= 2; ++k) {
      auto model = std::make_shared<const LaurentBvModel>(alg, GroupRingElement::power_of(alg, 0, k, u));
      for (long i = -3; i <= 3; ++i)
        plan.cases.push_back({"u=" + std::to_string(u) + " k=" + std::to_string(k) + " i=" + std::to_string(i),
                              [alg, model, k, i]() -> Failure {
                                const auto power = [&](long e, long c = 1) { return GroupRingElement::power_of(alg, 0, e, c); };
                                const GroupRingElement odd = model->delta(1, power(i));
                                if (odd != power(i - 1, i + k)) return "Delta(y x^i) = " + odd.to_string();
                                const GroupRingElement even = model->delta(0, power(i));
                                return expect(even.is_zero(), [&] { return "Delta(x^i) = " + even.to_string(); });
                              }});
    }
  return plan;
}

Plan free_and_mixed(const SuiteOptions& o) {
  Plan plan;
  int rank = 2;
  CoeffRingTag free_ring = CoeffRingTag::integers();
  GroupDescriptor mixed(1, {2});
  CoeffRingTag mixed_ring = field(2);
  bool run_free = true, run_mixed = true;
  if (o.group) {
    if (o.group->torsion_orders().empty() && o.group->free_rank() > 0) {
      rank = o.group->free_rank();
      run_mixed = false;
      if (o.ring) free_ring = *o.ring;
    } else if (o.group->free_rank() > 0) {
      mixed = *o.group;
      if (o.ring) mixed_ring = *o.ring;
      run_free = false;
    } else {
      return {{}, {}, "needs a group with a free part", {}};
    }
  }
  if (run_free) {
    auto pres = std::make_shared<const GradedPresentation>(present_free_abelian(rank, free_ring));
    auto model = std::make_shared<const TensorBvModel>(GroupDescriptor::free(rank), free_ring);
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::int64_t> exponent(-3, 3), bit(0, 1);
    plan.notes.push_back("Z^" + std::to_string(rank) + " over " + free_ring.to_string() + ": 30 random monomials (seed " +
                         std::to_string(o.seed) + ")");
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::int64_t> is(rank), rs(rank);
      for (int j = 0; j < rank; ++j) {
        is[j] = exponent(rng);
        rs[j] = bit(rng);
      }
      Exponents e;
      for (int j = 0; j < rank; ++j) {
        e.push_back(is[j]);
        e.push_back(rs[j]);
      }
      plan.cases.push_back({"Z^" + std::to_string(rank) + " " + pres->monomial_to_string(e), [=]() -> Failure {
                              // Δ = Σ_k (-1)^{r_1+…+r_{k-1}} r_k (i_k - 1) x^{I - e_k} y^{R - e_k}
                              Polynomial expected;
                              std::int64_t before = 0;
                              for (int j = 0; j < rank; ++j) {
                                if (rs[j] == 1) {
                                  Exponents f = e;
                                  f[2 * j] -= 1;
                                  f[2 * j + 1] = 0;
                                  const long c = (before % 2 ? -1 : 1) * static_cast<long>(is[j] - 1);
                                  expected = pres->add(expected, pres->monomial(f, c));
                                }
                                before += rs[j];
                              }
                              if (pres->delta(pres->monomial(e)) != expected) return "tensor closed form disagrees with the formula";
                              const auto got = model->delta(encode_class(*model, *pres, pres->monomial(e)));
                              return expect(model->same_class(got, encode_class(*model, *pres, expected)), [&] {
                                return "engine " + got.to_string() + ", formula " + pres->to_string(expected);
                              });
                            }});
    }
  }
  if (run_mixed) {
    auto pres = std::make_shared<const GradedPresentation>(present_fg_abelian(mixed, mixed_ring));
    auto model = std::make_shared<const TensorBvModel>(mixed, mixed_ring);
    const int top = std::min(3, o.degree_bound);
    plan.notes.push_back(mixed.to_string() + " over " + mixed_ring.to_string() + ": every normal monomial of degree <= " +
                         std::to_string(top) + " against the signed tensor Delta");
    if (mixed_ring.characteristic() == 2) plan.notes.push_back("characteristic 2: the Koszul sign itself is not exercised here");
    for (int d = 0; d <= top; ++d)
      for (const auto& e : pres->normal_monomials(d))
        plan.cases.push_back({mixed.to_string() + " " + pres->monomial_to_string(e), [=]() -> Failure {
                                const Polynomial mono = pres->monomial(e);
                                const auto got = model->delta(encode_class(*model, *pres, mono));
                                return expect(model->same_class(got, encode_class(*model, *pres, pres->delta(mono))), [&] {
                                  return "engine " + got.to_string() + ", closed form " + pres->to_string(pres->delta(mono));
                                });
                              }});
  }
  return plan;
}

Plan isomorphisms(const SuiteOptions& o) {
  Plan plan;
  auto report = [](const IsoReport& r) -> Failure {
    if (r.holds) return std::nullopt;
    return r.failures.empty() ? std::string("failed") : r.failures.front();
  };
  for (std::int64_t p : {2, 3, 5})
    plan.cases.push_back({"truncated polynomial p=" + std::to_string(p),
                          [=] { return report(truncated_poly_iso(p, o.degree_bound).report); }});
  const CoeffRingTag ring = o.ring.value_or(CoeffRingTag::integers());
  plan.cases.push_back({"loop space over " + ring.to_string(), [=] { return report(loop_space_iso(ring).report); }});
  plan.notes.push_back("truncated polynomial p in {2,3,5} to degree " + std::to_string(o.degree_bound) +
                       ", with the binomial identity; loop space grid r in {0,1}, |i| <= 4");
  return plan;
}

Plan properties(const SuiteOptions& o) {
  Plan plan;
  const int bound = o.degree_bound;
  for (long n = 2; n <= 6; ++n)
    plan.cases.push_back({"d^2 = 0 periodic Z/" + std::to_string(n), [=]() -> Failure {
                            const EnvAlgebras env = EnvAlgebras::of(make_group_ring(GroupDescriptor::cyclic(n), {}));
                            for (int d = 1; d < bound + 1; ++d) {
                              const GroupRingElement sq = periodic_differential(env, n, d) * periodic_differential(env, n, d + 1);
                              if (!sq.is_zero()) return "d_" + std::to_string(d) + " d_" + std::to_string(d + 1) + " != 0";
                            }
                            return std::nullopt;
                          }});
  for (long n : {2L, 3L}) {
    auto a = make_group_ring(GroupDescriptor::cyclic(n), {});
    for (int d = 0; d <= 4; ++d)
      plan.cases.push_back({"b^2 = B^2 = bB + Bb = 0 on Z/" + std::to_string(n) + " degree " + std::to_string(d), [=]() -> Failure {
                              for (const auto& t : normalized_tuples(a->group, d))
                                for (const auto& g : a->group.elements()) {
                                  BarChain c(a, d);
                                  c.add(t, g, 1);
                                  if (d >= 2 && !hochschild_boundary(hochschild_boundary(c)).is_zero()) return "b^2 != 0 on " + c.to_string();
                                  if (!connes_B(connes_B(c)).is_zero()) return "B^2 != 0 on " + c.to_string();
                                  const BarChain mixed = d >= 1 ? hochschild_boundary(connes_B(c)) + connes_B(hochschild_boundary(c))
                                                                : hochschild_boundary(connes_B(c));
                                  if (!mixed.is_zero()) return "bB + Bb != 0 on " + c.to_string();
                                }
                              return std::nullopt;
                            }});
    for (int d = 2; d <= 4; ++d)
      plan.cases.push_back({"Delta^2 = 0 dual basis Z/" + std::to_string(n) + " degree " + std::to_string(d), [=]() -> Failure {
                              for (const auto& t : normalized_tuples(a->group, d))
                                for (const auto& g : a->group.elements()) {
                                  const Tuple key = t;
                                  const BarCochain f(a, d, [a, key, g](TupleView v) {
                                    if (Tuple(v.begin(), v.end()) == key) return GroupRingElement::monomial(a, g);
                                    return GroupRingElement(a);
                                  });
                                  const BarCochain dd = delta_dual_basis(delta_dual_basis(f));
                                  for (const auto& s : normalized_tuples(a->group, d - 2))
                                    if (!dd(s).is_zero()) return "Delta^2 f != 0 at degree " + std::to_string(d);
                                }
                              return std::nullopt;
                            }});
  }
  for (const auto& ring : {CoeffRingTag::integers(), field(5)})
    for (long n = 2; n <= 6; ++n)
      plan.cases.push_back({"psi* phi* = id " + ring.to_string() + "[Z/" + std::to_string(n) + "]", [=]() -> Failure {
                              const CyclicComparison cmp(make_group_ring(GroupDescriptor::cyclic(n), ring));
                              const int top = n <= 4 ? bound : std::min(bound, 4);
                              for (int r = 0; r <= top; ++r)
                                for (long j = 0; j < n; ++j) {
                                  const auto a = GroupRingElement::power_of(cmp.algebra(), 0, j, j + 1);
                                  if (cmp.psi_cochain(cmp.phi_cochain(r, a)) != a)
                                    return "degree " + std::to_string(r) + " on " + a.to_string();
                                }
                              return std::nullopt;
                            }});

  // class-level identities on the engine, over presentations of each family
  const std::vector<std::pair<GroupDescriptor, CoeffRingTag>> families{
      {GroupDescriptor::cyclic(3), field(3)},        {GroupDescriptor::cyclic(2), field(2)},
      {GroupDescriptor::cyclic(6), field(2)},        {GroupDescriptor(0, {2, 2}), CoeffRingTag::integers()},
      {GroupDescriptor(0, {4, 2}), CoeffRingTag::integers()}, {GroupDescriptor::free(2), CoeffRingTag::integers()},
      {GroupDescriptor(1, {2}), field(2)},           {GroupDescriptor(1, {3}), field(3)},
  };
  for (const auto& [group, ring] : families) {
    auto pres = std::make_shared<const GradedPresentation>(present_fg_abelian(group, ring));
    auto model = std::make_shared<const TensorBvModel>(group, ring);
    const std::string tag = ring.to_string() + "[" + group.to_string() + "] ";
    plan.cases.push_back({tag + "Delta^2 = 0 on classes", [=]() -> Failure {
                            for (int d = 0; d <= std::min(bound, 5); ++d)
                              for (const auto& e : pres->normal_monomials(d, 1)) {
                                const auto f = encode_class(*model, *pres, pres->monomial(e));
                                if (!model->is_coboundary(model->delta(model->delta(f))))
                                  return "Delta^2 != 0 on " + pres->monomial_to_string(e);
                              }
                            return std::nullopt;
                          }});
    const auto gens = generators_with_inverses(*pres);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const Polynomial a = gens[i], b = gens[j], c = gens[k];
          plan.cases.push_back({tag + "seven-term " + pres->to_string(a) + ", " + pres->to_string(b) + ", " + pres->to_string(c),
                                [=]() -> Failure {
                                  const auto r = seven_term_check(*model, encode_class(*model, *pres, a), encode_class(*model, *pres, b),
                                                                  encode_class(*model, *pres, c));
                                  return expect(r.holds, [&] { return "residual " + r.residual.to_string(); });
                                }});
        }
  }
  plan.notes.push_back("seven-term identity on every ordered triple of generators (and Laurent inverses) in 8 families");
  return plan;
}

struct Entry {
  SuiteInfo info;
  double time_limit;  // seconds, 0 = none
  Plan (*build)(const SuiteOptions&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {{1, "cyclic-module", "cyclic module structure over Z"}, 5, cyclic_module},
      {{2, "charp-ring", "char-p ring structure via bar cup"}, 30, char_p_ring},
      {{3, "integral-bv", "Delta vanishes over integral domains"}, 0, integral_bv},
      {{4, "charp-bv", "char-p Delta closed form"}, 0, char_p_bv},
      {{5, "brackets", "circle = aDb = closed-form tables"}, 0, brackets},
      {{6, "tensor-z", "Z/n x Z/m over Z"}, 180, tensor_integral},
      {{7, "tensor-connes", "AW EZ = id and AW B EZ"}, 0, tensor_connes_suite},
      {{8, "bvkz", "R[Z] transferred Delta"}, 0, bvkz},
      {{9, "free-abelian", "Z^n and mixed groups"}, 0, free_and_mixed},
      {{10, "isomorphisms", "comparison isomorphisms"}, 0, isomorphisms},
      {{11, "properties", "property suites"}, 600, properties},
  };
  return table;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  const auto& table = entries();
  auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.info.name == name; });
  if (it == table.end()) throw DomainError("unknown suite '" + std::string(name) + "'");

  SuiteReport report;
  report.criterion = it->info.criterion;
  report.name = it->info.name;
  report.title = it->info.title;
  const auto start = std::chrono::steady_clock::now();
  Plan plan = it->build(options);
  report.notes = plan.notes;
  if (plan.skip_reason) {
    report.skipped = true;
    report.notes.push_back("skipped: " + *plan.skip_reason);
    return report;
  }
  std::vector<Failure> outcomes(plan.cases.size());
  parallel_for(plan.cases.size(), options.jobs, [&](std::size_t i) {
    try {
      outcomes[i] = plan.cases[i].run();
    } catch (const std::exception& e) {
      outcomes[i] = std::string("exception: ") + e.what();
    }
  });
  report.cases = plan.cases.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i]) continue;
    ++report.failures;
    if (report.failure_samples.size() < kFailureSamples) report.failure_samples.push_back(plan.cases[i].label + ": " + *outcomes[i]);
  }
  if (plan.finish) plan.finish(report);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.passed = report.failures == 0;
  if (it->time_limit > 0 && report.seconds > it->time_limit) {
    report.passed = false;
    report.notes.push_back("runtime " + std::to_string(report.seconds) + " s exceeds " + std::to_string(it->time_limit) + " s");
  }
  return report;
}

}  // namespace hhbv
