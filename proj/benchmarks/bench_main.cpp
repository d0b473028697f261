#include <benchmark/benchmark.h>

#include "hhbv/chain_complex.hpp"
#include "hhbv/presentations.hpp"

namespace {

using namespace hhbv;

// Dense bar-table cup product in F_p[Z/n], transferred back along psi.
void BM_BarTableCup(benchmark::State& state) {
  const auto n = state.range(0);
  const CyclicBvModel model(make_group_ring(GroupDescriptor::cyclic(n), CoeffRingTag::integers_mod(2)));
  const auto& alg = model.algebra();
  const auto& cmp = model.comparison();
  const GroupRingElement x = GroupRingElement::power_of(alg, 0, 1);
  for (auto _ : state) {
    const auto f = BarCochainTable::tabulate(cmp.phi_cochain(1, x));
    const auto g = BarCochainTable::tabulate(cmp.phi_cochain(2, x));
    benchmark::DoNotOptimize(cmp.psi_cochain(cup_bar(f, g).as_cochain()));
  }
}
BENCHMARK(BM_BarTableCup)->Arg(2)->Arg(4)->Arg(6);

// BV operator through the bar complex on a degree-d class of F_2[Z/4]; a fresh model each time so the
// per-model cache does not hide the transfer cost.
void BM_CyclicDelta(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto algebra = make_group_ring(GroupDescriptor::cyclic(4), CoeffRingTag::integers_mod(2));
  const GroupRingElement x = GroupRingElement::power_of(algebra, 0, 1);
  for (auto _ : state) {
    const CyclicBvModel model(algebra);
    benchmark::DoNotOptimize(model.delta(degree, x));
  }
}
BENCHMARK(BM_CyclicDelta)->DenseRange(1, 4);

// Signed tensor BV operator on Z[Z/4] (x) Z[Z/2], including the class comparison.
void BM_TensorDelta(benchmark::State& state) {
  const GroupDescriptor group = GroupDescriptor::parse("Z/4 x Z/2");
  const TensorBvModel model(group, {});
  const GradedPresentation pres = present_fg_abelian(group, {});
  const Polynomial c = pres.parse("x*c*b");
  const TensorCochain encoded = encode_class(model, pres, c);
  const TensorCochain expected = encode_class(model, pres, pres.delta(c));
  for (auto _ : state) benchmark::DoNotOptimize(model.same_class(model.delta(encoded), expected));
}
BENCHMARK(BM_TensorDelta);

// Smith normal form homology of the Kunneth total complex for Z/n x Z/n.
void BM_TensorHomology(benchmark::State& state) {
  const auto n = static_cast<long>(state.range(0));
  const FreeComplex a = periodic_cochain_complex(n, 4);
  const FreeComplex total = tensor_total_complex(a, a);
  for (auto _ : state) benchmark::DoNotOptimize(homology_at(total, 3));
}
BENCHMARK(BM_TensorHomology)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
