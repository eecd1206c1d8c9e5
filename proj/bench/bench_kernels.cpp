// Serial reference kernels against the OpenMP versions on a gauge-matter
// Hamiltonian (KS U(1), Lambda = 2, staggered fermions on a 1x6 chain).

#include <benchmark/benchmark.h>

#include <random>

#include "lgtlab/hamiltonian.hpp"
#include "lgtlab/kernels.hpp"

namespace {

struct Fixture {
  lgt::SparseOperator h;
  lgt::Vector x, y;

  Fixture() {
    lgt::HamiltonianSpec spec;
    spec.truncation = 2;
    spec.epsilon = 1.0;
    spec.mass = 0.5;
    spec.matter = lgt::FermionScheme::staggered;
    const lgt::Model model(spec, lgt::Lattice(1, {6}));
    h = lgt::assemble(lgt::hamiltonian(model), model.space());
    std::mt19937_64 rng(7);
    std::normal_distribution<double> d;
    x.resize(h.dim());
    for (auto& v : x) v = {d(rng), d(rng)};
    y = lgt::Vector::Zero(h.dim());
  }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_spmv_serial(benchmark::State& state) {
  Fixture& f = fixture();
  const lgt::CsrView a = f.h.view();
  for (auto _ : state) {
    lgt::kernels::serial::spmv(a, {f.x.data(), size_t(f.x.size())}, {f.y.data(), size_t(f.y.size())});
    benchmark::DoNotOptimize(f.y.data());
  }
  state.SetItemsProcessed(state.iterations() * f.h.nonzeros());
}

void BM_spmv_omp(benchmark::State& state) {
  Fixture& f = fixture();
  lgt::kernels::set_threads(static_cast<int>(state.range(0)));
  const lgt::CsrView a = f.h.view();
  for (auto _ : state) {
    lgt::kernels::spmv(a, {f.x.data(), size_t(f.x.size())}, {f.y.data(), size_t(f.y.size())});
    benchmark::DoNotOptimize(f.y.data());
  }
  state.SetItemsProcessed(state.iterations() * f.h.nonzeros());
}

void BM_dot_serial(benchmark::State& state) {
  Fixture& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(lgt::kernels::serial::dot({f.x.data(), size_t(f.x.size())}, {f.x.data(), size_t(f.x.size())}));
  state.SetItemsProcessed(state.iterations() * f.x.size());
}

void BM_dot_omp(benchmark::State& state) {
  Fixture& f = fixture();
  lgt::kernels::set_threads(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(lgt::kernels::dot({f.x.data(), size_t(f.x.size())}, {f.x.data(), size_t(f.x.size())}));
  state.SetItemsProcessed(state.iterations() * f.x.size());
}

}  // namespace

BENCHMARK(BM_spmv_serial);
BENCHMARK(BM_spmv_omp)->RangeMultiplier(2)->Range(1, 8);
BENCHMARK(BM_dot_serial);
BENCHMARK(BM_dot_omp)->RangeMultiplier(2)->Range(1, 8);

BENCHMARK_MAIN();
