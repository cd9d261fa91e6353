// Micro-benchmarks for the cost split the solver relies on: one expensive
// factorization against many cheap right-hand-side solves and dual updates.

#include "contactsplit/acceleration.hpp"
#include "contactsplit/dual_update.hpp"
#include "contactsplit/generators.hpp"
#include "contactsplit/solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace contactsplit;

namespace {

const HertzResult& desk_problem(int refinement) {
    static std::map<int, HertzResult> cache;
    auto it = cache.find(refinement);
    if (it == cache.end()) {
        HertzParams prm;
        prm.dim = 2;
        prm.refinement = refinement;
        it = cache.emplace(refinement, gen_hertz(prm)).first;
    }
    return it->second;
}

} // namespace

static void BM_Factorize(benchmark::State& state) {
    const HertzResult& hz = desk_problem(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(factorize(hz.problem.stiffness));
    state.SetLabel(std::to_string(hz.problem.num_dofs()) + " dofs");
}
BENCHMARK(BM_Factorize)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SolveWithReuse(benchmark::State& state) {
    const HertzResult& hz = desk_problem(static_cast<int>(state.range(0)));
    const Factorization f = factorize(hz.problem.stiffness);
    Vector rhs = hz.problem.external_load;
    for (auto _ : state) benchmark::DoNotOptimize(f.solve(rhs));
    state.SetLabel(std::to_string(hz.problem.num_dofs()) + " dofs");
}
BENCHMARK(BM_SolveWithReuse)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_Spmv(benchmark::State& state) {
    const HertzResult& hz = desk_problem(static_cast<int>(state.range(0)));
    Vector x(hz.problem.num_dofs(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(spmv(hz.problem.stiffness, x));
}
BENCHMARK(BM_Spmv)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_CrossedSecantStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector lambda_prev(n), lhat(n), lhat_prev(n), delta_prev(n);
    for (auto* v : {&lambda_prev, &lhat, &lhat_prev, &delta_prev})
        for (double& x : *v) x = dist(rng);
    for (auto _ : state) {
        AccelState st = AccelState::init(lambda_prev);
        st.lambda_hat_prev = lhat_prev;
        st.delta_prev = delta_prev;
        st.iteration = 1;
        benchmark::DoNotOptimize(crossed_secant_step(st, lhat));
    }
}
BENCHMARK(BM_CrossedSecantStep)->Arg(100)->Arg(10000);

static void BM_FullSolveCrossedSecant(benchmark::State& state) {
    const HertzResult& hz = desk_problem(static_cast<int>(state.range(0)));
    const Factorization f = factorize(hz.problem.stiffness);
    SolverConfig cfg;
    cfg.update = UpdateKind::uzawa(1e4);
    cfg.accel = AccelKind::make(AccelKind::Scheme::CrossedSecant);
    for (auto _ : state) {
        const SolveReport rep = run_fixed_point(hz.problem, cfg, f);
        benchmark::DoNotOptimize(rep.iterations);
    }
    state.SetLabel(std::to_string(hz.problem.num_dofs()) + " dofs");
}
BENCHMARK(BM_FullSolveCrossedSecant)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
