#include <benchmark/benchmark.h>

#include <numbers>

#include "pairsim/ansatz.hpp"
#include "pairsim/krylov.hpp"
#include "pairsim/linalg.hpp"
#include "pairsim/pairing_model.hpp"
#include "pairsim/projection.hpp"
#include "pairsim/rng.hpp"
#include "pairsim/spectra.hpp"
#include "pairsim/state_vector.hpp"
#include "pairsim/time_evolution.hpp"

namespace {

using namespace pairsim;

StateVector random_state(std::size_t n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    StateVector state(n_qubits);
    auto amps = state.amplitudes_mut();
    for (Complex& amp : amps) amp = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    state.normalize();
    return state;
}

void BM_ApplyRy(benchmark::State& state) {
    StateVector psi = random_state(std::size_t(state.range(0)), 1);
    double angle = 0.01;
    for (auto _ : state) {
        psi.apply_ry(3, angle);
        angle = -angle;
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(psi.dim()));
}
BENCHMARK(BM_ApplyRy)->Arg(12)->Arg(16)->Arg(20);

void BM_PauliExpectation(benchmark::State& state) {
    const PairingSpec spec = PairingSpec::equidistant(std::size_t(state.range(0)), 0.5,
                                                      std::size_t(state.range(0)) / 2);
    const PauliChainSum chains = hamiltonian_chains(spec);
    const StateVector psi = random_state(spec.levels, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi.expectation(chains));
    }
}
BENCHMARK(BM_PauliExpectation)->Arg(8)->Arg(12);

void BM_ControlledTrotterStep(benchmark::State& state) {
    const PairingSpec spec = PairingSpec::equidistant(8, 0.5, 4);
    const std::size_t ancillas = std::size_t(state.range(0));
    StateVector psi = random_state(8 + ancillas, 3);
    const Evolver evolver(spec, TrotterConfig{1e-2, EvolutionKind::trotter});
    for (auto _ : state) {
        evolver.controlled_evolve(psi, 1e-2, 8 + ancillas - 1);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(BM_ControlledTrotterStep)->Arg(4)->Arg(8);

void BM_InverseQft(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    StateVector psi = random_state(n, 4);
    std::vector<std::size_t> reg(n);
    for (std::size_t i = 0; i < n; ++i) reg[i] = i;
    for (auto _ : state) {
        psi.inverse_qft(reg);
        psi.qft(reg);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(BM_InverseQft)->Arg(8)->Arg(12)->Arg(16);

void BM_HermitianEigen(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    Rng rng(5);
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = rng.uniform();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z{rng.uniform() - 0.5, rng.uniform() - 0.5};
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigen(a).eigenvalues.data());
    }
}
BENCHMARK(BM_HermitianEigen)->Arg(20)->Arg(70);

void BM_NumberProjection(benchmark::State& state) {
    AnsatzParams params;
    params.thetas.assign(8, std::numbers::pi / 4.0);
    const StateVector trial = prepare_bcs(params);
    Rng rng(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(number_projection_qpe(trial, 4, rng).measured_pairs);
    }
}
BENCHMARK(BM_NumberProjection);

void BM_GeneratingValues(benchmark::State& state) {
    const PairingSpec spec = PairingSpec::equidistant(6, 0.5, 3);
    const StateVector initial = hf_state(spec);
    KrylovConfig config;
    config.m_max = std::size_t(state.range(0));
    for (auto _ : state) {
        Rng rng(7);
        benchmark::DoNotOptimize(generating_values(initial, spec, config, rng).f.data());
    }
}
BENCHMARK(BM_GeneratingValues)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
