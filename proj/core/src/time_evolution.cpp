#include "pairsim/time_evolution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pairsim/errors.hpp"
#include "pairsim/linalg.hpp"

namespace pairsim {

namespace {

constexpr std::size_t kExactLevelGuard = 10;

std::size_t step_count(double tau, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("evolve: non-positive Trotter step");
    if (tau == 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(std::abs(tau) / dt - 1e-12));
}

}  // namespace

void trotter_step(StateVector& state, double dt, const PairingSpec& spec) {
    spec.validate();
    if (state.n_qubits() < spec.levels)
        throw std::invalid_argument("trotter_step: register smaller than model");
    for (std::size_t p = 0; p < spec.levels; ++p)
        state.apply_phase(p, -(2.0 * spec.epsilons[p] - spec.g) * dt);
    const double theta = spec.g * dt;
    for (std::size_t p = 1; p < spec.levels; ++p)
        for (std::size_t q = 0; q < p; ++q) state.apply_xy_rotation(p, q, theta);
}

void evolve(StateVector& state, double tau, const TrotterConfig& config,
            const PairingSpec& spec) {
    if (tau < 0.0) throw std::invalid_argument("evolve: negative time");
    Evolver(spec, config).evolve(state, tau);
}

Evolver::Evolver(PairingSpec spec, TrotterConfig config)
    : spec_(std::move(spec)), config_(config) {
    spec_.validate();
    if (config_.dt <= 0.0) throw std::invalid_argument("Evolver: non-positive Trotter step");
    if (config_.kind == EvolutionKind::exact && spec_.levels > kExactLevelGuard)
        throw GuardError("Evolver: exact propagator guarded to 10 levels");
}

void Evolver::evolve(StateVector& state, double tau) const {
    if (config_.kind == EvolutionKind::exact)
        run_exact(state, tau, std::nullopt);
    else
        run_trotter(state, tau, std::nullopt);
}

void Evolver::controlled_evolve(StateVector& state, double tau, std::size_t control) const {
    if (control < spec_.levels)
        throw std::invalid_argument("controlled_evolve: control inside the model register");
    if (config_.kind == EvolutionKind::exact)
        run_exact(state, tau, control);
    else
        run_trotter(state, tau, control);
}

void Evolver::run_trotter(StateVector& state, double tau,
                          std::optional<std::size_t> control) const {
    if (state.n_qubits() < spec_.levels)
        throw std::invalid_argument("Evolver: register smaller than model");
    const std::size_t steps = step_count(tau, config_.dt);
    if (steps == 0) return;
    const double magnitude = std::abs(tau);
    const double last = magnitude - double(steps - 1) * config_.dt;
    if (tau > 0.0) {
        for (std::size_t i = 0; i + 1 < steps; ++i) step(state, config_.dt, control);
        step(state, last, control);
    } else {
        // exact adjoint of the forward sequence: inverse factors, reversed
        // step partition, so U(-t) U(t) = 1 identically
        inverse_step(state, last, control);
        for (std::size_t i = 0; i + 1 < steps; ++i) inverse_step(state, config_.dt, control);
    }
}

void Evolver::step(StateVector& state, double dt, std::optional<std::size_t> control) const {
    state.apply_diagonal(diagonal_table(dt), spec_.levels, control);
    const double theta = spec_.g * dt;
    for (std::size_t p = 1; p < spec_.levels; ++p)
        for (std::size_t q = 0; q < p; ++q) state.apply_xy_rotation(p, q, theta, control);
}

void Evolver::inverse_step(StateVector& state, double dt,
                           std::optional<std::size_t> control) const {
    const double theta = spec_.g * dt;
    for (std::size_t p = spec_.levels; p-- > 1;)
        for (std::size_t q = p; q-- > 0;) state.apply_xy_rotation(p, q, -theta, control);
    state.apply_diagonal(diagonal_table(-dt), spec_.levels, control);
}

const std::vector<Complex>& Evolver::diagonal_table(double dt) const {
    std::scoped_lock lock(mutex_);
    auto it = diagonal_tables_.find(dt);
    if (it != diagonal_tables_.end()) return it->second;
    const std::size_t dim = std::size_t{1} << spec_.levels;
    std::vector<Complex> table(dim);
    for (std::size_t mask = 0; mask < dim; ++mask) {
        double energy = 0.0;
        for (std::size_t p = 0; p < spec_.levels; ++p)
            if (mask & (std::size_t{1} << p)) energy += 2.0 * spec_.epsilons[p] - spec_.g;
        table[mask] = std::polar(1.0, -energy * dt);
    }
    return diagonal_tables_.emplace(dt, std::move(table)).first->second;
}

const EigenResult& Evolver::dense_eigen() const {
    if (!dense_eigen_) {
        if (spec_.levels > kExactLevelGuard)
            throw GuardError("Evolver: exact propagator guarded to 10 levels");
        const ComplexMatrix h = to_dense(hamiltonian_chains(spec_), spec_.levels);
        dense_eigen_ = hermitian_eigen(h);
    }
    return *dense_eigen_;
}

const ComplexMatrix& Evolver::propagator(double tau) const {
    std::scoped_lock lock(mutex_);
    auto it = propagators_.find(tau);
    if (it != propagators_.end()) return it->second;

    const EigenResult& eig = dense_eigen();
    const std::size_t dim = eig.eigenvalues.size();
    // U = V diag(e^{-i E tau}) V†
    ComplexMatrix scaled(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const Complex phase = std::polar(1.0, -eig.eigenvalues[col] * tau);
        for (std::size_t row = 0; row < dim; ++row)
            scaled(row, col) = eig.eigenvectors(row, col) * phase;
    }
    ComplexMatrix u = scaled * eig.eigenvectors.adjoint();
    return propagators_.emplace(tau, std::move(u)).first->second;
}

void Evolver::run_exact(StateVector& state, double tau,
                        std::optional<std::size_t> control) const {
    if (state.n_qubits() < spec_.levels)
        throw std::invalid_argument("Evolver: register smaller than model");
    if (tau == 0.0) return;
    const ComplexMatrix& u = propagator(tau);
    std::vector<std::size_t> targets(spec_.levels);
    std::iota(targets.begin(), targets.end(), std::size_t{0});
    if (control) {
        const std::size_t controls[] = {*control};
        state.apply_unitary(targets, u, controls);
    } else {
        state.apply_unitary(targets, u);
    }
}

}  // namespace pairsim
