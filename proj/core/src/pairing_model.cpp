#include "pairsim/pairing_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pairsim/errors.hpp"
#include "pairsim/linalg.hpp"

namespace pairsim {

PairingSpec PairingSpec::equidistant(std::size_t levels, double g, std::size_t target_pairs) {
    PairingSpec spec;
    spec.levels = levels;
    spec.epsilons.resize(levels);
    for (std::size_t p = 0; p < levels; ++p) spec.epsilons[p] = double(p + 1);
    spec.g = g;
    spec.target_pairs = target_pairs;
    spec.validate();
    return spec;
}

void PairingSpec::validate() const {
    if (levels < 1) throw std::invalid_argument("PairingSpec: need at least one level");
    if (epsilons.size() != levels)
        throw std::invalid_argument("PairingSpec: epsilons size != level count");
    if (target_pairs > levels)
        throw std::invalid_argument("PairingSpec: target pair number exceeds level count");
}

PauliChainSum hamiltonian_chains(const PairingSpec& spec) {
    spec.validate();
    const std::size_t n = spec.levels;
    PauliChainSum sum;

    double constant = 0.0;
    for (std::size_t p = 0; p < n; ++p) constant += spec.epsilons[p] - spec.g / 2.0;
    sum.terms.push_back({constant, PauliChain::identity(n)});

    for (std::size_t p = 0; p < n; ++p)
        sum.terms.push_back(
            {-(spec.epsilons[p] - spec.g / 2.0), PauliChain::single(n, p, PauliOp::Z)});

    for (std::size_t p = 1; p < n; ++p) {
        for (std::size_t q = 0; q < p; ++q) {
            sum.terms.push_back(
                {-spec.g / 2.0, PauliChain::two(n, p, PauliOp::X, q, PauliOp::X)});
            sum.terms.push_back(
                {-spec.g / 2.0, PauliChain::two(n, p, PauliOp::Y, q, PauliOp::Y)});
        }
    }
    return sum;
}

std::vector<std::uint64_t> sector_basis(std::size_t levels, std::size_t pairs) {
    std::vector<std::uint64_t> basis;
    const std::uint64_t limit = std::uint64_t{1} << levels;
    for (std::uint64_t mask = 0; mask < limit; ++mask)
        if (std::size_t(std::popcount(mask)) == pairs) basis.push_back(mask);
    return basis;
}

std::size_t sector_dimension(std::size_t levels, std::size_t pairs) {
    // C(levels, pairs) without overflow for the sizes we guard to
    if (pairs > levels) return 0;
    std::size_t result = 1;
    for (std::size_t i = 0; i < std::min(pairs, levels - pairs); ++i)
        result = result * (levels - i) / (i + 1);
    return result;
}

ComplexMatrix dense_sector_hamiltonian(const PairingSpec& spec) {
    spec.validate();
    const std::vector<std::uint64_t> basis = sector_basis(spec.levels, spec.target_pairs);
    const std::size_t dim = basis.size();
    ComplexMatrix h(dim, dim);

    std::vector<std::size_t> index_of(std::size_t{1} << spec.levels, SIZE_MAX);
    for (std::size_t i = 0; i < dim; ++i) index_of[basis[i]] = i;

    for (std::size_t i = 0; i < dim; ++i) {
        const std::uint64_t mask = basis[i];
        double diag = 0.0;
        for (std::size_t p = 0; p < spec.levels; ++p)
            if (mask & (std::uint64_t{1} << p)) diag += 2.0 * spec.epsilons[p] - spec.g;
        h(i, i) = diag;
        // one pair hop q -> p
        for (std::size_t p = 0; p < spec.levels; ++p) {
            if (mask & (std::uint64_t{1} << p)) continue;
            for (std::size_t q = 0; q < spec.levels; ++q) {
                if (!(mask & (std::uint64_t{1} << q))) continue;
                const std::uint64_t hopped =
                    (mask ^ (std::uint64_t{1} << q)) | (std::uint64_t{1} << p);
                h(index_of[hopped], i) = -spec.g;
            }
        }
    }
    return h;
}

std::vector<double> exact_spectrum(const PairingSpec& spec) {
    spec.validate();
    if (sector_dimension(spec.levels, spec.target_pairs) > 1000)
        throw GuardError("exact_spectrum: sector dimension exceeds 1000");
    return hermitian_eigen(dense_sector_hamiltonian(spec)).eigenvalues;
}

namespace {

std::vector<std::size_t> lowest_levels(const PairingSpec& spec) {
    std::vector<std::size_t> order(spec.levels);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return spec.epsilons[a] < spec.epsilons[b];
    });
    order.resize(spec.target_pairs);
    return order;
}

}  // namespace

double hf_energy(const PairingSpec& spec) {
    spec.validate();
    double energy = 0.0;
    for (std::size_t p : lowest_levels(spec)) energy += 2.0 * spec.epsilons[p] - spec.g;
    return energy;
}

StateVector hf_state(const PairingSpec& spec) {
    spec.validate();
    StateVector state(spec.levels);
    std::uint64_t mask = 0;
    for (std::size_t p : lowest_levels(spec)) mask |= std::uint64_t{1} << p;
    auto amps = state.amplitudes_mut();
    amps[0] = 0.0;
    amps[mask] = 1.0;
    return state;
}

double correlation_error(double e_approx, double e_exact, double e_hf) {
    const double exact_correlation = e_exact - e_hf;
    if (exact_correlation == 0.0)
        throw std::invalid_argument("correlation_error: exact correlation energy is zero");
    return std::abs((e_approx - e_exact) / exact_correlation) * 100.0;
}

}  // namespace pairsim
