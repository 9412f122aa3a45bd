#include "pairsim/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pairsim {

namespace {

void require_distinct_levels(const std::vector<std::size_t>& levels, std::size_t count) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] >= count)
            throw std::invalid_argument("excitation level out of range");
        for (std::size_t j = i + 1; j < levels.size(); ++j)
            if (levels[i] == levels[j])
                throw std::invalid_argument("duplicate excitation level");
    }
}

}  // namespace

StateVector prepare_bcs(const AnsatzParams& params) {
    if (!params.excitation_levels.empty())
        throw std::invalid_argument("prepare_bcs: excitation set must be empty");
    if (params.thetas.empty()) throw std::invalid_argument("prepare_bcs: no angles");
    StateVector state(params.thetas.size());
    for (std::size_t p = 0; p < params.thetas.size(); ++p)
        state.apply_ry(p, std::numbers::pi - 2.0 * params.thetas[p]);
    return state;
}

StateVector prepare_qp_excited(const AnsatzParams& params) {
    if (params.excitation_levels.empty())
        throw std::invalid_argument("prepare_qp_excited: excitation set is empty");
    require_distinct_levels(params.excitation_levels, params.thetas.size());

    // same rotation circuit, excited angles shifted by pi/2
    StateVector state(params.thetas.size());
    for (std::size_t p = 0; p < params.thetas.size(); ++p) {
        const bool excited = std::find(params.excitation_levels.begin(),
                                       params.excitation_levels.end(),
                                       p) != params.excitation_levels.end();
        const double theta = params.thetas[p] + (excited ? std::numbers::pi / 2.0 : 0.0);
        state.apply_ry(p, std::numbers::pi - 2.0 * theta);
    }
    // each shifted factor is -( -cos|0> + sin|1> ); strip the accumulated sign
    if (params.excitation_levels.size() % 2 == 1)
        for (Complex& a : state.amplitudes_mut()) a = -a;
    return state;
}

double expected_pairs(const AnsatzParams& params) {
    double sum = 0.0;
    for (double theta : params.thetas) {
        const double c = std::cos(theta);
        sum += c * c;
    }
    return sum;
}

double pairing_gap(const PairingSpec& spec, const AnsatzParams& params) {
    if (params.thetas.size() != spec.levels)
        throw std::invalid_argument("pairing_gap: angle count != level count");
    double sum = 0.0;
    for (double theta : params.thetas) sum += std::sin(theta) * std::cos(theta);
    return spec.g * sum;
}

double mean_field_excitation_energy(const PairingSpec& spec, const AnsatzParams& params,
                                    const std::vector<std::size_t>& excitation_levels) {
    require_distinct_levels(excitation_levels, spec.levels);
    AnsatzParams ground = params;
    ground.excitation_levels.clear();
    const double e0 = prepare_bcs(ground).expectation(hamiltonian_chains(spec));
    const double gap = pairing_gap(spec, params);
    double energy = e0;
    for (std::size_t level : excitation_levels) {
        const double detuning = spec.epsilons[level] - params.lambda;
        energy += 2.0 * std::sqrt(detuning * detuning + gap * gap);
    }
    return energy;
}

}  // namespace pairsim
