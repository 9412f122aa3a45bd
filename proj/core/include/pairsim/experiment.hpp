#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pairsim/krylov.hpp"
#include "pairsim/pairing_model.hpp"
#include "pairsim/vqe.hpp"

namespace pairsim {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind {
    vqe_sweep,     // coupling sweep of the three drivers, error table
    qpe_spectrum,  // phase-estimation histogram for one initial state
    krylov_scan,   // subspace scan for one initial state
    qp_krylov,     // subspace scan seeded with a projected excited state
    exact,         // sector spectrum dump
    resources,     // evolution-time comparison of the two post-processing routes
};

std::string to_string(ExperimentKind kind);

enum class InitialState { hf, qpav, qvap };

std::string to_string(InitialState initial);

/// Parsed and validated experiment description. Flat key-value JSON file;
/// unknown keys are rejected, missing keys fall back to the defaults below.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::exact;

    // model
    std::size_t levels = 8;
    std::size_t pairs = 4;
    double g = 0.5;
    std::optional<std::vector<double>> epsilons;  // default p = 1..N

    // sweep grid
    double g_min = 0.2;
    double g_max = 1.2;
    double g_step = 0.1;

    // method parameters
    InitialState initial = InitialState::qvap;
    std::size_t n_q = 8;
    std::size_t shots = 0;
    std::size_t m_max = 20;
    double d_tau = 0.3;
    double threshold = 1e-6;
    double trotter_dt = 1e-2;
    std::string evolution;  // "trotter" | "exact"; per-experiment default if empty
    std::uint64_t seed = 1;
    std::vector<std::size_t> excitation;
    double e_min = 0.0;
    std::optional<double> e_max;        // explicit window top wins over emax_mode
    std::string emax_mode = "calibrated";  // or "default"
    std::size_t n_q_min = 3;
    std::size_t n_q_max = 9;
    double accuracy_pct = 1.0;
    bool qpe_in_loop = false;

    std::string out_dir = "results";

    static ExperimentConfig from_json_file(const std::filesystem::path& path);
    static ExperimentConfig from_json_text(const std::string& text);

    PairingSpec model() const;
    std::string echo_json() const;  // canonical round-trip of the parsed config
};

/// Evolution-time comparison between the phase-estimation route (bin-width
/// precision at fixed window) and the subspace route (measured ground-state
/// error per M, per initial state).
struct ResourcesReport {
    struct QpeRow {
        std::size_t n_q;
        double tau_qpe;
        double delta_e;
        double tau_total;
        double precision_pct;  // delta_e relative to the exact correlation energy
    };
    struct KrylovRow {
        std::string initial;
        std::size_t m;
        double tau_total;  // (m - 1) d_tau
        double gs_error_pct;
    };
    std::vector<QpeRow> qpe_rows;
    std::vector<KrylovRow> krylov_rows;
    double accuracy_pct = 1.0;
    double qpe_tau_at_accuracy = 0.0;  // minimal-n_q time reaching the accuracy (formula)
    std::size_t qpe_nq_at_accuracy = 0;
    std::map<std::string, double> krylov_tau_at_accuracy;
};

ResourcesReport resources_report(const PairingSpec& spec, std::size_t nq_min, std::size_t nq_max,
                                 double accuracy_pct, const KrylovConfig& krylov_config,
                                 std::uint64_t seed);

/// Execute the configured experiment and write its JSON record plus CSV
/// payloads under out_dir. Throws ConfigError / ConvergenceError /
/// GuardError; the CLI maps those to exit codes.
void run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Decimal formatting used by every CSV payload: shortest text with 17
/// significant digits, locale-independent.
std::string format_double(double value);

}  // namespace pairsim
