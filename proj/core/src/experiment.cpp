#include "pairsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pairsim/ansatz.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/projection.hpp"
#include "pairsim/spectra.hpp"

namespace pairsim {

using nlohmann::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::vqe_sweep: return "vqe-sweep";
        case ExperimentKind::qpe_spectrum: return "qpe-spectrum";
        case ExperimentKind::krylov_scan: return "krylov-scan";
        case ExperimentKind::qp_krylov: return "qp-krylov";
        case ExperimentKind::exact: return "exact";
        case ExperimentKind::resources: return "resources";
    }
    return "?";
}

std::string to_string(InitialState initial) {
    switch (initial) {
        case InitialState::hf: return "hf";
        case InitialState::qpav: return "qpav";
        case InitialState::qvap: return "qvap";
    }
    return "?";
}

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buffer, ptr);
}

namespace {

ExperimentKind parse_kind(const std::string& name) {
    if (name == "vqe-sweep") return ExperimentKind::vqe_sweep;
    if (name == "qpe-spectrum") return ExperimentKind::qpe_spectrum;
    if (name == "krylov-scan") return ExperimentKind::krylov_scan;
    if (name == "qp-krylov") return ExperimentKind::qp_krylov;
    if (name == "exact") return ExperimentKind::exact;
    if (name == "resources") return ExperimentKind::resources;
    throw ConfigError("unknown experiment '" + name + "'");
}

InitialState parse_initial(const std::string& name) {
    if (name == "hf") return InitialState::hf;
    if (name == "qpav") return InitialState::qpav;
    if (name == "qvap") return InitialState::qvap;
    throw ConfigError("unknown initial state '" + name + "' (expected hf|qpav|qvap)");
}

const std::set<std::string> kCommonKeys = {"experiment", "levels", "pairs",  "g",
                                           "epsilons",   "seed",   "shots", "out_dir"};

std::set<std::string> allowed_keys(ExperimentKind kind) {
    std::set<std::string> keys = kCommonKeys;
    auto add = [&keys](std::initializer_list<const char*> more) {
        for (const char* k : more) keys.insert(k);
    };
    switch (kind) {
        case ExperimentKind::vqe_sweep:
            add({"g_min", "g_max", "g_step", "qpe_in_loop"});
            break;
        case ExperimentKind::qpe_spectrum:
            add({"initial", "excitation", "n_q", "e_min", "e_max", "emax_mode", "trotter_dt",
                 "evolution"});
            break;
        case ExperimentKind::krylov_scan:
            add({"initial", "m_max", "d_tau", "threshold", "trotter_dt", "evolution"});
            break;
        case ExperimentKind::qp_krylov:
            add({"excitation", "m_max", "d_tau", "threshold", "trotter_dt", "evolution"});
            break;
        case ExperimentKind::exact:
            break;
        case ExperimentKind::resources:
            add({"n_q_min", "n_q_max", "accuracy_pct", "m_max", "d_tau", "threshold",
                 "trotter_dt", "evolution"});
            break;
    }
    return keys;
}

template <typename T>
T get_number(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() && !v.is_number_unsigned())
            throw ConfigError("key '" + key + "' must be an integer");
        if (v.is_number_integer() && v.get<long long>() < 0)
            throw ConfigError("key '" + key + "' must be non-negative");
    } else {
        if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
    }
    return v.get<T>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ConfigError("key '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

TrotterConfig make_evolution(const ExperimentConfig& config, EvolutionKind fallback) {
    TrotterConfig out;
    out.dt = config.trotter_dt;
    if (config.evolution.empty())
        out.kind = fallback;
    else if (config.evolution == "trotter")
        out.kind = EvolutionKind::trotter;
    else if (config.evolution == "exact")
        out.kind = EvolutionKind::exact;
    else
        throw ConfigError("key 'evolution' must be 'trotter' or 'exact'");
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    if (!j.contains("experiment")) throw ConfigError("missing required key 'experiment'");

    ExperimentConfig config;
    config.experiment = parse_kind(get_string(j, "experiment", ""));

    const std::set<std::string> allowed = allowed_keys(config.experiment);
    for (const auto& item : j.items())
        if (!allowed.contains(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' for experiment '" +
                              to_string(config.experiment) + "'");

    config.levels = get_number<std::size_t>(j, "levels", config.levels);
    config.pairs = get_number<std::size_t>(j, "pairs", config.pairs);
    config.g = get_number<double>(j, "g", config.g);
    if (j.contains("epsilons")) {
        if (!j.at("epsilons").is_array()) throw ConfigError("key 'epsilons' must be an array");
        config.epsilons = j.at("epsilons").get<std::vector<double>>();
    }
    config.seed = get_number<std::uint64_t>(j, "seed", config.seed);
    config.shots = get_number<std::size_t>(j, "shots", config.shots);
    config.out_dir = get_string(j, "out_dir", config.out_dir);

    config.g_min = get_number<double>(j, "g_min", config.g_min);
    config.g_max = get_number<double>(j, "g_max", config.g_max);
    config.g_step = get_number<double>(j, "g_step", config.g_step);
    config.initial = parse_initial(get_string(j, "initial", to_string(config.initial)));
    config.n_q = get_number<std::size_t>(j, "n_q", config.n_q);
    config.m_max = get_number<std::size_t>(j, "m_max", config.m_max);
    config.d_tau = get_number<double>(j, "d_tau", config.d_tau);
    config.threshold = get_number<double>(j, "threshold", config.threshold);
    config.trotter_dt = get_number<double>(j, "trotter_dt", config.trotter_dt);
    config.evolution = get_string(j, "evolution", config.evolution);
    if (j.contains("excitation")) {
        if (!j.at("excitation").is_array())
            throw ConfigError("key 'excitation' must be an array of level indices");
        config.excitation = j.at("excitation").get<std::vector<std::size_t>>();
    }
    config.e_min = get_number<double>(j, "e_min", config.e_min);
    if (j.contains("e_max")) config.e_max = get_number<double>(j, "e_max", 0.0);
    config.emax_mode = get_string(j, "emax_mode", config.emax_mode);
    if (config.emax_mode != "calibrated" && config.emax_mode != "default")
        throw ConfigError("key 'emax_mode' must be 'calibrated' or 'default'");
    config.n_q_min = get_number<std::size_t>(j, "n_q_min", config.n_q_min);
    config.n_q_max = get_number<std::size_t>(j, "n_q_max", config.n_q_max);
    config.accuracy_pct = get_number<double>(j, "accuracy_pct", config.accuracy_pct);
    if (j.contains("qpe_in_loop")) {
        if (!j.at("qpe_in_loop").is_boolean())
            throw ConfigError("key 'qpe_in_loop' must be a boolean");
        config.qpe_in_loop = j.at("qpe_in_loop").get<bool>();
    }

    // semantic checks
    try {
        config.model().validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid model: ") + e.what());
    }
    if (config.experiment == ExperimentKind::vqe_sweep) {
        if (!(config.g_min <= config.g_max) || config.g_step <= 0.0)
            throw ConfigError("sweep grid requires g_min <= g_max and g_step > 0");
    }
    if (config.experiment == ExperimentKind::qp_krylov && config.excitation.empty())
        throw ConfigError("qp-krylov requires a non-empty 'excitation' set");
    if (!config.excitation.empty() && config.experiment == ExperimentKind::qpe_spectrum &&
        config.initial != InitialState::qvap)
        throw ConfigError("'excitation' requires initial = qvap");
    for (std::size_t level : config.excitation)
        if (level >= config.levels) throw ConfigError("excitation level out of range");
    if (config.experiment == ExperimentKind::resources && config.n_q_min < 1)
        throw ConfigError("n_q_min must be at least 1");
    if (config.experiment == ExperimentKind::resources && config.n_q_min > config.n_q_max)
        throw ConfigError("n_q_min must not exceed n_q_max");
    return config;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return from_json_text(text.str());
}

PairingSpec ExperimentConfig::model() const {
    PairingSpec spec;
    spec.levels = levels;
    spec.g = g;
    spec.target_pairs = pairs;
    if (epsilons) {
        spec.epsilons = *epsilons;
    } else {
        spec.epsilons.resize(levels);
        for (std::size_t p = 0; p < levels; ++p) spec.epsilons[p] = double(p + 1);
    }
    return spec;
}

std::string ExperimentConfig::echo_json() const {
    json j;
    j["experiment"] = to_string(experiment);
    j["levels"] = levels;
    j["pairs"] = pairs;
    j["g"] = g;
    j["epsilons"] = model().epsilons;
    j["seed"] = seed;
    j["shots"] = shots;
    j["out_dir"] = out_dir;
    switch (experiment) {
        case ExperimentKind::vqe_sweep:
            j["g_min"] = g_min;
            j["g_max"] = g_max;
            j["g_step"] = g_step;
            j["qpe_in_loop"] = qpe_in_loop;
            break;
        case ExperimentKind::qpe_spectrum:
            j["initial"] = to_string(initial);
            j["excitation"] = excitation;
            j["n_q"] = n_q;
            j["e_min"] = e_min;
            if (e_max) j["e_max"] = *e_max;
            j["emax_mode"] = emax_mode;
            j["trotter_dt"] = trotter_dt;
            j["evolution"] = evolution.empty() ? "trotter" : evolution;
            break;
        case ExperimentKind::krylov_scan:
        case ExperimentKind::qp_krylov:
            if (experiment == ExperimentKind::krylov_scan)
                j["initial"] = to_string(initial);
            else
                j["excitation"] = excitation;
            j["m_max"] = m_max;
            j["d_tau"] = d_tau;
            j["threshold"] = threshold;
            j["trotter_dt"] = trotter_dt;
            j["evolution"] = evolution.empty() ? "exact" : evolution;
            break;
        case ExperimentKind::exact:
            break;
        case ExperimentKind::resources:
            j["n_q_min"] = n_q_min;
            j["n_q_max"] = n_q_max;
            j["accuracy_pct"] = accuracy_pct;
            j["m_max"] = m_max;
            j["d_tau"] = d_tau;
            j["threshold"] = threshold;
            j["trotter_dt"] = trotter_dt;
            j["evolution"] = evolution.empty() ? "exact" : evolution;
            break;
    }
    return j.dump(2);
}

namespace {

std::size_t worker_count(std::size_t tasks) {
    std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PAIRSIM_WORKERS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0) workers = std::size_t(parsed);
    }
    return std::min(workers, std::max<std::size_t>(1, tasks));
}

OptimizationConfig driver_config(VqeMode mode, std::uint64_t seed, std::size_t shots,
                                 bool qpe_in_loop) {
    OptimizationConfig config;
    config.mode = mode;
    config.seed = seed;
    config.shots = shots;
    config.qpe_in_loop = qpe_in_loop;
    return config;
}

struct PreparedInitial {
    StateVector state;                 // in-sector state handed to post-processing
    std::optional<OptResult> driver;   // present when a variational run was needed
    double projection_acceptance = 1.0;  // sector weight of the unprojected trial
};

PreparedInitial prepare_initial(const PairingSpec& spec, InitialState initial,
                                const std::vector<std::size_t>& excitation, std::uint64_t seed,
                                std::size_t shots) {
    if (initial == InitialState::hf) return {hf_state(spec), std::nullopt, 1.0};
    const VqeMode mode = initial == InitialState::qpav ? VqeMode::bcs : VqeMode::qvap;
    OptResult driver = minimize(spec, driver_config(mode, seed, shots, false));
    AnsatzParams params;
    params.thetas = driver.thetas;
    params.lambda = driver.lambda;
    params.excitation_levels = excitation;
    const StateVector trial =
        excitation.empty() ? prepare_bcs(params) : prepare_qp_excited(params);
    const double acceptance = sector_weight(trial, spec.target_pairs);
    return {projector_oracle(trial, spec.target_pairs), std::move(driver), acceptance};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) { row(header); }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line_ << ',';
            line_ << cells[i];
        }
        line_ << '\n';
    }

    std::string text() const { return line_.str(); }

private:
    std::ostringstream line_;
};

json result_skeleton(const ExperimentConfig& config, double wall_seconds) {
    json j;
    j["config"] = json::parse(config.echo_json());
    j["version"] = kVersion;
    j["wall_time_seconds"] = wall_seconds;
    return j;
}

// ---------------------------------------------------------------- vqe-sweep

struct SweepPoint {
    double g = 0.0;
    OptResult bcs;
    double e_qpav = 0.0;
    OptResult qvap;
    double e_exact = 0.0;
    double e_hf = 0.0;
};

void run_vqe_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    std::vector<double> grid;
    for (double g = config.g_min; g <= config.g_max + 1e-12; g += config.g_step)
        grid.push_back(g);

    std::vector<SweepPoint> points(grid.size());
    std::atomic<std::size_t> cursor{0};
    std::vector<std::string> failures(grid.size());

    auto work = [&]() {
        while (true) {
            const std::size_t index = cursor.fetch_add(1);
            if (index >= grid.size()) return;
            PairingSpec spec = config.model();
            spec.g = grid[index];
            try {
                SweepPoint point;
                point.g = grid[index];
                point.bcs = minimize(
                    spec, driver_config(VqeMode::bcs, config.seed, config.shots, false));
                point.e_qpav = qpav_energy(spec, point.bcs);
                point.qvap = minimize(spec, driver_config(VqeMode::qvap, config.seed,
                                                          config.shots, config.qpe_in_loop));
                point.e_exact = exact_spectrum(spec).front();
                point.e_hf = hf_energy(spec);
                points[index] = std::move(point);
            } catch (const std::exception& e) {
                failures[index] = e.what();
            }
        }
    };

    const std::size_t workers = worker_count(grid.size());
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w + 1 < workers; ++w) threads.emplace_back(work);
    work();
    for (std::thread& t : threads) t.join();

    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!failures[i].empty())
            throw ConvergenceError("sweep point g=" + format_double(grid[i]) +
                                   " failed: " + failures[i]);

    CsvWriter csv({"g", "err_bcs", "err_qpav", "err_qvap"});
    json rows = json::array();
    for (const SweepPoint& p : points) {
        const double err_bcs = correlation_error(p.bcs.energy, p.e_exact, p.e_hf);
        const double err_qpav = correlation_error(p.e_qpav, p.e_exact, p.e_hf);
        const double err_qvap = correlation_error(p.qvap.energy, p.e_exact, p.e_hf);
        csv.row({format_double(p.g), format_double(err_bcs), format_double(err_qpav),
                 format_double(err_qvap)});
        json row;
        row["g"] = p.g;
        row["e_exact"] = p.e_exact;
        row["e_hf"] = p.e_hf;
        row["e_bcs"] = p.bcs.energy;
        row["e_qpav"] = p.e_qpav;
        row["e_qvap"] = p.qvap.energy;
        row["err_bcs"] = err_bcs;
        row["err_qpav"] = err_qpav;
        row["err_qvap"] = err_qvap;
        row["thetas_bcs"] = p.bcs.thetas;
        row["thetas_qvap"] = p.qvap.thetas;
        row["lambda_bcs"] = p.bcs.lambda;
        row["evaluations_bcs"] = p.bcs.evaluations;
        row["evaluations_qvap"] = p.qvap.evaluations;
        rows.push_back(std::move(row));
    }
    write_text_file(out_dir / "sweep.csv", csv.text());

    json result = result_skeleton(config, 0.0);
    result["payload"]["points"] = std::move(rows);
    result["oracle_references"] = {{"kind", "sector-diagonalization"}};
    write_text_file(out_dir / "vqe_sweep_result.json", result.dump(2) + "\n");
}

// ------------------------------------------------------------- qpe-spectrum

void run_qpe_spectrum(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    const PairingSpec spec = config.model();
    const PreparedInitial initial =
        prepare_initial(spec, config.initial, config.excitation, config.seed, config.shots);

    double e_max;
    if (config.e_max)
        e_max = *config.e_max;
    else if (config.emax_mode == "default")
        e_max = default_emax(spec);
    else
        e_max = calibrated_emax(spec, config.n_q);

    Rng rng(config.seed);
    const TrotterConfig evolution = make_evolution(config, EvolutionKind::trotter);
    const SpectrumHistogram hist = qpe_spectrum(initial.state, spec, config.n_q, config.e_min,
                                                e_max, config.shots, evolution, rng);

    // rows ascending in energy for direct plotting
    std::vector<const SpectrumBin*> ordered;
    for (const auto& [outcome, bin] : hist.bins) ordered.push_back(&bin);
    std::sort(ordered.begin(), ordered.end(), [](const SpectrumBin* a, const SpectrumBin* b) {
        return a->energy_center < b->energy_center;
    });
    CsvWriter csv({"bin_center", "probability", "count"});
    for (const SpectrumBin* bin : ordered)
        csv.row({format_double(bin->energy_center), format_double(bin->probability),
                 std::to_string(bin->count)});
    write_text_file(out_dir / "spectrum.csv", csv.text());

    const std::vector<double> oracle = exact_spectrum(spec);
    json result = result_skeleton(config, 0.0);
    json bins = json::array();
    for (const auto& [outcome, bin] : hist.bins) {
        json row;
        row["outcome"] = outcome;
        row["bin_center"] = bin.energy_center;
        row["probability"] = bin.probability;
        row["count"] = bin.count;
        bins.push_back(std::move(row));
    }
    result["payload"]["n_q"] = hist.n_q;
    result["payload"]["e_min"] = hist.e_min;
    result["payload"]["e_max"] = hist.e_max;
    result["payload"]["bin_width"] = hist.bin_width;
    result["payload"]["shots"] = hist.shots;
    result["payload"]["bins"] = std::move(bins);
    if (initial.driver) {
        result["payload"]["driver_thetas"] = initial.driver->thetas;
        result["payload"]["driver_lambda"] = initial.driver->lambda;
        result["payload"]["driver_energy"] = initial.driver->energy;
    }
    // probability that one projection event lands in the target sector
    result["payload"]["projection_acceptance"] = initial.projection_acceptance;
    result["oracle_references"] = {{"e_gs", oracle.front()},
                                   {"e_first", oracle.size() > 1 ? oracle[1] : oracle.front()},
                                   {"e_hf", hf_energy(spec)}};
    write_text_file(out_dir / "qpe_spectrum_result.json", result.dump(2) + "\n");
}

// -------------------------------------------------------------- krylov scans

void write_krylov_outputs(const ExperimentConfig& config, const KrylovResult& scan,
                          const std::filesystem::path& out_dir, const char* csv_name,
                          const char* json_name, const std::optional<OptResult>& driver,
                          double projection_acceptance) {
    std::vector<std::string> header = {"m", "j"};
    for (std::size_t k = 0; k < config.m_max; ++k) header.push_back("e_" + std::to_string(k));
    header.push_back("err_0");
    header.push_back("err_1");
    CsvWriter csv(header);
    for (const KrylovRecord& record : scan.records) {
        std::vector<std::string> cells = {std::to_string(record.m),
                                          std::to_string(record.retained)};
        for (std::size_t k = 0; k < config.m_max; ++k)
            cells.push_back(k < record.eigenvalues.size()
                                ? format_double(record.eigenvalues[k])
                                : std::string{});
        cells.push_back(format_double(record.gs_error_pct));
        cells.push_back(format_double(record.first_excited_error_pct));
        csv.row(cells);
    }
    write_text_file(out_dir / csv_name, csv.text());

    json result = result_skeleton(config, 0.0);
    json records = json::array();
    for (const KrylovRecord& record : scan.records) {
        json row;
        row["m"] = record.m;
        row["j"] = record.retained;
        row["eigenvalues"] = record.eigenvalues;
        row["gs_error_pct"] = record.gs_error_pct;
        row["first_excited_error_pct"] = record.first_excited_error_pct;
        row["pruned"] = record.pruned;
        records.push_back(std::move(row));
    }
    result["payload"]["records"] = std::move(records);
    json f = json::array(), g = json::array();
    for (const Complex& z : scan.f) f.push_back({z.real(), z.imag()});
    for (const Complex& z : scan.g) g.push_back({z.real(), z.imag()});
    result["payload"]["f"] = std::move(f);
    result["payload"]["g"] = std::move(g);
    if (!scan.excitation.empty()) result["payload"]["excitation"] = scan.excitation;
    if (driver) {
        result["payload"]["driver_thetas"] = driver->thetas;
        result["payload"]["driver_lambda"] = driver->lambda;
    }
    result["payload"]["projection_acceptance"] = projection_acceptance;
    result["oracle_references"] = {{"e_gs", scan.oracle_gs},
                                   {"e_first", scan.oracle_first_excited},
                                   {"e_hf", scan.hf_reference}};
    write_text_file(out_dir / json_name, result.dump(2) + "\n");
}

KrylovConfig krylov_config_from(const ExperimentConfig& config, EvolutionKind fallback) {
    KrylovConfig k;
    k.m_max = config.m_max;
    k.d_tau = config.d_tau;
    k.threshold = config.threshold;
    k.shots = config.shots;
    k.evolution = make_evolution(config, fallback);
    return k;
}

void run_krylov_scan(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    const PairingSpec spec = config.model();
    const PreparedInitial initial =
        prepare_initial(spec, config.initial, {}, config.seed, config.shots);
    Rng rng(config.seed);
    const KrylovResult scan =
        krylov_scan(initial.state, spec, krylov_config_from(config, EvolutionKind::exact), rng);
    write_krylov_outputs(config, scan, out_dir, "krylov.csv", "krylov_scan_result.json",
                         initial.driver, initial.projection_acceptance);
}

void run_qp_krylov(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    const PairingSpec spec = config.model();
    const OptResult driver =
        minimize(spec, driver_config(VqeMode::qvap, config.seed, config.shots, false));
    Rng rng(config.seed);
    const KrylovResult scan = qp_krylov_scan(spec, driver.thetas, config.excitation,
                                             krylov_config_from(config, EvolutionKind::exact),
                                             rng);
    AnsatzParams params;
    params.thetas = driver.thetas;
    params.excitation_levels = config.excitation;
    const double acceptance =
        sector_weight(prepare_qp_excited(params), spec.target_pairs);
    write_krylov_outputs(config, scan, out_dir, "qp_krylov.csv", "qp_krylov_result.json",
                         driver, acceptance);
}

// --------------------------------------------------------------------- exact

void run_exact(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    const PairingSpec spec = config.model();
    const std::vector<double> spectrum = exact_spectrum(spec);
    CsvWriter csv({"index", "energy"});
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        csv.row({std::to_string(i), format_double(spectrum[i])});
    write_text_file(out_dir / "eigenvalues.csv", csv.text());

    json result = result_skeleton(config, 0.0);
    result["payload"]["eigenvalues"] = spectrum;
    result["payload"]["e_hf"] = hf_energy(spec);
    result["payload"]["sector_dimension"] = spectrum.size();
    result["oracle_references"] = {{"kind", "sector-diagonalization"}};
    write_text_file(out_dir / "exact_result.json", result.dump(2) + "\n");
}

// ----------------------------------------------------------------- resources

void run_resources(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    const PairingSpec spec = config.model();
    const ResourcesReport report =
        resources_report(spec, config.n_q_min, config.n_q_max, config.accuracy_pct,
                         krylov_config_from(config, EvolutionKind::exact), config.seed);

    CsvWriter qpe_csv({"n_q", "tau_qpe", "delta_e", "tau_tot", "precision_pct"});
    for (const ResourcesReport::QpeRow& row : report.qpe_rows)
        qpe_csv.row({std::to_string(row.n_q), format_double(row.tau_qpe),
                     format_double(row.delta_e), format_double(row.tau_total),
                     format_double(row.precision_pct)});
    write_text_file(out_dir / "resources_qpe.csv", qpe_csv.text());

    CsvWriter krylov_csv({"initial", "m", "tau_tot", "gs_error_pct"});
    for (const ResourcesReport::KrylovRow& row : report.krylov_rows)
        krylov_csv.row({row.initial, std::to_string(row.m), format_double(row.tau_total),
                        format_double(row.gs_error_pct)});
    write_text_file(out_dir / "resources_krylov.csv", krylov_csv.text());

    json result = result_skeleton(config, 0.0);
    result["payload"]["accuracy_pct"] = report.accuracy_pct;
    result["payload"]["qpe_tau_at_accuracy"] = report.qpe_tau_at_accuracy;
    result["payload"]["qpe_nq_at_accuracy"] = report.qpe_nq_at_accuracy;
    result["payload"]["krylov_tau_at_accuracy"] = report.krylov_tau_at_accuracy;
    result["oracle_references"] = {{"kind", "sector-diagonalization"}};
    write_text_file(out_dir / "resources_result.json", result.dump(2) + "\n");
}

}  // namespace

ResourcesReport resources_report(const PairingSpec& spec, std::size_t nq_min, std::size_t nq_max,
                                 double accuracy_pct, const KrylovConfig& krylov_config,
                                 std::uint64_t seed) {
    spec.validate();
    if (nq_min < 1 || nq_min > nq_max)
        throw std::invalid_argument("resources_report: bad ancilla range");

    ResourcesReport report;
    report.accuracy_pct = accuracy_pct;

    const double e_gs = exact_spectrum(spec).front();
    const double e_hf = hf_energy(spec);
    const double correlation = std::abs(e_gs - e_hf);
    if (correlation == 0.0)
        throw std::invalid_argument("resources_report: zero exact correlation energy");

    // fixed canonical window; the n_q rows then scale exactly by powers of two
    const double e_max = default_emax(spec);
    for (std::size_t n_q = nq_min; n_q <= nq_max; ++n_q) {
        const QpeResources r = qpe_resources(n_q, 0.0, e_max);
        report.qpe_rows.push_back(
            {n_q, r.tau_qpe, r.delta_e, r.tau_total, r.delta_e / correlation * 100.0});
    }
    // minimal ancilla count whose bin width reaches the requested accuracy
    for (std::size_t n_q = 1; n_q <= 40; ++n_q) {
        const QpeResources r = qpe_resources(n_q, 0.0, e_max);
        if (r.delta_e / correlation * 100.0 <= accuracy_pct) {
            report.qpe_nq_at_accuracy = n_q;
            report.qpe_tau_at_accuracy = r.tau_total;
            break;
        }
    }

    const InitialState initials[] = {InitialState::hf, InitialState::qpav, InitialState::qvap};
    for (InitialState initial : initials) {
        const PreparedInitial prepared = prepare_initial(spec, initial, {}, seed, 0);
        Rng rng(seed);
        const KrylovResult scan = krylov_scan(prepared.state, spec, krylov_config, rng);
        const std::string name = to_string(initial);
        double tau_at_accuracy = std::numeric_limits<double>::quiet_NaN();
        for (const KrylovRecord& record : scan.records) {
            const double tau_total = double(record.m - 1) * krylov_config.d_tau;
            report.krylov_rows.push_back({name, record.m, tau_total, record.gs_error_pct});
            if (std::isnan(tau_at_accuracy) && record.gs_error_pct <= accuracy_pct)
                tau_at_accuracy = tau_total;
        }
        report.krylov_tau_at_accuracy[name] = tau_at_accuracy;
    }
    return report;
}

void run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto start = std::chrono::steady_clock::now();
    switch (config.experiment) {
        case ExperimentKind::vqe_sweep: run_vqe_sweep(config, out_dir); break;
        case ExperimentKind::qpe_spectrum: run_qpe_spectrum(config, out_dir); break;
        case ExperimentKind::krylov_scan: run_krylov_scan(config, out_dir); break;
        case ExperimentKind::qp_krylov: run_qp_krylov(config, out_dir); break;
        case ExperimentKind::exact: run_exact(config, out_dir); break;
        case ExperimentKind::resources: run_resources(config, out_dir); break;
    }
    // patch the wall time into the record written by the runner
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string slug = to_string(config.experiment);
    std::replace(slug.begin(), slug.end(), '-', '_');
    const std::filesystem::path record = out_dir / (slug + "_result.json");
    if (std::filesystem::exists(record)) {
        std::ifstream in(record);
        json j;
        in >> j;
        in.close();
        j["wall_time_seconds"] = elapsed;
        write_text_file(record, j.dump(2) + "\n");
    }
}

}  // namespace pairsim
