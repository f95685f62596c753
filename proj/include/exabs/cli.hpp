// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Command-line front end: ratio-scan, oracle-check, experiment, thermal, amplitude.
 *
 * Parameters come from a flat key=value file (--config) and from --key flags;
 * flags win. Exit codes: 0 success, 1 verification failure, 2 configuration
 * error, 3 physics-domain error.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exabs/errors.hpp"
#include "exabs/exchange.hpp"
#include "exabs/experiment.hpp"
#include "exabs/hilbert.hpp"
#include "exabs/oracle.hpp"

namespace exabs::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kConfigError = 2, kDomainError = 3 };

/// Grid, packet or input problems are configuration errors; everything else is physics.
inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::TooLarge:
    case ErrorKind::NonpositiveTemperature:
    case ErrorKind::GridTooCoarse:
    case ErrorKind::PacketTruncated:
    case ErrorKind::DimensionMismatch:
        return kConfigError;
    default:
        return kDomainError;
    }
}

/// Flat key=value file. Blank lines and '#' comments are skipped.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::InvalidArgument, "cannot open config file " + path);
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorKind::InvalidArgument,
                path + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

enum class Format { Csv, Json };

struct CommonOptions {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 20261017;
};

inline std::vector<Statistics> stats_list(const std::string &token) {
    if (token == "boson") {
        return {Statistics::Boson};
    }
    if (token == "fermion") {
        return {Statistics::Fermion};
    }
    return {Statistics::Boson, Statistics::Fermion};
}

inline Statistics single_stats(const std::string &token) {
    return token == "fermion" ? Statistics::Fermion : Statistics::Boson;
}

inline FinalStateChoice finals_choice(const std::string &token) {
    return token == "recoil" ? FinalStateChoice::Recoil : FinalStateChoice::Orthogonalized;
}

/// Full-precision number cell; NaN for absent values.
inline std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::string num(const std::optional<double> &v) {
    return num(v.value_or(std::numeric_limits<double>::quiet_NaN()));
}

inline nlohmann::json jnum(const std::optional<double> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

/// Row-oriented table emitted as CSV or as a JSON array of objects.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add(std::vector<std::string> cells, nlohmann::json object) {
        cells_.push_back(std::move(cells));
        objects_.push_back(std::move(object));
    }

    void write(std::ostream &os, Format fmt) const {
        if (fmt == Format::Json) {
            os << nlohmann::json(objects_).dump(2) << '\n';
            return;
        }
        write_row(os, columns_);
        for (const auto &row : cells_) {
            write_row(os, row);
        }
    }

private:
    static void write_row(std::ostream &os, const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << row[i];
        }
        os << '\n';
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<nlohmann::json> objects_;
};

// ---------------------------------------------------------------------------
// Parameter sets

struct GridParams {
    std::size_t n_points = 1024;
    double half_width = 32.0;
};

struct PulseParams {
    double theta = std::numbers::pi / 4;
    double k_recoil = 1.0;
    double t_pre = 0.0;
    double t_post = 0.0;
    double mass = 1.0;

    [[nodiscard]] PulseModel model() const {
        PulseModel m;
        m.theta = theta;
        m.k_recoil = k_recoil;
        m.t_pre = t_pre;
        m.t_post = t_post;
        m.mass = mass;
        return m;
    }
};

struct RatioScanParams {
    GridParams grid;
    PulseParams pulse;
    double sigma = 1.0;
    std::string stats = "both";
    std::string final_states = "orthogonalized";
    std::vector<double> x_values{0.0, 0.25, 0.5, 0.75};
};

struct OracleParams {
    std::size_t n_points = 64;
    double half_width = 32.0;
    std::size_t instances = 100;
    std::string stats = "both";
    double max_fermion_overlap = 0.99;
};

struct ExperimentParams {
    std::string species_name = "Rb-87";
    double species_mass = rubidium87().mass;
    double sigma0 = 1e-6;
    double v_mean = 1.0;
    double g_accel = si::standard_gravity;
    std::vector<double> delays;
    PulseParams pulse{std::numbers::pi / 4, 8.0529, 0.0, 0.0, 1.0};
    std::string stats = "boson";
    std::string final_states = "orthogonalized";
    std::uint64_t shots = 100000;
    double efficiency = 1.0;

    ExperimentParams() {
        for (int i = 0; i <= 24; ++i) {
            delays.push_back(0.25e-6 * i);
        }
    }
};

struct ThermalParams {
    std::string species_name = "Rb-87";
    double species_mass = rubidium87().mass;
    double spacing = 1e-6;
    std::vector<double> temperatures{1e-8, 2e-8, 4e-8, 8e-8, 1.6e-7, 3.2e-7, 6.4e-7,
                                     1.28e-6, 2.56e-6, 5.12e-6, 1.024e-5, 2.048e-5};
    PulseParams pulse;
};

struct AmplitudeParams {
    GridParams grid;
    PulseParams pulse;
    double center_phi = -1.0;
    double center_psi = 1.0;
    double sigma_phi = 1.0;
    double sigma_psi = 1.0;
    double k_phi = 0.0;
    double k_psi = 0.0;
    std::string stats = "boson";
    std::string final_states = "recoil";
};

// ---------------------------------------------------------------------------
// Commands

/// Gaussian pair on the scan grid with |<phi|psi>|^2 = target (closed form).
inline std::pair<CMWaveFunction, CMWaveFunction> pair_with_overlap(const GridSpec &grid, double sigma,
                                                                   double target) {
    constexpr double kFarSeparation = 16.0; // in sigma; overlap^2 = e^-64
    double separation = kFarSeparation;
    if (target > 0.0) {
        separation = std::min(kFarSeparation, 2.0 * std::sqrt(-std::log(std::min(target, 1.0))));
    }
    const double half = 0.5 * separation * sigma;
    return {make_gaussian(grid, -half, sigma, 0.0), make_gaussian(grid, half, sigma, 0.0)};
}

inline Table cmd_ratio_scan(const RatioScanParams &prm) {
    const GridSpec grid(prm.grid.n_points, -prm.grid.half_width, prm.grid.half_width);
    const PulseModel model = prm.pulse.model();
    model.validate();
    for (double x : prm.x_values) {
        require(x >= 0.0 && x <= 1.0, ErrorKind::InvalidArgument, "x_values must lie in [0, 1]");
    }
    Table table({"overlap_sq", "statistics", "p_two", "p_fac", "ratio", "ratio_eq13", "regime",
                 "status"});
    for (Statistics stats : stats_list(prm.stats)) {
        const double s = sign(stats);
        for (double target : prm.x_values) {
            auto [phi, psi] = pair_with_overlap(grid, prm.sigma, target);
            const double x = std::clamp(overlap_sq(phi, psi), 0.0, 1.0);
            std::optional<double> p_two, p_fac, r;
            const double closed_form_value = 1.0 / (1.0 + s * x);
            std::string regime = "full";
            RowStatus status = RowStatus::Ok;
            try {
                if (x > 1.0 - kDistinguishEpsilon) {
                    check_pauli(x, stats);
                    status = RowStatus::EqualState;
                    p_two = equal_state_probability(model, phi);
                    const auto [phi_t, unused] = default_final_states(model, phi, phi);
                    p_fac = factorized_probability({model, phi, phi, phi_t, phi_t, stats});
                } else {
                    const AbsorptionResult res = probability_decomposition(
                        make_problem(model, phi, psi, stats, finals_choice(prm.final_states)));
                    p_two = res.p_two;
                    p_fac = res.p_fac;
                    regime = std::string(to_string(res.crossed_negligible() ? Regime::CrossedNegligible
                                                                            : Regime::Full));
                }
                if (p_fac && *p_fac > 0.0) {
                    r = *p_two / *p_fac;
                }
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::PauliViolation) {
                    throw;
                }
                status = RowStatus::PauliViolation;
            }
            const bool pauli = status == RowStatus::PauliViolation;
            const double closed_form = pauli ? std::numeric_limits<double>::quiet_NaN() : closed_form_value;
            table.add({num(x), std::string(to_string(stats)), num(p_two), num(p_fac), num(r),
                       num(closed_form), regime, std::string(to_string(status))},
                      {{"overlap_sq", x},
                       {"statistics", to_string(stats)},
                       {"p_two", jnum(p_two)},
                       {"p_fac", jnum(p_fac)},
                       {"ratio", jnum(r)},
                       {"ratio_eq13", pauli ? nlohmann::json(nullptr) : nlohmann::json(closed_form)},
                       {"regime", regime},
                       {"status", to_string(status)}});
        }
    }
    return table;
}

struct OracleOutcome {
    Table table;
    nlohmann::json report;
    std::size_t passed = 0;
    std::size_t total = 0;
};

inline OracleOutcome cmd_oracle_check(const OracleParams &prm, std::uint64_t seed) {
    const GridSpec grid(prm.n_points, -prm.half_width, prm.half_width);
    oracle::check_size(grid);
    OracleOutcome out{Table({"instance", "statistics", "overlap_sq", "residual_phi", "residual_psi",
                             "residual_equal", "decomposition_residual", "status"}),
                      nlohmann::json::object()};
    nlohmann::json instances = nlohmann::json::array();
    std::size_t index = 0;
    for (Statistics stats : stats_list(prm.stats)) {
        oracle::InstanceGenerator gen(grid, seed + (stats == Statistics::Fermion ? 1 : 0));
        for (std::size_t i = 0; i < prm.instances; ++i, ++index) {
            auto [problem, ip] = gen.next(stats, prm.max_fermion_overlap);
            const oracle::EquivalenceReport rep = oracle::verify_equivalence(problem);
            const bool ok = rep.pass() && rep.decomposition_residual < 1e-12;
            out.passed += ok ? 1 : 0;
            ++out.total;
            const char *status = ok ? "PASS" : "FAIL";
            out.table.add({std::to_string(index), std::string(to_string(stats)), num(ip.overlap_sq),
                           num(rep.residual_phi), num(rep.residual_psi), num(rep.residual_equal),
                           num(rep.decomposition_residual), status},
                          {});
            instances.push_back({{"instance", index},
                                 {"statistics", to_string(stats)},
                                 {"center_phi", ip.center_phi},
                                 {"center_psi", ip.center_psi},
                                 {"sigma_phi", ip.sigma_phi},
                                 {"sigma_psi", ip.sigma_psi},
                                 {"k0_phi", ip.k0_phi},
                                 {"k0_psi", ip.k0_psi},
                                 {"theta", ip.model.theta},
                                 {"k_recoil", ip.model.k_recoil},
                                 {"t_pre", ip.model.t_pre},
                                 {"t_post", ip.model.t_post},
                                 {"overlap_sq", ip.overlap_sq},
                                 {"residual_phi", rep.residual_phi},
                                 {"residual_psi", rep.residual_psi},
                                 {"residual_equal", jnum(rep.residual_equal)},
                                 {"decomposition_residual", rep.decomposition_residual},
                                 {"status", status}});
        }
    }
    out.report = {{"seed", seed},
                  {"n_points", prm.n_points},
                  {"tolerance", oracle::kEquivalenceTolerance},
                  {"instances", instances},
                  {"passed", out.passed},
                  {"total", out.total},
                  {"status", out.passed == out.total ? "PASS" : "FAIL"}};
    return out;
}

inline DelayScanConfig experiment_config(const ExperimentParams &prm, std::uint64_t seed) {
    DelayScanConfig cfg;
    cfg.species = {prm.species_name, prm.species_mass};
    cfg.sigma0 = prm.sigma0;
    cfg.v_mean = prm.v_mean;
    cfg.g_accel = prm.g_accel;
    cfg.delays = prm.delays;
    cfg.model = prm.pulse.model();
    cfg.stats = single_stats(prm.stats);
    cfg.finals = finals_choice(prm.final_states);
    cfg.shots = prm.shots;
    cfg.seed = seed;
    cfg.efficiency = prm.efficiency;
    return cfg;
}

inline Table cmd_experiment(const ExperimentParams &prm, std::uint64_t seed) {
    Table table({"delay", "overlap_sq", "p_analytic", "detected", "shots", "regime", "status"});
    for (const CountRecord &rec : run_delay_scan(experiment_config(prm, seed))) {
        table.add({num(rec.delay), num(rec.overlap_sq), num(rec.p_analytic),
                   std::to_string(rec.detected), std::to_string(rec.shots),
                   std::string(to_string(rec.regime)), std::string(to_string(rec.status))},
                  {{"delay", rec.delay},
                   {"overlap_sq", rec.overlap_sq},
                   {"p_analytic", jnum(rec.p_analytic)},
                   {"detected", rec.detected},
                   {"shots", rec.shots},
                   {"regime", to_string(rec.regime)},
                   {"status", to_string(rec.status)}});
    }
    return table;
}

inline Table cmd_thermal(const ThermalParams &prm) {
    Table table({"T", "lambda_T", "overlap_sq_proxy", "ratio_boson", "ratio_fermion", "status"});
    const auto rows = qualitative_temperature_scan(prm.temperatures, {prm.species_name, prm.species_mass},
                                                   prm.spacing, prm.pulse.model());
    for (const ThermalRow &row : rows) {
        table.add({num(row.temperature), num(row.lambda_t), num(row.overlap_sq_proxy),
                   num(row.ratio_boson), num(row.ratio_fermion), std::string(to_string(row.status))},
                  {{"T", row.temperature},
                   {"lambda_T", row.lambda_t},
                   {"overlap_sq_proxy", row.overlap_sq_proxy},
                   {"ratio_boson", row.ratio_boson},
                   {"ratio_fermion", jnum(row.ratio_fermion)},
                   {"status", to_string(row.status)}});
    }
    return table;
}

inline nlohmann::json to_json(const AbsorptionResult &r) {
    const auto cjson = [](complex_t z) { return nlohmann::json{{"re", z.real()}, {"im", z.imag()}}; };
    return {{"statistics", to_string(r.stats)},
            {"overlap_sq", r.overlap_sq},
            {"norm_factor", r.norm_factor},
            {"m_direct", cjson(r.m_direct)},
            {"m_crossed", cjson(r.m_crossed)},
            {"m_total", cjson(r.m_total)},
            {"p_two", r.p_two},
            {"p_fac", r.p_fac},
            {"interference", r.interference},
            {"ratio", jnum(r.ratio)},
            {"regime", to_string(r.crossed_negligible() ? Regime::CrossedNegligible : Regime::Full)},
            {"decomposition_residual", r.decomposition_residual()}};
}

inline AbsorptionResult cmd_amplitude(const AmplitudeParams &prm) {
    const GridSpec grid(prm.grid.n_points, -prm.grid.half_width, prm.grid.half_width);
    const PulseModel model = prm.pulse.model();
    CMWaveFunction phi = make_gaussian(grid, prm.center_phi, prm.sigma_phi, prm.k_phi);
    CMWaveFunction psi = make_gaussian(grid, prm.center_psi, prm.sigma_psi, prm.k_psi);
    return probability_decomposition(make_problem(model, std::move(phi), std::move(psi),
                                                  single_stats(prm.stats),
                                                  finals_choice(prm.final_states)));
}

// ---------------------------------------------------------------------------
// Argument handling

namespace detail {

inline void add_pulse_options(CLI::App *sub, PulseParams &p) {
    sub->add_option("--theta", p.theta, "Rabi rotation angle in [0, pi/2]");
    sub->add_option("--k_recoil", p.k_recoil, "photon recoil wavenumber (grid units)");
    sub->add_option("--t_pre", p.t_pre, "free flight before the pulse");
    sub->add_option("--t_post", p.t_post, "free flight after the pulse");
    sub->add_option("--mass", p.mass, "atom mass (grid units)");
}

inline void add_grid_options(CLI::App *sub, GridParams &g) {
    sub->add_option("--n_points", g.n_points, "grid points (power of two)");
    sub->add_option("--half_width", g.half_width, "grid spans [-half_width, half_width)");
}

struct Parsed {
    CommonOptions common;
    RatioScanParams ratio;
    OracleParams oracle;
    ExperimentParams experiment;
    ThermalParams thermal;
    AmplitudeParams amplitude;
};

inline std::unique_ptr<CLI::App> build_app(Parsed &p) {
    auto app = std::make_unique<CLI::App>("Exchange-modified one-photon absorption of two identical atoms",
                                          "exabs");
    app->require_subcommand(1);
    const auto statistics = CLI::IsMember({"boson", "fermion", "both"});
    const auto single = CLI::IsMember({"boson", "fermion"});
    const auto finals = CLI::IsMember({"orthogonalized", "recoil"});

    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", p.common.config, "flat key=value parameter file");
        sub->add_option("--out", p.common.out, "output path (default stdout)");
        sub->add_option("--format", p.common.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", p.common.seed, "random seed");
    };

    auto *ratio = app->add_subcommand("ratio-scan", "P_two / P_fac against overlap^2");
    common(ratio);
    add_grid_options(ratio, p.ratio.grid);
    add_pulse_options(ratio, p.ratio.pulse);
    ratio->add_option("--sigma", p.ratio.sigma, "packet width");
    ratio->add_option("--stats", p.ratio.stats)->check(statistics);
    ratio->add_option("--final_states", p.ratio.final_states)->check(finals);
    ratio->add_option("--x_values", p.ratio.x_values, "target overlaps, comma separated")
        ->delimiter(',');

    auto *orc = app->add_subcommand("oracle-check", "analytic amplitudes against the dense oracle");
    common(orc);
    orc->add_option("--n_points", p.oracle.n_points, "grid points (<= 128)");
    orc->add_option("--half_width", p.oracle.half_width);
    orc->add_option("--instances", p.oracle.instances, "instances per statistics");
    orc->add_option("--stats", p.oracle.stats)->check(statistics);
    orc->add_option("--max_fermion_overlap", p.oracle.max_fermion_overlap);

    auto *exp = app->add_subcommand("experiment", "delay-controlled two-atom absorption counting");
    common(exp);
    add_pulse_options(exp, p.experiment.pulse);
    exp->add_option("--species_name", p.experiment.species_name);
    exp->add_option("--species_mass", p.experiment.species_mass, "kg");
    exp->add_option("--sigma0", p.experiment.sigma0, "packet width at the probe (m)");
    exp->add_option("--v_mean", p.experiment.v_mean, "fall speed at the probe (m/s)");
    exp->add_option("--g_accel", p.experiment.g_accel, "m/s^2");
    exp->add_option("--delays", p.experiment.delays, "release delays (s), comma separated")
        ->delimiter(',');
    exp->add_option("--stats", p.experiment.stats)->check(single);
    exp->add_option("--final_states", p.experiment.final_states)->check(finals);
    exp->add_option("--shots", p.experiment.shots, "runs per delay");
    exp->add_option("--efficiency", p.experiment.efficiency, "emission detection efficiency");

    auto *th = app->add_subcommand("thermal", "thermal wavelength and two-atom overlap proxy");
    common(th);
    add_pulse_options(th, p.thermal.pulse);
    th->add_option("--species_name", p.thermal.species_name);
    th->add_option("--species_mass", p.thermal.species_mass, "kg");
    th->add_option("--spacing", p.thermal.spacing, "mean interatomic distance (m)");
    th->add_option("--temperatures", p.thermal.temperatures, "K, comma separated")->delimiter(',');

    auto *amp = app->add_subcommand("amplitude", "single-instance absorption result");
    common(amp);
    add_grid_options(amp, p.amplitude.grid);
    add_pulse_options(amp, p.amplitude.pulse);
    amp->add_option("--center_phi", p.amplitude.center_phi);
    amp->add_option("--center_psi", p.amplitude.center_psi);
    amp->add_option("--sigma_phi", p.amplitude.sigma_phi);
    amp->add_option("--sigma_psi", p.amplitude.sigma_psi);
    amp->add_option("--k_phi", p.amplitude.k_phi);
    amp->add_option("--k_psi", p.amplitude.k_psi);
    amp->add_option("--stats", p.amplitude.stats)->check(single);
    amp->add_option("--final_states", p.amplitude.final_states)->check(finals);
    return app;
}

} // namespace detail

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    detail::Parsed parsed;
    std::unique_ptr<CLI::App> app = detail::build_app(parsed);
    CLI::App *sub = nullptr;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app->parse(reversed);
        sub = app->get_subcommands().front();

        if (!parsed.common.config.empty()) {
            // File values fill only the keys not given as flags, then everything is reparsed.
            std::vector<std::string> merged = args;
            for (const auto &[key, value] : read_config_file(parsed.common.config)) {
                const CLI::Option *opt = sub->get_option_no_throw("--" + key);
                if (opt == nullptr || key == "config") {
                    throw ConfigError("unknown config key '" + key + "' for " + sub->get_name());
                }
                if (opt->count() == 0) {
                    merged.push_back("--" + key);
                    merged.push_back(value);
                }
            }
            parsed = detail::Parsed{};
            app = detail::build_app(parsed);
            std::vector<std::string> rev(merged.rbegin(), merged.rend());
            app->parse(rev);
            sub = app->get_subcommands().front();
        }
    } catch (const CLI::CallForHelp &) {
        out << app->help();
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "ConfigError: " << e.what() << '\n';
        return kConfigError;
    } catch (const ConfigError &e) {
        err << "ConfigError: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error &e) {
        err << e.what() << '\n';
        return kConfigError;
    }

    const Format fmt = parsed.common.format == "json" ? Format::Json : Format::Csv;
    std::ofstream file;
    if (!parsed.common.out.empty()) {
        file.open(parsed.common.out, std::ios::out | std::ios::trunc);
        if (!file) {
            err << "ConfigError: cannot write " << parsed.common.out << '\n';
            return kConfigError;
        }
    }
    std::ostream &sink = parsed.common.out.empty() ? out : file;
    const std::string name = sub->get_name();
    try {
        if (name == "ratio-scan") {
            cmd_ratio_scan(parsed.ratio).write(sink, fmt);
        } else if (name == "oracle-check") {
            const OracleOutcome res = cmd_oracle_check(parsed.oracle, parsed.common.seed);
            if (fmt == Format::Json) {
                sink << res.report.dump(2) << '\n';
            } else {
                res.table.write(sink, fmt);
            }
            err << "oracle-check: " << res.passed << "/" << res.total << " instances within "
                << oracle::kEquivalenceTolerance << ": " << (res.passed == res.total ? "PASS" : "FAIL")
                << '\n';
            return res.passed == res.total ? kSuccess : kVerificationFailure;
        } else if (name == "experiment") {
            cmd_experiment(parsed.experiment, parsed.common.seed).write(sink, fmt);
        } else if (name == "thermal") {
            cmd_thermal(parsed.thermal).write(sink, fmt);
        } else if (name == "amplitude") {
            const AbsorptionResult r = cmd_amplitude(parsed.amplitude);
            if (fmt == Format::Json) {
                sink << to_json(r).dump(2) << '\n';
            } else {
                Table t({"statistics", "overlap_sq", "norm_factor", "m_direct_re", "m_direct_im",
                         "m_crossed_re", "m_crossed_im", "m_total_re", "m_total_im", "p_two", "p_fac",
                         "interference", "ratio"});
                t.add({std::string(to_string(r.stats)), num(r.overlap_sq), num(r.norm_factor),
                       num(r.m_direct.real()), num(r.m_direct.imag()), num(r.m_crossed.real()),
                       num(r.m_crossed.imag()), num(r.m_total.real()), num(r.m_total.imag()),
                       num(r.p_two), num(r.p_fac), num(r.interference), num(r.ratio)},
                      {});
                t.write(sink, fmt);
            }
        }
    } catch (const Error &e) {
        err << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kSuccess;
}

inline int run(int argc, char **argv, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

} // namespace exabs::cli
