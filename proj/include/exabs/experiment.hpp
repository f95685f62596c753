// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file experiment.hpp
 * @brief Statistical model of the two-atom absorption experiment.
 *
 * Two atoms are released from a trap with a tunable delay, fall through a
 * probe pulse and are counted through their spontaneous emission. The delay
 * sets the relative displacement and momentum of the two packets and hence
 * their overlap. Detection is one Bernoulli trial per run with probability
 * (absorption probability) x (efficiency).
 *
 * SI quantities enter here only. Internally lengths are measured in units of
 * the packet width sigma0, hbar = 1 and the PulseModel is given in those grid
 * units (k_recoil in 1/sigma0, mass 1).
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exabs/evolution.hpp"
#include "exabs/exchange.hpp"
#include "exabs/hilbert.hpp"

namespace exabs {

namespace si {
inline constexpr double planck = 6.62607015e-34;  // J s (exact)
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double boltzmann = 1.380649e-23; // J/K (exact)
inline constexpr double standard_gravity = 9.80665;
} // namespace si

struct AtomSpecies {
    std::string name;
    double mass = 0.0; // kg

    void validate() const {
        require(mass > 0.0 && std::isfinite(mass), ErrorKind::InvalidArgument,
                "species mass must be positive");
    }
};

inline AtomSpecies rubidium87() { return {"Rb-87", 1.44316e-25}; }

/// lambda_T = h / sqrt(2 pi m k_B T)
inline double thermal_wavelength(double temperature, const AtomSpecies &species) {
    require(temperature > 0.0 && std::isfinite(temperature), ErrorKind::NonpositiveTemperature,
            "temperature must be positive, got " + std::to_string(temperature));
    species.validate();
    return si::planck /
           std::sqrt(2.0 * std::numbers::pi * species.mass * si::boltzmann * temperature);
}

/// Width of a minimum-uncertainty packet whose momentum spread is thermal:
/// sigma_p = sqrt(m k_B T), sigma_x = hbar / (2 sigma_p) = lambda_T / (2 sqrt(2 pi)).
inline double thermal_packet_width(double lambda_t) {
    return lambda_t / (2.0 * std::sqrt(2.0 * std::numbers::pi));
}

enum class Regime { CrossedNegligible, Full };
enum class RowStatus { Ok, EqualState, PauliViolation };

constexpr std::string_view to_string(Regime r) noexcept {
    return r == Regime::CrossedNegligible ? "crossed-negligible" : "full";
}

constexpr std::string_view to_string(RowStatus s) noexcept {
    switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::EqualState: return "equal-state";
    case RowStatus::PauliViolation: return "PauliViolation";
    }
    return "unknown";
}

struct DelayScanConfig {
    AtomSpecies species = rubidium87();
    double sigma0 = 1e-6;  // m
    double v_mean = 1.0;   // m/s
    double g_accel = si::standard_gravity;
    std::vector<double> delays; // s
    PulseModel model;
    Statistics stats = Statistics::Boson;
    FinalStateChoice finals = FinalStateChoice::Orthogonalized;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 0;
    double efficiency = 1.0;
    /// Grid spacing in units of sigma0.
    double grid_spacing = 0.125;
    /// Empty cell left on each side of the displaced pair, in units of sigma0.
    double grid_margin = 12.0;

    void validate() const {
        species.validate();
        model.validate();
        require(sigma0 > 0.0, ErrorKind::InvalidArgument, "sigma0 must be positive");
        require(shots >= 1, ErrorKind::InvalidArgument, "shots must be at least 1");
        require(efficiency >= 0.0 && efficiency <= 1.0, ErrorKind::InvalidArgument,
                "efficiency must lie in [0, 1]");
        require(grid_spacing > 0.0 && grid_spacing <= 0.25, ErrorKind::InvalidArgument,
                "grid spacing must lie in (0, 0.25] sigma0");
        for (double d : delays) {
            require(d >= 0.0 && std::isfinite(d), ErrorKind::InvalidArgument,
                    "delays must be non-negative");
        }
    }
};

/// Relative displacement (m) and wavenumber (1/m) between the two packets.
struct DelayOffsets {
    double dx = 0.0;
    double dk = 0.0;
};

inline DelayOffsets delay_offsets(const DelayScanConfig &cfg, double delay) {
    return {cfg.v_mean * delay + 0.5 * cfg.g_accel * delay * delay,
            cfg.species.mass * cfg.g_accel * delay / si::hbar};
}

/// Symmetric grid (units of sigma0) holding every displacement of the scan.
inline GridSpec scan_grid(const DelayScanConfig &cfg) {
    double widest = 0.0;
    for (double d : cfg.delays) {
        widest = std::max(widest, std::abs(delay_offsets(cfg, d).dx) / cfg.sigma0);
    }
    const double half = 0.5 * widest + cfg.grid_margin;
    const auto cells = static_cast<std::size_t>(std::ceil(2.0 * half / cfg.grid_spacing));
    const std::size_t n = std::bit_ceil(std::max<std::size_t>(cells, 2));
    const double h = 0.5 * static_cast<double>(n) * cfg.grid_spacing;
    return GridSpec(n, -h, h);
}

/**
 * The earlier-released atom (phi) leads by dx and moves faster by dk; both
 * packets have width sigma0 (1 in grid units). delay = 0 gives phi = psi.
 */
inline std::pair<CMWaveFunction, CMWaveFunction>
delay_to_states(const DelayScanConfig &cfg, const GridSpec &grid, double delay) {
    const DelayOffsets off = delay_offsets(cfg, delay);
    const double shift = 0.5 * off.dx / cfg.sigma0;
    const double kick = 0.5 * off.dk * cfg.sigma0;
    return {make_gaussian(grid, shift, 1.0, kick), make_gaussian(grid, -shift, 1.0, -kick)};
}

inline std::pair<CMWaveFunction, CMWaveFunction> delay_to_states(const DelayScanConfig &cfg,
                                                                 double delay) {
    return delay_to_states(cfg, scan_grid(cfg), delay);
}

struct CountRecord {
    double delay = 0.0;
    double overlap_sq = 0.0;
    std::optional<double> p_analytic;
    std::uint64_t detected = 0;
    std::uint64_t shots = 0;
    Regime regime = Regime::Full;
    RowStatus status = RowStatus::Ok;

    friend bool operator==(const CountRecord &, const CountRecord &) = default;
};

/// Binomial(shots, p) from a stream keyed on (seed, point index).
inline std::uint64_t draw_detections(std::uint64_t shots, double p, std::uint64_t seed,
                                     std::uint64_t index) {
    p = std::clamp(p, 0.0, 1.0);
    if (p == 0.0) {
        return 0;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::binomial_distribution<std::uint64_t> dist(shots, p);
    return dist(rng);
}

inline CountRecord evaluate_delay(const DelayScanConfig &cfg, const GridSpec &grid, double delay,
                                  std::uint64_t index) {
    auto [phi, psi] = delay_to_states(cfg, grid, delay);
    CountRecord rec;
    rec.delay = delay;
    rec.shots = cfg.shots;
    rec.overlap_sq = std::clamp(overlap_sq(phi, psi), 0.0, 1.0);

    if (rec.overlap_sq > 1.0 - kDistinguishEpsilon) {
        if (cfg.stats == Statistics::Fermion) {
            rec.status = RowStatus::PauliViolation;
            return rec;
        }
        rec.status = RowStatus::EqualState;
        rec.p_analytic = equal_state_probability(cfg.model, phi);
    } else {
        const TwoParticleProblem p = make_problem(cfg.model, std::move(phi), std::move(psi),
                                                  cfg.stats, cfg.finals);
        rec.p_analytic = total_absorption_probability(p);
        const bool negligible = transition_amplitude(p).crossed_negligible() &&
                                transition_amplitude(p.swapped()).crossed_negligible();
        rec.regime = negligible ? Regime::CrossedNegligible : Regime::Full;
    }
    rec.detected = draw_detections(cfg.shots, *rec.p_analytic * cfg.efficiency, cfg.seed, index);
    return rec;
}

inline std::vector<CountRecord> run_delay_scan(const DelayScanConfig &cfg) {
    cfg.validate();
    const GridSpec grid = scan_grid(cfg);
    std::vector<CountRecord> out;
    out.reserve(cfg.delays.size());
    for (std::size_t i = 0; i < cfg.delays.size(); ++i) {
        out.push_back(evaluate_delay(cfg, grid, cfg.delays[i], i));
    }
    return out;
}

struct ThermalRow {
    double temperature = 0.0;
    double lambda_t = 0.0;
    double overlap_sq_proxy = 0.0;
    double ratio_boson = 0.0;
    std::optional<double> ratio_fermion;
    RowStatus status = RowStatus::Ok;
};

/// Separation (in packet widths) beyond which the pair is placed at this cap; the
/// overlap there is below 1e-40.
inline constexpr double kMaxProxySeparation = 20.0;

/**
 * Two-atom proxy for the many-atom temperature scan: a pair of thermal-width
 * packets (sigma_T = lambda_T / (2 sqrt(2 pi))) at the mean interatomic
 * distance, overlap^2 = exp(-d^2 / (4 sigma_T^2)). Ratios come from the full
 * two-atom amplitude with the crossed channel projected out.
 */
inline std::vector<ThermalRow> qualitative_temperature_scan(const std::vector<double> &temperatures,
                                                            const AtomSpecies &species,
                                                            double spacing, PulseModel model) {
    require(spacing > 0.0, ErrorKind::InvalidArgument, "interatomic spacing must be positive");
    model.validate();
    const GridSpec grid(512, -24.0, 24.0);
    std::vector<ThermalRow> rows;
    rows.reserve(temperatures.size());
    for (double t : temperatures) {
        ThermalRow row;
        row.temperature = t;
        row.lambda_t = thermal_wavelength(t, species);
        const double separation = spacing / thermal_packet_width(row.lambda_t);
        row.overlap_sq_proxy = std::exp(-0.25 * separation * separation);

        const double placed = std::min(separation, kMaxProxySeparation);
        const CMWaveFunction phi = make_gaussian(grid, 0.5 * placed, 1.0, 0.0);
        const CMWaveFunction psi = make_gaussian(grid, -0.5 * placed, 1.0, 0.0);
        if (overlap_sq(phi, psi) > 1.0 - kDistinguishEpsilon) {
            row.status = RowStatus::EqualState;
            row.ratio_boson = 1.0; // symmetrized and factorized coincide
        } else {
            row.ratio_boson = ratio(make_problem(model, phi, psi, Statistics::Boson,
                                                 FinalStateChoice::Orthogonalized));
        }
        if (overlap_sq(phi, psi) > 1.0 - kPauliEpsilon) {
            row.status = RowStatus::PauliViolation;
        } else {
            row.ratio_fermion = ratio(make_problem(model, phi, psi, Statistics::Fermion,
                                                   FinalStateChoice::Orthogonalized));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace exabs
