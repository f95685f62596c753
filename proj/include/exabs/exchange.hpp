// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file exchange.hpp
 * @brief One-photon absorption by two identical atoms in (anti)symmetrized states.
 *
 * The initial two-atom state is N (|phi_g>|psi_g> +- |psi_g>|phi_g>) with
 * N = 1/sqrt(2(1 +- x)), x = |<phi|psi>|^2. Projecting U (x) U onto the final
 * mixture branch (|phi~_e>|psi_g> +- |psi_g>|phi~_e>)/sqrt(2) gives
 *
 *   M = (D +- C) / sqrt(1 +- x),
 *   D = <phi~_e|U|phi_g> <psi_g|U|psi_g>      (direct)
 *   C = <phi~_e|U|psi_g> <psi_g|U|phi_g>      (crossed)
 *
 * Upper sign bosons, lower sign fermions. The factorized baseline is
 * |D|^2, so the ratio is 1/(1 +- x) whenever C vanishes.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "exabs/evolution.hpp"
#include "exabs/hilbert.hpp"

namespace exabs {

enum class Statistics { Boson, Fermion };

constexpr double sign(Statistics s) noexcept { return s == Statistics::Boson ? 1.0 : -1.0; }

constexpr std::string_view to_string(Statistics s) noexcept {
    return s == Statistics::Boson ? "boson" : "fermion";
}

/// Fermion states with x above 1 - kPauliEpsilon are treated as identically zero.
inline constexpr double kPauliEpsilon = 1e-9;
/// Two CM states with fidelity above 1 - kDistinguishEpsilon count as the same state.
inline constexpr double kDistinguishEpsilon = 1e-9;
/// |C| <= kCrossedNegligible |D| defines the direct-only regime.
inline constexpr double kCrossedNegligible = 1e-6;

inline void check_pauli(double x, Statistics stats) {
    if (stats == Statistics::Fermion && x > 1.0 - kPauliEpsilon) {
        raise(ErrorKind::PauliViolation,
              "antisymmetrized state vanishes for overlap^2 = " + std::to_string(x));
    }
}

/// N_i = 1/sqrt(2 (1 +- x))
inline double normalization_factor(double x, Statistics stats) {
    require(x >= 0.0 && x <= 1.0 + kNormTolerance, ErrorKind::InvalidArgument,
            "overlap^2 must lie in [0, 1]");
    check_pauli(x, stats);
    return 1.0 / std::sqrt(2.0 * (1.0 + sign(stats) * std::min(x, 1.0)));
}

enum class FinalStateChoice {
    Recoil,         ///< U's own excited-channel packets
    Orthogonalized, ///< recoil packets with the crossed channel projected out
};

struct TwoParticleProblem {
    PulseModel model;
    CMWaveFunction phi;
    CMWaveFunction psi;
    CMWaveFunction phi_tilde;
    CMWaveFunction psi_tilde;
    Statistics stats = Statistics::Boson;

    /// |<phi|psi>|^2 clamped to [0, 1].
    [[nodiscard]] double overlap_sq() const {
        return std::clamp(exabs::overlap_sq(phi, psi), 0.0, 1.0);
    }

    /// Same initial CM state up to a phase.
    [[nodiscard]] bool equal_initial_states() const {
        return overlap_sq() > 1.0 - kDistinguishEpsilon;
    }

    void validate() const {
        model.validate();
        for (const CMWaveFunction *s : {&psi, &phi_tilde, &psi_tilde}) {
            require_same_grid(phi, *s);
        }
        for (const CMWaveFunction *s : {&phi, &psi, &phi_tilde, &psi_tilde}) {
            require(s->is_normalized(), ErrorKind::InvalidArgument,
                    "problem states must be normalized");
        }
        check_pauli(overlap_sq(), stats);
    }

    /// Roles of the two initial packets exchanged; gives the psi~ final branch.
    [[nodiscard]] TwoParticleProblem swapped() const {
        return {model, psi, phi, psi_tilde, phi_tilde, stats};
    }
};

inline TwoParticleProblem make_problem(const PulseModel &model, CMWaveFunction phi, CMWaveFunction psi,
                                       CMWaveFunction phi_tilde, CMWaveFunction psi_tilde,
                                       Statistics stats) {
    TwoParticleProblem p{model, std::move(phi), std::move(psi), std::move(phi_tilde),
                         std::move(psi_tilde), stats};
    p.validate();
    return p;
}

inline TwoParticleProblem make_problem(const PulseModel &model, CMWaveFunction phi, CMWaveFunction psi,
                                       Statistics stats,
                                       FinalStateChoice finals = FinalStateChoice::Recoil) {
    // Pauli first: the orthogonalized finals are undefined for equal initial states.
    require_same_grid(phi, psi);
    check_pauli(std::clamp(exabs::overlap_sq(phi, psi), 0.0, 1.0), stats);
    auto [phi_t, psi_t] = finals == FinalStateChoice::Recoil
                              ? default_final_states(model, phi, psi)
                              : orthogonalized_final_states(model, phi, psi);
    return make_problem(model, std::move(phi), std::move(psi), std::move(phi_t), std::move(psi_t),
                        stats);
}

struct AbsorptionResult {
    Statistics stats = Statistics::Boson;
    double overlap_sq = 0.0;
    double norm_factor = 0.0;
    complex_t m_direct{};
    complex_t m_crossed{};
    complex_t m_total{};
    double p_two = 0.0;
    double p_fac = 0.0;
    double interference = 0.0;
    std::optional<double> ratio;

    [[nodiscard]] bool crossed_negligible() const noexcept {
        return std::abs(m_crossed) <= kCrossedNegligible * std::abs(m_direct);
    }

    /// (1 +- x) p_two - (|D|^2 + |C|^2 +- interference)
    [[nodiscard]] double decomposition_residual() const noexcept {
        const double s = sign(stats);
        return (1.0 + s * overlap_sq) * p_two -
               (std::norm(m_direct) + std::norm(m_crossed) + s * interference);
    }
};

/// Amplitude fields of the phi~ branch.
inline AbsorptionResult transition_amplitude(const TwoParticleProblem &p) {
    p.validate();
    const PulseModel &u = p.model;
    const AtomState phi_g = ground(p.phi);
    const AtomState psi_g = ground(p.psi);
    const AtomState phi_t_e = excited(p.phi_tilde);

    AbsorptionResult r;
    r.stats = p.stats;
    r.overlap_sq = p.overlap_sq();
    r.norm_factor = normalization_factor(r.overlap_sq, p.stats);
    r.m_direct = single_amplitude(u, phi_t_e, phi_g) * single_amplitude(u, psi_g, psi_g);
    r.m_crossed = single_amplitude(u, phi_t_e, psi_g) * single_amplitude(u, psi_g, phi_g);
    const double s = sign(p.stats);
    r.m_total = (r.m_direct + s * r.m_crossed) / std::sqrt(1.0 + s * r.overlap_sq);
    return r;
}

/// P_sin(phi_g -> phi~_e) P_sin(psi_g -> psi_g), doubled for equal initial states.
inline double factorized_probability(const TwoParticleProblem &p) {
    require_same_grid(p.phi, p.psi);
    require_same_grid(p.phi, p.phi_tilde);
    const double p_abs = std::norm(single_amplitude(p.model, excited(p.phi_tilde), ground(p.phi)));
    const double p_stay = std::norm(single_amplitude(p.model, ground(p.psi), ground(p.psi)));
    const double base = p_abs * p_stay;
    return p.equal_initial_states() ? 2.0 * base : base;
}

/// Full result for the phi~ branch: amplitudes, probabilities, baseline and ratio.
inline AbsorptionResult probability_decomposition(const TwoParticleProblem &p) {
    AbsorptionResult r = transition_amplitude(p);
    r.p_two = std::norm(r.m_total);
    r.interference = 2.0 * std::real(std::conj(r.m_direct) * r.m_crossed);
    r.p_fac = factorized_probability(p);
    if (r.p_fac > 0.0) {
        r.ratio = r.p_two / r.p_fac;
    }
    return r;
}

/// P_two / P_two^fac from the complete amplitude.
inline double ratio(const TwoParticleProblem &p) {
    const AbsorptionResult r = probability_decomposition(p);
    require(r.ratio.has_value(), ErrorKind::DegenerateBaseline, "factorized probability is zero");
    return *r.ratio;
}

/// Sum of the phi~ and psi~ branch probabilities (distinguishable final mixtures).
inline double total_absorption_probability(const TwoParticleProblem &p) {
    const double fidelity = exabs::overlap_sq(p.phi_tilde, p.psi_tilde);
    require(fidelity < 1.0 - kDistinguishEpsilon, ErrorKind::IndistinguishableFinals,
            "final CM states coincide; use the equal-state probability");
    return std::norm(transition_amplitude(p).m_total) +
           std::norm(transition_amplitude(p.swapped()).m_total);
}

/// sqrt(2) <phi~_e|U|phi_g> <phi_g|U|phi_g>, phi~ the recoiled packet.
inline complex_t equal_state_amplitude(const PulseModel &model, const CMWaveFunction &phi,
                                       Statistics stats = Statistics::Boson) {
    require(stats == Statistics::Boson, ErrorKind::FermionEqualState,
            "two fermions cannot share a CM state");
    model.validate();
    require(phi.is_normalized(), ErrorKind::InvalidArgument, "phi must be normalized");
    if (model.theta == 0.0) {
        return {0.0, 0.0};
    }
    const CMWaveFunction phi_tilde = default_final_states(model, phi, phi).first;
    return std::sqrt(2.0) * single_amplitude(model, excited(phi_tilde), ground(phi)) *
           single_amplitude(model, ground(phi), ground(phi));
}

inline double equal_state_probability(const PulseModel &model, const CMWaveFunction &phi,
                                      Statistics stats = Statistics::Boson) {
    return std::norm(equal_state_amplitude(model, phi, stats));
}

} // namespace exabs
