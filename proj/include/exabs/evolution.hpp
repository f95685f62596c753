// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file evolution.hpp
 * @brief Single-atom evolution operator for one classical light pulse.
 *
 * U = F(t_post) R F(t_pre), where F is free flight and R is an instantaneous
 * Rabi rotation by angle theta that flips the internal label and kicks the
 * centre of mass by +k_recoil (absorption) or -k_recoil (stimulated emission).
 * The two-channel output is exactly unitary.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "exabs/hilbert.hpp"

namespace exabs {

struct PulseModel {
    double theta = std::numbers::pi / 4; ///< rotation angle, absorption amplitude sin(theta)
    double k_recoil = 0.0;               ///< photon momentum (hbar = 1)
    double t_pre = 0.0;
    double t_post = 0.0;
    double mass = 1.0;
    BoundaryCheck boundary = BoundaryCheck::Guarded;

    void validate() const {
        require(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-15, ErrorKind::InvalidArgument,
                "theta must lie in [0, pi/2], got " + std::to_string(theta));
        require(k_recoil >= 0.0 && std::isfinite(k_recoil), ErrorKind::InvalidArgument,
                "k_recoil must be non-negative");
        require(t_pre >= 0.0 && t_post >= 0.0, ErrorKind::InvalidArgument,
                "free-flight times must be non-negative");
        require(mass > 0.0, ErrorKind::InvalidArgument, "mass must be positive");
    }
};

/// U|s> split by internal label. Channels are unnormalized.
struct ChannelPair {
    CMWaveFunction g_channel;
    CMWaveFunction e_channel;

    [[nodiscard]] const CMWaveFunction &channel(InternalLabel label) const noexcept {
        return label == InternalLabel::Ground ? g_channel : e_channel;
    }
    [[nodiscard]] double norm_sq() const noexcept { return g_channel.norm_sq() + e_channel.norm_sq(); }
};

inline ChannelPair apply_U(const PulseModel &model, const AtomState &s) {
    model.validate();
    const CMWaveFunction drifted = free_propagate(s.cm, model.t_pre, model.mass, model.boundary);
    const complex_t stay{std::cos(model.theta), 0.0};
    const complex_t flip = kI * std::sin(model.theta);

    ChannelPair out{CMWaveFunction(s.cm.grid()), CMWaveFunction(s.cm.grid())};
    if (s.internal == InternalLabel::Ground) {
        out.g_channel = stay * drifted;
        out.e_channel = flip * momentum_kick(drifted, model.k_recoil);
    } else {
        out.e_channel = stay * drifted;
        out.g_channel = flip * momentum_kick(drifted, -model.k_recoil);
    }
    out.g_channel = free_propagate(std::move(out.g_channel), model.t_post, model.mass, model.boundary);
    out.e_channel = free_propagate(std::move(out.e_channel), model.t_post, model.mass, model.boundary);
    return out;
}

/// <final| U |initial>
inline complex_t single_amplitude(const PulseModel &model, const AtomState &final_state,
                                  const AtomState &initial) {
    require_same_grid(final_state.cm, initial.cm);
    const ChannelPair evolved = apply_U(model, initial);
    return inner(final_state.cm, evolved.channel(final_state.internal));
}

/// Excited-channel CM states reached from phi and psi, i.e. U's own recoiled
/// packets F(t_post) K F(t_pre) phi. The factor i of the rotation is stripped, so
/// <phi~_e|U|phi_g> = i sin(theta).
inline std::pair<CMWaveFunction, CMWaveFunction>
default_final_states(const PulseModel &model, const CMWaveFunction &phi, const CMWaveFunction &psi) {
    require(model.theta > 0.0, ErrorKind::ZeroAmplitude, "theta = 0 leaves the excited channel empty");
    return {normalized(-kI * apply_U(model, ground(phi)).e_channel),
            normalized(-kI * apply_U(model, ground(psi)).e_channel)};
}

namespace detail {

// Twice-iterated Gram-Schmidt of v against unit vector u.
inline CMWaveFunction orthogonalize_against(CMWaveFunction v, const CMWaveFunction &u) {
    for (int pass = 0; pass < 2; ++pass) {
        v -= inner(u, v) * u;
    }
    return normalized(std::move(v));
}

} // namespace detail

/**
 * Final excited packets chosen so that the crossed channel vanishes:
 * phi_tilde is the recoiled image of phi with its component along the
 * recoiled image of psi removed, and vice versa. Then <phi_tilde_e|U|psi_g> = 0
 * and the two-atom amplitude reduces to its direct term.
 */
inline std::pair<CMWaveFunction, CMWaveFunction>
orthogonalized_final_states(const PulseModel &model, const CMWaveFunction &phi,
                            const CMWaveFunction &psi) {
    require(model.theta > 0.0, ErrorKind::ZeroAmplitude, "theta = 0 leaves the excited channel empty");
    const auto [e_phi, e_psi] = default_final_states(model, phi, psi);
    return {detail::orthogonalize_against(e_phi, e_psi), detail::orthogonalize_against(e_psi, e_phi)};
}

} // namespace exabs
