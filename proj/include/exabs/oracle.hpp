// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracle.hpp
 * @brief Brute-force two-atom tensor-product space used to cross-check exchange.hpp.
 *
 * Single-atom index = label * n + j (label 0 = ground, 1 = excited).
 * Two-atom index = i1 * D + i2 with D = 2n. The single-atom U is assembled
 * as an explicit D x D matrix from a direct DFT (no FFT), and U (x) U is
 * applied factor-wise as U V U^T on the D x D reshaped state.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "exabs/evolution.hpp"
#include "exabs/exchange.hpp"
#include "exabs/hilbert.hpp"

namespace exabs::oracle {

/// Grid size above which dense assembly is refused.
inline constexpr std::size_t kMaxDensePoints = 128;
/// Analytic and dense amplitudes must agree to this absolute tolerance.
inline constexpr double kEquivalenceTolerance = 1e-10;

using DenseState = Eigen::VectorXcd;
using DenseUnitary = Eigen::MatrixXcd;

inline void check_size(const GridSpec &grid) {
    require(grid.size() <= kMaxDensePoints, ErrorKind::TooLarge,
            "dense oracle supports at most " + std::to_string(kMaxDensePoints) + " grid points, got " +
                std::to_string(grid.size()));
}

namespace detail {

// exp(-i k^2 t / 2m) in the plane-wave basis, as a dense n x n matrix.
inline Eigen::MatrixXcd dense_free_flight(const GridSpec &grid, double t, double mass) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    if (t == 0.0) {
        return Eigen::MatrixXcd::Identity(n, n);
    }
    Eigen::MatrixXcd forward(n, n);
    Eigen::MatrixXcd backward(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((m * j) % n) /
                                 static_cast<double>(n);
            forward(m, j) = std::polar(1.0, -angle);
            backward(j, m) = std::polar(1.0, angle);
        }
    }
    Eigen::VectorXcd phase(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const double k = grid.wavenumber(static_cast<std::size_t>(m));
        phase(m) = std::polar(1.0 / static_cast<double>(n), -k * k * t / (2.0 * mass));
    }
    return backward * phase.asDiagonal() * forward;
}

inline Eigen::VectorXcd kick_diagonal(const GridSpec &grid, double k) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        d(static_cast<Eigen::Index>(j)) = std::polar(1.0, k * grid.x(j));
    }
    return d;
}

inline Eigen::MatrixXcd block_diagonal(const Eigen::MatrixXcd &b) {
    const Eigen::Index n = b.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    out.topLeftCorner(n, n) = b;
    out.bottomRightCorner(n, n) = b;
    return out;
}

} // namespace detail

/// Dense single-atom U = F(t_post) R F(t_pre) on the (internal x CM) space.
inline DenseUnitary build_dense_unitary(const PulseModel &model, const GridSpec &grid) {
    check_size(grid);
    model.validate();
    const auto n = static_cast<Eigen::Index>(grid.size());
    const double c = std::cos(model.theta);
    const complex_t is = kI * std::sin(model.theta);

    Eigen::MatrixXcd rotation = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    rotation.topLeftCorner(n, n).diagonal().setConstant(c);
    rotation.bottomRightCorner(n, n).diagonal().setConstant(c);
    rotation.bottomLeftCorner(n, n).diagonal() = is * detail::kick_diagonal(grid, model.k_recoil);
    rotation.topRightCorner(n, n).diagonal() = is * detail::kick_diagonal(grid, -model.k_recoil);

    const auto pre = detail::block_diagonal(detail::dense_free_flight(grid, model.t_pre, model.mass));
    const auto post = detail::block_diagonal(detail::dense_free_flight(grid, model.t_post, model.mass));
    return post * rotation * pre;
}

/// max |U^dagger U - I|
inline double unitarity_defect(const DenseUnitary &u) {
    const DenseUnitary defect = u.adjoint() * u - DenseUnitary::Identity(u.rows(), u.cols());
    return defect.cwiseAbs().maxCoeff();
}

/// Single-atom vector (internal x CM), CM amplitudes scaled by sqrt(dx) so the
/// Euclidean inner product equals the grid inner product.
inline Eigen::VectorXcd embed(const AtomState &s) {
    const auto n = static_cast<Eigen::Index>(s.cm.size());
    const double w = std::sqrt(s.cm.grid().dx());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
    const Eigen::Index offset = s.internal == InternalLabel::Ground ? 0 : n;
    for (Eigen::Index j = 0; j < n; ++j) {
        v(offset + j) = w * s.cm[static_cast<std::size_t>(j)];
    }
    return v;
}

inline DenseState kron(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    DenseState out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

/// N (|phi_g>|psi_g> +- |psi_g>|phi_g>)
inline DenseState build_initial(const TwoParticleProblem &p) {
    check_size(p.phi.grid());
    require_same_grid(p.phi, p.psi);
    const double x = p.overlap_sq();
    const double norm = normalization_factor(x, p.stats);
    const auto phi_g = embed(ground(p.phi));
    const auto psi_g = embed(ground(p.psi));
    return norm * (kron(phi_g, psi_g) + sign(p.stats) * kron(psi_g, phi_g));
}

/// (|phi~_e>|psi_g> +- |psi_g>|phi~_e>)/sqrt(2); the psi~ branch is build_final(p.swapped()).
inline DenseState build_final(const TwoParticleProblem &p) {
    check_size(p.phi.grid());
    const auto excited_part = embed(excited(p.phi_tilde));
    const auto ground_part = embed(ground(p.psi));
    return (kron(excited_part, ground_part) + sign(p.stats) * kron(ground_part, excited_part)) /
           std::sqrt(2.0);
}

/// (|phi~_e>|phi_g> + |phi_g>|phi~_e>)/sqrt(2)
inline DenseState build_final_equal(const CMWaveFunction &phi_tilde, const CMWaveFunction &phi) {
    check_size(phi.grid());
    const auto excited_part = embed(excited(phi_tilde));
    const auto ground_part = embed(ground(phi));
    return (kron(excited_part, ground_part) + kron(ground_part, excited_part)) / std::sqrt(2.0);
}

/// (U (x) U) |state>
inline DenseState apply_two(const DenseUnitary &u, const DenseState &state) {
    const Eigen::Index d = u.rows();
    require(state.size() == d * d, ErrorKind::DimensionMismatch,
            "two-atom state does not match the single-atom unitary");
    using RowMajor = Eigen::Matrix<complex_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> v(state.data(), d, d);
    const RowMajor evolved = u * v * u.transpose();
    return Eigen::Map<const DenseState>(evolved.data(), d * d);
}

/// <final | evolved>
inline complex_t project_amplitude(const DenseState &final_state, const DenseState &evolved) {
    require(final_state.size() == evolved.size(), ErrorKind::DimensionMismatch,
            "projection between states of different dimension");
    return final_state.dot(evolved);
}

struct EquivalenceReport {
    complex_t analytic_phi{};
    complex_t dense_phi{};
    complex_t analytic_psi{};
    complex_t dense_psi{};
    double residual_phi = 0.0;
    double residual_psi = 0.0;
    /// Boson equal-state branch, evaluated with phi as both packets.
    std::optional<double> residual_equal;
    std::optional<double> p_equal;
    std::optional<double> p_fac_equal;
    double decomposition_residual = 0.0;
    double dense_norm_defect = 0.0;

    [[nodiscard]] bool pass() const {
        bool ok = residual_phi <= kEquivalenceTolerance && residual_psi <= kEquivalenceTolerance;
        if (residual_equal) {
            ok = ok && *residual_equal <= kEquivalenceTolerance &&
                 std::abs(*p_equal - *p_fac_equal) <= kEquivalenceTolerance;
        }
        return ok;
    }
};

/// Compares the closed-form amplitudes with dense projections on all final branches.
inline EquivalenceReport verify_equivalence(const TwoParticleProblem &p) {
    p.validate();
    const DenseUnitary u = build_dense_unitary(p.model, p.phi.grid());
    const DenseState evolved = apply_two(u, build_initial(p));

    EquivalenceReport rep;
    rep.dense_norm_defect = std::abs(evolved.norm() - 1.0);
    const AbsorptionResult phi_branch = probability_decomposition(p);
    rep.analytic_phi = phi_branch.m_total;
    rep.dense_phi = project_amplitude(build_final(p), evolved);
    rep.residual_phi = std::abs(rep.analytic_phi - rep.dense_phi);
    rep.decomposition_residual = std::abs(phi_branch.decomposition_residual());

    const TwoParticleProblem swapped = p.swapped();
    // Swapping phi and psi multiplies the initial vector by the exchange sign.
    rep.analytic_psi = sign(p.stats) * transition_amplitude(swapped).m_total;
    rep.dense_psi = project_amplitude(build_final(swapped), evolved);
    rep.residual_psi = std::abs(rep.analytic_psi - rep.dense_psi);

    if (p.stats == Statistics::Boson && p.model.theta > 0.0) {
        const CMWaveFunction phi_tilde = default_final_states(p.model, p.phi, p.phi).first;
        const TwoParticleProblem same{p.model, p.phi, p.phi, phi_tilde, phi_tilde, p.stats};
        const DenseState evolved_eq = apply_two(u, build_initial(same));
        const complex_t dense_eq = project_amplitude(build_final_equal(phi_tilde, p.phi), evolved_eq);
        const complex_t analytic_eq = equal_state_amplitude(p.model, p.phi);
        rep.residual_equal = std::abs(dense_eq - analytic_eq);
        rep.p_equal = std::norm(analytic_eq);
        rep.p_fac_equal = factorized_probability(same);
    }
    return rep;
}

/// Parameters of one randomized instance, kept for the verification report.
struct InstanceParameters {
    double center_phi = 0.0;
    double center_psi = 0.0;
    double sigma_phi = 0.0;
    double sigma_psi = 0.0;
    double k0_phi = 0.0;
    double k0_psi = 0.0;
    PulseModel model;
    Statistics stats = Statistics::Boson;
    double overlap_sq = 0.0;
};

/**
 * Randomized problems: centers uniform in the middle half of the domain,
 * sigma uniform in [4 dx, 16 dx], theta in [0.1, 1.4], k_recoil in [0, 4/sigma],
 * free-flight times in [0, sigma^2] (unit mass). Packets may be truncated by
 * the cell; every operator is applied on the periodic grid.
 */
class InstanceGenerator {
public:
    InstanceGenerator(GridSpec grid, std::uint64_t seed) : grid_(grid), rng_(seed) {}

    /// Fermion draws are rejected until overlap^2 < max_fermion_overlap.
    std::pair<TwoParticleProblem, InstanceParameters> next(Statistics stats,
                                                           double max_fermion_overlap = 0.99) {
        for (;;) {
            InstanceParameters ip = draw(stats);
            const CMWaveFunction phi = make_gaussian(grid_, ip.center_phi, ip.sigma_phi, ip.k0_phi,
                                                     BoundaryCheck::Periodic);
            const CMWaveFunction psi = make_gaussian(grid_, ip.center_psi, ip.sigma_psi, ip.k0_psi,
                                                     BoundaryCheck::Periodic);
            ip.overlap_sq = exabs::overlap_sq(phi, psi);
            if (stats == Statistics::Fermion && ip.overlap_sq >= max_fermion_overlap) {
                continue;
            }
            return {make_problem(ip.model, phi, psi, stats), ip};
        }
    }

private:
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    InstanceParameters draw(Statistics stats) {
        const double lo = grid_.x_min() + 0.25 * grid_.length();
        const double hi = grid_.x_max() - 0.25 * grid_.length();
        const double dx = grid_.dx();
        InstanceParameters ip;
        ip.stats = stats;
        ip.center_phi = uniform(lo, hi);
        ip.center_psi = uniform(lo, hi);
        ip.sigma_phi = uniform(4.0 * dx, 16.0 * dx);
        ip.sigma_psi = uniform(4.0 * dx, 16.0 * dx);
        ip.k0_phi = uniform(-1.0, 1.0) / ip.sigma_phi;
        ip.k0_psi = uniform(-1.0, 1.0) / ip.sigma_psi;
        const double sigma = std::min(ip.sigma_phi, ip.sigma_psi);
        ip.model.theta = uniform(0.1, 1.4);
        ip.model.k_recoil = uniform(0.0, 4.0 / sigma);
        ip.model.t_pre = uniform(0.0, sigma * sigma);
        ip.model.t_post = uniform(0.0, sigma * sigma);
        ip.model.mass = 1.0;
        ip.model.boundary = BoundaryCheck::Periodic;
        return ip;
    }

    GridSpec grid_;
    std::mt19937_64 rng_;
};

} // namespace exabs::oracle
