// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hilbert.hpp
 * @brief Discretized single-particle centre-of-mass Hilbert space.
 *
 * Wavefunctions live on a uniform periodic 1-D grid. Units are natural
 * (hbar = 1); amplitudes carry dimension length^(-1/2) so that
 * sum_j |amp_j|^2 dx is the dimensionless norm.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exabs/detail/fft.hpp"
#include "exabs/errors.hpp"

namespace exabs {

using complex_t = std::complex<double>;
using cvector_t = std::vector<complex_t>;

inline constexpr complex_t kI{0.0, 1.0};

/// Tolerance used to decide that a state counts as normalized.
inline constexpr double kNormTolerance = 1e-12;
/// Boundary amplitude (relative to peak) above which a fresh packet is truncated.
inline constexpr double kTruncationThreshold = 1e-8;
/// Boundary amplitude (relative to peak) above which propagation has wrapped.
inline constexpr double kWrapThreshold = 1e-6;

class GridSpec {
public:
    GridSpec(std::size_t n_points, double x_min, double x_max)
        : n_points_(n_points), x_min_(x_min), x_max_(x_max) {
        require(n_points >= 2 && std::has_single_bit(n_points), ErrorKind::InvalidArgument,
                "grid size must be a power of two, got " + std::to_string(n_points));
        require(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min,
                ErrorKind::InvalidArgument, "grid requires x_min < x_max");
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_points_; }
    [[nodiscard]] double x_min() const noexcept { return x_min_; }
    [[nodiscard]] double x_max() const noexcept { return x_max_; }
    [[nodiscard]] double length() const noexcept { return x_max_ - x_min_; }
    [[nodiscard]] double dx() const noexcept { return length() / static_cast<double>(n_points_); }
    [[nodiscard]] double x(std::size_t j) const noexcept {
        return x_min_ + static_cast<double>(j) * dx();
    }

    /// Angular wavenumber of DFT bin m in FFTW ordering.
    [[nodiscard]] double wavenumber(std::size_t m) const noexcept {
        const auto n = static_cast<long long>(n_points_);
        auto signed_m = static_cast<long long>(m);
        if (signed_m >= n / 2) {
            signed_m -= n;
        }
        return 2.0 * std::numbers::pi * static_cast<double>(signed_m) / length();
    }

    friend bool operator==(const GridSpec &, const GridSpec &) = default;

private:
    std::size_t n_points_;
    double x_min_;
    double x_max_;
};

/// Complex amplitudes of a centre-of-mass state sampled on a GridSpec.
class CMWaveFunction {
public:
    explicit CMWaveFunction(GridSpec grid) : grid_(grid), amp_(grid.size()) {}

    CMWaveFunction(GridSpec grid, cvector_t amp) : grid_(grid), amp_(std::move(amp)) {
        require(amp_.size() == grid_.size(), ErrorKind::DimensionMismatch,
                "amplitude count does not match grid size");
    }

    [[nodiscard]] const GridSpec &grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return amp_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept { return amp_; }
    [[nodiscard]] std::span<complex_t> amplitudes() noexcept { return amp_; }
    [[nodiscard]] complex_t operator[](std::size_t j) const noexcept { return amp_[j]; }
    [[nodiscard]] complex_t &operator[](std::size_t j) noexcept { return amp_[j]; }

    [[nodiscard]] double norm_sq() const noexcept {
        double acc = 0.0;
        for (const auto &a : amp_) {
            acc += std::norm(a);
        }
        return acc * grid_.dx();
    }

    [[nodiscard]] bool is_normalized(double tol = kNormTolerance) const noexcept {
        return std::abs(norm_sq() - 1.0) <= tol;
    }

    [[nodiscard]] double peak() const noexcept {
        double p = 0.0;
        for (const auto &a : amp_) {
            p = std::max(p, std::abs(a));
        }
        return p;
    }

    /// Largest modulus at the two ends of the periodic cell.
    [[nodiscard]] double boundary() const noexcept {
        return std::max(std::abs(amp_.front()), std::abs(amp_.back()));
    }

    CMWaveFunction &operator*=(complex_t s) noexcept {
        for (auto &a : amp_) {
            a *= s;
        }
        return *this;
    }

    CMWaveFunction &operator+=(const CMWaveFunction &other) {
        require(grid_ == other.grid_, ErrorKind::GridMismatch, "cannot add states on different grids");
        for (std::size_t j = 0; j < amp_.size(); ++j) {
            amp_[j] += other.amp_[j];
        }
        return *this;
    }

    CMWaveFunction &operator-=(const CMWaveFunction &other) {
        require(grid_ == other.grid_, ErrorKind::GridMismatch,
                "cannot subtract states on different grids");
        for (std::size_t j = 0; j < amp_.size(); ++j) {
            amp_[j] -= other.amp_[j];
        }
        return *this;
    }

    friend CMWaveFunction operator*(complex_t s, CMWaveFunction psi) { return psi *= s; }
    friend CMWaveFunction operator+(CMWaveFunction a, const CMWaveFunction &b) { return a += b; }
    friend CMWaveFunction operator-(CMWaveFunction a, const CMWaveFunction &b) { return a -= b; }

private:
    GridSpec grid_;
    cvector_t amp_;
};

enum class InternalLabel { Ground, Excited };

struct AtomState {
    CMWaveFunction cm;
    InternalLabel internal;
};

inline AtomState ground(CMWaveFunction cm) { return {std::move(cm), InternalLabel::Ground}; }
inline AtomState excited(CMWaveFunction cm) { return {std::move(cm), InternalLabel::Excited}; }

/// Whether boundary guards raise or are skipped. Skipping is for operator-level
/// checks where truncated or wrapped states are acceptable (dense oracle runs).
enum class BoundaryCheck { Guarded, Periodic };

inline void require_same_grid(const CMWaveFunction &a, const CMWaveFunction &b) {
    require(a.grid() == b.grid(), ErrorKind::GridMismatch, "states live on different grids");
}

/// <a|b> = sum_j conj(a_j) b_j dx
inline complex_t inner(const CMWaveFunction &a, const CMWaveFunction &b) {
    require_same_grid(a, b);
    complex_t acc{0.0, 0.0};
    const auto lhs = a.amplitudes();
    const auto rhs = b.amplitudes();
    for (std::size_t j = 0; j < lhs.size(); ++j) {
        acc += std::conj(lhs[j]) * rhs[j];
    }
    return acc * a.grid().dx();
}

inline double overlap_sq(const CMWaveFunction &a, const CMWaveFunction &b) {
    return std::norm(inner(a, b));
}

inline CMWaveFunction normalized(CMWaveFunction psi) {
    const double n2 = psi.norm_sq();
    require(n2 > 0.0 && std::isfinite(n2), ErrorKind::ZeroAmplitude, "cannot normalize a null state");
    psi *= complex_t{1.0 / std::sqrt(n2), 0.0};
    return psi;
}

/**
 * Normalized Gaussian packet amp(x) ~ exp(-(x-center)^2/(4 sigma^2)) exp(i k0 x).
 * sigma is the position standard deviation.
 *
 * With BoundaryCheck::Periodic the truncation guard is skipped; the packet is
 * still normalized on the grid.
 */
inline CMWaveFunction make_gaussian(const GridSpec &grid, double center, double sigma, double k0,
                                    BoundaryCheck check = BoundaryCheck::Guarded) {
    require(sigma >= 4.0 * grid.dx(), ErrorKind::GridTooCoarse,
            "sigma=" + std::to_string(sigma) + " is below 4 dx=" + std::to_string(4.0 * grid.dx()));
    CMWaveFunction psi(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        const double u = (x - center) / sigma;
        psi[j] = std::exp(-0.25 * u * u) * std::polar(1.0, k0 * x);
    }
    if (check == BoundaryCheck::Guarded) {
        require(psi.boundary() < kTruncationThreshold * psi.peak(), ErrorKind::PacketTruncated,
                "packet at center=" + std::to_string(center) + " does not fit the grid");
    }
    return normalized(std::move(psi));
}

/// Recoil: amp_j -> amp_j exp(i k x_j).
inline CMWaveFunction momentum_kick(CMWaveFunction psi, double k) {
    if (k == 0.0) {
        return psi;
    }
    const GridSpec &grid = psi.grid();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        psi[j] *= std::polar(1.0, k * grid.x(j));
    }
    return psi;
}

/// Spectral free flight exp(-i k^2 t / (2 mass)) with hbar = 1.
inline CMWaveFunction free_propagate(CMWaveFunction psi, double t, double mass,
                                     BoundaryCheck check = BoundaryCheck::Guarded) {
    require(mass > 0.0, ErrorKind::InvalidArgument, "mass must be positive");
    require(t >= 0.0, ErrorKind::InvalidArgument, "propagation time must be non-negative");
    if (t == 0.0) {
        return psi;
    }
    const GridSpec &grid = psi.grid();
    const std::size_t n = grid.size();
    auto amp = psi.amplitudes();
    detail::fft_inplace(amp, detail::FftDirection::Forward);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double k = grid.wavenumber(m);
        amp[m] *= std::polar(inv_n, -k * k * t / (2.0 * mass));
    }
    detail::fft_inplace(amp, detail::FftDirection::Backward);
    if (check == BoundaryCheck::Guarded) {
        const double peak = psi.peak();
        require(peak == 0.0 || psi.boundary() < kWrapThreshold * peak, ErrorKind::WrapAround,
                "propagated packet reaches the periodic boundary");
    }
    return psi;
}

/// <x> for a normalized state.
inline double position_mean(const CMWaveFunction &psi) {
    double acc = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        acc += psi.grid().x(j) * std::norm(psi[j]);
    }
    return acc * psi.grid().dx();
}

/// Position variance for a normalized state.
inline double position_variance(const CMWaveFunction &psi) {
    const double mean = position_mean(psi);
    double acc = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double d = psi.grid().x(j) - mean;
        acc += d * d * std::norm(psi[j]);
    }
    return acc * psi.grid().dx();
}

} // namespace exabs
