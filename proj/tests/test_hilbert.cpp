// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "exabs/hilbert.hpp"
#include "oracles.hpp"

namespace exabs {
namespace {

using testing::gaussian_overlap;
using testing::Packet;
using testing::quadrature_overlap;

const GridSpec kGrid(1024, -50.0, 50.0);

TEST(GridSpec, RejectsNonPowerOfTwo) {
    EXPECT_THROW(GridSpec(1000, -1.0, 1.0), Error);
    EXPECT_THROW(GridSpec(64, 1.0, -1.0), Error);
    EXPECT_DOUBLE_EQ(GridSpec(64, -32.0, 32.0).dx(), 1.0);
}

TEST(GridSpec, WavenumbersFollowFftOrdering) {
    const GridSpec g(8, 0.0, 8.0);
    const double dk = 2.0 * std::numbers::pi / 8.0;
    EXPECT_DOUBLE_EQ(g.wavenumber(0), 0.0);
    EXPECT_DOUBLE_EQ(g.wavenumber(3), 3 * dk);
    EXPECT_DOUBLE_EQ(g.wavenumber(4), -4 * dk);
    EXPECT_DOUBLE_EQ(g.wavenumber(7), -dk);
}

TEST(MakeGaussian, NormalizedAndPeaked) {
    const CMWaveFunction phi = make_gaussian(kGrid, 0.0, 1.0, 0.0);
    EXPECT_NEAR(phi.norm_sq(), 1.0, 1e-12);
    const std::size_t centre = 512; // x = 0
    EXPECT_DOUBLE_EQ(kGrid.x(centre), 0.0);
    EXPECT_DOUBLE_EQ(std::abs(phi[centre]), phi.peak());
    EXPECT_GT(phi[centre].real(), 0.0);
    EXPECT_NEAR(phi[centre].imag(), 0.0, 1e-15);
}

TEST(MakeGaussian, MomentumIsPurePhase) {
    const CMWaveFunction a = make_gaussian(kGrid, 0.0, 1.0, 0.0);
    const CMWaveFunction b = make_gaussian(kGrid, 0.0, 1.0, 2.0);
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        ASSERT_NEAR(std::abs(a[j]), std::abs(b[j]), 1e-12);
    }
}

TEST(MakeGaussian, OverlapOfDisplacedPairMatchesClosedForm) {
    const CMWaveFunction phi = make_gaussian(kGrid, 0.0, 1.0, 0.0);
    const CMWaveFunction psi = make_gaussian(kGrid, 2.0, 1.0, 0.0);
    const double expected = std::norm(gaussian_overlap({0.0, 1.0, 0.0}, {2.0, 1.0, 0.0}));
    EXPECT_NEAR(expected, std::exp(-1.0), 1e-15);
    EXPECT_NEAR(overlap_sq(phi, psi), expected, 1e-9);
    EXPECT_NEAR(overlap_sq(phi, psi), 0.367879441171442, 1e-9);
}

TEST(MakeGaussian, Errors) {
    try {
        (void)make_gaussian(kGrid, 0.0, 3.0 * kGrid.dx(), 0.0);
        FAIL() << "expected GridTooCoarse";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridTooCoarse);
    }
    try {
        (void)make_gaussian(kGrid, 45.0, 1.0, 0.0);
        FAIL() << "expected PacketTruncated";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::PacketTruncated);
    }
    // Same packet is accepted when the periodic cell is allowed to cut it.
    EXPECT_NEAR(make_gaussian(kGrid, 45.0, 1.0, 0.0, BoundaryCheck::Periodic).norm_sq(), 1.0, 1e-12);
}

TEST(ClosedFormOracle, AgreesWithQuadrature) {
    const Packet cases[][2] = {{{0.0, 1.0, 0.0}, {2.0, 1.0, 0.0}},
                               {{0.0, 1.0, 0.0}, {0.0, 1.0, 2.0}},
                               {{-1.0, 0.7, 0.3}, {1.5, 1.3, -1.1}}};
    for (const auto &c : cases) {
        EXPECT_LT(std::abs(gaussian_overlap(c[0], c[1]) - quadrature_overlap(c[0], c[1])), 1e-12);
    }
}

TEST(Inner, NormalizedSelfOverlapIsOne) {
    const CMWaveFunction phi = make_gaussian(kGrid, 3.0, 1.5, -0.7);
    const complex_t v = inner(phi, phi);
    EXPECT_NEAR(v.real(), 1.0, 1e-12);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(Inner, DisplacedPairRealOverlap) {
    const complex_t v = inner(make_gaussian(kGrid, 0.0, 1.0, 0.0), make_gaussian(kGrid, 2.0, 1.0, 0.0));
    EXPECT_NEAR(v.real(), 0.606530659712633, 1e-9);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(Inner, MomentumOffsetOverlap) {
    const double sigma = 1.0;
    const complex_t v =
        inner(make_gaussian(kGrid, 0.0, sigma, 0.0), make_gaussian(kGrid, 0.0, sigma, 2.0 / sigma));
    EXPECT_NEAR(std::abs(v), 0.135335283236613, 1e-9);
    EXPECT_NEAR(std::abs(v), std::abs(gaussian_overlap({0, 1, 0}, {0, 1, 2})), 1e-9);
}

TEST(Inner, GeneralPairMatchesClosedForm) {
    const Packet a{-1.0, 0.7, 0.3};
    const Packet b{1.5, 1.3, -1.1};
    const complex_t v = inner(make_gaussian(kGrid, a.center, a.sigma, a.k0),
                              make_gaussian(kGrid, b.center, b.sigma, b.k0));
    EXPECT_LT(std::abs(v - gaussian_overlap(a, b)), 1e-9);
}

TEST(Inner, GridMismatch) {
    const GridSpec other(512, -50.0, 50.0);
    try {
        (void)inner(make_gaussian(kGrid, 0, 1, 0), make_gaussian(other, 0, 1, 0));
        FAIL() << "expected GridMismatch";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridMismatch);
    }
}

CMWaveFunction random_state(const GridSpec &grid, std::mt19937_64 &rng) {
    std::normal_distribution<double> n01;
    CMWaveFunction psi(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        psi[j] = {n01(rng), n01(rng)};
    }
    return normalized(psi);
}

TEST(Inner, ConjugateSymmetricAndSesquilinear) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01;
    const GridSpec grid(128, -10.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        const CMWaveFunction a = random_state(grid, rng);
        const CMWaveFunction b = random_state(grid, rng);
        const CMWaveFunction c = random_state(grid, rng);
        const complex_t alpha{n01(rng), n01(rng)};
        const complex_t beta{n01(rng), n01(rng)};
        EXPECT_LT(std::abs(inner(a, b) - std::conj(inner(b, a))), 1e-12);
        const complex_t lhs = inner(a, alpha * b + beta * c);
        const complex_t rhs = alpha * inner(a, b) + beta * inner(a, c);
        EXPECT_LT(std::abs(lhs - rhs), 1e-12);
    }
}

TEST(Inner, ConvergesUnderGridRefinement) {
    // sigma = 4 dx at the coarsest level. Sampled Gaussians converge spectrally, so
    // the error may already sit at the rounding floor; it must never grow above it.
    const double expected = std::abs(gaussian_overlap({0.0, 2.0, 0.0}, {2.6, 2.0, 0.45}));
    constexpr double kFloor = 1e-13;
    double previous = 1.0;
    for (std::size_t n : {128u, 256u, 512u}) {
        const GridSpec grid(n, -32.0, 32.0);
        const double err = std::abs(
            std::abs(inner(make_gaussian(grid, 0.0, 2.0, 0.0), make_gaussian(grid, 2.6, 2.0, 0.45))) -
            expected);
        EXPECT_LE(err, std::max(previous, kFloor)) << "n_points=" << n;
        previous = err;
    }
    EXPECT_LT(previous, 1e-9);
}

TEST(MomentumKick, IdentityAndInverse) {
    const CMWaveFunction phi = make_gaussian(kGrid, 1.0, 1.0, 0.4);
    const CMWaveFunction same = momentum_kick(phi, 0.0);
    const CMWaveFunction back = momentum_kick(momentum_kick(phi, 2.5), -2.5);
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        ASSERT_EQ(same[j], phi[j]);
        ASSERT_LT(std::abs(back[j] - phi[j]), 1e-12);
    }
    EXPECT_NEAR(momentum_kick(phi, 2.5).norm_sq(), 1.0, 1e-12);
}

TEST(MomentumKick, ProducesMovingPacket) {
    const CMWaveFunction kicked = momentum_kick(make_gaussian(kGrid, 0.0, 1.0, 0.0), 3.0);
    EXPECT_NEAR(std::abs(inner(kicked, make_gaussian(kGrid, 0.0, 1.0, 3.0))), 1.0, 1e-10);
    EXPECT_NEAR(inner(kicked, make_gaussian(kGrid, 0.0, 1.0, 3.0)).real(), 1.0, 1e-10);
}

TEST(MomentumKick, OverlapWithUnkickedPacket) {
    const CMWaveFunction psi = make_gaussian(kGrid, 0.0, 1.0, 0.0);
    EXPECT_NEAR(std::abs(inner(psi, momentum_kick(psi, 2.0))), std::exp(-2.0), 1e-9);
}

TEST(FreePropagate, ZeroTimeIsIdentity) {
    const CMWaveFunction phi = make_gaussian(kGrid, 0.0, 1.0, 1.0);
    const CMWaveFunction out = free_propagate(phi, 0.0, 1.0);
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        ASSERT_LT(std::abs(out[j] - phi[j]), 1e-13);
    }
}

TEST(FreePropagate, EhrenfestCentroidAndSpreading) {
    const double sigma = 1.0, k0 = 1.5, mass = 2.0, t = 6.0;
    const CMWaveFunction out = free_propagate(make_gaussian(kGrid, -5.0, sigma, k0), t, mass);
    EXPECT_NEAR(out.norm_sq(), 1.0, 1e-12);
    const double shift = k0 * t / mass;
    EXPECT_NEAR(position_mean(out) - (-5.0), shift, 1e-6 * shift);
    const double spread = t / (2.0 * mass * sigma);
    const double var = sigma * sigma + spread * spread;
    EXPECT_NEAR(position_variance(out), var, 1e-6 * var);
}

TEST(FreePropagate, KickThenFlightMatchesAnalyticDensity) {
    const testing::Packet start{-4.0, 1.0, 0.5};
    const double k = 1.25, t = 3.0, mass = 1.5;
    const CMWaveFunction out =
        free_propagate(momentum_kick(make_gaussian(kGrid, start.center, start.sigma, start.k0), k), t,
                       mass);
    const testing::Packet kicked{start.center, start.sigma, start.k0 + k};
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        ASSERT_NEAR(std::norm(out[j]), testing::free_density(kicked, t, mass, kGrid.x(j)), 1e-6);
    }
}

TEST(FreePropagate, WrapAroundGuard) {
    // A narrow packet spreading over the whole cell.
    const GridSpec small(128, -8.0, 8.0);
    const CMWaveFunction phi = make_gaussian(small, 0.0, 0.5, 0.0);
    try {
        (void)free_propagate(phi, 20.0, 1.0);
        FAIL() << "expected WrapAround";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::WrapAround);
    }
    EXPECT_NEAR(free_propagate(phi, 20.0, 1.0, BoundaryCheck::Periodic).norm_sq(), 1.0, 1e-12);
}

TEST(FreePropagate, UnitaryOnRandomStates) {
    std::mt19937_64 rng(11);
    const GridSpec grid(256, -20.0, 20.0);
    for (int trial = 0; trial < 10; ++trial) {
        const CMWaveFunction psi = random_state(grid, rng);
        EXPECT_NEAR(free_propagate(psi, 0.37 * (trial + 1), 1.0, BoundaryCheck::Periodic).norm_sq(),
                    1.0, 1e-12);
    }
}

} // namespace
} // namespace exabs
