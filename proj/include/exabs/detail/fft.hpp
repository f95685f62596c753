// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace exabs::detail {

enum class FftDirection : int { Forward = FFTW_FORWARD, Backward = FFTW_BACKWARD };

// FFTW planning is not thread-safe, execution with the new-array interface is.
// Plans are created once per (size, direction) under a lock and reused.
class FftPlanCache {
public:
    static FftPlanCache &instance() {
        static FftPlanCache cache;
        return cache;
    }

    fftw_plan plan(std::size_t n, FftDirection dir) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, static_cast<int>(dir));
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        std::vector<std::complex<double>> scratch(n);
        auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, static_cast<int>(dir),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    FftPlanCache(const FftPlanCache &) = delete;
    FftPlanCache &operator=(const FftPlanCache &) = delete;

private:
    FftPlanCache() = default;
    ~FftPlanCache() {
        for (auto &[key, p] : plans_) {
            fftw_destroy_plan(p);
        }
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

/// Unnormalized in-place DFT (FFTW sign convention).
inline void fft_inplace(std::span<std::complex<double>> data, FftDirection dir) {
    fftw_plan p = FftPlanCache::instance().plan(data.size(), dir);
    auto *buf = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(p, buf, buf);
}

} // namespace exabs::detail
