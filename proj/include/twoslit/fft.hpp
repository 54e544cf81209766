#pragma once

// Thin deterministic wrapper over FFTW's 1-D complex transforms.  Plans are
// created with FFTW_ESTIMATE only (no runtime measurement, so identical
// inputs give identical outputs across runs) and cached per size.  FFTW's
// planner is not thread-safe; all planning and execution on the cached
// buffers is serialized behind one mutex, which keeps results independent
// of how many threads call in.

#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "twoslit/errors.hpp"

namespace twoslit {

namespace detail {

class FftCache {
  public:
    static FftCache& instance() {
        static FftCache cache;
        return cache;
    }

    void transform(std::vector<std::complex<double>>& data, bool forward) {
        std::lock_guard<std::mutex> lock(mutex_);
        Entry& e = entry(static_cast<int>(data.size()));
        // std::complex<double> is guaranteed array-compatible with double[2].
        std::memcpy(static_cast<void*>(e.buf), static_cast<const void*>(data.data()),
                    data.size() * sizeof(fftw_complex));
        fftw_execute(forward ? e.fwd : e.bwd);
        std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(e.buf),
                    data.size() * sizeof(fftw_complex));
    }

  private:
    struct Entry {
        fftw_complex* buf = nullptr;
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    Entry& entry(int n) {
        auto it = entries_.find(n);
        if (it != entries_.end()) return it->second;
        Entry e;
        e.buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        if (!e.buf) throw error("fftw allocation failed");
        e.fwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        e.bwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        return entries_.emplace(n, e).first->second;
    }

    ~FftCache() {
        for (auto& [n, e] : entries_) {
            fftw_destroy_plan(e.fwd);
            fftw_destroy_plan(e.bwd);
            fftw_free(e.buf);
        }
    }

    std::mutex mutex_;
    std::map<int, Entry> entries_;
};

}  // namespace detail

/// In-place unnormalized forward DFT.
inline void fft_forward(std::vector<std::complex<double>>& data) {
    detail::FftCache::instance().transform(data, true);
}

/// In-place inverse DFT scaled by 1/N (round trip is the identity).
inline void fft_inverse(std::vector<std::complex<double>>& data) {
    detail::FftCache::instance().transform(data, false);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
}

/// FFT-ordered spatial frequency of bin j for grid step dx.
inline double fft_frequency(int j, int n, double dx) {
    const int k = j < n / 2 ? j : j - n;
    return static_cast<double>(k) / (static_cast<double>(n) * dx);
}

}  // namespace twoslit
