#include "dvdm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dvdm {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
};

// FFTW planning and execution share the cached buffer, so the whole
// transform runs under the lock. Transform sizes here are desk-scale.
std::mutex g_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
    static std::map<std::size_t, PlanPair> cache;
    return cache;
}

PlanPair& plans_for(std::size_t n) {
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PlanPair p;
    p.buf = fftw_alloc_complex(n);
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), p.buf, p.buf, FFTW_FORWARD,
                             FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), p.buf, p.buf, FFTW_BACKWARD,
                             FFTW_ESTIMATE);
    return cache.emplace(n, p).first->second;
}

}  // namespace

void dft(std::vector<std::complex<double>>& a, bool forward) {
    const std::size_t n = a.size();
    if (n == 0) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanPair& p = plans_for(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.buf[i][0] = a[i].real();
        p.buf[i][1] = a[i].imag();
    }
    fftw_execute(forward ? p.fwd : p.bwd);
    const double scale = forward ? 1.0 : 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = std::complex<double>(p.buf[i][0] * scale, p.buf[i][1] * scale);
    }
}

std::vector<std::complex<double>> dft_of_real(const std::vector<double>& v) {
    std::vector<std::complex<double>> a(v.begin(), v.end());
    dft(a, true);
    return a;
}

std::vector<double> idft_to_real(std::vector<std::complex<double>> a) {
    dft(a, false);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real();
    return out;
}

}  // namespace dvdm
